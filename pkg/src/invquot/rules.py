"""Named exclusion rules with provenance.

NUMERIC rules are consequences of intersection arithmetic; the enumerator and
profile builder already enforce them, so they appear here for reporting only
and never fire.  GEOMETRIC rules encode conclusions that need an argument
beyond arithmetic; each is scoped to ``K_S^2 = 7`` and carries a citation.

Rule file grammar (one rule per line, ``|``-separated, ``#`` starts a comment)::

    id | provenance | scope | pattern | citation | note

* ``provenance`` is ``numeric`` or ``geometric``.
* ``scope`` is ``*`` or a comma list drawn from ``ks2=<int>``, ``k=<int>``,
  ``kw2=<int>``; omitted keys match anything.
* ``pattern`` is an exact component multiset such as ``(5,6)+(0,-4)+(0,-4)``.
* ``citation`` must be non-empty for geometric rules; ``note`` is optional.

File rules join the branch stage next to the built-ins.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Optional

from .arith import adjunction_degree
from .branch import BranchConfig, format_components, parse_components


class Provenance(str, enum.Enum):
    NUMERIC = "numeric"
    GEOMETRIC = "geometric"


class Stage(str, enum.Enum):
    PROFILE = "profile"
    BRANCH = "branch"
    ENRIQUES = "enriques"


class RuleError(ValueError):
    pass


@dataclass(frozen=True)
class Scope:
    ks2: Optional[int] = None
    k: Optional[int] = None
    kw2: Optional[int] = None

    def contains(self, ks2: int, k: int, kw2: int) -> bool:
        return all(want is None or want == got
                   for want, got in ((self.ks2, ks2), (self.k, k), (self.kw2, kw2)))

    def __str__(self):
        parts = [f"{name}={val}" for name, val in (("ks2", self.ks2), ("k", self.k), ("kw2", self.kw2))
                 if val is not None]
        return ",".join(parts) or "*"


@dataclass(frozen=True)
class ExclusionRule:
    id: str
    provenance: Provenance
    stage: Stage
    scope: Scope
    pattern: str
    citation: str
    note: str = ""
    matcher: Optional[Callable[[BranchConfig], bool]] = None
    # lower fires first when attributing an exclusion
    priority: int = 100

    def __post_init__(self):
        if self.provenance is Provenance.GEOMETRIC and not self.citation.strip():
            raise RuleError(f"geometric rule {self.id} needs a citation")

    @property
    def active(self) -> bool:
        return self.matcher is not None

    def matches(self, config: BranchConfig) -> bool:
        if self.matcher is None:
            return False
        if not self.scope.contains(config.ks2, config.k, config.kw2):
            return False
        return bool(self.matcher(config))

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "provenance": self.provenance.value,
            "stage": self.stage.value,
            "scope": str(self.scope),
            "pattern": self.pattern,
            "citation": self.citation,
            "note": self.note,
            "active": self.active,
        }


def exact_pattern(text: str) -> Callable[[BranchConfig], bool]:
    want = tuple(c.pair for c in parse_components(text))
    return lambda config: config.key == want


def _any_component(pred: Callable[[int, int], bool]) -> Callable[[BranchConfig], bool]:
    return lambda config: any(pred(c.pa, adjunction_degree(c) // 2) for c in config.components)


K9 = Scope(ks2=7, k=9, kw2=-2)


def _numeric(rid: str, stage: Stage, pattern: str, note: str) -> ExclusionRule:
    return ExclusionRule(rid, Provenance.NUMERIC, stage, Scope(), pattern, "intersection arithmetic", note)


NUMERIC_RULES = [
    _numeric("NUM-KV2", Stage.PROFILE, "K_W^2 >= K_V^2 = K_S^2 - k",
             "contracting curves on V only raises K^2"),
    _numeric("NUM-INDEX-KW", Stage.PROFILE, "K_W^2 * D^2 <= (K_W.D)^2",
             "algebraic index theorem against nef and big D"),
    _numeric("NUM-DEGREE", Stage.BRANCH, "sum Gamma.D = B0.D = 2k - 8",
             "partition of B0.D into even positive parts plus (-4)-curves"),
    _numeric("NUM-PARITY", Stage.BRANCH, "Gamma.D even and Gamma^2 + Gamma.D = 0 mod 4",
             "2 K_V.Gamma~ = Gamma.D and the genus of Gamma~ is an integer"),
    _numeric("NUM-INDEX", Stage.BRANCH, "Gamma^2 * D^2 <= (Gamma.D)^2",
             "algebraic index theorem; Gamma.D = 0 forces a (-4)-curve"),
    _numeric("NUM-GENUS", Stage.BRANCH, "p_a = 1 + (Gamma^2 + Gamma.D)/4 >= 0",
             "genus of the smooth preimage on V"),
    _numeric("NUM-BUDGET", Stage.BRANCH, "sum K_W.Gamma = K_W.D - 2K_W^2 solves l >= 0",
             "the number l of (-4)-curves is forced by the K_W.B0 budget"),
]

PROFILE_RULES = [
    ExclusionRule("THM-K11", Provenance.GEOMETRIC, Stage.PROFILE, Scope(ks2=7, k=11), "K_W^2 = -4, W rational",
                  "K_W.D = 0 leaves rational or Enriques; Enriques excluded by [DBS, Thm 3]; "
                  "disjoint nodal curves on rational W force rho(W) >= 14 [RSMN, Thm 3.3]",
                  "k = K_S^2 + 4: bicanonical map composed with the involution"),
    ExclusionRule("THM-K9", Provenance.GEOMETRIC, Stage.PROFILE, Scope(ks2=7, k=9), "K_W^2 = -2, kappa(W) <= 1",
                  "Picard-rank bounds for disjoint nodal curves [RSMN, Thm 3.3 and Prop 4.1]; "
                  "general type ruled out by (7 t*K_W' - D)^2 <= 0",
                  "numeric range -2..0 narrowed to -2"),
    ExclusionRule("THM-K7", Provenance.GEOMETRIC, Stage.PROFILE, Scope(ks2=7, k=7),
                  "K_W^2 = 1 minimal general type; K_W^2 = 0 properly elliptic or general type with K_W'^2 = 1",
                  "h^0(-K_W) > 0 contradicts nef D for rational W; minimality from [RSMN, Prop 4.1]; "
                  "(7 t*K_W' - 2D)^2 <= 0 bounds the minimal model",
                  "both K_W^2 = 0 classes kept"),
    ExclusionRule("THM-K5", Provenance.GEOMETRIC, Stage.PROFILE, Scope(ks2=7, k=5), "K_W^2 = 2, W minimal of general type",
                  "h^0(-K_W) > 0 contradicts nef D for rational W; (7 t*K_W' - 3D)^2 <= 0 forces minimality",
                  ""),
]

BRANCH_RULES = [
    ExclusionRule("MQS-2.1.1", Provenance.GEOMETRIC, Stage.BRANCH, K9, "(5,6)+(0,-4)+(0,-4)",
                  "[MQS, Prop 2.1.1]: a smooth rational curve in B0 lifts to a smooth rational curve on S",
                  "Miyaoka-type bound on rational curves", matcher=exact_pattern("(5,6)+(0,-4)+(0,-4)")),
    ExclusionRule("LEMMA-K7", Provenance.GEOMETRIC, Stage.BRANCH, Scope(ks2=7, k=7, kw2=0), "(3,2)+(0,-4)",
                  "[MQS] Miyaoka bound: seven disjoint (-2)-curves with one (-4)-curve on W (or a (-4)- or "
                  "(-3)-curve on the minimal model W' when K_W'^2 = 1)",
                  "excluded for both K_W^2 = 0 Kodaira classes", matcher=exact_pattern("(3,2)+(0,-4)")),
]

ENRIQUES_RULES = [
    ExclusionRule("E-a", Provenance.GEOMETRIC, Stage.ENRIQUES, K9, "component with p_a = 0, beta = 1",
                  "an Enriques surface carries at most eight disjoint (-2)-curves",
                  "the image is a ninth disjoint (0,-2) curve on W'",
                  matcher=_any_component(lambda pa, b: pa == 0 and b == 1), priority=10),
    ExclusionRule("E-b", Provenance.GEOMETRIC, Stage.ENRIQUES, K9, "component with p_a = 0, beta >= 2",
                  "an Enriques surface with eight nodes is D1 x D2 / G with D1, D2 elliptic [ES8, Thm 4.1]; "
                  "a rational normalization cannot map onto an elliptic factor",
                  "image of genus >= 2 would lift to a rational curve on D1 x D2",
                  matcher=_any_component(lambda pa, b: pa == 0 and b >= 2), priority=20),
    ExclusionRule("E-c", Provenance.GEOMETRIC, Stage.ENRIQUES, K9, "component with p_a = 1, beta >= 2",
                  "elliptic normalization maps linearly into D1 x D2 [ES8, Thm 4.1], so the image is smooth",
                  "smooth image contradicts image arithmetic genus > 1",
                  matcher=_any_component(lambda pa, b: pa == 1 and b >= 2), priority=30),
    ExclusionRule("E-d", Provenance.GEOMETRIC, Stage.ENRIQUES, K9, "(3,2)+(1,-2)+(1,-2)",
                  "elliptic fibration from |C| or |2C| for a (1,0) image C [ESI, Prop 3.1.2, Thm 5.6.2]; "
                  "Hurwitz for the other (1,0) image gives 0 >= 1",
                  "fibration argument", matcher=exact_pattern("(3,2)+(1,-2)+(1,-2)"), priority=40),
    ExclusionRule("E-e", Provenance.GEOMETRIC, Stage.ENRIQUES, K9, "(2,0)+(2,0)+(1,-2)",
                  "elliptic fibration [ESI, Prop 3.1.2]; h^0 of the (2,2) image is 2 by Kawamata-Viehweg, "
                  "then connectedness of nef and big divisors forbids the forced decomposition",
                  "linear-system argument", matcher=exact_pattern("(2,0)+(2,0)+(1,-2)"), priority=50),
    ExclusionRule("E-f", Provenance.GEOMETRIC, Stage.ENRIQUES, K9, "(2,-2)+(2,0)",
                  "elliptic fibration meeting the (2,2) image in 2*gamma > 0; h^0 = 2 against "
                  "h^0 on E1 = gamma + 1 forces an impossible decomposition",
                  "linear-system argument", matcher=exact_pattern("(2,-2)+(2,0)"), priority=60),
]


def builtin_rules() -> list[ExclusionRule]:
    """Rules applied to enumerated branch configurations (numeric ones read-only)."""
    return [r for r in NUMERIC_RULES if r.stage is Stage.BRANCH] + list(BRANCH_RULES)


def all_rules(extra: Iterable[ExclusionRule] = ()) -> list[ExclusionRule]:
    rules = NUMERIC_RULES + PROFILE_RULES + BRANCH_RULES + ENRIQUES_RULES + list(extra)
    seen = set()
    for r in rules:
        if r.id in seen:
            raise RuleError(f"duplicate rule id {r.id}")
        seen.add(r.id)
    return rules


def find_rule(rule_id: str, rules: Iterable[ExclusionRule] | None = None) -> ExclusionRule:
    for r in rules if rules is not None else all_rules():
        if r.id == rule_id:
            return r
    raise KeyError(rule_id)


@dataclass(frozen=True)
class Verdict:
    config: BranchConfig
    matched: tuple[str, ...] = ()

    @property
    def admitted(self) -> bool:
        return not self.matched

    @property
    def excluded_by(self) -> str | None:
        return self.matched[0] if self.matched else None


def apply_exclusions(configs: Iterable[BranchConfig], rules: Iterable[ExclusionRule],
                     context: tuple[int, int, int] | None = None) -> list[Verdict]:
    """Annotate each config with every rule that excludes it.

    ``matched`` is sorted by (priority, id), so the result does not depend on
    the order of ``rules``.  With ``context`` given, rules whose scope misses it
    are skipped outright.
    """
    rules = [r for r in rules if r.active]
    if context is not None:
        rules = [r for r in rules if r.scope.contains(*context)]
    rules.sort(key=lambda r: (r.priority, r.id))
    return [Verdict(c, tuple(r.id for r in rules if r.matches(c))) for c in configs]


def parse_scope(text: str) -> Scope:
    text = text.strip()
    if text in ("", "*"):
        return Scope()
    values = {}
    for item in text.split(","):
        name, sep, val = item.partition("=")
        name = name.strip()
        if not sep or name not in ("ks2", "k", "kw2"):
            raise RuleError(f"bad scope item {item!r}")
        try:
            values[name] = int(val)
        except ValueError:
            raise RuleError(f"bad scope value in {item!r}") from None
    return Scope(**values)


def parse_rules(text: str, source: str = "<rules>") -> list[ExclusionRule]:
    rules = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = [f.strip() for f in line.split("|")]
        if len(fields) not in (5, 6):
            raise RuleError(f"{source}:{lineno}: expected 5 or 6 '|'-separated fields, got {len(fields)}")
        rid, prov, scope, pattern, citation = fields[:5]
        note = fields[5] if len(fields) == 6 else ""
        if not rid:
            raise RuleError(f"{source}:{lineno}: empty rule id")
        try:
            provenance = Provenance(prov.lower())
        except ValueError:
            raise RuleError(f"{source}:{lineno}: unknown provenance {prov!r}") from None
        try:
            canonical_pattern = format_components(parse_components(pattern))
        except ValueError as exc:
            raise RuleError(f"{source}:{lineno}: {exc}") from None
        try:
            rules.append(ExclusionRule(rid, provenance, Stage.BRANCH, parse_scope(scope), canonical_pattern,
                                       citation, note, matcher=exact_pattern(canonical_pattern)))
        except RuleError as exc:
            raise RuleError(f"{source}:{lineno}: {exc}") from None
    return rules


def load_rules(path: str | Path) -> list[ExclusionRule]:
    path = Path(path)
    return parse_rules(path.read_text(encoding="utf-8"), str(path))
