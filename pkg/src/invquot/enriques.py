"""Filter for quotients birational to an Enriques surface.

If W is birational to an Enriques surface W', then k = 9, K_W^2 = -2 and W is
W' blown up twice: W -> W1 -> W', where the first exceptional curve E1 meets
exactly one nodal curve N1 once.  A branch component Gamma disjoint from N1
meets E1 with multiplicity ``beta = K_W.Gamma / 2`` and is pushed forward to a
class on W'.  The rules E-a .. E-f then exclude all but two configurations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .arith import CurveClass, NumericError, adjunction_degree, blowdown_pushforward
from .branch import BranchConfig
from .profile import REFERENCE_KS2, QuotientProfile
from .rules import ENRIQUES_RULES, ExclusionRule, apply_exclusions


class MalformedConfig(NumericError):
    pass


@dataclass(frozen=True)
class EnriquesVerdict:
    k: int
    possible: Optional[bool]
    reason: str

    @property
    def label(self) -> str:
        if self.possible is None:
            return "unknown (numeric-only)"
        return "possible" if self.possible else "excluded"


def enriques_possible(profile: QuotientProfile) -> EnriquesVerdict:
    """Whether an Enriques-birational W is numerically open for this profile."""
    k = profile.k
    if profile.ks2 != REFERENCE_KS2:
        return EnriquesVerdict(k, None, "numeric-only: no geometric analysis for this K_S^2")
    if k == 9:
        return EnriquesVerdict(k, True, "K_W^2 = -2 and K_W.D = 2 are compatible with kappa(W) = 0")
    if k == 11:
        return EnriquesVerdict(k, False, "K_W.D = 0 case: Enriques quotient excluded by [DBS, Thm 3]")
    if k == 7:
        return EnriquesVerdict(k, False, "K_W^2 >= 0 with K_W.D = 4 is impossible when 2K_W' = 0")
    return EnriquesVerdict(k, False, "K_W^2 = 2 and W is of general type")


@dataclass(frozen=True)
class ComponentImage:
    curve: CurveClass
    beta: int
    image: tuple[int, int]


@dataclass(frozen=True)
class EnriquesCandidate:
    config: BranchConfig
    per_component: tuple[ComponentImage, ...]
    matched: tuple[str, ...]
    torsion: bool
    notes: tuple[str, ...] = ()

    @property
    def survives(self) -> bool:
        return not self.matched

    @property
    def excluded_by(self) -> str | None:
        return self.matched[0] if self.matched else None


# The (3,0)+(1,-2) survivor meets a dimension-count obstruction that is not
# strong enough to exclude it.
_ANNOTATIONS = {
    ((3, 0), (1, -2)): "images (5,8) and (1,0) meet in 4; h^0 of the (5,8) image is 5 "
                       "while tangency imposes six conditions (not an exclusion)",
}


def component_images(config: BranchConfig) -> tuple[ComponentImage, ...]:
    out = []
    for c in config.components:
        kdeg = adjunction_degree(c)
        if kdeg % 2 or kdeg < 0:
            raise MalformedConfig(f"component {c} of {config} has K_W-degree {kdeg}; beta is undefined")
        b = kdeg // 2
        out.append(ComponentImage(c, b, blowdown_pushforward(c, b)))
    return tuple(out)


def enriques_filter(configs: Iterable[BranchConfig],
                    rules: Iterable[ExclusionRule] = ENRIQUES_RULES) -> list[EnriquesCandidate]:
    """Apply the Enriques exclusions to the admitted k = 9 configurations.

    Component rules (E-a, E-b, E-c) take precedence over the pattern rules in
    attribution; the surviving set does not depend on rule order.
    """
    configs = list(configs)
    images = [component_images(c) for c in configs]
    verdicts = apply_exclusions(configs, rules)
    return [
        EnriquesCandidate(v.config, imgs, v.matched, torsion=v.admitted,
                          notes=(_ANNOTATIONS[v.config.key],) if v.config.key in _ANNOTATIONS else ())
        for v, imgs in zip(verdicts, images)
    ]
