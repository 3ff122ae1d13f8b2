"""Exhaustive enumeration of branch divisors B0 for a quotient profile.

A configuration is a multiset of disjoint smooth curves.  Components with
positive degree against D come from a partition of ``B0.D`` into even parts;
the number ``l`` of (-4)-curves is never chosen freely, it is solved from the
budget ``K_W.B0 = K_W.D - 2K_W^2``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product
from typing import Iterator

from .arith import CurveClass, ParityError, adjunction_degree, halfbranch_genus, hodge_admissible, sort_key
from .profile import QuotientProfile

MINUS_FOUR = CurveClass(0, -4, 0)


def canonical(components) -> tuple[CurveClass, ...]:
    return tuple(sorted(components, key=sort_key))


def format_components(components) -> str:
    """``"(3,0)+(1,-2)"``; the empty divisor is written ``"0"``."""
    return "+".join(str(c) for c in canonical(components)) or "0"


_PAIR = re.compile(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")


def parse_components(text: str) -> tuple[CurveClass, ...]:
    """Parse ``"(3,0)+(1,-2)"`` (or ``"0"``) into canonically ordered branch classes."""
    if text.strip() == "0":
        return ()
    pieces = [p.strip() for p in text.replace("−", "-").split("+")]
    out = []
    for piece in pieces:
        m = _PAIR.fullmatch(piece)
        if not m:
            raise ValueError(f"cannot parse curve class {piece!r} in {text!r}")
        out.append(CurveClass.from_pair(int(m.group(1)), int(m.group(2))))
    return canonical(out)


@dataclass(frozen=True)
class BranchConfig:
    components: tuple[CurveClass, ...]
    kw2: int
    ks2: int
    k: int

    def __post_init__(self):
        object.__setattr__(self, "components", canonical(self.components))

    @property
    def key(self) -> tuple[tuple[int, int], ...]:
        return tuple(c.pair for c in self.components)

    @property
    def sum_ddeg(self) -> int:
        return sum(c.ddeg for c in self.components)

    @property
    def sum_selfint(self) -> int:
        return sum(c.selfint for c in self.components)

    @property
    def sum_kdeg(self) -> int:
        return sum(adjunction_degree(c) for c in self.components)

    @property
    def minus_four_count(self) -> int:
        return sum(1 for c in self.components if c.ddeg == 0)

    def __str__(self):
        return format_components(self.components)


@dataclass(frozen=True)
class Rejection:
    """A partial choice of positive-degree components whose budget forces a bad ``l``."""

    components: tuple[CurveClass, ...]
    sum_kdeg: int
    budget: int

    @property
    def l(self) -> Fraction:
        return Fraction(self.budget - self.sum_kdeg, 2)

    def explain(self) -> str:
        return (f"K_W.B0 = {self.sum_kdeg} + 2l = {self.budget} forces l = {self.l}"
                + (" < 0" if self.l < 0 else " not integral"))


@dataclass
class Enumeration:
    profile: QuotientProfile
    kw2: int
    configs: list[BranchConfig] = field(default_factory=list)
    rejections: list[Rejection] = field(default_factory=list)
    candidates: dict[int, list[CurveClass]] = field(default_factory=dict)


def component_candidates(ddeg: int, Dsq: int) -> list[CurveClass]:
    """Every smooth branch class with the given degree against D, descending self-intersection."""
    if ddeg < 0 or ddeg % 2:
        raise ParityError(f"Gamma.D must be even and nonnegative, got {ddeg}")
    if ddeg == 0:
        return [MINUS_FOUR]
    top = (ddeg * ddeg) // Dsq
    # pa = 1 + (selfint + ddeg)/4 >= 0
    bottom = -ddeg - 4
    out = []
    for selfint in range(top, bottom - 1, -1):
        if (selfint + ddeg) % 4 or not hodge_admissible(ddeg, selfint, Dsq):
            continue
        out.append(CurveClass(1 + (selfint + ddeg) // 4, selfint, ddeg))
    return out


def even_partitions(total: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of ``total`` into even parts >= 2, each in non-increasing order."""
    if largest is None:
        largest = total
    if total == 0:
        yield ()
        return
    for part in range(min(total, largest) // 2 * 2, 1, -2):
        for rest in even_partitions(total - part, part):
            yield (part,) + rest


def _choices(parts: tuple[int, ...], candidates: dict[int, list[CurveClass]]) -> Iterator[tuple[CurveClass, ...]]:
    # equal parts choose a multiset of candidates so that no multiset repeats
    groups: dict[int, int] = {}
    for p in parts:
        groups[p] = groups.get(p, 0) + 1
    per_group = [list(combinations_with_replacement(candidates[p], n)) for p, n in groups.items()]
    for pick in product(*per_group):
        yield tuple(c for chunk in pick for c in chunk)


def enumerate_with_trace(profile: QuotientProfile, kw2: int) -> Enumeration:
    result = Enumeration(profile=profile, kw2=kw2)
    budget = profile.kw2_budget(kw2)
    for d in range(2, profile.b0D + 1, 2):
        result.candidates[d] = component_candidates(d, profile.Dsq)

    seen = set()
    for parts in even_partitions(profile.b0D):
        for chosen in _choices(parts, result.candidates):
            spent = sum(adjunction_degree(c) for c in chosen)
            rest = budget - spent
            if rest < 0 or rest % 2:
                result.rejections.append(Rejection(canonical(chosen), spent, budget))
                continue
            # each (-4)-curve has K_W-degree 2
            config = BranchConfig(chosen + (MINUS_FOUR,) * (rest // 2), kw2, profile.ks2, profile.k)
            if config.key in seen:
                continue
            seen.add(config.key)
            _check_config(config, profile)
            result.configs.append(config)
    result.configs.sort(key=config_order)
    return result


def enumerate_branch_configs(profile: QuotientProfile, kw2: int) -> list[BranchConfig]:
    return enumerate_with_trace(profile, kw2).configs


def config_order(config: BranchConfig):
    return tuple(sort_key(c) for c in config.components)


class InvariantViolation(AssertionError):
    pass


def _check_config(config: BranchConfig, profile: QuotientProfile) -> None:
    kw2 = config.kw2
    if config.sum_ddeg != profile.b0D:
        raise InvariantViolation(f"{config}: sum of Gamma.D is {config.sum_ddeg}, expected {profile.b0D}")
    if config.sum_kdeg != profile.kw2_budget(kw2):
        raise InvariantViolation(f"{config}: K_W.B0 is {config.sum_kdeg}, expected {profile.kw2_budget(kw2)}")
    if config.sum_selfint != profile.b0_square(kw2):
        raise InvariantViolation(f"{config}: B0^2 is {config.sum_selfint}, expected {profile.b0_square(kw2)}")
    for c in config.components:
        if not hodge_admissible(c.ddeg, c.selfint, profile.Dsq):
            raise InvariantViolation(f"{config}: component {c} fails the index bound")
        if halfbranch_genus(c) != c.pa:
            raise InvariantViolation(f"{config}: component {c} has mismatched genus on V")
