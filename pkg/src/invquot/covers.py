"""Numeric check of the three involutions on a bidouble-cover surface with K^2 = 7.

Each involution gamma_i has quotient W_i obtained from a double cover T_i of
a rational surface P.  Only the recorded intersection data on P and T_i is
stored; the branch components of B0 are recomputed by Hurwitz's formula and
``K_W^2`` and ``k`` by (-1)-curve and node bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .arith import CurveClass, NumericError, double_cover_pullback
from .branch import BranchConfig, canonical, format_components
from .classify import admitted_configs
from .enriques import enriques_filter
from .profile import kodaira_dimension_range, quotient_profile

KS2 = 7


@dataclass(frozen=True)
class CoverDatum:
    name: str
    minus_one_curves: int
    kt2: int
    nodes: int
    # (p_a, self-intersection, intersection with the branch locus) of each base curve on P
    branch_components: tuple[tuple[int, int, int], ...]
    expected_k: int
    expected_kw2: int
    expected_b0: tuple[tuple[int, int], ...]
    kodaira: str
    # how the rationality of W_i is known; stored, not recomputed
    kodaira_source: str = ""


COVER_DATA = (
    # T_1: K^2 = -6; S_3, S_4 lie on the branch locus, leaving two (-1)-curves;
    # seven nodes plus four (-2)-curves since D_2 D_3 = 7.  Base curves f_2
    # (f_2 (D_2 + D_3) = 8) and Delta_1 (Delta_1 (D_2 + D_3) = 6, Delta_1^2 = -1).
    CoverDatum("gamma_1", 2, -6, 11, ((0, 0, 8), (0, -1, 6)), 11, -4, ((3, 0), (2, -2)), "rational",
               "h^0(2K_T1) = 0 since 2K_P + 2L_1 and 2K_P + L_1 are not effective"),
    # T_2: K^2 = -6; S_1..S_4 on the branch locus; nine nodes since D_1 D_3 = 9.
    # f_3 meets D_1, D_3 in 2 and 6; Delta_2 meets them in 3 and 1.
    CoverDatum("gamma_2", 4, -6, 9, ((0, 0, 8), (0, -1, 4)), 9, -2, ((3, 0), (1, -2)), "rational",
               "h^0(2K_T2) = 0 as for gamma_1"),
    # T_3: K^2 = -4; S_1, S_2 on the branch locus; nine nodes.  f_1 and f_1'
    # meet D_1, D_2 in 4 and 2; Delta_3 meets them in 1 and 3.
    CoverDatum("gamma_3", 2, -4, 9, ((0, 0, 6), (0, 0, 6), (0, -1, 4)), 9, -2, ((2, 0), (2, 0), (1, -2)),
               "rational", "h^0(2K_T3) = 0 as for gamma_1"),
)


@dataclass
class CoverResult:
    datum: CoverDatum
    k: int
    kw2: int
    b0: tuple[CurveClass, ...]
    problems: list[str] = field(default_factory=list)
    in_admitted_set: bool | None = None
    enriques_survivor: bool | None = None

    @property
    def ok(self) -> bool:
        return not self.problems

    @property
    def b0_text(self) -> str:
        return format_components(self.b0)


def _check_one(datum: CoverDatum) -> CoverResult:
    comps = []
    problems = []
    for base in datum.branch_components:
        try:
            pa, selfint = double_cover_pullback(*base)
            comps.append(CurveClass.from_pair(pa, selfint))
        except NumericError as exc:
            problems.append(f"branch curve {base}: {exc}")
    res = CoverResult(datum, k=datum.nodes, kw2=datum.kt2 + datum.minus_one_curves,
                      b0=canonical(comps), problems=problems)
    if problems:
        return res

    if res.k != datum.expected_k:
        problems.append(f"k = {res.k}, expected {datum.expected_k}")
    if res.kw2 != datum.expected_kw2:
        problems.append(f"K_W^2 = {res.kw2}, expected {datum.expected_kw2}")
    want = canonical(CurveClass.from_pair(*p) for p in datum.expected_b0)
    if tuple(c.pair for c in res.b0) != tuple(c.pair for c in want):
        problems.append(f"B0 = {res.b0_text}, expected {format_components(want)}")
    if problems:
        return res

    try:
        profile = quotient_profile(KS2, res.k)
    except NumericError as exc:
        problems.append(str(exc))
        return res
    config = BranchConfig(res.b0, res.kw2, KS2, res.k)
    if config.sum_ddeg != profile.b0D:
        problems.append(f"sum Gamma.D = {config.sum_ddeg}, expected {profile.b0D}")
    if config.sum_kdeg != profile.kw2_budget(res.kw2):
        problems.append(f"K_W.B0 = {config.sum_kdeg}, expected {profile.kw2_budget(res.kw2)}")
    if config.sum_selfint != profile.b0_square(res.kw2):
        problems.append(f"B0^2 = {config.sum_selfint}, expected {profile.b0_square(res.kw2)}")

    if profile.bicanonical_composed:
        if res.kw2 not in profile.kw2_values():
            problems.append(f"K_W^2 = {res.kw2} is not admissible for k = {res.k}")
    else:
        if res.kw2 not in profile.kw2_values():
            problems.append(f"K_W^2 = {res.kw2} is not admissible for k = {res.k}")
            return res
        lo_hi = [kodaira_dimension_range(a.kodaira) for a in profile.admissible if a.kw2 == res.kw2]
        if datum.kodaira == "rational" and not any(lo == -1 for lo, _ in lo_hi):
            problems.append(f"a rational W is incompatible with the profile for k = {res.k}")
        admitted = admitted_configs(KS2, res.k, res.kw2)
        res.in_admitted_set = config.key in {c.key for c in admitted}
        if not res.in_admitted_set:
            problems.append(f"B0 = {res.b0_text} is not among the admitted configurations")
        if res.k == 9:
            survivors = {c.config.key for c in enriques_filter(admitted) if c.survives}
            res.enriques_survivor = config.key in survivors
    return res


def verify_cover_examples(data=COVER_DATA) -> list[CoverResult]:
    return [_check_one(d) for d in data]

