"""Numeric invariants of the quotient of a p_g = q = 0 surface by an involution.

For a pair ``(K_S^2, k)`` this derives ``D^2``, ``K_W.D``, ``B0.D``, ``K_V^2``,
``h^0(2K_W + L)`` and the admissible values of ``K_W^2``.  For ``K_S^2 = 7``
the admissible list carries the Kodaira-class conclusions established by a
geometric case analysis; for every other ``K_S^2`` only numeric constraints
are applied and the result is flagged numeric-only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .arith import InvalidProfileError

KS2_RANGE = range(1, 10)
REFERENCE_KS2 = 7


@dataclass(frozen=True)
class Rational:
    def label(self) -> str:
        return "rational surface"

    def as_dict(self) -> dict:
        return {"class": "rational"}


@dataclass(frozen=True)
class EnriquesBirational:
    def label(self) -> str:
        return "birational to an Enriques surface"

    def as_dict(self) -> dict:
        return {"class": "enriques_birational"}


@dataclass(frozen=True)
class ProperlyElliptic:
    minimal: bool = True

    def label(self) -> str:
        return ("minimal " if self.minimal else "") + "properly elliptic"

    def as_dict(self) -> dict:
        return {"class": "properly_elliptic", "minimal": self.minimal}


@dataclass(frozen=True)
class GeneralType:
    minimal: bool = True
    minimal_model_k2: int | None = None

    def label(self) -> str:
        if self.minimal:
            return "minimal of general type"
        if self.minimal_model_k2 is None:
            return "of general type"
        return f"of general type whose minimal model has K^2={self.minimal_model_k2}"

    def as_dict(self) -> dict:
        return {"class": "general_type", "minimal": self.minimal,
                "minimal_model_k2": self.minimal_model_k2}


@dataclass(frozen=True)
class UnknownAtMost:
    bound: int = 2

    def __post_init__(self):
        if self.bound not in (-1, 0, 1, 2):
            raise ValueError(f"Kodaira dimension bound must lie in -1..2, got {self.bound}")

    def label(self) -> str:
        return f"kappa(W) <= {self.bound}"

    def as_dict(self) -> dict:
        return {"class": "unknown", "kappa_at_most": self.bound}


KodairaClass = Union[Rational, EnriquesBirational, ProperlyElliptic, GeneralType, UnknownAtMost]


@dataclass(frozen=True)
class Admissible:
    """One admissible ``(K_W^2, Kodaira class)`` pair with the L-data it forces."""

    kw2: int
    kodaira: KodairaClass
    kwL: int
    Lsq: int
    constrained_by: tuple[str, ...] = ()


@dataclass(frozen=True)
class QuotientProfile:
    ks2: int
    k: int
    Dsq: int
    kwD: int
    b0D: int
    kv2: int
    h0: int
    h0_2K_B0: int
    numeric_kw2: tuple[int, ...]
    admissible: tuple[Admissible, ...] = field(default=())
    numeric_only: bool = True

    @property
    def bicanonical_composed(self) -> bool:
        return self.k == self.ks2 + 4

    def kw2_values(self) -> list[int]:
        """Distinct admissible K_W^2 values, descending."""
        return sorted({a.kw2 for a in self.admissible}, reverse=True)

    def kw2_budget(self, kw2: int) -> int:
        """``K_W . B0 = K_W . D - 2 K_W^2``."""
        return self.kwD - 2 * kw2

    def b0_square(self, kw2: int) -> int:
        """``B0^2 = (D - 2K_W)^2``."""
        return self.Dsq - 4 * self.kwD + 4 * kw2


def _check_ks2(ks2: int) -> None:
    if ks2 not in KS2_RANGE:
        raise InvalidProfileError(f"K_S^2 must lie in [1, 9], got {ks2}")


def allowed_k(ks2: int) -> list[int]:
    """Numbers of isolated fixed points ``k = K_S^2 + 4 - 2h`` with ``h >= 0`` and ``k >= 4``, ascending."""
    _check_ks2(ks2)
    top = ks2 + 4
    return [k for k in range(4, top + 1) if (top - k) % 2 == 0]


def is_bicanonical_composed(ks2: int, k: int) -> bool:
    return k == ks2 + 4


def numeric_kw2_range(ks2: int, k: int) -> list[int]:
    """K_W^2 values allowed by ``K_W^2 >= K_V^2`` and the index bound ``K_W^2 D^2 <= (K_W D)^2``."""
    kv2 = ks2 - k
    kwD = ks2 + 4 - k
    Dsq = 2 * ks2
    upper = (kwD * kwD) // Dsq
    return list(range(kv2, upper + 1))


NUMERIC_KV2 = "NUM-KV2"
NUMERIC_INDEX = "NUM-INDEX-KW"

# Conclusions for K_S^2 = 7, keyed by k.  Each entry lists the rule ids that
# narrowed the numeric range down to it; the ids are described in rules.py.
_REFERENCE_TABLE: dict[int, list[tuple[int, KodairaClass, tuple[str, ...]]]] = {
    11: [(-4, Rational(), (NUMERIC_KV2, NUMERIC_INDEX, "THM-K11"))],
    9: [(-2, UnknownAtMost(1), (NUMERIC_KV2, NUMERIC_INDEX, "THM-K9"))],
    7: [
        (1, GeneralType(minimal=True), (NUMERIC_KV2, NUMERIC_INDEX, "THM-K7")),
        (0, ProperlyElliptic(minimal=True), (NUMERIC_KV2, NUMERIC_INDEX, "THM-K7")),
        (0, GeneralType(minimal=False, minimal_model_k2=1), (NUMERIC_KV2, NUMERIC_INDEX, "THM-K7")),
    ],
    5: [(2, GeneralType(minimal=True), (NUMERIC_KV2, NUMERIC_INDEX, "THM-K5"))],
}


def quotient_profile(ks2: int, k: int) -> QuotientProfile:
    _check_ks2(ks2)
    if k < 4 or (ks2 + 4 - k) % 2 or k > ks2 + 4:
        raise InvalidProfileError(f"k={k} is not an admissible fixed-point count for K_S^2={ks2}")
    h0 = (ks2 + 4 - k) // 2
    kwD = 2 * h0
    numeric = numeric_kw2_range(ks2, k)

    if ks2 == REFERENCE_KS2:
        rows = _REFERENCE_TABLE[k]
        numeric_only = False
    else:
        rows = [(kw2, UnknownAtMost(2), (NUMERIC_KV2, NUMERIC_INDEX)) for kw2 in reversed(numeric)]
        numeric_only = True

    admissible = tuple(
        Admissible(kw2=kw2, kodaira=kod, kwL=h0 - kw2, Lsq=-2 - (h0 - kw2), constrained_by=cites)
        for kw2, kod, cites in rows
    )
    return QuotientProfile(
        ks2=ks2, k=k, Dsq=2 * ks2, kwD=kwD, b0D=2 * k - 8, kv2=ks2 - k, h0=h0,
        h0_2K_B0=ks2 + 1 - h0, numeric_kw2=tuple(numeric), admissible=admissible,
        numeric_only=numeric_only,
    )


def kodaira_dimension_range(kod: KodairaClass) -> tuple[int, int]:
    """Interval of Kodaira dimensions a class allows."""
    if isinstance(kod, Rational):
        return (-1, -1)
    if isinstance(kod, EnriquesBirational):
        return (0, 0)
    if isinstance(kod, ProperlyElliptic):
        return (1, 1)
    if isinstance(kod, GeneralType):
        return (2, 2)
    return (-1, kod.bound)
