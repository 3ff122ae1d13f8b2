"""Exact integer formulas for curves on the resolved quotient surface.

A branch component is recorded as ``(pa, selfint, ddeg)``: arithmetic genus,
self-intersection, and intersection number with ``D = 2K_W + B0``.  All
functions here are pure and work on Python ints, so there is no overflow.
"""

from __future__ import annotations

from dataclasses import dataclass


class NumericError(ValueError):
    """Base class for violated numeric preconditions."""


class ParityError(NumericError):
    pass


class InvalidProfileError(NumericError):
    pass


@dataclass(frozen=True, order=True)
class CurveClass:
    pa: int
    selfint: int
    ddeg: int

    def __post_init__(self):
        if self.pa < 0:
            raise NumericError(f"negative arithmetic genus in {self}")
        if self.ddeg < 0 or self.ddeg % 2:
            raise ParityError(f"Gamma.D must be even and nonnegative, got {self.ddeg}")
        if self.ddeg == 0 and (self.pa, self.selfint) != (0, -4):
            raise NumericError(f"a branch curve with Gamma.D = 0 is a (-4)-curve, got {self}")

    @classmethod
    def from_pair(cls, pa: int, selfint: int) -> "CurveClass":
        """Build a branch class from ``(pa, selfint)``; ``ddeg`` is forced.

        Inverting ``pa = 1 + (selfint + ddeg)/4`` gives ``ddeg = 4(pa - 1) - selfint``.
        """
        return cls(pa, selfint, 4 * (pa - 1) - selfint)

    @property
    def pair(self) -> tuple[int, int]:
        return (self.pa, self.selfint)

    @property
    def kdeg(self) -> int:
        return adjunction_degree(self)

    def __str__(self):
        return f"({self.pa},{self.selfint})"


def sort_key(c: CurveClass) -> tuple[int, int, int]:
    # canonical order: descending ddeg, then descending selfint
    return (-c.ddeg, -c.selfint, -c.pa)


def adjunction_degree(c: CurveClass) -> int:
    """K_W . Gamma from the genus formula ``2 pa - 2 = Gamma^2 + K.Gamma``."""
    return 2 * c.pa - 2 - c.selfint


def hodge_admissible(ddeg: int, selfint: int, Dsq: int) -> bool:
    """Algebraic index test ``selfint * D^2 <= (Gamma.D)^2`` against nef and big D."""
    if Dsq <= 0:
        raise InvalidProfileError(f"D^2 must be positive for nef and big D, got {Dsq}")
    if ddeg < 0:
        raise ValueError(f"Gamma.D must be nonnegative, got {ddeg}")
    return selfint * Dsq <= ddeg * ddeg


def halfbranch_genus(c: CurveClass) -> int:
    """Arithmetic genus of the reduced preimage of ``c`` on the double cover V.

    The preimage has self-intersection ``selfint/2`` and meets ``K_V`` in
    ``ddeg/2``, so its genus is ``1 + (selfint + ddeg)/4``.
    """
    total = c.selfint + c.ddeg
    if total % 4:
        raise ParityError(f"selfint + ddeg = {total} is not divisible by 4 for {c}")
    return 1 + total // 4


def double_cover_pullback(base_pa: int, base_selfint: int, branch_meet: int) -> tuple[int, int]:
    """Class of the preimage of a base curve under a double cover.

    Hurwitz: ``2 pa - 2 = 2 (2 base_pa - 2) + branch_meet``; the self-intersection
    doubles.
    """
    if branch_meet < 0:
        raise ValueError(f"branch_meet must be nonnegative, got {branch_meet}")
    if branch_meet % 2:
        raise ParityError(f"odd branch intersection {branch_meet}: no smooth double cover")
    return (2 * base_pa - 1 + branch_meet // 2, 2 * base_selfint)


def blowdown_pushforward(c: CurveClass | tuple[int, int], beta: int) -> tuple[int, int]:
    """Image of a curve under the two successive (-1)-contractions W -> W1 -> W'.

    The curve meets the first exceptional curve with multiplicity ``beta``, and
    the image of the attached nodal curve (the second exceptional curve) with
    the same multiplicity.  Each contraction adds ``beta^2`` to the
    self-intersection and ``beta(beta-1)/2`` to the arithmetic genus.
    """
    if beta < 0:
        raise ValueError(f"beta must be nonnegative, got {beta}")
    pa, selfint = c.pair if isinstance(c, CurveClass) else c
    return (pa + beta * (beta - 1), selfint + 2 * beta * beta)
