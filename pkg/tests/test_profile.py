import pytest

from invquot.arith import InvalidProfileError
from invquot.profile import (GeneralType, ProperlyElliptic, Rational, UnknownAtMost, allowed_k,
                             is_bicanonical_composed, kodaira_dimension_range, numeric_kw2_range,
                             quotient_profile)


def test_allowed_k():
    assert allowed_k(7) == [5, 7, 9, 11]
    assert allowed_k(1) == [5]
    assert allowed_k(2) == [4, 6]


@pytest.mark.parametrize("ks2", [0, 10, -3])
def test_ks2_out_of_range(ks2):
    with pytest.raises(InvalidProfileError):
        allowed_k(ks2)


@pytest.mark.parametrize("ks2, k", [(7, 6), (7, 13), (7, 3), (2, 5)])
def test_bad_k(ks2, k):
    with pytest.raises(InvalidProfileError):
        quotient_profile(ks2, k)


def test_bicanonical_composed():
    assert is_bicanonical_composed(7, 11)
    assert not is_bicanonical_composed(7, 9)
    assert quotient_profile(7, 11).bicanonical_composed


def test_profile_k9():
    p = quotient_profile(7, 9)
    assert (p.Dsq, p.kwD, p.b0D, p.kv2, p.h0, p.h0_2K_B0) == (14, 2, 10, -2, 1, 7)
    assert p.kw2_values() == [-2]
    assert p.kw2_budget(-2) == 6
    assert p.b0_square(-2) == -2
    assert isinstance(p.admissible[0].kodaira, UnknownAtMost)
    assert p.admissible[0].kodaira.bound == 1


def test_profile_k5():
    p = quotient_profile(7, 5)
    assert (p.kwD, p.b0D, p.h0) == (6, 2, 3)
    assert p.kw2_values() == [2]
    a = p.admissible[0]
    assert isinstance(a.kodaira, GeneralType) and a.kodaira.minimal
    assert (a.kwL, a.Lsq) == (1, -3)


def test_profile_k7():
    p = quotient_profile(7, 7)
    assert p.kw2_values() == [1, 0]
    kinds = {(a.kw2, type(a.kodaira)) for a in p.admissible}
    assert kinds == {(1, GeneralType), (0, ProperlyElliptic), (0, GeneralType)}
    nonminimal = [a for a in p.admissible if isinstance(a.kodaira, GeneralType) and not a.kodaira.minimal]
    assert nonminimal[0].kodaira.minimal_model_k2 == 1


def test_profile_k11():
    p = quotient_profile(7, 11)
    assert (p.kwD, p.b0D) == (0, 14)
    assert p.kw2_values() == [-4]
    assert isinstance(p.admissible[0].kodaira, Rational)
    assert kodaira_dimension_range(p.admissible[0].kodaira) == (-1, -1)


def test_quotient_pairs_for_k2_7():
    # (k, K_W^2) pairs left open for K_S^2 = 7
    pairs = {(k, kw2) for k in allowed_k(7) for kw2 in quotient_profile(7, k).kw2_values()}
    assert pairs == {(5, 2), (7, 1), (7, 0), (9, -2), (11, -4)}


def test_reference_inside_numeric_range():
    for k in allowed_k(7):
        p = quotient_profile(7, k)
        assert set(p.kw2_values()) <= set(p.numeric_kw2)


def test_empty_numeric_range():
    assert numeric_kw2_range(9, 5) == []
    assert quotient_profile(9, 5).kw2_values() == []


@pytest.mark.parametrize("ks2", range(1, 10))
def test_profile_identities(ks2):
    for k in allowed_k(ks2):
        p = quotient_profile(ks2, k)
        assert p.Dsq == 2 * ks2
        assert p.kwD == ks2 + 4 - k == 2 * p.h0
        assert p.b0D == 2 * k - 8
        assert p.h0_2K_B0 >= 0
        for a in p.admissible:
            assert p.kv2 <= a.kw2
            assert a.kw2 * p.Dsq <= p.kwD ** 2
            assert a.kwL == p.h0 - a.kw2
            assert a.Lsq == -2 - a.kwL
        if ks2 != 7:
            assert p.numeric_only
            assert all(kodaira_dimension_range(a.kodaira) == (-1, 2) for a in p.admissible)
