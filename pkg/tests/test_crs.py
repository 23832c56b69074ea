import math

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from goldentiles.angles import ALPHA, BETA, DELTA, GAMMA, exact_cos
from goldentiles.crs import (
    ALPHA_AS_CRS,
    GAMMA_AS_CRS,
    CrsAngle,
    InvalidPair,
    crs_construct,
    evaluate,
    exponent_is_minimal,
    is_pure_geodetic,
    validate_pair,
    verify_decompositions,
)
from goldentiles.exactnum import mpctx


def oracle(p, d, smax=12):
    """Naive search over a (not b) for the first exponent with an admissible solution."""
    for s in range(1, smax + 1):
        target = 4 * p**s
        found = []
        for a in range(-math.isqrt(target), math.isqrt(target) + 1):
            rest = target - a * a
            if rest <= 0 or rest % d:
                continue
            b = math.isqrt(rest // d)
            if b * b * d != rest:
                continue
            if d == 3 and b % 2:
                continue
            if d == 1 and b % 4:
                continue
            found.append((a, b))
        if found:
            return s, found
    return None


VALID = [(5, 1), (3, 5), (2, 7), (3, 2), (7, 3), (13, 1), (11, 2), (17, 1), (7, 5), (19, 3)]


@pytest.mark.parametrize("p, d", VALID)
def test_construct_matches_naive_search(p, d):
    angle = crs_construct(p, d)
    s, found = oracle(p, d)
    assert angle.s == s
    assert (angle.a, angle.b) in found
    assert abs(angle.a) == min(abs(a) for a, _ in found)
    assert exponent_is_minimal(angle)
    assert 4 * p**angle.s == angle.a**2 + d * angle.b**2


@pytest.mark.parametrize("p, d", VALID)
def test_cosine_of_multiple(p, d):
    angle = crs_construct(p, d)
    ctx = mpctx()
    lhs = ctx.cos(angle.s * angle.numeric()) * 2 * ctx.sqrt(ctx.mpf(p) ** angle.s)
    assert abs(lhs - angle.a) < 1e-25
    assert 0 <= angle.numeric() <= ctx.pi / angle.s


def test_frozen_examples():
    assert crs_construct(5, 1) == CrsAngle(5, 1, 1, 2, 4)
    assert crs_construct(3, 5) == CrsAngle(3, 5, 2, 4, 2)


@pytest.mark.parametrize("p, d", [(2, 3), (4, 1), (5, 4), (3, 1), (5, 2), (1, 1), (2, 1)])
def test_invalid_pairs(p, d):
    with pytest.raises(InvalidPair):
        crs_construct(p, d)
    with pytest.raises(InvalidPair):
        validate_pair(p, d)


def test_residue_must_be_nonzero():
    # -5 = 0 mod 5: a^2 + 5 b^2 = 4 * 5^s forces 5 | a
    with pytest.raises(InvalidPair):
        validate_pair(5, 5)


@given(st.sampled_from([p for p in range(3, 60) if all(p % q for q in range(2, p))]), st.integers(1, 30))
def test_euler_criterion_agrees_with_search(p, d):
    squarefree = all(d % (q * q) for q in range(2, d + 1))
    if not squarefree:
        return
    residue = any((x * x + d) % p == 0 for x in range(1, p))
    try:
        validate_pair(p, d)
        accepted = True
    except InvalidPair:
        accepted = False
    assert accepted == residue


def test_decompositions():
    rep = verify_decompositions()
    assert rep["alpha_ok"] and rep["gamma_ok"]
    assert rep["distinct_basis_labels"] and rep["independent"]
    assert rep["alpha_error"] < 1e-12 and rep["gamma_error"] < 1e-12


def test_decompositions_independent_of_library():
    with mpmath.workprec(128):
        alpha = mpmath.acos(1 / mpmath.sqrt(5))
        gamma = mpmath.acos(mpmath.sqrt(5) / 3)
        three_five = mpmath.acos(mpmath.mpf(4) / 6) / 2
        assert abs(alpha - evaluate(ALPHA_AS_CRS)) < 1e-30
        assert abs(gamma - (mpmath.pi / 2 - 2 * three_five)) < 1e-30
        assert abs(gamma - evaluate(GAMMA_AS_CRS)) < 1e-30


def test_pure_geodetic():
    # cos^2 alpha = 1/5 and cos^2 gamma = 5/9 are rational, so both are pure geodetic
    for angle in (ALPHA, GAMMA):
        c = exact_cos(angle)
        assert is_pure_geodetic((c * c).golden_part())
    for angle in (BETA, DELTA):
        c = exact_cos(angle)
        assert not is_pure_geodetic((c * c).golden_part())


def test_to_json():
    j = crs_construct(5, 1).to_json()
    assert (j["p"], j["d"], j["s"], j["a"], j["b"]) == (5, 1, 1, 2, 4)
    assert j["value_decimal_string"].startswith("1.10714871779409")
