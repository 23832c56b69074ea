from fractions import Fraction

import pytest
import sympy

from goldentiles import reference
from goldentiles.exactnum import TAU, GoldenNumber, Matrix
from goldentiles.inflation import (
    InvariantSystem,
    OverDetermined,
    PowerCoefficients,
    RationalityNotAssumed,
    SearchTooLarge,
    SingularSystem,
    UnderDetermined,
    area_covering_decide,
    constraint_matrices,
    covering_brute_force,
    covering_certificate,
    eigen_residuals,
    fibonacci,
    fibonacci_power_check,
    galois_split,
    golden_tetrahedra_system,
    integrality_spectrum,
    matrix_power,
    polynomial_at_matrix,
    psi_sequence,
    reconstruct_matrix,
    satisfies_eigen_relations,
)

G = GoldenNumber


def test_galois_split_volume_column():
    (x1, x0), (y1, y0) = galois_split(reference.VGT.values(), TAU**3)
    assert x1 == (2, 0, 1, 1, 1, 1) and x0 == (1, 1, 1, 0, 1, 0)
    assert y1 == (8, 2, 5, 3, 5, 3) and y0 == (5, 1, 3, 2, 3, 2)


def test_constraint_matrices_match_printed(catalog):
    x, y = constraint_matrices(golden_tetrahedra_system(catalog))
    assert x == reference.EQI_X
    assert y == reference.EQI_Y


def test_reconstruct_golden_tetrahedra(catalog):
    system = golden_tetrahedra_system(catalog)
    m = reconstruct_matrix(system)
    assert m == reference.M_GT
    assert m[2, 0] == Fraction(1, 2) and m[5, 1] == Fraction(1, 2)
    assert satisfies_eigen_relations(m, system)


def test_eigen_relations_printed_right_hand_sides(catalog):
    vol = [reference.VGT[n] for n in reference.GOLDEN_NAMES]
    beta = [reference.DGT[n][0] for n in reference.GOLDEN_NAMES]
    delta = [reference.DGT[n][1] for n in reference.GOLDEN_NAMES]
    m = reference.M_GT
    assert m @ vol == reference.MVGT_RHS
    assert m @ beta == reference.MDGTB_RHS
    assert m @ delta == reference.MDGTD_RHS


def test_reconstruct_refuses_without_rationality():
    system = InvariantSystem((1, 2), ((1, 0),))
    with pytest.raises(RationalityNotAssumed):
        reconstruct_matrix(system)


def test_reconstruct_counts():
    with pytest.raises(UnderDetermined):
        reconstruct_matrix(InvariantSystem((1, 2, 3), (), assume_rational=True))
    with pytest.raises(OverDetermined):
        reconstruct_matrix(InvariantSystem((1,), (), assume_rational=True))


def test_reconstruct_singular():
    # rational volumes: the tau^1 column vanishes
    with pytest.raises(SingularSystem):
        reconstruct_matrix(InvariantSystem((1, 2), (), assume_rational=True))


def test_residuals_detect_wrong_matrix(catalog):
    system = golden_tetrahedra_system(catalog)
    assert not satisfies_eigen_relations(Matrix.identity(6), system)
    assert any(any(r) for r in eigen_residuals(Matrix.identity(6), system))


def test_printed_powers():
    m = reference.M_GT
    assert matrix_power(m, 3) == reference.M_GT_CUBED
    sq = matrix_power(m, 2)
    # the printed square differs from the true square in one cell
    diff = [(i, j) for i in range(6) for j in range(6) if sq[i, j] != reference.M_GT_SQUARED[i, j]]
    assert diff == [(1, 3)]
    assert sq[1, 3] == 1 and reference.M_GT_SQUARED[1, 3] == 2


def test_square_cell_confirmed_by_eigenvector():
    vol = [reference.VGT[n] for n in reference.GOLDEN_NAMES]
    sq = matrix_power(reference.M_GT, 2)
    assert sq @ vol == tuple(TAU**6 * v for v in vol)
    assert reference.M_GT_SQUARED @ vol != tuple(TAU**6 * v for v in vol)


def test_matrix_power_matches_sympy():
    sm = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in r] for r in reference.M_GT])
    for k in (1, 4, 7):
        got = matrix_power(reference.M_GT, k)
        assert [[sympy.Rational(v.numerator, v.denominator) for v in r] for r in got] == (sm**k).tolist()


def test_integrality_spectrum():
    spec = integrality_spectrum(reference.M_GT, 30)
    assert [k for k, ok in spec if ok] == list(range(3, 31, 3))


def test_minimal_polynomial():
    assert polynomial_at_matrix(reference.CHI, reference.M_GT) == Matrix.zeros(6, 6)
    x = sympy.symbols("x")
    sm = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in r] for r in reference.M_GT])
    charpoly = sm.charpoly(x).as_expr()
    chi = x**4 - 5 * x**3 + 2 * x**2 + 5 * x + 1
    assert sympy.expand(charpoly - chi * (x**2 - x - 1)) == 0
    assert sum(reference.M_GT[i, i] for i in range(6)) == 6


def test_power_coefficients_against_polynomial_remainder():
    x = sympy.symbols("x")
    chi = x**4 - 5 * x**3 + 2 * x**2 + 5 * x + 1
    for n in range(1, 16):
        r = sympy.Poly(sympy.rem(x**n, chi, x), x)
        want = [int(r.coeff_monomial(x**k)) for k in (3, 2, 1, 0)]
        pc = PowerCoefficients.for_power(n)
        assert [pc.a, pc.b, pc.c, pc.d] == want, n


def test_power_coefficient_examples():
    assert PowerCoefficients.for_power(1) == PowerCoefficients(1, 0, 0, 1, 0)
    assert PowerCoefficients.for_power(4).a == 5


def test_quadratic_coefficient_parity():
    # a_{n+1} - a_n has the parity of the true quadratic coefficient
    for n in range(1, 40):
        pc = PowerCoefficients.for_power(n)
        assert pc.b % 2 == pc.b_mod2


@pytest.mark.parametrize("n", range(1, 16))
def test_fibonacci_power_check(n):
    assert fibonacci_power_check(reference.M_GT, n)


def test_fibonacci_parity():
    assert all((fibonacci(n) % 2 == 0) == (n % 3 == 0) for n in range(61))


def test_covering_brute_force_finds_nothing():
    for k in range(1, 9):
        assert covering_brute_force(k) is None
        assert covering_certificate(k).valid


def test_covering_brute_force_bound():
    with pytest.raises(SearchTooLarge):
        covering_brute_force(9)


def test_covering_naive_enumeration_agrees():
    # independent oracle: every alpha with alpha_i * sigma^i <= sigma^k, checked numerically first
    import itertools

    sigma = TAU * TAU
    s = float(sigma.numeric())
    for k in range(1, 5):
        bounds = [int(s ** (k - i)) + 1 for i in range(k)]
        hits = []
        for alphas in itertools.product(*(range(b + 1) for b in bounds)):
            if alphas[0] == 0:
                continue
            if abs(sum(a * s**i for i, a in enumerate(alphas)) - s**k) < 1e-6:
                if sum((sigma**i * a for i, a in enumerate(alphas)), G(0)) == sigma**k:
                    hits.append(alphas)
        assert hits == []
        assert covering_brute_force(k) is None


def test_covering_certificates_up_to_100():
    for k in range(2, 101):
        c = covering_certificate(k)
        assert c.valid
        assert c.psi == tuple(fibonacci(2 * n + 2) for n in range(k))
    assert psi_sequence(5) == (1, 3, 8, 21, 55)
    assert covering_certificate(1).conclusion == "sigma is irrational"


def test_area_covering():
    d = area_covering_decide([], [1], [])
    assert not d.holds and any("golden triangles" in v for v in d.violations)
    d = area_covering_decide([0, 1], [], [])
    assert not d.holds and "p1(tau^-2) != 1" in d.violations
    for p1 in ([0, 2], [0, 1, 1], [0, 3, 0, 1], [0, 0, 0, 0, 7]):
        d = area_covering_decide(p1, [], [])
        assert not d.holds
        assert d.certificate is not None and d.certificate.valid
    with pytest.raises(ValueError):
        area_covering_decide([1], [], [])
