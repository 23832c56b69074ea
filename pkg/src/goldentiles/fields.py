"""Structural facts about the tower Q[tau, rho, sqrt3], checked exactly."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .exactnum import (
    GOLDEN_ONE,
    RHO,
    SQRT3,
    TAU,
    TOWER_ONE,
    TOWER_TAU,
    TOWER_ZERO,
    GoldenNumber,
    Matrix,
    TowerElement,
    is_square_in_qtau,
)

# x^4 - 5x^2 + 5, lowest degree first; its roots are +-rho and +-(tau - 1) rho
RHO_MIN_POLY = (5, 0, -5, 0, 1)


def is_eisenstein(coeffs: Sequence[int], p: int) -> bool:
    """Eisenstein's criterion at ``p`` for an integer polynomial, lowest degree first."""
    *lower, lead = coeffs
    return lead % p != 0 and all(c % p == 0 for c in lower) and lower[0] % (p * p) != 0


def poly_at(coeffs: Sequence[int], x: TowerElement) -> TowerElement:
    acc = TOWER_ZERO
    for c in reversed(coeffs):
        acc = acc * x + TowerElement.coerce(c)
    return acc


def rho_conjugates() -> tuple[TowerElement, ...]:
    r2 = (TOWER_TAU - TOWER_ONE) * RHO
    return (RHO, -RHO, r2, -r2)


def sigma_order(x: TowerElement = RHO + SQRT3 + TOWER_TAU) -> int:
    """Order of sigma on a generator of the tower."""
    y = x.sigma()
    k = 1
    while y != x:
        y = y.sigma()
        k += 1
        if k > 8:
            raise ArithmeticError("sigma has order > 8")
    return k


def sigma_squared_on_qrho() -> Matrix:
    """Matrix of sigma^2 on the Q[rho] block, basis (1, tau, rho, tau*rho)."""
    basis = [TOWER_ONE, TOWER_TAU, RHO, TOWER_TAU * RHO]
    cols = []
    for b in basis:
        img = b.sigma().sigma().coeffs
        cols.append(img[:4])
        if any(img[4:]):
            raise ArithmeticError("sigma^2 leaves the Q[rho] block")
    return Matrix.from_columns(cols)


def fixed_space_basis(m: Matrix) -> list[tuple[Fraction, ...]]:
    """Basis of ``ker(m - I)`` in reduced row echelon form."""
    n = m.shape[0]
    a = [list(r) for r in (m - Matrix.identity(n)).rows]
    pivots = []
    row = 0
    for c in range(n):
        p = next((i for i in range(row, n) if a[i][c] != 0), None)
        if p is None:
            continue
        a[row], a[p] = a[p], a[row]
        inv = 1 / a[row][c]
        a[row] = [v * inv for v in a[row]]
        for i in range(n):
            if i != row and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[row])]
        pivots.append(c)
        row += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -a[r][f]
        basis.append(tuple(v))
    return basis


def field_tower_report() -> dict:
    roots = rho_conjugates()
    fixed = fixed_space_basis(sigma_squared_on_qrho())
    span_1_tau = {(1, 0, 0, 0), (0, 1, 0, 0)}
    qrho = [TOWER_ONE, TOWER_TAU, RHO, TOWER_TAU * RHO]
    return {
        "eisenstein_at_5": is_eisenstein(RHO_MIN_POLY, 5),
        "roots_vanish": all(not poly_at(RHO_MIN_POLY, r) for r in roots),
        "sigma_order": sigma_order(),
        "phi_order": 2 if SQRT3.phi().phi() == SQRT3 and SQRT3.phi() != SQRT3 else None,
        "sigma_phi_commute": all(
            x.sigma().phi() == x.phi().sigma() for x in (RHO, SQRT3, RHO * SQRT3, TOWER_TAU)
        ),
        "sigma_squared_fixed_dimension": len(fixed),
        "sigma_squared_fixed_is_span_1_tau": {tuple(int(c) for c in v) for v in fixed} == span_1_tau
        and all(c.denominator == 1 for v in fixed for c in v),
        "sqrt3_in_qtau": is_square_in_qtau(GoldenNumber(3)) is not None,
        "phi_fixes_qrho": all(b.phi() == b for b in qrho),
        "golden_one_square": is_square_in_qtau(GOLDEN_ONE) == GOLDEN_ONE,
        "tau_square_root": is_square_in_qtau(TAU * TAU) == TAU,
    }


def field_tower_ok(report: dict | None = None) -> bool:
    r = report or field_tower_report()
    return (
        r["eisenstein_at_5"]
        and r["roots_vanish"]
        and r["sigma_order"] == 4
        and r["phi_order"] == 2
        and r["sigma_phi_commute"]
        and r["sigma_squared_fixed_dimension"] == 2
        and r["sigma_squared_fixed_is_span_1_tau"]
        and not r["sqrt3_in_qtau"]
        and r["phi_fixes_qrho"]
    )
