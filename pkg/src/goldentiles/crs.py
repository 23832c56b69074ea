"""Conway-Radin-Sadun basis angles ``<p>_d`` and the two golden decompositions.

``<p>_d = (1/s) arccos(a / (2 p^(s/2)))`` where ``4 p^s = a^2 + d b^2`` is
solved with the smallest admissible exponent ``s``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .angles import ALPHA, GAMMA, AngleExpr, golden_angles_numeric
from .exactnum import GoldenNumber, mpctx

MAX_EXPONENT = 20
TOLERANCE = 1e-12


class InvalidPair(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % q for q in range(2, math.isqrt(n) + 1))


def _is_squarefree(n: int) -> bool:
    return n > 0 and all(n % (q * q) for q in range(2, math.isqrt(n) + 1))


def _admissible_b(d: int, b: int) -> bool:
    if b == 0:
        return False
    if d == 3:
        return b % 2 == 0
    if d == 1:
        return b % 4 == 0
    return True


def validate_pair(p: int, d: int) -> None:
    if not _is_prime(p):
        raise InvalidPair(f"{p} is not prime")
    if not _is_squarefree(d):
        raise InvalidPair(f"d = {d} is not a positive squarefree integer")
    if p == 2:
        if d % 8 != 7:
            raise InvalidPair("p = 2 needs d = 7 mod 8")
    elif pow(-d % p, (p - 1) // 2, p) != 1:
        raise InvalidPair(f"-{d} is not a nonzero square modulo {p}")


def _solutions(p: int, d: int, s: int) -> list[tuple[int, int]]:
    target = 4 * p**s
    out = []
    b = 1
    while d * b * b <= target:
        rest = target - d * b * b
        a = math.isqrt(rest)
        if a * a == rest and _admissible_b(d, b):
            out.extend({(a, b), (-a, b)})
        b += 1
    return out


@dataclass(frozen=True)
class CrsAngle:
    p: int
    d: int
    s: int
    a: int
    b: int

    @property
    def label(self) -> tuple[int, int]:
        return (self.p, self.d)

    def cosine_of_multiple(self):
        """``cos(s * value)`` as a high-precision real."""
        ctx = mpctx()
        return ctx.mpf(self.a) / (2 * ctx.sqrt(ctx.mpf(self.p) ** self.s))

    def numeric(self):
        ctx = mpctx()
        return ctx.acos(self.cosine_of_multiple()) / self.s

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "d": self.d,
            "s": self.s,
            "a": self.a,
            "b": self.b,
            "value_decimal_string": mpctx().nstr(self.numeric(), 30),
        }


def crs_construct(p: int, d: int) -> CrsAngle:
    """Smallest ``s`` with an admissible solution; among those, smallest ``|a|``
    with ties going to ``a >= 0``, then smallest ``b``."""
    validate_pair(p, d)
    for s in range(1, MAX_EXPONENT + 1):
        sols = _solutions(p, d, s)
        if sols:
            a, b = min(sols, key=lambda ab: (abs(ab[0]), ab[0] < 0, ab[1]))
            return CrsAngle(p, d, s, a, b)
    raise InvalidPair(f"no solution of 4*{p}^s = a^2 + {d}*b^2 with s <= {MAX_EXPONENT}")


def exponent_is_minimal(angle: CrsAngle) -> bool:
    return all(not _solutions(angle.p, angle.d, s) for s in range(1, angle.s))


def is_pure_geodetic(cos2: GoldenNumber) -> bool:
    """True iff the squared sine ``1 - cos2`` is rational."""
    return (1 - GoldenNumber.coerce(cos2)).is_rational()


def evaluate(expr: AngleExpr):
    """Numeric value of an angle expression that may contain CRS terms."""
    ctx = mpctx()
    total = AngleExpr(expr.pi_coeff, expr.beta_coeff, expr.delta_coeff).numeric()
    for (p, d), c in expr.crs_terms:
        total += ctx.mpf(c.numerator) / c.denominator * crs_construct(p, d).numeric()
    return total


ALPHA_AS_CRS = AngleExpr(crs_terms={(5, 1): 1})
GAMMA_AS_CRS = AngleExpr(pi_coeff=Fraction(1, 2), crs_terms={(3, 5): -2})


def verify_decompositions() -> dict:
    """Check alpha = <5>_1 and gamma = pi/2 - 2<3>_5 numerically."""
    ctx = mpctx()
    beta, delta = golden_angles_numeric()
    alpha = ctx.pi - beta - delta
    gamma = delta - beta
    err_alpha = abs(alpha - evaluate(ALPHA_AS_CRS))
    err_gamma = abs(gamma - evaluate(GAMMA_AS_CRS))
    labels = [t[0] for t in ALPHA_AS_CRS.crs_terms + GAMMA_AS_CRS.crs_terms]
    distinct = len(set(labels)) == len(labels)
    return {
        "precision_bits": ctx.prec,
        "alpha_error": float(err_alpha),
        "gamma_error": float(err_gamma),
        "alpha_ok": err_alpha < TOLERANCE,
        "gamma_ok": err_gamma < TOLERANCE,
        "distinct_basis_labels": distinct,
        "independent": distinct and err_alpha < TOLERANCE and err_gamma < TOLERANCE,
        "alpha": str(ALPHA),
        "gamma": str(GAMMA),
    }
