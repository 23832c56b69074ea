"""Residue classes of angles mod pi on the golden lattice, exact trigonometry,
and Dehn-invariant normal forms.

Every dihedral angle of a golden tetrahedron is ``q*pi + m*beta + n*delta``.
The angles alpha and gamma are not basis symbols; they enter as
``alpha = pi - beta - delta`` and ``gamma = delta - beta``.
"""

from __future__ import annotations

import bisect
import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .exactnum import (
    GOLDEN_ZERO,
    RHO,
    SQRT3,
    TAU,
    TOWER_ONE,
    TOWER_ZERO,
    GoldenNumber,
    TowerElement,
    as_fraction,
    fraction_to_str,
    mpctx,
    precision_bits,
    tower_sqrt,
)


class UnsupportedExpr(ValueError):
    pass


class NotIdentified(LookupError):
    pass


@dataclass(frozen=True)
class AngleExpr:
    """Real angle ``pi_coeff*pi + beta_coeff*beta + delta_coeff*delta (+ CRS terms)``.

    ``crs_terms`` maps ``(p, d)`` basis labels to rational coefficients; it is
    only populated by :mod:`goldentiles.crs`.
    """

    pi_coeff: Fraction = Fraction(0)
    beta_coeff: Fraction = Fraction(0)
    delta_coeff: Fraction = Fraction(0)
    crs_terms: tuple[tuple[tuple[int, int], Fraction], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "pi_coeff", as_fraction(self.pi_coeff))
        object.__setattr__(self, "beta_coeff", as_fraction(self.beta_coeff))
        object.__setattr__(self, "delta_coeff", as_fraction(self.delta_coeff))
        terms = dict(self.crs_terms) if not isinstance(self.crs_terms, Mapping) else self.crs_terms
        norm = tuple(sorted((tuple(k), as_fraction(v)) for k, v in terms.items() if v != 0))
        object.__setattr__(self, "crs_terms", norm)

    def _combine(self, other: AngleExpr, sign: int) -> AngleExpr:
        terms = dict(self.crs_terms)
        for k, v in other.crs_terms:
            terms[k] = terms.get(k, Fraction(0)) + sign * v
        return AngleExpr(
            self.pi_coeff + sign * other.pi_coeff,
            self.beta_coeff + sign * other.beta_coeff,
            self.delta_coeff + sign * other.delta_coeff,
            terms,
        )

    def __add__(self, other):
        if not isinstance(other, AngleExpr):
            return NotImplemented
        return self._combine(other, 1)

    def __sub__(self, other):
        if not isinstance(other, AngleExpr):
            return NotImplemented
        return self._combine(other, -1)

    def __neg__(self):
        return self * -1

    def __mul__(self, k):
        k = as_fraction(k)
        return AngleExpr(
            self.pi_coeff * k,
            self.beta_coeff * k,
            self.delta_coeff * k,
            {key: v * k for key, v in self.crs_terms},
        )

    __rmul__ = __mul__

    def reduced(self) -> AngleExpr:
        """Image in R/pi-Q: drop the rational multiple of pi."""
        return AngleExpr(0, self.beta_coeff, self.delta_coeff, dict(self.crs_terms))

    def numeric(self):
        if self.crs_terms:
            raise UnsupportedExpr("CRS terms are evaluated by goldentiles.crs")
        ctx = mpctx()
        b, d = golden_angles_numeric()
        return (
            _mpq(ctx, self.pi_coeff) * ctx.pi
            + _mpq(ctx, self.beta_coeff) * b
            + _mpq(ctx, self.delta_coeff) * d
        )

    def to_json(self) -> dict:
        if self.crs_terms:
            raise UnsupportedExpr("CRS terms have no wire format")
        return {
            "pi": fraction_to_str(self.pi_coeff),
            "beta": fraction_to_str(self.beta_coeff),
            "delta": fraction_to_str(self.delta_coeff),
        }

    @classmethod
    def from_json(cls, obj) -> AngleExpr:
        if not isinstance(obj, dict) or set(obj) - {"pi", "beta", "delta"}:
            raise ValueError(f"expected {{'pi', 'beta', 'delta'}}, got {obj!r}")
        return cls(
            Fraction(str(obj.get("pi", "0"))),
            Fraction(str(obj.get("beta", "0"))),
            Fraction(str(obj.get("delta", "0"))),
        )

    def __str__(self):
        parts = []
        for c, sym in ((self.pi_coeff, "π"), (self.beta_coeff, "β"), (self.delta_coeff, "δ")):
            if c:
                coef = "" if c == 1 else "-" if c == -1 else f"{c}"
                parts.append(f"{coef}{sym}")
        for (p, d), c in self.crs_terms:
            parts.append(f"{c}<{p}>_{d}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def _mpq(ctx, q: Fraction):
    return ctx.mpf(q.numerator) / q.denominator


PI = AngleExpr(1, 0, 0)
BETA = AngleExpr(0, 1, 0)
DELTA = AngleExpr(0, 0, 1)
ALPHA = AngleExpr(1, -1, -1)
GAMMA = AngleExpr(0, -1, 1)


# ---------------------------------------------------------------------------
# exact table


@dataclass(frozen=True)
class GoldenAngleTable:
    cos: Mapping[str, TowerElement]
    sin: Mapping[str, TowerElement]

    def unit(self, name: str) -> tuple[TowerElement, TowerElement]:
        return self.cos[name], self.sin[name]


@functools.lru_cache(maxsize=None)
def golden_angle_table() -> GoldenAngleTable:
    """Exact cosines and sines of the four acute golden angles.

    Cosines are built from their defining quotients; each sine is the
    positive square root of ``1 - cos^2`` found in the tower.
    """
    tau = TowerElement.coerce(TAU)
    s3rho = SQRT3 * RHO
    cos = {
        "alpha": tau / (tau + 2),
        "beta": (tau + 1) / s3rho,
        "gamma": (tau + 2) / (tau * 3),
        "delta": (tau - 1) / s3rho,
    }
    sin = {}
    for name, c in cos.items():
        sin_sq = TOWER_ONE - c * c
        g = sin_sq.golden_part()
        if g is None:
            raise ArithmeticError(f"sin^2 {name} is not in Q[tau]")  # unreachable
        sin[name] = tower_sqrt(g)
    return GoldenAngleTable(cos, sin)


def golden_angles_numeric():
    """``(beta, delta)`` as high-precision reals."""
    ctx = mpctx()
    t = golden_angle_table()
    return ctx.acos(t.cos["beta"].numeric()), ctx.acos(t.cos["delta"].numeric())


# ---------------------------------------------------------------------------
# exact trigonometry via unit complex numbers (cos, sin) in the tower


def _cmul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _cpow(u, k: int):
    if k < 0:
        u, k = (u[0], -u[1]), -k
    result = (TOWER_ONE, TOWER_ZERO)
    while k:
        if k & 1:
            result = _cmul(result, u)
        u = _cmul(u, u)
        k >>= 1
    return result


def _pi_rotation(q: Fraction):
    if (2 * q).denominator != 1:
        raise UnsupportedExpr(f"pi coefficient {q} has denominator > 2")
    quarter = int(2 * q) % 4
    return [
        (TOWER_ONE, TOWER_ZERO),
        (TOWER_ZERO, TOWER_ONE),
        (-TOWER_ONE, TOWER_ZERO),
        (TOWER_ZERO, -TOWER_ONE),
    ][quarter]


def golden_cos_sin(pi=0, alpha=0, beta=0, gamma=0, delta=0) -> tuple[TowerElement, TowerElement]:
    """Exact ``(cos, sin)`` of ``pi*q + alpha*a + beta*b + gamma*c + delta*d``.

    All four golden angles are taken from the table independently, so this is
    the route for checking relations among them.
    """
    table = golden_angle_table()
    u = _pi_rotation(as_fraction(pi))
    for name, k in (("alpha", alpha), ("beta", beta), ("gamma", gamma), ("delta", delta)):
        k = as_fraction(k)
        if k.denominator != 1:
            raise UnsupportedExpr(f"{name} coefficient {k} must be an integer")
        if k:
            u = _cmul(u, _cpow(table.unit(name), int(k)))
    return u


def exact_cos_sin(e: AngleExpr) -> tuple[TowerElement, TowerElement]:
    if e.crs_terms:
        raise UnsupportedExpr("CRS terms have no exact trigonometry here")
    for c in (e.pi_coeff, e.beta_coeff, e.delta_coeff):
        if (2 * c).denominator != 1:
            raise UnsupportedExpr(f"coefficient {c} has denominator > 2")
    return golden_cos_sin(pi=e.pi_coeff, beta=e.beta_coeff, delta=e.delta_coeff)


def exact_cos(e: AngleExpr) -> TowerElement:
    return exact_cos_sin(e)[0]


def exact_sin(e: AngleExpr) -> TowerElement:
    return exact_cos_sin(e)[1]


# ---------------------------------------------------------------------------
# identification

PI_COEFFS = tuple(Fraction(k, 2) for k in range(-3, 5))
MAX_LATTICE = 6
NUMERIC_TOLERANCE = 1e-12


def supported_lattice() -> list[AngleExpr]:
    """Every ``q*pi + m*beta + n*delta`` in the search box, unfiltered."""
    r = range(-MAX_LATTICE, MAX_LATTICE + 1)
    return [AngleExpr(q, m, n) for q in PI_COEFFS for m in r for n in r]


@functools.lru_cache(maxsize=4)
def _lattice_index(bits: int):
    ctx = mpctx()
    entries = []
    for e in supported_lattice():
        v = e.numeric()
        if 0 < v < ctx.pi:
            entries.append((v, e))
    entries.sort(key=lambda t: t[0])
    return [v for v, _ in entries], [e for _, e in entries]


def lattice_in_open_interval() -> list[AngleExpr]:
    """Supported expressions whose value lies in (0, pi), sorted by value."""
    return list(_lattice_index(precision_bits())[1])


def identify_angle(c: TowerElement) -> AngleExpr:
    """The unique lattice expression in (0, pi) whose exact cosine is ``c``."""
    ctx = mpctx()
    c = TowerElement.coerce(c)
    x = c.numeric()
    if not -1 <= x <= 1:
        raise NotIdentified(f"{c} is not a cosine")
    target = ctx.acos(x)
    values, exprs = _lattice_index(precision_bits())
    lo = bisect.bisect_left(values, target - NUMERIC_TOLERANCE)
    hi = bisect.bisect_right(values, target + NUMERIC_TOLERANCE)
    for i in range(lo, hi):
        if exact_cos(exprs[i]) == c:
            return exprs[i]
    raise NotIdentified(f"no supported angle has cosine {c}")


# ---------------------------------------------------------------------------
# Dehn values


@dataclass(frozen=True)
class DehnValue:
    """``beta (x) b + delta (x) d`` with GoldenNumber components (lengths)."""

    beta: GoldenNumber = GOLDEN_ZERO
    delta: GoldenNumber = GOLDEN_ZERO

    def __post_init__(self):
        object.__setattr__(self, "beta", GoldenNumber.coerce(self.beta))
        object.__setattr__(self, "delta", GoldenNumber.coerce(self.delta))

    @property
    def components(self) -> dict[str, GoldenNumber]:
        return {"beta": self.beta, "delta": self.delta}

    def __add__(self, other):
        if not isinstance(other, DehnValue):
            return NotImplemented
        return DehnValue(self.beta + other.beta, self.delta + other.delta)

    def __sub__(self, other):
        if not isinstance(other, DehnValue):
            return NotImplemented
        return DehnValue(self.beta - other.beta, self.delta - other.delta)

    def __neg__(self):
        return DehnValue(-self.beta, -self.delta)

    def scale(self, s) -> DehnValue:
        s = GoldenNumber.coerce(s)
        return DehnValue(self.beta * s, self.delta * s)

    __rmul__ = scale

    def is_zero(self) -> bool:
        return not self.beta and not self.delta

    def alpha_coefficient(self) -> GoldenNumber | None:
        """``c`` with ``self = c (x) alpha-bar`` if the value is a multiple of alpha-bar."""
        if self.beta != self.delta:
            return None
        return -self.beta

    def to_json(self) -> dict:
        return {"beta": self.beta.to_json(), "delta": self.delta.to_json()}

    @classmethod
    def from_json(cls, obj) -> DehnValue:
        return cls(GoldenNumber.from_json(obj["beta"]), GoldenNumber.from_json(obj["delta"]))

    def __str__(self):
        return f"({self.beta})⊗β + ({self.delta})⊗δ"


DEHN_ZERO = DehnValue()


def dehn_accumulate(terms: Iterable[tuple[GoldenNumber, AngleExpr]]) -> DehnValue:
    """Normal form of ``sum(length (x) angle)``; rational multiples of pi vanish."""
    b, d = GOLDEN_ZERO, GOLDEN_ZERO
    for length, angle in terms:
        if angle.crs_terms:
            raise UnsupportedExpr("Dehn values are taken over the beta/delta lattice only")
        length = GoldenNumber.coerce(length)
        b = b + length * angle.beta_coeff
        d = d + length * angle.delta_coeff
    return DehnValue(b, d)


def dehn_scale(d: DehnValue, s: GoldenNumber) -> DehnValue:
    return d.scale(s)
