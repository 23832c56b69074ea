"""Exact arithmetic over Q, Q[tau] and the degree-8 tower Q[tau, rho, sqrt3].

``tau`` is the golden mean, ``rho = sqrt(tau + 2)``. Rationals are plain
:class:`fractions.Fraction` values. Everything here is immutable; equality is
always decided exactly, floating evaluation (via a private mpmath context) is
only used for reporting and for choosing square-root branches.
"""

from __future__ import annotations

import functools
import math
import os
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Iterator, Sequence

import mpmath

Rational = Fraction

PRECISION_ENV = "GOLDENTILES_PRECISION_BITS"
DEFAULT_PRECISION_BITS = 128
MIN_PRECISION_BITS = 80


class SingularMatrix(ArithmeticError):
    pass


class NotRepresentable(ArithmeticError):
    """A square root that should lie in the field does not."""


def precision_bits() -> int:
    bits = int(os.environ.get(PRECISION_ENV, DEFAULT_PRECISION_BITS))
    return max(bits, MIN_PRECISION_BITS)


@functools.lru_cache(maxsize=None)
def _context(bits: int) -> mpmath.ctx_mp.MPContext:
    ctx = mpmath.MPContext()
    ctx.prec = bits
    return ctx


def mpctx() -> mpmath.ctx_mp.MPContext:
    """Private mpmath context at the configured precision (never the global ``mp``)."""
    return _context(precision_bits())


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def fraction_to_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def fraction_from_str(s: str) -> Fraction:
    return Fraction(s)


def _is_rational_like(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


# ---------------------------------------------------------------------------
# Q[tau]


class GoldenNumber:
    """``a + b*tau`` with rational ``a``, ``b`` and ``tau**2 = tau + 1``."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", as_fraction(a))
        object.__setattr__(self, "b", as_fraction(b))

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction) -> GoldenNumber:
        obj = object.__new__(cls)
        object.__setattr__(obj, "a", a)
        object.__setattr__(obj, "b", b)
        return obj

    @classmethod
    def coerce(cls, x) -> GoldenNumber:
        if isinstance(x, GoldenNumber):
            return x
        return cls._raw(as_fraction(x), Fraction(0))

    def __setattr__(self, name, value):
        raise AttributeError("GoldenNumber is immutable")

    def __reduce__(self):
        return (GoldenNumber, (self.a, self.b))

    # arithmetic

    def __add__(self, other):
        if isinstance(other, GoldenNumber):
            return GoldenNumber._raw(self.a + other.a, self.b + other.b)
        if _is_rational_like(other):
            return GoldenNumber._raw(self.a + other, self.b)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return GoldenNumber._raw(-self.a, -self.b)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, GoldenNumber):
            return GoldenNumber._raw(self.a - other.a, self.b - other.b)
        if _is_rational_like(other):
            return GoldenNumber._raw(self.a - other, self.b)
        return NotImplemented

    def __rsub__(self, other):
        if _is_rational_like(other):
            return GoldenNumber._raw(other - self.a, -self.b)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GoldenNumber):
            bb = self.b * other.b
            return GoldenNumber._raw(
                self.a * other.a + bb, self.a * other.b + self.b * other.a + bb
            )
        if _is_rational_like(other):
            return GoldenNumber._raw(self.a * other, self.b * other)
        return NotImplemented

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm ``x * conj(x) = a^2 + ab - b^2``."""
        return self.a * self.a + self.a * self.b - self.b * self.b

    def inverse(self) -> GoldenNumber:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q[tau]")
        c = self.conjugate()
        return GoldenNumber._raw(c.a / n, c.b / n)

    def __truediv__(self, other):
        if isinstance(other, GoldenNumber):
            return self * other.inverse()
        if _is_rational_like(other):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return GoldenNumber._raw(self.a / other, self.b / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if _is_rational_like(other):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = GOLDEN_ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> GoldenNumber:
        return GoldenNumber._raw(self.a + self.b, -self.b)

    # comparison

    def __eq__(self, other):
        if isinstance(other, GoldenNumber):
            return self.a == other.a and self.b == other.b
        if _is_rational_like(other):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def sign(self) -> int:
        # a + b*tau = ((2a + b) + b*sqrt5) / 2
        p, q = 2 * self.a + self.b, self.b
        sp, sq = (p > 0) - (p < 0), (q > 0) - (q < 0)
        if sp == sq or sq == 0:
            return sp
        if sp == 0:
            return sq
        # opposite signs: compare p^2 with 5 q^2
        d = p * p - 5 * q * q
        return sp if d > 0 else sq

    def __lt__(self, other):
        return (self - GoldenNumber.coerce(other)).sign() < 0

    def __le__(self, other):
        return (self - GoldenNumber.coerce(other)).sign() <= 0

    def __gt__(self, other):
        return (self - GoldenNumber.coerce(other)).sign() > 0

    def __ge__(self, other):
        return (self - GoldenNumber.coerce(other)).sign() >= 0

    def is_rational(self) -> bool:
        return self.b == 0

    def is_integral(self) -> bool:
        return self.a.denominator == 1 and self.b.denominator == 1

    # evaluation / io

    def numeric(self):
        ctx = mpctx()
        return ctx.mpf(self.a.numerator) / self.a.denominator + (
            ctx.mpf(self.b.numerator) / self.b.denominator
        ) * golden_ratio_numeric()

    def __float__(self):
        return float(self.numeric())

    def to_json(self) -> dict:
        return {"a": fraction_to_str(self.a), "b": fraction_to_str(self.b)}

    @classmethod
    def from_json(cls, obj) -> GoldenNumber:
        if isinstance(obj, (int, str)):
            return cls(Fraction(obj))
        if not isinstance(obj, dict) or set(obj) - {"a", "b"}:
            raise ValueError(f"expected {{'a': 'p/q', 'b': 'p/q'}}, got {obj!r}")
        return cls(Fraction(str(obj.get("a", "0"))), Fraction(str(obj.get("b", "0"))))

    def __repr__(self):
        return f"GoldenNumber({self.a!s}, {self.b!s})"

    def __str__(self):
        return format_golden(self)


def format_golden(x: GoldenNumber) -> str:
    """Exact ``a+b·τ`` rendering: ``1+2·τ``, ``-1-τ``, ``1/12``."""
    if not x.b:
        return str(x.a)
    coef = "" if abs(x.b) == 1 else f"{abs(x.b)}·"
    if not x.a:
        return f"{'-' if x.b < 0 else ''}{coef}τ"
    return f"{x.a}{'-' if x.b < 0 else '+'}{coef}τ"


GOLDEN_ZERO = GoldenNumber(0, 0)
GOLDEN_ONE = GoldenNumber(1, 0)
TAU = GoldenNumber(0, 1)
SQRT5 = GoldenNumber(-1, 2)


def golden_ratio_numeric():
    ctx = mpctx()
    return (1 + ctx.sqrt(5)) / 2


def conjugate(x: GoldenNumber) -> GoldenNumber:
    """Galois image under ``tau -> 1 - tau = -1/tau``."""
    return GoldenNumber.coerce(x).conjugate()


def tau_components(x: GoldenNumber) -> tuple[Fraction, Fraction]:
    """``(a, b)`` with ``x = a + b*tau``."""
    x = GoldenNumber.coerce(x)
    return x.a, x.b


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def rational_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or ``None``."""
    x = as_fraction(x)
    if x < 0:
        return None
    n, d = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Fraction(n, d)
    return None


def rational_roots(coeffs: Sequence[Fraction]) -> list[Fraction]:
    """Rational roots of ``sum(coeffs[i] * x**i)``.

    Degrees up to two use the exact discriminant; higher degrees enumerate
    the candidates allowed by the rational root theorem.
    """
    coeffs = [as_fraction(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise ValueError("zero polynomial")
    roots = []
    if coeffs[0] == 0:
        roots.append(Fraction(0))
        while coeffs[0] == 0:
            coeffs.pop(0)
    if len(coeffs) == 1:
        return roots
    if len(coeffs) == 2:
        return roots + [-coeffs[0] / coeffs[1]]
    if len(coeffs) == 3:
        c, b, a = coeffs
        disc = rational_sqrt(b * b - 4 * a * c)
        if disc is None:
            return roots
        return roots + sorted({(-b - disc) / (2 * a), (-b + disc) / (2 * a)})
    den = math.lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    g = math.gcd(*ints)
    ints = [c // g for c in ints]
    for v in _divisors(ints[-1]):
        for u in _divisors(ints[0]):
            if math.gcd(u, v) != 1:
                continue
            for cand in (Fraction(u, v), Fraction(-u, v)):
                acc = 0
                for c in reversed(ints):
                    acc = acc * cand + c
                if acc == 0:
                    roots.append(cand)
    return roots


def is_square_in_qtau(x: GoldenNumber) -> GoldenNumber | None:
    """Non-negative square root of ``x`` inside Q[tau], or ``None``.

    Writing ``y = a + b*tau`` and ``x = q + r*tau``, ``y**2 = x`` means
    ``a^2 + b^2 = q`` and ``2ab + b^2 = r``. For ``b != 0`` eliminating ``a``
    gives ``5 b^4 - (4q + 2r) b^2 + r^2 = 0``, a quadratic in ``b^2`` whose
    rational roots are found exactly.
    """
    x = GoldenNumber.coerce(x)
    if x.sign() < 0:
        return None
    if not x:
        return GOLDEN_ZERO
    q, r = x.a, x.b
    candidates = []
    if r == 0:
        a_roots = [t for t in rational_roots([-q, 0, 1]) if t >= 0]
        candidates.extend(GoldenNumber(a, 0) for a in a_roots)
    bs = []
    for u in rational_roots([r * r, -(4 * q + 2 * r), 5]):
        b = rational_sqrt(u)
        if b:
            bs += [b, -b]
    for b in bs:
        a = (r - b * b) / (2 * b)
        candidates.append(GoldenNumber(a, b))
    for y in candidates:
        if y * y == x and y.sign() >= 0:
            return y
    return None


# ---------------------------------------------------------------------------
# Q[tau][rho][sqrt3]

TOWER_BASIS = ("1", "τ", "ρ", "τρ", "√3", "τ√3", "ρ√3", "τρ√3")

_RHO_SQ = GoldenNumber(2, 1)


class TowerElement:
    """Element ``c0 + c1*rho + c2*sqrt3 + c3*rho*sqrt3`` with ``c_i`` in Q[tau].

    ``coeffs`` exposes the 8 rational coordinates over the canonical basis
    ``1, tau, rho, tau*rho, sqrt3, tau*sqrt3, rho*sqrt3, tau*rho*sqrt3``.
    """

    __slots__ = ("parts", "_num")

    def __init__(self, coeffs: Iterable = ()):
        c = [as_fraction(v) for v in coeffs]
        if len(c) > 8:
            raise ValueError("a tower element has 8 coordinates")
        c += [Fraction(0)] * (8 - len(c))
        object.__setattr__(
            self,
            "parts",
            tuple(GoldenNumber._raw(c[2 * i], c[2 * i + 1]) for i in range(4)),
        )

    @classmethod
    def from_parts(cls, c0=0, c1=0, c2=0, c3=0) -> TowerElement:
        obj = object.__new__(cls)
        object.__setattr__(obj, "parts", tuple(GoldenNumber.coerce(p) for p in (c0, c1, c2, c3)))
        return obj

    @classmethod
    def coerce(cls, x) -> TowerElement:
        if isinstance(x, TowerElement):
            return x
        return cls.from_parts(GoldenNumber.coerce(x))

    def __setattr__(self, name, value):
        raise AttributeError("TowerElement is immutable")

    def __reduce__(self):
        return (TowerElement, (self.coeffs,))

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(v for p in self.parts for v in (p.a, p.b))

    def __add__(self, other):
        if not isinstance(other, TowerElement):
            if isinstance(other, GoldenNumber) or _is_rational_like(other):
                other = TowerElement.coerce(other)
            else:
                return NotImplemented
        return TowerElement.from_parts(*(x + y for x, y in zip(self.parts, other.parts)))

    __radd__ = __add__

    def __neg__(self):
        return TowerElement.from_parts(*(-p for p in self.parts))

    def __sub__(self, other):
        if not isinstance(other, TowerElement):
            if isinstance(other, GoldenNumber) or _is_rational_like(other):
                other = TowerElement.coerce(other)
            else:
                return NotImplemented
        return TowerElement.from_parts(*(x - y for x, y in zip(self.parts, other.parts)))

    def __rsub__(self, other):
        return (-self) + other

    def _integral(self) -> tuple[int, tuple[int, ...]]:
        """Common denominator and integer numerators of the 8 coordinates."""
        cached = getattr(self, "_num", None)
        if cached is None:
            c = self.coeffs
            den = 1
            for v in c:
                den = den * v.denominator // math.gcd(den, v.denominator)
            cached = (den, tuple(v.numerator * (den // v.denominator) for v in c))
            object.__setattr__(self, "_num", cached)
        return cached

    def __mul__(self, other):
        if isinstance(other, TowerElement):
            # integer product over a common denominator; Fractions only at the end
            d1, x = self._integral()
            d2, y = other._integral()
            den = d1 * d2
            return TowerElement(Fraction(v, den) for v in _tower_int_mul(x, y))
        if isinstance(other, GoldenNumber) or _is_rational_like(other):
            return TowerElement.from_parts(*(p * other for p in self.parts))
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = TOWER_ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def sigma(self) -> TowerElement:
        """``tau -> 1 - tau``, ``rho -> (tau - 1) rho``, ``sqrt3 -> sqrt3``."""
        c0, c1, c2, c3 = (p.conjugate() for p in self.parts)
        t1 = TAU - 1
        return TowerElement.from_parts(c0, c1 * t1, c2, c3 * t1)

    def phi(self) -> TowerElement:
        """``sqrt3 -> -sqrt3`` fixing Q[rho]."""
        c0, c1, c2, c3 = self.parts
        return TowerElement.from_parts(c0, c1, -c2, -c3)

    def galois_orbit(self) -> list[TowerElement]:
        """Images under the 8 automorphisms ``sigma^i phi^j`` (identity first)."""
        out = []
        x = self
        for _ in range(4):
            out.append(x)
            out.append(x.phi())
            x = x.sigma()
        return out

    def norm(self) -> Fraction:
        prod = TOWER_ONE
        for g in self.galois_orbit():
            prod = prod * g
        if any(prod.coeffs[1:]):
            raise ArithmeticError("tower norm is not rational")  # unreachable for valid input
        return prod.coeffs[0]

    def inverse(self) -> TowerElement:
        if not self:
            raise ZeroDivisionError("inverse of zero in the tower")
        # x * phi(x) lies in Q[tau][rho]; multiplying by its rho-conjugate lands in Q[tau]
        cof = self.phi()
        y = self * cof
        c0, c1, _, _ = y.parts
        rho_conj = TowerElement.from_parts(c0, -c1)
        cof = cof * rho_conj
        n = (y * rho_conj).parts
        if any(n[1:]):
            raise ArithmeticError("tower norm does not lie in Q[tau]")
        return cof * n[0].inverse()

    def __truediv__(self, other):
        if isinstance(other, TowerElement):
            return self * other.inverse()
        if isinstance(other, GoldenNumber):
            return self * other.inverse()
        if _is_rational_like(other):
            return self * (1 / as_fraction(other))
        return NotImplemented

    def __rtruediv__(self, other):
        return TowerElement.coerce(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, TowerElement):
            return self.parts == other.parts
        if isinstance(other, GoldenNumber) or _is_rational_like(other):
            return self.parts == TowerElement.coerce(other).parts
        return NotImplemented

    def __hash__(self):
        if not any(self.parts[1:]):
            return hash(self.parts[0])
        return hash(self.parts)

    def __bool__(self):
        return any(self.parts)

    def golden_part(self) -> GoldenNumber | None:
        """The element as a GoldenNumber if it lies in Q[tau]."""
        if any(self.parts[1:]):
            return None
        return self.parts[0]

    def numeric(self):
        ctx = mpctx()
        rho = ctx.sqrt(golden_ratio_numeric() + 2)
        s3 = ctx.sqrt(3)
        c0, c1, c2, c3 = (p.numeric() for p in self.parts)
        return c0 + c1 * rho + c2 * s3 + c3 * rho * s3

    def __float__(self):
        return float(self.numeric())

    def to_json(self) -> list[str]:
        return [fraction_to_str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, obj) -> TowerElement:
        if not isinstance(obj, list) or len(obj) != 8:
            raise ValueError("expected an 8-element array of 'p/q' strings")
        return cls(Fraction(str(v)) for v in obj)

    def __repr__(self):
        return f"TowerElement([{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self):
        terms = []
        for c, name in zip(self.coeffs, TOWER_BASIS):
            if c:
                terms.append(f"{c}" if name == "1" else f"{c}·{name}")
        return " + ".join(terms) if terms else "0"


def _golden_int_mul(a, b, c, d):
    bb = b * d
    return a * c + bb, a * d + b * c + bb


def _qrho_int_mul(x, y):
    """Product in Q[tau][rho] on integer pairs ``(a0, a1, b0, b1)`` meaning ``A + B rho``."""
    a0, a1, b0, b1 = x
    c0, c1, d0, d1 = y
    p0, p1 = _golden_int_mul(a0, a1, c0, c1)
    q0, q1 = _golden_int_mul(b0, b1, d0, d1)
    r0, r1 = _golden_int_mul(a0, a1, d0, d1)
    s0, s1 = _golden_int_mul(b0, b1, c0, c1)
    # rho^2 = 2 + tau
    return (p0 + 2 * q0 + q1, p1 + q0 + 3 * q1, r0 + s0, r1 + s1)


def _tower_int_mul(x, y):
    """Product of two integer coordinate vectors (A + B sqrt3, A and B in Q[tau][rho])."""
    xa, xb, ya, yb = x[:4], x[4:], y[:4], y[4:]
    ac = _qrho_int_mul(xa, ya)
    bd = _qrho_int_mul(xb, yb)
    ad = _qrho_int_mul(xa, yb)
    bc = _qrho_int_mul(xb, ya)
    return tuple(u + 3 * v for u, v in zip(ac, bd)) + tuple(u + v for u, v in zip(ad, bc))


TOWER_ZERO = TowerElement()
TOWER_ONE = TowerElement([1])
TOWER_TAU = TowerElement([0, 1])
RHO = TowerElement([0, 0, 1])
SQRT3 = TowerElement([0, 0, 0, 0, 1])


def tower_mul(x: TowerElement, y: TowerElement) -> TowerElement:
    return TowerElement.coerce(x) * TowerElement.coerce(y)


def sigma_auto(x: TowerElement) -> TowerElement:
    return TowerElement.coerce(x).sigma()


def phi_auto(x: TowerElement) -> TowerElement:
    return TowerElement.coerce(x).phi()


def tower_sqrt(x: GoldenNumber) -> TowerElement:
    """Positive square root of a non-negative ``x`` in Q[tau], inside the tower.

    Tries the four square classes ``1, 3, tau+2, 3(tau+2)`` of Q[tau]* that
    the tower splits.
    """
    x = GoldenNumber.coerce(x)
    if x.sign() < 0:
        raise NotRepresentable(f"{x} is negative")
    for scale, unit in (
        (GOLDEN_ONE, TOWER_ONE),
        (GoldenNumber(3), SQRT3),
        (_RHO_SQ, RHO),
        (_RHO_SQ * 3, RHO * SQRT3),
    ):
        y = is_square_in_qtau(x / scale)
        if y is not None:
            return unit * y
    raise NotRepresentable(f"sqrt({x}) does not lie in Q[tau, rho, sqrt3]")


# ---------------------------------------------------------------------------
# dense exact matrices


class Matrix:
    """Immutable dense matrix over Q (Fraction entries) or Q[tau] (GoldenNumber)."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable]):
        data = tuple(tuple(_entry(v) for v in row) for row in rows)
        if not data or not data[0]:
            raise ValueError("matrix must be non-empty")
        width = len(data[0])
        if any(len(r) != width for r in data):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", data)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int, m: int) -> Matrix:
        return cls([[Fraction(0)] * m for _ in range(n)])

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> Matrix:
        return cls(zip(*cols))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    @property
    def T(self) -> Matrix:
        return Matrix(zip(*self.rows))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __iter__(self) -> Iterator[tuple]:
        return iter(self.rows)

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def entries(self) -> Iterator:
        for r in self.rows:
            yield from r

    def is_golden(self) -> bool:
        return any(isinstance(v, GoldenNumber) for v in self.entries())

    def is_rational(self) -> bool:
        return all(not isinstance(v, GoldenNumber) or v.b == 0 for v in self.entries())

    def is_integer(self) -> bool:
        for v in self.entries():
            if isinstance(v, GoldenNumber):
                if not v.is_integral():
                    return False
            elif v.denominator != 1:
                return False
        return True

    def to_rational(self) -> Matrix:
        if not self.is_rational():
            raise ValueError("matrix has irrational entries")
        return self.map(lambda v: v.a if isinstance(v, GoldenNumber) else v)

    def tau_parts(self) -> tuple[Matrix, Matrix]:
        """Rational matrices ``(P0, P1)`` with ``self = P0 + tau * P1``."""
        g = self.map(GoldenNumber.coerce)
        return g.map(lambda v: v.a), g.map(lambda v: v.b)

    def map(self, f) -> Matrix:
        return Matrix([[f(v) for v in r] for r in self.rows])

    def __add__(self, other):
        if not isinstance(other, Matrix) or other.shape != self.shape:
            return NotImplemented
        return Matrix([[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        if not isinstance(other, Matrix) or other.shape != self.shape:
            return NotImplemented
        return Matrix([[x - y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return self.map(lambda v: -v)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.shape[1] != other.shape[0]:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = list(zip(*other.rows))
            return Matrix([[_dot(r, c) for c in cols] for r in self.rows])
        if isinstance(other, (list, tuple)):
            if len(other) != self.shape[1]:
                raise ValueError("vector length mismatch")
            return tuple(_dot(r, other) for r in self.rows)
        return NotImplemented

    def __mul__(self, scalar):
        if isinstance(scalar, Matrix):
            return NotImplemented
        return self.map(lambda v: v * scalar)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Matrix:
        return matrix_power(self, k)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(
            x == y for x, y in zip(self.entries(), other.entries())
        )

    def __hash__(self):
        return hash(self.rows)

    def det(self):
        n, m = self.shape
        if n != m:
            raise ValueError("determinant of a non-square matrix")
        a = [list(r) for r in self.rows]
        det = Fraction(1)
        for k in range(n):
            p = next((i for i in range(k, n) if a[i][k] != 0), None)
            if p is None:
                return Fraction(0) if not self.is_golden() else GOLDEN_ZERO
            if p != k:
                a[k], a[p] = a[p], a[k]
                det = -det
            det = det * a[k][k]
            inv = 1 / a[k][k]
            for i in range(k + 1, n):
                f = a[i][k] * inv
                if f != 0:
                    for j in range(k, n):
                        a[i][j] = a[i][j] - f * a[k][j]
        return det

    def rank(self) -> int:
        a = [list(r) for r in self.rows]
        n, m = self.shape
        rank = 0
        for c in range(m):
            p = next((i for i in range(rank, n) if a[i][c] != 0), None)
            if p is None:
                continue
            a[rank], a[p] = a[p], a[rank]
            inv = 1 / a[rank][c]
            for i in range(rank + 1, n):
                f = a[i][c] * inv
                if f != 0:
                    for j in range(c, m):
                        a[i][j] = a[i][j] - f * a[rank][j]
            rank += 1
        return rank

    def to_json(self):
        def enc(v):
            if isinstance(v, GoldenNumber):
                return v.to_json()
            return fraction_to_str(v)

        return [[enc(v) for v in r] for r in self.rows]

    @classmethod
    def from_json(cls, rows) -> Matrix:
        def dec(v):
            if isinstance(v, dict):
                return GoldenNumber.from_json(v)
            return Fraction(str(v))

        return cls([[dec(v) for v in r] for r in rows])

    def __repr__(self):
        return f"Matrix({[[str(v) for v in r] for r in self.rows]})"

    def __str__(self):
        cells = [[str(v) for v in r] for r in self.rows]
        w = max(len(c) for r in cells for c in r)
        return "\n".join("[ " + "  ".join(c.rjust(w) for c in r) + " ]" for r in cells)


RationalMatrix = Matrix
GoldenMatrix = Matrix


def _entry(v):
    if isinstance(v, GoldenNumber):
        return v
    return as_fraction(v)


def _dot(r, c):
    acc = Fraction(0)
    for x, y in zip(r, c):
        if x != 0 and y != 0:
            acc = acc + x * y
    return acc


def matrix_power(m: Matrix, k: int) -> Matrix:
    """Exact ``m**k`` by repeated multiplication (``k >= 0``)."""
    n, c = m.shape
    if n != c:
        raise ValueError("matrix power of a non-square matrix")
    if k < 0:
        raise ValueError("negative matrix power")
    result = Matrix.identity(n)
    for _ in range(k):
        result = result @ m
    return result


def solve_exact(a: Matrix, b: Matrix) -> Matrix:
    """Return ``X`` with ``X @ a == b`` for rational ``a`` (square, nonsingular).

    Works on the transposed system ``a.T @ X.T = b.T`` with fraction-free
    (Bareiss) elimination on the denominator-cleared augmented matrix. Pivots
    are the first nonzero entry by row index.
    """
    n, m = a.shape
    if n != m:
        raise ValueError("solve_exact needs a square coefficient matrix")
    if b.shape[1] != n:
        raise ValueError(f"shape mismatch: X @ {a.shape} = {b.shape}")
    if not (a.is_rational() and b.is_rational()):
        raise ValueError("solve_exact works over Q; split Q[tau] systems first")
    at = a.to_rational().T
    bt = b.to_rational().T
    k = bt.shape[1]
    aug = []
    for ra, rb in zip(at.rows, bt.rows):
        row = list(ra) + list(rb)
        den = math.lcm(*(v.denominator for v in row))
        aug.append([int(v * den) for v in row])
    width = n + k
    prev = 1
    for c in range(n):
        p = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if p is None:
            raise SingularMatrix("coefficient matrix is singular")
        if p != c:
            aug[c], aug[p] = aug[p], aug[c]
        piv = aug[c][c]
        for i in range(c + 1, n):
            f = aug[i][c]
            row_i = aug[i]
            row_c = aug[c]
            for j in range(c + 1, width):
                row_i[j] = (row_i[j] * piv - f * row_c[j]) // prev
            row_i[c] = 0
        prev = piv
    # back substitution on the upper-triangular integer system
    sol = [[Fraction(0)] * k for _ in range(n)]
    for i in range(n - 1, -1, -1):
        for col in range(k):
            s = Fraction(aug[i][n + col])
            for j in range(i + 1, n):
                if aug[i][j]:
                    s -= aug[i][j] * sol[j][col]
            sol[i][col] = s / aug[i][i]
    return Matrix(sol).T
