"""Inflation matrices from scissor invariants.

If an inflation matrix is rational, each Q[tau]-valued eigen-relation
``M v = lambda^k v`` splits into two rational relations (tau^1 and tau^0
parts). With enough invariants the matrix is then determined uniquely. This
module assembles and solves those systems, studies the powers of the golden
tetrahedra matrix, and decides the face-covering obstructions to a stone
inflation.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import reference
from .exactnum import (
    GOLDEN_ONE,
    RHO,
    SQRT3,
    TAU,
    GoldenNumber,
    Matrix,
    SingularMatrix,
    TowerElement,
    matrix_power,
    solve_exact,
)


class UnderDetermined(ValueError):
    pass


class OverDetermined(ValueError):
    pass


class SingularSystem(ArithmeticError):
    pass


class RationalityNotAssumed(ValueError):
    pass


class SearchTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class InvariantSystem:
    """Eigen-data of a hypothetical inflation with factor ``factor``.

    ``volume_vec`` is an eigenvector for ``factor**3``; each entry of
    ``dehn_vecs`` is one for ``factor``. ``assume_rational`` must be set
    explicitly: the tau-splitting is only valid for a rational matrix.
    """

    volume_vec: tuple[GoldenNumber, ...]
    dehn_vecs: tuple[tuple[GoldenNumber, ...], ...]
    factor: GoldenNumber = TAU
    assume_rational: bool = False
    tiles: tuple[str, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "volume_vec", tuple(GoldenNumber.coerce(v) for v in self.volume_vec))
        object.__setattr__(
            self,
            "dehn_vecs",
            tuple(tuple(GoldenNumber.coerce(v) for v in vec) for vec in self.dehn_vecs),
        )
        object.__setattr__(self, "factor", GoldenNumber.coerce(self.factor))
        if any(len(v) != self.n for v in self.dehn_vecs):
            raise ValueError("all invariant vectors need one entry per tile")

    @property
    def n(self) -> int:
        return len(self.volume_vec)

    @property
    def constraint_count(self) -> int:
        return 2 * (1 + len(self.dehn_vecs))

    @property
    def is_square(self) -> bool:
        return self.constraint_count == self.n

    def relations(self) -> list[tuple[tuple[GoldenNumber, ...], GoldenNumber]]:
        """``(vector, eigenvalue)`` pairs: volume first, then each Dehn vector."""
        out = [(self.volume_vec, self.factor**3)]
        out.extend((v, self.factor) for v in self.dehn_vecs)
        return out


def galois_split(vec: Sequence[GoldenNumber], lam_pow: GoldenNumber):
    """Rational columns of ``vec`` and of ``lam_pow * vec``.

    Returns ``((x1, x0), (y1, y0))``: tau^1 and tau^0 parts of the input and
    of the image. For a rational ``M``, ``M v = lam_pow v`` is equivalent to
    ``M x1 = y1`` and ``M x0 = y0``.
    """
    vec = [GoldenNumber.coerce(v) for v in vec]
    lam_pow = GoldenNumber.coerce(lam_pow)
    img = [lam_pow * v for v in vec]
    return (
        (tuple(v.b for v in vec), tuple(v.a for v in vec)),
        (tuple(v.b for v in img), tuple(v.a for v in img)),
    )


def constraint_matrices(system: InvariantSystem) -> tuple[Matrix, Matrix]:
    """``(X, Y)`` with columns ordered volume tau^1, volume tau^0, then each
    Dehn vector's tau^1, tau^0 pair."""
    xs, ys = [], []
    for vec, lam in system.relations():
        (x1, x0), (y1, y0) = galois_split(vec, lam)
        xs += [x1, x0]
        ys += [y1, y0]
    return Matrix.from_columns(xs), Matrix.from_columns(ys)


def reconstruct_matrix(system: InvariantSystem) -> Matrix:
    """The unique rational ``M`` with ``M X = Y``."""
    if not system.assume_rational:
        raise RationalityNotAssumed(
            "tau-splitting needs a rational inflation matrix; set assume_rational=True"
        )
    if system.constraint_count < system.n:
        raise UnderDetermined(f"{system.constraint_count} constraints for {system.n} tiles")
    if system.constraint_count > system.n:
        raise OverDetermined(f"{system.constraint_count} constraints for {system.n} tiles")
    x, y = constraint_matrices(system)
    try:
        return solve_exact(x, y)
    except SingularMatrix as exc:
        raise SingularSystem(str(exc)) from None


def eigen_residuals(m: Matrix, system: InvariantSystem) -> list[tuple[GoldenNumber, ...]]:
    """``M v - lambda v`` for every relation, computed in Q[tau]."""
    out = []
    for vec, lam in system.relations():
        img = m @ list(vec)
        out.append(tuple(GoldenNumber.coerce(a) - lam * b for a, b in zip(img, vec)))
    return out


def satisfies_eigen_relations(m: Matrix, system: InvariantSystem) -> bool:
    return all(not r for res in eigen_residuals(m, system) for r in res)


def golden_tetrahedra_system(catalog=None) -> InvariantSystem:
    """Volumes (times 12) and the two Dehn components of the six golden tetrahedra."""
    from .polyhedra import golden_catalog

    catalog = catalog or golden_catalog()
    entries = [catalog[n] for n in reference.GOLDEN_NAMES]
    return InvariantSystem(
        volume_vec=tuple(e.volume * 12 for e in entries),
        dehn_vecs=(tuple(e.dehn.beta for e in entries), tuple(e.dehn.delta for e in entries)),
        assume_rational=True,
        tiles=reference.GOLDEN_NAMES,
    )


# ---------------------------------------------------------------------------
# powers


def integrality_spectrum(m: Matrix, kmax: int) -> list[tuple[int, bool]]:
    out = []
    p = Matrix.identity(m.shape[0])
    for k in range(1, kmax + 1):
        p = p @ m
        out.append((k, p.is_integer()))
    return out


@functools.lru_cache(maxsize=None)
def fibonacci(n: int) -> int:
    if n < 0:
        raise ValueError("negative index")
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


@dataclass(frozen=True)
class PowerCoefficients:
    """``x**n = a x^3 + b x^2 + c x + d`` modulo the minimal polynomial.

    The quadratic coefficient is ``a_{n+1} - 5 a_n``; the variant
    ``a_{n+1} - a_n`` agrees with it modulo 2 only (see ``b_mod2``).
    """

    n: int
    a: int
    b: int
    c: int
    d: int

    @classmethod
    def for_power(cls, n: int) -> PowerCoefficients:
        if n < 1:
            raise ValueError("n >= 1")
        a_n, a_next = _a(n), _a(n + 1)
        return cls(
            n,
            a_n,
            a_next - 5 * a_n,
            -a_next + 3 * a_n + fibonacci(n),
            -a_next + 4 * a_n + fibonacci(n - 1),
        )


    @property
    def b_mod2(self) -> int:
        """Parity of ``b``, equal to that of ``a_{n+1} - a_n``."""
        return (_a(self.n + 1) - self.a) % 2


def _a(n: int) -> int:
    num = Fraction(fibonacci(3 * (n - 1)), 2) - fibonacci(n - 1)
    val = num / 3
    if val.denominator != 1:
        raise ArithmeticError(f"a_{n} = {val} is not an integer")
    return int(val)


def polynomial_at_matrix(coeffs: Sequence[int], m: Matrix) -> Matrix:
    """``sum(coeffs[i] * m**i)`` by Horner's rule."""
    n = m.shape[0]
    acc = Matrix.zeros(n, n)
    for c in reversed(coeffs):
        acc = acc @ m + Matrix.identity(n) * c
    return acc


def fibonacci_power_check(m: Matrix, n: int) -> bool:
    """``m**n == a_n m^3 + b_n m^2 + c_n m + d_n`` and ``chi(m) == 0``."""
    if polynomial_at_matrix(reference.CHI, m) != Matrix.zeros(*m.shape):
        return False
    pc = PowerCoefficients.for_power(n)
    combo = polynomial_at_matrix((pc.d, pc.c, pc.b, pc.a), m)
    return matrix_power(m, n) == combo


# ---------------------------------------------------------------------------
# coverings of a triangle by tau^k-smaller copies


@dataclass(frozen=True)
class CoveringCertificate:
    """Why ``sigma**k = sum(alpha_i sigma**i)`` (alpha_i >= 0, alpha_0 > 0)
    has no solution, ``sigma = tau**2``.

    Any solution gives ``p(x) = x^k - sum alpha_i x^i`` divisible by
    ``x^2 - 3x + 1``. The functional ``S = sum alpha_{k-1-i} psi_i`` is
    positive for admissible alphas, but written in terms of the quotient's
    coefficients it is identically ``-3 psi_0 + psi_1 = 0``.
    ``quotient_coefficients`` records the vanishing coefficient of every free
    quotient coefficient in ``S``.
    """

    k: int
    psi: tuple[int, ...]
    constant: int
    quotient_coefficients: tuple[int, ...]
    conclusion: str

    @property
    def valid(self) -> bool:
        if self.k == 1:
            return self.conclusion == "sigma is irrational"
        if self.psi[:2] != (1, 3):
            return False
        if any(
            self.psi[i + 1] != 3 * self.psi[i] - self.psi[i - 1] or self.psi[i] <= 0
            for i in range(1, len(self.psi) - 1)
        ):
            return False
        return self.constant == 0 and not any(self.quotient_coefficients)

    def to_json(self) -> dict:
        return {"k": self.k, "psi": list(self.psi), "conclusion": self.conclusion}


def psi_sequence(length: int) -> tuple[int, ...]:
    psi = [1, 3]
    while len(psi) < length:
        psi.append(3 * psi[-1] - psi[-2])
    return tuple(psi[:length])


def covering_certificate(k: int) -> CoveringCertificate:
    if k < 1:
        raise ValueError("k >= 1")
    if k == 1:
        return CoveringCertificate(1, (1,), 0, (), "sigma is irrational")
    psi = psi_sequence(k)
    # p(x) = (x^{k-2} + sum_j beta_j x^j)(x^2 - 3x + 1); alpha_i = -[x^i] p for i < k.
    # Track each alpha_i as an affine form: (constant, {j: coefficient of beta_j}).
    nq = k - 2  # free coefficients beta_0..beta_{k-3}
    quotient = [(0, {j: 1}) for j in range(nq)] + [(1, {})]
    factor = (1, -3, 1)
    prod = [(0, {}) for _ in range(k + 1)]
    for qi, (qc, qv) in enumerate(quotient):
        for fi, f in enumerate(factor):
            c, v = prod[qi + fi]
            nv = dict(v)
            for j, x in qv.items():
                nv[j] = nv.get(j, 0) + f * x
            prod[qi + fi] = (c + f * qc, nv)
    s_const, s_vars = 0, {}
    for i in range(k):
        c, v = prod[k - 1 - i]
        # S += alpha_{k-1-i} psi_i with alpha = -coefficient
        s_const -= c * psi[i]
        for j, x in v.items():
            s_vars[j] = s_vars.get(j, 0) - x * psi[i]
    coeffs = tuple(s_vars.get(j, 0) for j in range(nq))
    conclusion = "S = -3*psi_0 + psi_1 = 0 contradicts S >= alpha_0*psi_{k-1} > 0"
    return CoveringCertificate(k, psi, s_const, coeffs, conclusion)


MAX_BRUTE_FORCE_K = 8


def covering_brute_force(k: int) -> tuple[int, ...] | None:
    """Exhaustive search for ``(alpha_0, ..., alpha_{k-1})``.

    Powers ``sigma**i = F_{2i-1} + F_{2i} tau`` have non-negative integer
    coordinates, so a depth-first search on the remaining coordinates prunes
    as soon as either goes negative; the last two coefficients are then forced
    (``sigma = 1 + tau``, ``1 = 1 + 0 tau``). Any hit is re-checked in Q[tau].
    """
    if k < 1:
        raise ValueError("k >= 1")
    if k > MAX_BRUTE_FORCE_K:
        raise SearchTooLarge(f"k = {k} exceeds {MAX_BRUTE_FORCE_K}")
    sigma = TAU * TAU
    powers = [sigma**i for i in range(k + 1)]
    coords = [(int(p.a), int(p.b)) for p in powers]
    target = coords[k]

    def check(alphas):
        total = sum((powers[i] * alphas[i] for i in range(k)), GoldenNumber(0))
        return total == powers[k]

    if k == 1:
        # alpha_0 = sigma would have to be rational
        return None

    alphas = [0] * k

    def search(i, ra, rb):
        if i == 1:
            a1, a0 = rb, ra - rb
            if a1 >= 0 and a0 > 0:
                alphas[1], alphas[0] = a1, a0
                if check(alphas):
                    return tuple(alphas)
            return None
        ca, cb = coords[i]
        top = min(ra // ca, rb // cb)
        for x in range(top + 1):
            alphas[i] = x
            hit = search(i - 1, ra - x * ca, rb - x * cb)
            if hit is not None:
                return hit
        alphas[i] = 0
        return None

    return search(k - 1, *target)


# ---------------------------------------------------------------------------
# area coverings


@dataclass(frozen=True)
class CoveringDecision:
    holds: bool
    violations: tuple[str, ...]
    certificate: CoveringCertificate | None = None


def _poly_at(coeffs: Sequence[int], x: GoldenNumber) -> GoldenNumber:
    acc = GoldenNumber(0)
    for c in reversed(list(coeffs)):
        acc = acc * x + c
    return acc


def area_covering_decide(p1: Sequence[int], p2: Sequence[int], p3: Sequence[int]) -> CoveringDecision:
    """Decide ``A_r = p1(t) A_r + p2(t) A_a + p3(t) A_o`` with ``t = tau**-2``.

    Coefficient lists are lowest degree first. ``X = sqrt3 (1 - p1(t))`` and
    ``Y = (p2(t) tau + p3(t)) rho``; the automorphism negating sqrt3 forces
    ``X = 0`` and ``Y = 0`` separately.
    """
    for name, p in (("p1", p1), ("p2", p2), ("p3", p3)):
        if any((not isinstance(c, int)) or c < 0 for c in p):
            raise ValueError(f"{name} must have non-negative integer coefficients")
    if p1 and p1[0] != 0:
        raise ValueError("p1 must not have a constant term")
    t = TAU ** -2
    v1, v2, v3 = (_poly_at(p, t) for p in (p1, p2, p3))
    x = SQRT3 * (GOLDEN_ONE - v1)
    y = RHO * (v2 * TAU + v3)
    violations = []
    # X = Y and phi(X) = -X, phi(Y) = Y give X = Y = 0.
    if x.phi() != -x or y.phi() != y:
        raise ArithmeticError("phi does not split X and Y")  # unreachable
    if y:
        violations.append("golden triangles present: Y != 0")
    cert = None
    if x:
        violations.append("p1(tau^-2) != 1")
        deg = max((i for i, c in enumerate(p1) if c), default=0)
        if deg:
            cert = covering_certificate(deg)
    return CoveringDecision(not violations, tuple(violations), cert)
