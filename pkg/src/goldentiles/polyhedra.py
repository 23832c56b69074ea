"""Tetrahedra with edges in Q[tau]: exact volumes, dihedral angles and Dehn
invariants, the golden-tetrahedra catalog, and Sydler's equivalence test."""

from __future__ import annotations

import functools
import itertools
import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import reference
from .angles import (
    AngleExpr,
    DehnValue,
    dehn_accumulate,
    identify_angle,
)
from .exactnum import (
    GOLDEN_ONE,
    GOLDEN_ZERO,
    SQRT3,
    RHO,
    TAU,
    GoldenNumber,
    Matrix,
    NotRepresentable,
    TowerElement,
    is_square_in_qtau,
    tower_sqrt,
)

EDGES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
EDGE_NAMES = tuple(f"e{i}{j}" for i, j in EDGES)
FACES = ((1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2))  # FACES[k] is opposite vertex k


class Degenerate(ValueError):
    pass


class AmbiguousNaming(LookupError):
    pass


class NoMatch(LookupError):
    pass


def _edge_index(edge) -> int:
    if isinstance(edge, int):
        if not 0 <= edge < 6:
            raise IndexError(edge)
        return edge
    if isinstance(edge, str):
        return EDGE_NAMES.index(edge)
    i, j = sorted(edge)
    return EDGES.index((i, j))


@dataclass(frozen=True)
class TetrahedronSpec:
    """Six edge lengths in the order e01, e02, e03, e12, e13, e23."""

    lengths: tuple[GoldenNumber, ...]

    def __post_init__(self):
        lengths = tuple(GoldenNumber.coerce(x) for x in self.lengths)
        if len(lengths) != 6:
            raise ValueError("a tetrahedron has six edges")
        if any(x.sign() <= 0 for x in lengths):
            raise ValueError("edge lengths must be positive")
        object.__setattr__(self, "lengths", lengths)
        for f in FACES:
            a, b, c = (self.length((i, j)) for i, j in itertools.combinations(f, 2))
            if a + b < c or a + c < b or b + c < a:
                raise Degenerate(f"face {f} violates the triangle inequality")

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> TetrahedronSpec:
        """``labels[k]`` is 0 for length 1 and 1 for length tau."""
        return cls(tuple(TAU if b else GOLDEN_ONE for b in labels))

    def length(self, edge) -> GoldenNumber:
        return self.lengths[_edge_index(edge)]

    @property
    def labels(self) -> tuple[int, ...] | None:
        if all(x in (GOLDEN_ONE, TAU) for x in self.lengths):
            return tuple(int(x == TAU) for x in self.lengths)
        return None

    def relabel(self, perm: Sequence[int]) -> TetrahedronSpec:
        """Spec of the same solid with vertex ``v`` renamed ``perm[v]``."""
        new = {}
        for (i, j), x in zip(EDGES, self.lengths):
            new[tuple(sorted((perm[i], perm[j])))] = x
        return TetrahedronSpec(tuple(new[e] for e in EDGES))

    def face_lengths(self, k: int) -> tuple[GoldenNumber, GoldenNumber, GoldenNumber]:
        """Sorted side lengths of the face opposite vertex ``k``."""
        f = FACES[k]
        return tuple(sorted((self.length(e) for e in itertools.combinations(f, 2))))

    def face_types(self) -> tuple[str, ...]:
        return tuple(classify_face(self.face_lengths(k)) for k in range(4))


def classify_face(sides: Sequence[GoldenNumber]) -> str:
    """``r`` (unit regular), ``rt`` (regular of side tau), ``o``, ``a``, or ``other``."""
    key = tuple(sorted(int(x == TAU) if x in (GOLDEN_ONE, TAU) else -1 for x in sides))
    return {(0, 0, 0): "r", (1, 1, 1): "rt", (0, 0, 1): "o", (0, 1, 1): "a"}.get(key, "other")


# ---------------------------------------------------------------------------
# Cayley-Menger


def cayley_menger(t: TetrahedronSpec) -> Matrix:
    m = [[GOLDEN_ZERO] * 5 for _ in range(5)]
    for i in range(1, 5):
        m[0][i] = m[i][0] = GOLDEN_ONE
    for (i, j), x in zip(EDGES, t.lengths):
        m[i + 1][j + 1] = m[j + 1][i + 1] = x * x
    return Matrix(m)


def volume_squared(t: TetrahedronSpec) -> GoldenNumber:
    return GoldenNumber.coerce(cayley_menger(t).det()) / 288


def cm_volume(t: TetrahedronSpec) -> GoldenNumber:
    """Exact volume in Q[tau]; 0 for a flat tetrahedron."""
    v2 = volume_squared(t)
    if v2.sign() < 0:
        raise NotRepresentable(f"negative Cayley-Menger determinant: no such tetrahedron ({v2})")
    v = is_square_in_qtau(v2)
    if v is None:
        raise NotRepresentable(f"V^2 = {v2} is not a square in Q[tau]")
    return v


def face_area(sides: Sequence[GoldenNumber]) -> TowerElement:
    """Exact area via Heron: 16 A^2 = 2(a²b²+b²c²+c²a²) - (a⁴+b⁴+c⁴)."""
    a2, b2, c2 = (GoldenNumber.coerce(s) ** 2 for s in sides)
    sixteen_a2 = 2 * (a2 * b2 + b2 * c2 + c2 * a2) - (a2 * a2 + b2 * b2 + c2 * c2)
    return tower_sqrt(sixteen_a2 / 16)


def dihedral_cos(t: TetrahedronSpec, edge) -> TowerElement:
    """Exact cosine of the interior dihedral angle along ``edge``.

    With ``C`` the Cayley-Menger cofactor matrix and ``k, l`` the two vertices
    off the edge, ``cos = C_kl / (16 A_k A_l)`` where ``C_kk = -16 A_k^2``.
    """
    if volume_squared(t) == 0:
        raise Degenerate("flat tetrahedron has no dihedral angles")
    i, j = EDGES[_edge_index(edge)]
    k, l = (v for v in range(4) if v not in (i, j))
    cm = cayley_menger(t)
    ckl = GoldenNumber.coerce(_cofactor(cm, k + 1, l + 1))
    ak = face_area(t.face_lengths(k))
    al = face_area(t.face_lengths(l))
    return TowerElement.coerce(ckl) / (ak * al * 16)


def _cofactor(m: Matrix, r: int, c: int):
    minor = Matrix(
        [[v for jj, v in enumerate(row) if jj != c] for ii, row in enumerate(m.rows) if ii != r]
    )
    return minor.det() * (-1) ** (r + c)


def dihedral_angles(t: TetrahedronSpec) -> tuple[AngleExpr, ...]:
    return tuple(identify_angle(dihedral_cos(t, e)) for e in range(6))


def tetrahedron_dehn(t: TetrahedronSpec) -> DehnValue:
    return dehn_accumulate(zip(t.lengths, dihedral_angles(t)))


# ---------------------------------------------------------------------------
# enumeration and catalog


def canonical_labels(labels: Sequence[int]) -> tuple[int, ...]:
    best = None
    for perm in itertools.permutations(range(4)):
        new = {}
        for (i, j), b in zip(EDGES, labels):
            new[tuple(sorted((perm[i], perm[j])))] = b
        cand = tuple(new[e] for e in EDGES)
        if best is None or cand < best:
            best = cand
    return best


def enumerate_golden_tetrahedra() -> list[TetrahedronSpec]:
    """The 7 congruence classes of {1, tau}-edged tetrahedra whose faces are
    not all congruent (one of them flat), in canonical label order."""
    classes = set()
    for labels in itertools.product((0, 1), repeat=6):
        spec = TetrahedronSpec.from_labels(labels)
        if len(set(spec.face_types())) < 2:
            continue
        classes.add(canonical_labels(labels))
    return [TetrahedronSpec.from_labels(c) for c in sorted(classes)]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    spec: TetrahedronSpec
    volume: GoldenNumber
    dehn: DehnValue
    faces: tuple[tuple[str, int], ...]
    dihedrals: tuple[AngleExpr, ...] = field(default=(), compare=False)

    @property
    def face_counts(self) -> Counter:
        return Counter(dict(self.faces))

    def edge_data(self) -> list[tuple[GoldenNumber, AngleExpr]]:
        return list(zip(self.spec.lengths, self.dihedrals))

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "edge_labels": list(self.spec.labels) if self.spec.labels else None,
            "edges": [
                {"edge": n, "length": x.to_json(), "angle": a.to_json()}
                for n, x, a in zip(EDGE_NAMES, self.spec.lengths, self.dihedrals)
            ],
            "volume": self.volume.to_json(),
            "dehn": self.dehn.to_json(),
            "faces": dict(self.faces),
        }


def _entry_for(name: str, spec: TetrahedronSpec) -> CatalogEntry:
    angles = dihedral_angles(spec)
    return CatalogEntry(
        name=name,
        spec=spec,
        volume=cm_volume(spec),
        dehn=dehn_accumulate(zip(spec.lengths, angles)),
        faces=tuple(sorted(Counter(spec.face_types()).items())),
        dihedrals=angles,
    )


def catalog_identify(specs: Iterable[TetrahedronSpec]) -> list[CatalogEntry]:
    """Name each non-flat class by matching its computed volume and Dehn value
    against the reference table; the matching must be a unique bijection."""
    specs = list(specs)
    names = list(reference.GOLDEN_NAMES)
    if len(specs) != len(names):
        raise NoMatch(f"expected {len(names)} tetrahedra, got {len(specs)}")
    computed = [_entry_for("?", s) for s in specs]
    allowed = []
    for e in computed:
        ok = {
            n
            for n in names
            if e.volume == reference.VGT[n] / 12 and e.dehn == DehnValue(*reference.DGT[n])
        }
        allowed.append(ok)
    matchings = [
        perm
        for perm in itertools.permutations(names)
        if all(n in ok for n, ok in zip(perm, allowed))
    ]
    if not matchings:
        raise NoMatch("computed invariants match no naming of the golden tetrahedra")
    if len(matchings) > 1:
        raise AmbiguousNaming(f"{len(matchings)} namings are consistent")
    by_name = {
        n: CatalogEntry(n, e.spec, e.volume, e.dehn, e.faces, e.dihedrals)
        for n, e in zip(matchings[0], computed)
    }
    return [by_name[n] for n in names]


@dataclass(frozen=True)
class GoldenCatalog:
    entries: tuple[CatalogEntry, ...]
    flat: TetrahedronSpec
    candidates: tuple[TetrahedronSpec, ...]

    def __getitem__(self, name: str) -> CatalogEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def names(self) -> list[str]:
        return [e.name for e in self.entries]

    def to_json(self) -> dict:
        return {
            "tetrahedra": [e.to_json() for e in self.entries],
            "flat": {"edge_labels": list(self.flat.labels)},
        }


@functools.lru_cache(maxsize=None)
def golden_catalog() -> GoldenCatalog:
    candidates = enumerate_golden_tetrahedra()
    flat = [s for s in candidates if volume_squared(s) == 0]
    if len(flat) != 1:
        raise NoMatch(f"expected exactly one flat candidate, found {len(flat)}")
    solid = [s for s in candidates if volume_squared(s) != 0]
    return GoldenCatalog(tuple(catalog_identify(solid)), flat[0], tuple(candidates))


# ---------------------------------------------------------------------------
# faces


@dataclass(frozen=True)
class FaceAreaTable:
    r: TowerElement
    o: TowerElement
    a: TowerElement

    def area(self, face_type: str) -> TowerElement:
        if face_type == "rt":
            return self.r * (TAU * TAU)
        return getattr(self, face_type)


FACE_AREAS = FaceAreaTable(SQRT3 * Fraction(1, 4), RHO * Fraction(1, 4), RHO * TAU * Fraction(1, 4))


# ---------------------------------------------------------------------------
# generic polyhedra


@dataclass(frozen=True)
class ExactPolyhedron:
    """Edge data ``(length, dihedral angle)``; enough for the Dehn invariant."""

    edges: tuple[tuple[GoldenNumber, AngleExpr], ...]
    volume: GoldenNumber | None = None

    def __post_init__(self):
        edges = tuple((GoldenNumber.coerce(x), a) for x, a in self.edges)
        if any(x.sign() <= 0 for x, _ in edges):
            raise ValueError("edge lengths must be positive")
        object.__setattr__(self, "edges", edges)
        if self.volume is not None:
            object.__setattr__(self, "volume", GoldenNumber.coerce(self.volume))

    @classmethod
    def cube(cls, side=1) -> ExactPolyhedron:
        s = GoldenNumber.coerce(side)
        return cls(tuple((s, AngleExpr(Fraction(1, 2))) for _ in range(12)), s * s * s)

    @classmethod
    def from_entry(cls, entry: CatalogEntry) -> ExactPolyhedron:
        return cls(tuple(entry.edge_data()), entry.volume)

    @classmethod
    def packing(cls, parts: Iterable[tuple[ExactPolyhedron, int]]) -> ExactPolyhedron:
        """Formal union: edge data concatenated with multiplicity, volumes added.

        The Dehn invariant is additive, so this carries the invariants of a
        solid packed from the parts even though the edge list is not the
        packed solid's own."""
        edges: list = []
        vol = GOLDEN_ZERO
        for p, k in parts:
            edges.extend(list(p.edges) * k)
            vol = vol + (p.volume if p.volume is not None else GOLDEN_ZERO) * k
        return cls(tuple(edges), vol)

    def scaled(self, s) -> ExactPolyhedron:
        s = GoldenNumber.coerce(s)
        vol = self.volume * s * s * s if self.volume is not None else None
        return ExactPolyhedron(tuple((x * s, a) for x, a in self.edges), vol)

    def to_json(self) -> dict:
        out = {"edges": [{"length": x.to_json(), "angle": a.to_json()} for x, a in self.edges]}
        if self.volume is not None:
            out["volume"] = self.volume.to_json()
        return out

    @classmethod
    def from_json(cls, obj) -> ExactPolyhedron:
        """Parse the polyhedron schema; errors name the offending field."""
        if not isinstance(obj, dict) or "edges" not in obj:
            raise ValueError("top level: expected an object with an 'edges' array")
        if not isinstance(obj["edges"], list):
            raise ValueError("edges: expected an array")
        edges = []
        for i, e in enumerate(obj["edges"]):
            if not isinstance(e, dict):
                raise ValueError(f"edges[{i}]: expected an object")
            for key, parse in (("length", GoldenNumber.from_json), ("angle", AngleExpr.from_json)):
                if key not in e:
                    raise ValueError(f"edges[{i}].{key}: missing")
                try:
                    parse(e[key])
                except (ValueError, TypeError, ZeroDivisionError) as exc:
                    raise ValueError(f"edges[{i}].{key}: {exc}") from None
            length = GoldenNumber.from_json(e["length"])
            if length.sign() <= 0:
                raise ValueError(f"edges[{i}].length: must be positive")
            edges.append((length, AngleExpr.from_json(e["angle"])))
        volume = None
        if "volume" in obj:
            try:
                volume = GoldenNumber.from_json(obj["volume"])
            except (ValueError, TypeError, ZeroDivisionError) as exc:
                raise ValueError(f"volume: {exc}") from None
        return cls(tuple(edges), volume)

    @classmethod
    def load(cls, path) -> ExactPolyhedron:
        with open(path) as fh:
            return cls.from_json(json.load(fh))


def polyhedron_dehn(p: ExactPolyhedron) -> DehnValue:
    return dehn_accumulate(p.edges)


def scissor_equivalent(
    p1: tuple[GoldenNumber, DehnValue], p2: tuple[GoldenNumber, DehnValue]
) -> bool:
    """Sydler: equal volume and equal Dehn invariant."""
    (v1, d1), (v2, d2) = p1, p2
    return GoldenNumber.coerce(v1) == GoldenNumber.coerce(v2) and d1 == d2
