import itertools
import json
from fractions import Fraction

import mpmath
import pytest

from goldentiles import reference
from goldentiles.angles import DehnValue
from goldentiles.exactnum import TAU, GoldenNumber, NotRepresentable, TowerElement
from goldentiles.polyhedra import (
    EDGES,
    FACE_AREAS,
    Degenerate,
    ExactPolyhedron,
    TetrahedronSpec,
    canonical_labels,
    classify_face,
    cm_volume,
    dihedral_angles,
    dihedral_cos,
    enumerate_golden_tetrahedra,
    face_area,
    polyhedron_dehn,
    scissor_equivalent,
    volume_squared,
)


# ---------------------------------------------------------------- numeric oracle


def embed(lengths):
    """Vertex coordinates for given edge lengths (mpmath, 60 digits)."""
    mp = mpmath.mp
    d = {e: mp.mpf(x) for e, x in zip(EDGES, lengths)}
    p0 = mpmath.matrix([0, 0, 0])
    p1 = mpmath.matrix([d[0, 1], 0, 0])
    x2 = (d[0, 2] ** 2 - d[1, 2] ** 2 + d[0, 1] ** 2) / (2 * d[0, 1])
    p2 = mpmath.matrix([x2, mpmath.sqrt(d[0, 2] ** 2 - x2**2), 0])
    x3 = (d[0, 3] ** 2 - d[1, 3] ** 2 + d[0, 1] ** 2) / (2 * d[0, 1])
    y3 = (d[0, 3] ** 2 - d[2, 3] ** 2 + p2[0] ** 2 + p2[1] ** 2 - 2 * p2[0] * x3) / (2 * p2[1])
    p3 = mpmath.matrix([x3, y3, mpmath.sqrt(d[0, 3] ** 2 - x3**2 - y3**2)])
    return [p0, p1, p2, p3]


def cross(u, v):
    return mpmath.matrix([u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]])


def dot(u, v):
    return sum(u[i] * v[i] for i in range(3))


def numeric_dihedral(pts, i, j):
    k, l = [v for v in range(4) if v not in (i, j)]
    e = pts[j] - pts[i]
    # components of the two other vertices perpendicular to the edge
    def perp(v):
        w = pts[v] - pts[i]
        return w - e * (dot(w, e) / dot(e, e))

    a, b = perp(k), perp(l)
    return mpmath.acos(dot(a, b) / mpmath.sqrt(dot(a, a) * dot(b, b)))


def numeric_volume(pts):
    return abs(dot(pts[1] - pts[0], cross(pts[2] - pts[0], pts[3] - pts[0]))) / 6


@pytest.fixture(scope="module")
def numeric_ctx():
    with mpmath.workdps(60):
        yield


# ---------------------------------------------------------------- tests


def test_regular_tetrahedron():
    reg = TetrahedronSpec.from_labels([0] * 6)
    assert dihedral_cos(reg, 0) == TowerElement.coerce(Fraction(1, 3))
    assert volume_squared(reg) == GoldenNumber(Fraction(1, 72))
    with pytest.raises(NotRepresentable):
        cm_volume(reg)


def test_triangle_inequality_rejected():
    with pytest.raises(Degenerate):
        TetrahedronSpec((GoldenNumber(1), GoldenNumber(1), GoldenNumber(5), 1, 1, 1))


def test_enumeration_counts():
    classes = enumerate_golden_tetrahedra()
    assert len(classes) == 7
    flat = [s for s in classes if volume_squared(s) == 0]
    assert len(flat) == 1
    assert flat[0].labels == (0, 0, 1, 1, 0, 1)


def test_enumeration_against_brute_force():
    # independent count: label vectors up to the 24 relabelings, not all faces congruent
    seen = set()
    for labels in itertools.product((0, 1), repeat=6):
        lengths = [1.0 if x == 0 else 1.618033988749895 for x in labels]
        d = dict(zip(EDGES, lengths))
        ok = True
        faces = []
        for f in itertools.combinations(range(4), 3):
            sides = sorted(d[e] for e in itertools.combinations(f, 2))
            if sides[0] + sides[1] < sides[2] - 1e-9:
                ok = False
            faces.append(tuple(sides))
        if not ok or len(set(faces)) < 2:
            continue
        orbit = []
        for perm in itertools.permutations(range(4)):
            lab = dict(zip(EDGES, labels))
            orbit.append(tuple(lab[tuple(sorted((perm[i], perm[j])))] for i, j in EDGES))
        seen.add(min(orbit))
    assert len(seen) == 7
    assert {tuple(s.labels) for s in enumerate_golden_tetrahedra()} == seen


def test_catalog_volumes_and_dehn(catalog):
    assert catalog.names() == list(reference.GOLDEN_NAMES)
    for name in reference.GOLDEN_NAMES:
        e = catalog[name]
        assert e.volume * 12 == reference.VGT[name]
        assert (e.dehn.beta, e.dehn.delta) == reference.DGT[name]


def test_catalog_against_coordinates(catalog, numeric_ctx):
    for e in catalog.entries:
        pts = embed([float(x) if not x.b else x.numeric() for x in e.spec.lengths])
        assert abs(numeric_volume(pts) - e.volume.numeric()) < 1e-30
        for (i, j), angle in zip(EDGES, e.dihedrals):
            assert abs(numeric_dihedral(pts, i, j) - angle.numeric()) < 1e-30


def test_spherical_triangle_inequality(catalog):
    for e in catalog.entries:
        angles = dict(zip(EDGES, (a.numeric() for a in e.dihedrals)))
        for v in range(4):
            around = [angles[tuple(sorted((v, w)))] for w in range(4) if w != v]
            # vertex figure is a spherical triangle with these angles
            total = sum(around)
            assert total > mpmath.pi + 1e-12
            for a in around:
                assert (total - a) - a < mpmath.pi - 1e-12


def test_volume_invariant_under_relabeling(catalog):
    for e in catalog.entries:
        for perm in itertools.permutations(range(4)):
            assert cm_volume(e.spec.relabel(perm)) == e.volume


def test_face_area_consistency(catalog):
    for e in catalog.entries:
        total = sum((face_area(e.spec.face_lengths(k)) for k in range(4)), TowerElement())
        table = sum((FACE_AREAS.area(t) * n for t, n in e.faces), TowerElement())
        assert total == table


def test_face_classification():
    one = GoldenNumber(1)
    assert classify_face((one, one, one)) == "r"
    assert classify_face((TAU, TAU, TAU)) == "rt"
    assert classify_face((one, one, TAU)) == "o"
    assert classify_face((one, TAU, TAU)) == "a"


def test_canonical_labels():
    assert canonical_labels((1, 0, 0, 0, 0, 0)) == (0, 0, 0, 0, 0, 1)


def test_dehn_additivity_z_tile(catalog):
    total = catalog["A*"].dehn + catalog["C*"].dehn + catalog["G*"].dehn
    assert total == DehnValue(GoldenNumber(0, 5), GoldenNumber(0, 5))


def test_cube_dehn_zero():
    assert polyhedron_dehn(ExactPolyhedron.cube()).is_zero()
    assert polyhedron_dehn(ExactPolyhedron.cube(TAU)).is_zero()


def test_scissor_equivalence(catalog):
    c, f = catalog["C*"], catalog["F*"]
    assert c.volume == f.volume
    assert not scissor_equivalent((c.volume, c.dehn), (f.volume, f.dehn))
    assert scissor_equivalent((c.volume, c.dehn), (c.volume, c.dehn))
    cube = ExactPolyhedron.cube()
    for e in catalog.entries:
        assert not scissor_equivalent((cube.volume, polyhedron_dehn(cube)), (e.volume, e.dehn))


def test_polyhedron_json_round_trip(catalog):
    p = ExactPolyhedron.from_entry(catalog["A*"])
    q = ExactPolyhedron.from_json(json.loads(json.dumps(p.to_json())))
    assert q == p
    assert polyhedron_dehn(q) == catalog["A*"].dehn


@pytest.mark.parametrize(
    "obj, fragment",
    [
        ([], "top level"),
        ({"edges": 3}, "edges: expected an array"),
        ({"edges": [{"angle": {"pi": "1/2"}}]}, "edges[0].length: missing"),
        ({"edges": [{"length": {"a": "1"}, "angle": {"rad": "1"}}]}, "edges[0].angle"),
        ({"edges": [{"length": {"a": "-1"}, "angle": {"pi": "1/2"}}]}, "edges[0].length: must be positive"),
    ],
)
def test_polyhedron_json_diagnostics(obj, fragment):
    with pytest.raises(ValueError, match=fragment.replace("[", r"\[").replace("]", r"\]")):
        ExactPolyhedron.from_json(obj)


def test_packing_dehn_is_additive(catalog):
    parts = {n: ExactPolyhedron.from_entry(catalog[n]) for n in reference.GOLDEN_NAMES}
    h = ExactPolyhedron.packing([(parts["A*"], 1), (parts["B*"], 1), (parts["F*"], 2), (parts["G*"], 2)])
    assert polyhedron_dehn(h) == DehnValue(10, 10)
    assert h.volume * 12 == reference.VMS[1]
    assert dihedral_angles(catalog["A*"].spec) == catalog["A*"].dihedrals
