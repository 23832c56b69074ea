"""The complete verification suite as a fixed, ordered registry of checks."""

from __future__ import annotations

import datetime as _dt
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable

from . import __version__, reference
from .angles import ALPHA, BETA, DELTA, GAMMA, exact_cos, exact_sin, golden_angles_numeric
from .crs import crs_construct, exponent_is_minimal, is_pure_geodetic, verify_decompositions
from .exactnum import TAU, GoldenNumber, Matrix, TowerElement, mpctx
from .fields import field_tower_ok, field_tower_report
from .inflation import (
    area_covering_decide,
    constraint_matrices,
    covering_brute_force,
    covering_certificate,
    fibonacci,
    fibonacci_power_check,
    golden_tetrahedra_system,
    integrality_spectrum,
    matrix_power,
    polynomial_at_matrix,
    reconstruct_matrix,
    satisfies_eigen_relations,
)
from .mosseri_sadoc import (
    PSI_2F,
    PSI_GT,
    PSI_GT_FIVE,
    MatrixMismatch,
    T2F_CHECKS,
    build_tile_invariants,
    five_tile_analysis,
    ms_invariant_system,
    subspace_invariance,
)
from .polyhedra import (
    FACE_AREAS,
    ExactPolyhedron,
    face_area,
    golden_catalog,
    polyhedron_dehn,
    scissor_equivalent,
)

STATUSES = ("pass", "fail", "error")


@dataclass(frozen=True)
class CheckResult:
    id: str
    description: str
    status: str
    paper_ref: str
    details: Any = None

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "description": self.description,
            "status": self.status,
            "paper_ref": self.paper_ref,
            "details": self.details,
        }

    @classmethod
    def from_json(cls, obj) -> CheckResult:
        return cls(obj["id"], obj["description"], obj["status"], obj["paper_ref"], obj.get("details"))


@dataclass(frozen=True)
class Report:
    checks: tuple[CheckResult, ...]
    version: str = __version__
    timestamp: str = field(default_factory=lambda: _dt.datetime.now(_dt.timezone.utc).isoformat())

    @property
    def summary(self) -> dict[str, int]:
        return {s: sum(c.status == s for c in self.checks) for s in STATUSES}

    @property
    def exit_code(self) -> int:
        s = self.summary
        if s["error"]:
            return 2
        return 1 if s["fail"] else 0

    def to_json(self) -> dict:
        return {
            "version": self.version,
            "timestamp": self.timestamp,
            "checks": [c.to_json() for c in self.checks],
            "summary": self.summary,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False)

    @classmethod
    def from_json(cls, obj) -> Report:
        rep = cls(tuple(CheckResult.from_json(c) for c in obj["checks"]), obj["version"], obj["timestamp"])
        if rep.summary != obj["summary"]:
            raise ValueError("summary does not match the check list")
        return rep

    def to_markdown(self) -> str:
        lines = [
            f"# goldentiles verification ({self.version})",
            "",
            "| id | status | description |",
            "|---|---|---|",
        ]
        lines += [f"| {c.id} | {c.status} | {c.description} |" for c in self.checks]
        s = self.summary
        lines += ["", f"pass: {s['pass']}, fail: {s['fail']}, error: {s['error']}"]
        return "\n".join(lines)


REPORT_SCHEMA = {
    "type": "object",
    "required": ["version", "checks", "summary"],
    "properties": {
        "version": {"type": "string"},
        "timestamp": {"type": "string"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "description", "status", "paper_ref", "details"],
                "properties": {
                    "id": {"type": "string"},
                    "description": {"type": "string"},
                    "status": {"enum": list(STATUSES)},
                    "paper_ref": {"type": "string"},
                },
            },
        },
        "summary": {
            "type": "object",
            "required": list(STATUSES),
            "properties": {s: {"type": "integer", "minimum": 0} for s in STATUSES},
        },
    },
}


def _mismatch_cells(got: Matrix, want: Matrix) -> list[dict]:
    return [
        {"cell": [i + 1, j + 1], "expected": str(want[i, j]), "found": str(got[i, j])}
        for i in range(want.shape[0])
        for j in range(want.shape[1])
        if got[i, j] != want[i, j]
    ]


# ---------------------------------------------------------------------------
# individual checks: each returns (ok, details)


def check_enumeration(ctx):
    cat = golden_catalog()
    ok = len(cat.candidates) == 7 and len(cat.entries) == 6 and cat.flat is not None
    return ok, {"classes": len(cat.candidates), "flat": list(cat.flat.labels), "named": cat.names()}


def check_volumes(ctx):
    cat = golden_catalog()
    bad = {n: str(cat[n].volume * 12) for n in reference.GOLDEN_NAMES if cat[n].volume * 12 != reference.VGT[n]}
    return not bad, {"mismatches": bad} if bad else {n: str(cat[n].volume * 12) for n in reference.GOLDEN_NAMES}


def check_dehn_catalog(ctx):
    cat = golden_catalog()
    bad = {}
    for n in reference.GOLDEN_NAMES:
        d = cat[n].dehn
        if (d.beta, d.delta) != reference.DGT[n]:
            bad[n] = str(d)
    return not bad, {"mismatches": bad}


def check_face_areas(ctx):
    cat = golden_catalog()
    for e in cat.entries:
        total = sum((face_area(e.spec.face_lengths(k)) for k in range(4)), TowerElement())
        table = sum((FACE_AREAS.area(t) * c for t, c in e.faces), TowerElement())
        if total != table:
            return False, {"tetrahedron": e.name}
    return True, None


def check_golden_angle_relations(ctx):
    rel1 = ALPHA + GAMMA + BETA * 2
    rel2 = ALPHA - GAMMA + DELTA * 2
    c1, c2 = exact_cos(rel1), exact_cos(rel2)
    s1, s2 = exact_sin(rel1), exact_sin(rel2)
    ok = c1 == TowerElement.coerce(-1) and c2 == TowerElement.coerce(-1) and not s1 and not s2
    return ok, {"cos(alpha+gamma+2beta)": str(c1), "cos(alpha-gamma+2delta)": str(c2)}


def check_angle_numerics(ctx):
    mp = mpctx()
    b, d = golden_angles_numeric()
    vals = {"beta": b, "delta": d, "alpha": mp.pi - b - d, "gamma": d - b}
    # closed forms evaluated directly, independent of the tower arithmetic
    t = (1 + mp.sqrt(5)) / 2
    rho = mp.sqrt(t + 2)
    direct = {
        "beta": mp.acos((t + 1) / (mp.sqrt(3) * rho)),
        "delta": mp.acos((t - 1) / (mp.sqrt(3) * rho)),
        "alpha": mp.acos(t / (t + 2)),
        "gamma": mp.acos((t + 2) / (3 * t)),
    }
    quoted = {"beta": 0.652358, "delta": 1.382085, "alpha": 1.107149, "gamma": 0.729728}
    ok = all(abs(vals[k] - direct[k]) < 1e-12 for k in vals)
    # quoted values carry six decimals, some truncated rather than rounded
    ok = ok and all(abs(float(vals[k]) - v) < 1e-6 for k, v in quoted.items())
    return ok, {k: mp.nstr(v, 15) for k, v in vals.items()}


def check_fields(ctx):
    rep = field_tower_report()
    return field_tower_ok(rep), rep


def check_reconstruct_gt(ctx):
    sys = golden_tetrahedra_system()
    x, y = constraint_matrices(sys)
    m = reconstruct_matrix(sys)
    ok = x == reference.EQI_X and y == reference.EQI_Y and m == reference.M_GT
    ok = ok and satisfies_eigen_relations(m, sys)
    return ok, {"matrix": m.to_json(), "mismatches": _mismatch_cells(m, reference.M_GT)}


def check_reconstruct_ms(ctx):
    sys = ms_invariant_system()
    x, y = constraint_matrices(sys)
    m = reconstruct_matrix(sys)
    ok = x == reference.MMS_X and y == reference.MMS_Y and m == reference.M_MS
    ok = ok and satisfies_eigen_relations(m, sys)
    return ok, {"matrix": m.to_json(), "mismatches": _mismatch_cells(m, reference.M_MS)}


def check_printed_square(ctx):
    sq = reference.M_GT @ reference.M_GT
    bad = _mismatch_cells(sq, reference.M_GT_SQUARED)
    return not bad, {"mismatches": bad}


def check_printed_cube(ctx):
    cube = matrix_power(reference.M_GT, 3)
    bad = _mismatch_cells(cube, reference.M_GT_CUBED)
    return not bad, {"mismatches": bad}


def check_integrality(ctx):
    spec = integrality_spectrum(reference.M_GT, 30)
    integral = [k for k, ok in spec if ok]
    return integral == list(range(3, 31, 3)), {"integral_powers": integral}


M_GT_EIGENVALUES = ((TAU**3, 1), (-(TAU**-3), 1), (TAU, 2), (-(TAU**-1), 2))


def check_minimal_polynomial(ctx):
    """chi(M) = 0 and tr(M^k) equals the eigenvalue power sums for k = 1..6,
    which pins the characteristic polynomial to chi(x)(x^2 - x - 1)."""
    m = reference.M_GT
    chi_zero = polynomial_at_matrix(reference.CHI, m) == Matrix.zeros(6, 6)
    traces, sums = [], []
    p = Matrix.identity(6)
    for k in range(1, 7):
        p = p @ m
        traces.append(sum((p[i, i] for i in range(6)), GoldenNumber(0)))
        sums.append(sum((lam**k * mult for lam, mult in M_GT_EIGENVALUES), GoldenNumber(0)))
    ok = chi_zero and traces == sums
    return ok, {"traces": [str(t) for t in traces], "power_sums": [str(s) for s in sums]}


def check_fibonacci_powers(ctx):
    bad = [n for n in range(1, 16) if not fibonacci_power_check(reference.M_GT, n)]
    parity = all((fibonacci(n) % 2 == 0) == (n % 3 == 0) for n in range(61))
    return not bad and parity, {"failing_n": bad}


def check_covering_brute_force(ctx):
    hits = {k: covering_brute_force(k) for k in range(1, 9)}
    found = {k: v for k, v in hits.items() if v is not None}
    return not found, {"solutions": found}


def check_covering_certificate(ctx):
    bad = []
    for k in range(1, 101):
        c = covering_certificate(k)
        oracle = tuple(fibonacci(2 * n + 2) for n in range(len(c.psi))) if k > 1 else c.psi
        if not c.valid or c.psi != oracle:
            bad.append(k)
    return not bad, {"invalid_k": bad}


def check_area_covering(ctx):
    cases = {
        "golden triangles": area_covering_decide([], [1], []),
        "single tau^-2": area_covering_decide([0, 1], [], []),
        "mixed": area_covering_decide([0, 2, 1], [], []),
    }
    ok = all(not d.holds for d in cases.values())
    return ok, {k: list(d.violations) for k, d in cases.items()}


def check_tile_invariants(ctx):
    inv = build_tile_invariants(golden_catalog(), PSI_GT)
    vols = tuple(v * 12 for v in inv.volumes)
    alpha = inv.alpha_coefficients()
    ok = vols == reference.VMS and alpha == reference.DMS_ALPHA
    return ok, {"volumes": [str(v) for v in vols], "alpha": [str(a) for a in alpha]}


def check_alpha_collapse(ctx):
    cat = golden_catalog()
    five = build_tile_invariants(cat, PSI_GT_FIVE)
    ms = build_tile_invariants(cat, PSI_GT)
    ok = all(d.beta == d.delta for d in five.dehn + ms.dehn)
    return ok, None


def check_m_r_union(ctx):
    cat = golden_catalog()
    five = build_tile_invariants(cat, PSI_GT_FIVE)
    ms = build_tile_invariants(cat, PSI_GT)
    ok = (
        five.dehn_of("m") + five.dehn_of("r") == ms.dehn_of("h")
        and five.volume("m") + five.volume("r") == ms.volume("h")
        and five.volume("m") * 12 == reference.VOL_M
        and five.volume("r") * 12 == reference.VOL_R
        and five.dehn_of("m").alpha_coefficient() == reference.DEHN_M_ALPHA
        and five.dehn_of("r").alpha_coefficient() == reference.DEHN_R_ALPHA
    )
    return ok, None


def check_induced_gt(ctx):
    n = subspace_invariance(reference.M_GT, PSI_GT)
    ok = n is not None and n == reference.M_MS
    ident = subspace_invariance(Matrix.identity(6), PSI_GT) == Matrix.identity(4)
    return ok and ident and PSI_GT.is_embedding and PSI_2F.is_embedding, {
        "induced": n.to_json() if n is not None else None
    }


def check_five_tiles(ctx):
    rep = five_tile_analysis()
    return rep.ok, rep.to_json()


def _t2f(check):
    def run(ctx):
        try:
            check(ctx["m2f"])
        except MatrixMismatch as exc:
            return False, {
                "check": exc.check,
                "cell": list(exc.cell) if exc.cell else None,
                "expected": str(exc.expected),
                "found": str(exc.found),
            }
        return True, None

    return run


def check_crs_construct(ctx):
    a, b = crs_construct(5, 1), crs_construct(3, 5)
    ok = (a.s, a.a, a.b) == (1, 2, 4) and (b.s, b.a, b.b) == (2, 4, 2)
    ok = ok and all(4 * c.p**c.s == c.a**2 + c.d * c.b**2 and exponent_is_minimal(c) for c in (a, b))
    return ok, {"<5>_1": a.to_json(), "<3>_5": b.to_json()}


def check_crs_decompositions(ctx):
    rep = verify_decompositions()
    return rep["alpha_ok"] and rep["gamma_ok"] and rep["independent"], rep


def check_pure_geodetic(ctx):
    t = golden_angle_table_cos2()
    ok = is_pure_geodetic(t["alpha"]) and is_pure_geodetic(t["gamma"])
    ok = ok and not is_pure_geodetic(t["beta"]) and not is_pure_geodetic(t["delta"])
    return ok, {k: str(v) for k, v in t.items()}


def golden_angle_table_cos2() -> dict[str, GoldenNumber]:
    from .angles import golden_angle_table

    out = {}
    for k, c in golden_angle_table().cos.items():
        sq = (c * c).golden_part()
        if sq is None:
            raise ArithmeticError(f"cos^2 {k} is not in Q[tau]")
        out[k] = sq
    return out


def check_cube(ctx):
    d = polyhedron_dehn(ExactPolyhedron.cube())
    return d.is_zero(), {"dehn": d.to_json()}


def check_scissors(ctx):
    cat = golden_catalog()
    c, f = cat["C*"], cat["F*"]
    same_volume = c.volume == f.volume
    equivalent = scissor_equivalent((c.volume, c.dehn), (f.volume, f.dehn))
    return same_volume and not equivalent, {"equal_volume": same_volume, "equivalent": equivalent}


CHECKS: tuple[tuple[str, str, str, Callable], ...] = (
    ("catalog.enumeration", "seven edge classes, one flat, six named", "golden tetrahedra definition", check_enumeration),
    ("catalog.volumes", "12 * volumes of the six tetrahedra", "tetrahedron volume table", check_volumes),
    ("catalog.dehn", "Dehn invariants from dihedral angles", "tetrahedron Dehn table", check_dehn_catalog),
    ("catalog.face_areas", "face areas agree with the face-type table", "face classification", check_face_areas),
    ("angles.identities", "cos(alpha+gamma+2beta) = cos(alpha-gamma+2delta) = -1", "golden angle relations", check_golden_angle_relations),
    ("angles.numeric", "numeric values of the four golden angles", "angle table", check_angle_numerics),
    ("fields.tower", "structure of Q[tau, rho, sqrt3]", "field tower", check_fields),
    ("reconstruct.gt", "rational inflation matrix of the golden tetrahedra", "golden tetrahedra inflation matrix", check_reconstruct_gt),
    ("reconstruct.ms", "rational inflation matrix of the four tiles", "four-tile inflation matrix", check_reconstruct_ms),
    ("powers.square", "M_gt^2 against the printed table", "M_gt^2 table", check_printed_square),
    ("powers.cube", "M_gt^3 against the printed table", "M_gt^3 table", check_printed_cube),
    ("powers.integrality", "M_gt^k is integral iff 3 | k, k <= 30", "integrality of powers", check_integrality),
    ("powers.minimal_polynomial", "chi(M_gt) = 0 and power sums of the spectrum", "minimal polynomial", check_minimal_polynomial),
    ("powers.fibonacci", "power reduction coefficients, n = 1..15", "power reduction modulo chi", check_fibonacci_powers),
    ("covering.brute_force", "no covering solution for k <= 8", "covering obstruction", check_covering_brute_force),
    ("covering.certificate", "certificates for k <= 100", "covering certificate", check_covering_certificate),
    ("covering.area", "area equation rejects every candidate", "area argument", check_area_covering),
    ("ms.tile_invariants", "volumes and Dehn invariants of z, h, s, a", "tile volume and Dehn tables", check_tile_invariants),
    ("ms.alpha_collapse", "tile Dehn invariants are multiples of alpha-bar", "one-dimensional Dehn space", check_alpha_collapse),
    ("ms.m_r_union", "m and r add up to h", "half-tile invariants", check_m_r_union),
    ("ms.induced_gt", "M_gt induces M_MS on the tiles", "induced tile operator", check_induced_gt),
    ("ms.five_tile", "the five-tile map and matrix are degenerate", "five-tile degeneracy", check_five_tiles),
)
CHECKS += tuple(
    (f"t2f.{name}", f"colored 8x8 matrix: {name.replace('_', ' ')}", "two-colour inflation matrix", _t2f(fn))
    for name, fn in T2F_CHECKS
)
CHECKS += (
    ("crs.construct", "basis angles <5>_1 and <3>_5", "CRS basis construction", check_crs_construct),
    ("crs.decompositions", "alpha = <5>_1, gamma = pi/2 - 2<3>_5", "CRS decompositions", check_crs_decompositions),
    ("crs.pure_geodetic", "alpha, gamma pure geodetic; beta, delta not", "pure geodetic angles", check_pure_geodetic),
    ("dehn.cube", "the unit cube has zero Dehn invariant", "Dehn invariant", check_cube),
    ("dehn.scissors", "C* and F* are not scissor equivalent", "scissor congruence", check_scissors),
)
CHECK_IDS = tuple(c[0] for c in CHECKS)


def corrupted_m2f() -> Matrix:
    """``M_2F`` with its first entry altered, for negative-path testing."""
    rows = [list(r) for r in reference.M_2F.rows]
    rows[0][0] = rows[0][0] + 1
    return Matrix(rows)


def _run_one(entry, ctx) -> CheckResult:
    cid, desc, ref, fn = entry
    try:
        ok, details = fn(ctx)
        status = "pass" if ok else "fail"
    except Exception as exc:  # reported, not raised: one broken check must not hide the rest
        status, details = "error", {"exception": f"{type(exc).__name__}: {exc}"}
    return CheckResult(cid, desc, status, ref, _jsonable(details))


def _jsonable(x):
    return json.loads(json.dumps(x, default=str))


def run_all(m2f: Matrix | None = None, only: tuple[str, ...] | None = None, workers: int = 1) -> Report:
    """Run the registry; results are ordered by check id position regardless of ``workers``."""
    ctx = {"m2f": m2f if m2f is not None else reference.M_2F}
    entries = [c for c in CHECKS if only is None or c[0] in only]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(lambda e: _run_one(e, ctx), entries))
    else:
        results = [_run_one(e, ctx) for e in entries]
    return Report(tuple(results))
