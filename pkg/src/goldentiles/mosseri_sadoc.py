"""Mosseri-Sadoc tiles as packings of golden tetrahedra.

A packing map sends each tile to the multiset of tetrahedra it is glued from.
Its matrix has one row per tetrahedron type and one column per tile, so tile
invariants are column combinations of tetrahedron invariants. An inflation
matrix ``M`` on tetrahedra (row ``i`` = contents of inflated tetrahedron
``i``) induces ``N`` on tiles when ``psi^T M = N psi^T``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import reference
from .angles import DEHN_ZERO, DehnValue
from .exactnum import TAU, GoldenNumber, Matrix, SingularMatrix, solve_exact


class CatalogIncomplete(LookupError):
    pass


class NotInjective(ValueError):
    pass


class MatrixMismatch(AssertionError):
    """A matrix identity failed; ``cell`` is the 1-based ``(row, column)``."""

    def __init__(self, check: str, cell: tuple[int, int] | None, expected=None, found=None):
        self.check, self.cell, self.expected, self.found = check, cell, expected, found
        where = f" at {cell}" if cell else ""
        super().__init__(f"{check}{where}: expected {expected}, found {found}")


def _base_name(name: str) -> str:
    """Colored copies (``C*b``, ``G*r``) share the invariants of their base tetrahedron."""
    return name[:2] if len(name) > 2 and name[1] == "*" else name


@dataclass(frozen=True)
class PackingMap:
    name: str
    sources: tuple[str, ...]
    tiles: tuple[str, ...]
    matrix: Matrix

    @classmethod
    def from_dict(cls, name: str, sources: Sequence[str], tiles: Sequence[str], data: Mapping) -> PackingMap:
        cols = [[data[t].get(s, 0) for s in sources] for t in tiles]
        return cls(name, tuple(sources), tuple(tiles), Matrix.from_columns(cols))

    def column(self, tile: str) -> tuple[Fraction, ...]:
        return self.matrix.column(self.tiles.index(tile))

    @property
    def rank(self) -> int:
        return self.matrix.rank()

    @property
    def is_embedding(self) -> bool:
        return self.rank == len(self.tiles)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "sources": list(self.sources),
            "tiles": list(self.tiles),
            "matrix": self.matrix.to_json(),
        }


PSI_GT = PackingMap.from_dict("psi_gt", reference.GOLDEN_NAMES, reference.MS_TILES, reference.PSI_GT)
PSI_GT_FIVE = PackingMap.from_dict(
    "psi_gt_five", reference.GOLDEN_NAMES, reference.FIVE_TILES, reference.PSI_GT_FIVE
)
PSI_2F = PackingMap.from_dict("psi_2f", reference.COLORED_NAMES, reference.MS_TILES, reference.PSI_2F)
PSI_2F_FIVE = PackingMap.from_dict(
    "psi_2f_five", reference.COLORED_NAMES, reference.FIVE_TILES, reference.PSI_2F_FIVE
)
PACKING_MAPS = {p.name: p for p in (PSI_GT, PSI_GT_FIVE, PSI_2F, PSI_2F_FIVE)}


@dataclass(frozen=True)
class TileInvariants:
    tiles: tuple[str, ...]
    volumes: tuple[GoldenNumber, ...]
    dehn: tuple[DehnValue, ...]

    def volume(self, tile: str) -> GoldenNumber:
        return self.volumes[self.tiles.index(tile)]

    def dehn_of(self, tile: str) -> DehnValue:
        return self.dehn[self.tiles.index(tile)]

    def alpha_coefficients(self) -> tuple[GoldenNumber | None, ...]:
        return tuple(d.alpha_coefficient() for d in self.dehn)

    def to_json(self) -> dict:
        return {
            t: {"volume": v.to_json(), "dehn": d.to_json()}
            for t, v, d in zip(self.tiles, self.volumes, self.dehn)
        }


def build_tile_invariants(catalog, psi: PackingMap) -> TileInvariants:
    """Volumes and Dehn values of the tiles by additivity over the packing."""
    lookup = {}
    entries = catalog.entries if hasattr(catalog, "entries") else catalog
    for e in entries:
        lookup[e.name] = e
    missing = [n for n in reference.GOLDEN_NAMES if n not in lookup]
    if missing:
        raise CatalogIncomplete(f"catalog lacks {', '.join(missing)}")
    vols, dehns = [], []
    for j, _tile in enumerate(psi.tiles):
        v, d = GoldenNumber(0), DEHN_ZERO
        for i, src in enumerate(psi.sources):
            k = psi.matrix[i, j]
            if k:
                e = lookup[_base_name(src)]
                v = v + e.volume * k
                d = d + e.dehn.scale(k)
        vols.append(v)
        dehns.append(d)
    return TileInvariants(psi.tiles, tuple(vols), tuple(dehns))


def subspace_invariance(m: Matrix, psi: PackingMap) -> Matrix | None:
    """The operator induced by ``m`` on the span of the tiles, if any.

    Solves ``psi^T m = N psi^T`` through the normal equations
    ``N (psi^T psi) = psi^T m psi``; a Q[tau] matrix is handled through its
    rational tau^0 and tau^1 parts. Returns ``None`` when the image of the
    tiles is not invariant.
    """
    p = psi.matrix.T
    n, k = m.shape
    if n != k or n != p.shape[1]:
        raise ValueError(f"matrix of shape {m.shape} does not act on {len(psi.sources)} tetrahedra")
    gram = p @ psi.matrix
    if gram.rank() < gram.shape[0]:
        raise NotInjective(f"{psi.name} has rank {psi.rank} < {len(psi.tiles)}")
    parts = m.tau_parts() if m.is_golden() else (m, None)
    solved = []
    for part in parts:
        if part is None:
            continue
        try:
            nmat = solve_exact(gram, p @ part @ psi.matrix)
        except SingularMatrix:  # pragma: no cover - rank checked above
            raise NotInjective(psi.name) from None
        if p @ part != nmat @ p:
            return None
        solved.append(nmat)
    if len(solved) == 1:
        return solved[0]
    n0, n1 = solved
    if all(v == 0 for v in n1.entries()):
        return n0
    return Matrix([[GoldenNumber(a, b) for a, b in zip(r0, r1)] for r0, r1 in zip(n0, n1)])


def intertwiner_residual(m: Matrix, psi: PackingMap, n: Matrix) -> Matrix:
    """``psi^T m - n psi^T``; zero exactly when ``n`` is induced by ``m``."""
    p = psi.matrix.T
    return p @ m - n @ p


def _first_nonzero(mat: Matrix):
    for i, row in enumerate(mat):
        for j, v in enumerate(row):
            if v != 0:
                return (i + 1, j + 1), v
    return None


# ---------------------------------------------------------------------------
# invariant system for the four tiles


def ms_invariant_system(catalog=None):
    """Volume and Dehn eigen-data for (z, h, s, a).

    The Dehn vector is the alpha-bar coefficient divided by -5, which leaves
    the eigen-relation unchanged and matches the printed constraint columns.
    """
    from .inflation import InvariantSystem
    from .polyhedra import golden_catalog

    inv = build_tile_invariants(catalog or golden_catalog(), PSI_GT)
    alpha = inv.alpha_coefficients()
    if any(a is None for a in alpha):
        raise ArithmeticError("Dehn values of the tiles are not multiples of alpha-bar")
    return InvariantSystem(
        volume_vec=tuple(v * 12 for v in inv.volumes),
        dehn_vecs=(tuple(a / -5 for a in alpha),),
        assume_rational=True,
        tiles=reference.MS_TILES,
    )


# ---------------------------------------------------------------------------
# five tiles


@dataclass(frozen=True)
class FiveTileReport:
    kernel_vector: tuple[Fraction, ...]
    kernel_ok: bool
    determinant: Fraction
    dependency_ok: bool
    aggregated: Matrix
    aggregation_ok: bool
    equal_m_r_columns: bool
    volume_eigen_ok: bool
    rank_gt_five: int
    rank_2f_five: int

    @property
    def ok(self) -> bool:
        return (
            self.kernel_ok
            and self.determinant == 0
            and self.dependency_ok
            and self.aggregation_ok
            and self.equal_m_r_columns
            and self.volume_eigen_ok
            and self.rank_gt_five == 4
            and self.rank_2f_five == 5
        )

    def to_json(self) -> dict:
        return {
            "kernel": [str(v) for v in self.kernel_vector],
            "kernel_ok": self.kernel_ok,
            "determinant": str(self.determinant),
            "row5_is_2row4_minus_row3": self.dependency_ok,
            "aggregated": self.aggregated.to_json(),
            "aggregation_ok": self.aggregation_ok,
            "equal_m_r_columns": self.equal_m_r_columns,
            "volume_eigen_ok": self.volume_eigen_ok,
            "rank_psi_gt_five": self.rank_gt_five,
            "rank_psi_2f_five": self.rank_2f_five,
        }


def five_tile_analysis(catalog=None) -> FiveTileReport:
    from .polyhedra import golden_catalog

    psi = PSI_GT_FIVE
    col = {t: psi.column(t) for t in psi.tiles}
    kernel = tuple(r + s - 2 * z for r, s, z in zip(col["r"], col["s"], col["z"]))
    f = reference.FIVE_TILE_MATRIX
    idx = {t: i for i, t in enumerate(reference.FIVE_TILES)}
    rows = f.rows
    dependency = all(
        rows[idx["s"]][j] == 2 * rows[idx["z"]][j] - rows[idx["r"]][j] for j in range(5)
    )
    equal_cols = f.column(idx["m"]) == f.column(idx["r"])
    # rows: h = m + r; columns: the number of h tiles is the number of m halves
    agg_rows = []
    for t in reference.MS_TILES:
        row = rows[idx[t]] if t != "h" else tuple(a + b for a, b in zip(rows[idx["m"]], rows[idx["r"]]))
        agg_rows.append([row[idx["z"]], row[idx["m"]], row[idx["s"]], row[idx["a"]]])
    aggregated = Matrix(agg_rows)
    inv = build_tile_invariants(catalog or golden_catalog(), psi)
    vols = [inv.volume(t) for t in reference.FIVE_TILES]
    img = f @ vols
    eigen = all(x == TAU**3 * v for x, v in zip(img, vols))
    return FiveTileReport(
        kernel_vector=kernel,
        kernel_ok=not any(kernel),
        determinant=f.det(),
        dependency_ok=dependency,
        aggregated=aggregated,
        aggregation_ok=aggregated == reference.M_MS,
        equal_m_r_columns=equal_cols,
        volume_eigen_ok=eigen,
        rank_gt_five=PSI_GT_FIVE.rank,
        rank_2f_five=PSI_2F_FIVE.rank,
    )


# ---------------------------------------------------------------------------
# the colored 8x8 matrix

T2F_SPOT_ENTRIES = {
    (1, 1): GoldenNumber(-16, 11),
    (4, 6): GoldenNumber(14, -8),
    (8, 6): GoldenNumber(13, -8),
}
T2F_ROW_SUMS = (
    GoldenNumber(-39, 28),
    GoldenNumber(2),
    GoldenNumber(13, -5),
    GoldenNumber(42, -23),
    GoldenNumber(3),
    GoldenNumber(4),
    GoldenNumber(11, -5),
    GoldenNumber(40, -23),
)


def colored_volume_vector(catalog=None) -> tuple[GoldenNumber, ...]:
    from .polyhedra import golden_catalog

    catalog = catalog or golden_catalog()
    return tuple(catalog[_base_name(n)].volume for n in reference.COLORED_NAMES)


def t2f_spot_check(m2f: Matrix) -> None:
    if m2f.shape != (8, 8):
        raise MatrixMismatch("shape", None, (8, 8), m2f.shape)
    for (i, j), want in T2F_SPOT_ENTRIES.items():
        got = m2f[i - 1, j - 1]
        if got != want:
            raise MatrixMismatch("spot entry", (i, j), want, got)


def t2f_row_sum_check(m2f: Matrix) -> None:
    for i, (row, want) in enumerate(zip(m2f, T2F_ROW_SUMS)):
        got = sum(row, GoldenNumber(0))
        if got != want:
            raise MatrixMismatch("row sum", (i + 1, 0), want, got)


def t2f_eigen_check(m2f: Matrix, catalog=None) -> None:
    v8 = colored_volume_vector(catalog)
    lam = TAU**3
    for i, (x, v) in enumerate(zip(m2f @ list(v8), v8)):
        if x != lam * v:
            raise MatrixMismatch("volume eigenvector", (i + 1, 1), lam * v, x)


def t2f_intertwiner_check(m2f: Matrix) -> None:
    res = intertwiner_residual(m2f, PSI_2F, reference.M_MS)
    hit = _first_nonzero(res)
    if hit:
        raise MatrixMismatch("intertwiner psi^T M_2F = M_MS psi^T", hit[0], 0, hit[1])


def t2f_color_rows_check(m2f: Matrix) -> None:
    """Rows of B*, D*, F* agree with the uncolored matrix after summing colors."""
    colored = reference.COLORED_NAMES
    for name in ("B*", "D*", "F*"):
        i8 = colored.index(name)
        i6 = reference.GOLDEN_NAMES.index(name)
        for j6, base in enumerate(reference.GOLDEN_NAMES):
            got = sum(
                (m2f[i8, j8] for j8, c in enumerate(colored) if _base_name(c) == base),
                GoldenNumber(0),
            )
            want = reference.M_GT[i6, j6]
            if got != want:
                raise MatrixMismatch(f"{name} row after merging colors", (i8 + 1, j6 + 1), want, got)


T2F_CHECKS = (
    ("spot_entries", t2f_spot_check),
    ("row_sums", t2f_row_sum_check),
    ("volume_eigenvector", t2f_eigen_check),
    ("intertwiner", t2f_intertwiner_check),
    ("color_rows", t2f_color_rows_check),
)


def t2f_checks(m2f: Matrix = reference.M_2F) -> dict:
    """Run every check on the colored matrix; the first failure raises ``MatrixMismatch``."""
    done = []
    for name, check in T2F_CHECKS:
        check(m2f)
        done.append(name)
    return {"passed": done, "induced": subspace_invariance(m2f, PSI_2F)}
