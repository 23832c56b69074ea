"""Published tables for the golden tetrahedra and the Mosseri-Sadoc tiles.

These are the values the computations are checked against, plus the data
that has no derivation here (the colored 8-tile inflation matrix, the packing
maps and the 5-tile matrix). ``G(a, b)`` is ``a + b*tau``.
"""

from __future__ import annotations

from fractions import Fraction

from .exactnum import GoldenNumber, Matrix


def G(a, b=0) -> GoldenNumber:
    return GoldenNumber(a, b)


h = Fraction(1, 2)

GOLDEN_NAMES = ("A*", "B*", "C*", "D*", "F*", "G*")
COLORED_NAMES = ("A*", "B*", "C*b", "C*r", "D*", "F*", "G*b", "G*r")
MS_TILES = ("z", "h", "s", "a")
FIVE_TILES = ("a", "m", "r", "z", "s")

# 12 * volume
VGT = {
    "A*": G(1, 2),
    "B*": G(1),
    "C*": G(1, 1),
    "D*": G(0, 1),
    "F*": G(1, 1),
    "G*": G(0, 1),
}

# (beta component, delta component)
DGT = {
    "A*": (G(-1, -1), G(-1, 5)),
    "B*": (G(5, 1), G(-1, 1)),
    "C*": (G(-2, 3), G(-2)),
    "D*": (G(0, -2), G(-3, -2)),
    "F*": (G(0, -3), G(3, -3)),
    "G*": (G(3, 3), G(3)),
}

# right-hand sides M_gt @ column
MVGT_RHS = (G(5, 8), G(1, 2), G(3, 5), G(2, 3), G(3, 5), G(2, 3))
MDGTB_RHS = (G(-1, -2), G(1, 6), G(3, 1), G(-2, -2), G(-3, -3), G(3, 6))
MDGTD_RHS = (G(5, 4), G(1), G(0, -2), G(-2, -5), G(-3), G(0, 3))

EQI_X = Matrix(
    [
        [2, 1, -1, -1, 5, -1],
        [0, 1, 1, 5, 1, -1],
        [1, 1, 3, -2, 0, -2],
        [1, 0, -2, 0, -2, -3],
        [1, 1, -3, 0, -3, 3],
        [1, 0, 3, 3, 0, 3],
    ]
)
EQI_Y = Matrix(
    [
        [8, 5, -2, -1, 4, 5],
        [2, 1, 6, 1, 0, 1],
        [5, 3, 1, 3, -2, 0],
        [3, 2, -2, -2, -5, -2],
        [5, 3, -3, -3, 0, -3],
        [3, 2, 6, 3, 3, 0],
    ]
)

M_GT = Matrix(
    [
        [2, 0, 1, 0, 2, 1],
        [0, 0, 1, 0, 0, 1],
        [h, h, 1, 1, 1, 1],
        [0, 0, 1, 1, 1, 0],
        [1, 0, 1, 1, 1, 0],
        [h, h, 1, 0, 0, 1],
    ]
)
M_GT_SQUARED = Matrix(
    [
        [7, 1, 6, 3, 7, 4],
        [1, 1, 2, 2, 1, 2],
        [3, 1, 5, 3, 4, 3],
        [3 * h, h, 3, 3, 3, 1],
        [7 * h, h, 4, 3, 5, 2],
        [2, 1, 3, 1, 2, 3],
    ]
)
M_GT_CUBED = Matrix(
    [
        [26, 5, 28, 16, 30, 18],
        [5, 2, 8, 4, 6, 6],
        [14, 4, 19, 12, 18, 12],
        [8, 2, 12, 9, 12, 6],
        [15, 3, 18, 12, 19, 10],
        [9, 3, 12, 6, 10, 9],
    ]
)

# chi(x) = x^4 - 5x^3 + 2x^2 + 5x + 1, lowest degree first
CHI = (1, 5, 2, -5, 1)

# Mosseri-Sadoc, ordering (z, h, s, a)
VMS = (G(2, 4), G(4, 6), G(3, 4), G(1, 2))  # 12 * volume
DMS_ALPHA = (G(0, -5), G(-10), G(5, -5), G(0, 5))  # coefficient of alpha-bar
DMS_NORMALIZED = (G(0, 1), G(2), G(-1, 1), G(0, -1))  # DMS_ALPHA / -5
VOL_M, VOL_R = G(3, 2), G(1, 4)  # 12 * volume
DEHN_M_ALPHA, DEHN_R_ALPHA = G(-5, 5), G(-5, -5)

M_MS = Matrix([[1, 1, 1, 1], [2, 1, 2, 2], [1, 1, 1, 2], [0, 0, 1, 2]])
EIGV_RHS = (G(10, 16), G(16, 26), G(11, 18), G(5, 8))
EIGD_RHS = (G(1, 1), G(0, 2), G(1), G(-1, -1))
MMS_X = Matrix([[4, 2, 1, 0], [6, 4, 0, 2], [4, 3, 1, -1], [2, 1, -1, 0]])
MMS_Y = Matrix([[16, 10, 1, 1], [26, 16, 2, 0], [18, 11, 0, 1], [8, 5, -1, -1]])

# colored golden tetrahedra, ordering COLORED_NAMES
M_2F = Matrix(
    [
        [G(-16, 11), G(0), G(-2, 2), G(-3, 2), G(0), G(-13, 9), G(-1, 1), G(-4, 3)],
        [G(0), G(0), G(0), G(1), G(0), G(0), G(0), G(1)],
        [G(4, -2), G(1), G(0), G(2, -1), G(1), G(3, -1), G(0), G(2, -1)],
        [G(15, -9), G(0), G(4, -2), G(2, -1), G(1), G(14, -8), G(2, -1), G(4, -2)],
        [G(0), G(0), G(0), G(1), G(1), G(1), G(0), G(0)],
        [G(1), G(0), G(1), G(0), G(1), G(1), G(0), G(0)],
        [G(4, -2), G(1), G(0), G(2, -1), G(0), G(2, -1), G(0), G(2, -1)],
        [G(15, -9), G(0), G(4, -2), G(2, -1), G(0), G(13, -8), G(2, -1), G(4, -2)],
    ]
)

# ordering FIVE_TILES; row i lists the tiles inside the inflated tile i
FIVE_TILE_MATRIX = Matrix(
    [
        [2, 0, 0, 0, 1],
        [2, 0, 0, 1, 1],
        [0, 1, 1, 1, 1],
        [1, 1, 1, 1, 1],
        [2, 1, 1, 1, 1],
    ]
)

# packing maps: target tile -> multiplicities of source tetrahedra
PSI_GT = {
    "z": {"A*": 1, "C*": 1, "G*": 1},
    "h": {"A*": 1, "B*": 1, "F*": 2, "G*": 2},
    "s": {"A*": 1, "C*": 2},
    "a": {"D*": 1, "F*": 1},
}
PSI_GT_FIVE = {
    "a": {"D*": 1, "F*": 1},
    "m": {"B*": 1, "F*": 2},
    "r": {"A*": 1, "G*": 2},
    "z": {"A*": 1, "C*": 1, "G*": 1},
    "s": {"A*": 1, "C*": 2},
}
PSI_2F = {
    "z": {"A*": 1, "C*b": 1, "G*r": 1},
    "h": {"A*": 1, "B*": 1, "F*": 2, "G*b": 1, "G*r": 1},
    "s": {"A*": 1, "C*b": 1, "C*r": 1},
    "a": {"D*": 1, "F*": 1},
}
PSI_2F_FIVE = {
    "a": {"D*": 1, "F*": 1},
    "m": {"B*": 1, "F*": 2},
    "r": {"A*": 1, "G*b": 1, "G*r": 1},
    "z": {"A*": 1, "C*b": 1, "G*r": 1},
    "s": {"A*": 1, "C*b": 1, "C*r": 1},
}
