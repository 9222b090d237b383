"""Shipped R^3 layout coordinates (over Q(sqrt 2)) for the 24 side labels.

These are the published positions of the 1-handle balls in the handle
pictures; the exact Moebius normalisation producing them from ball-model
data is not pinned down here, so the table is data, checked by tests.
"""

from __future__ import annotations

from fractions import Fraction

from .exact import QS2

H = Fraction(1, 2)
R = QS2(0, H)       # 1/sqrt(2)
P1 = QS2(1, 1)      # 1 + sqrt(2)
M1 = QS2(-1, 1)     # -1 + sqrt(2)
Z = QS2(0, 0)

LAYOUT = {
    "A": (R, R, Z),
    "A'": (-R, R, Z),
    "B": (R, -R, Z),
    "B'": (-R, -R, Z),
    "C": (R, Z, R),
    "C'": (R, Z, -R),
    "D": (-R, Z, R),
    "D'": (-R, Z, -R),
    "E": (Z, R, R),
    "E'": (Z, -R, -R),
    "F": (Z, R, -R),
    "F'": (Z, -R, R),
    "G": (P1, Z, Z),
    "G'": (-M1, Z, Z),
    "H": (M1, Z, Z),
    "H'": (-P1, Z, Z),
    "I": (Z, P1, Z),
    "I'": (Z, -P1, Z),
    "J": (Z, M1, Z),
    "J'": (Z, -M1, Z),
    "K": (Z, Z, P1),
    "K'": (Z, Z, M1),
    "L": (Z, Z, -P1),
    "L'": (Z, Z, -M1),
}

# The doubled-domain copy is laid out by reflecting across the plane x = 3,
# which lies to the right of every base position.
REFLECT_X_CENTER = QS2(3, 0)


def reflect_x(pos):
    x, y, z = pos
    return (REFLECT_X_CENTER * 2 - x, y, z)
