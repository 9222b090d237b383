"""Combinatorics of the ideal right-angled 24-cell in the conformal ball model.

The model is normalised so that every side sphere has radius 1 and its centre
is a lattice vector of squared norm 2 (the orthogonality identity
|c|^2 = 1 + R^2 makes those spheres orthogonal to S^3).  The 24 ideal
vertices lie on S^3: the 8 unit vectors +-e_i and the 16 half-integer points
(+-1/2, +-1/2, +-1/2, +-1/2).  A vertex v lies on the side with centre c
exactly when v . c = 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .moebius import Sphere, vdot, vec

# Side labels in table order.  The primed side of each letter pair is the
# image of the unprimed one under the reference pairing code (146928), which
# is the labelling the published tables use; the labels are fixed data here.
SIDE_ORDER = (
    "A", "A'", "B", "B'", "C", "C'", "D", "D'", "E", "E'", "F", "F'",
    "G", "G'", "H", "H'", "I", "I'", "J", "J'", "K", "K'", "L", "L'",
)

SIDE_CENTERS = {
    "A": vec(1, 1, 0, 0),
    "A'": vec(-1, 1, 0, 0),
    "B": vec(1, -1, 0, 0),
    "B'": vec(-1, -1, 0, 0),
    "C": vec(1, 0, 1, 0),
    "C'": vec(1, 0, -1, 0),
    "D": vec(-1, 0, 1, 0),
    "D'": vec(-1, 0, -1, 0),
    "E": vec(0, 1, 1, 0),
    "E'": vec(0, -1, -1, 0),
    "F": vec(0, 1, -1, 0),
    "F'": vec(0, -1, 1, 0),
    "G": vec(1, 0, 0, 1),
    "G'": vec(-1, 0, 0, -1),
    "H": vec(1, 0, 0, -1),
    "H'": vec(-1, 0, 0, 1),
    "I": vec(0, 1, 0, 1),
    "I'": vec(0, -1, 0, 1),
    "J": vec(0, 1, 0, -1),
    "J'": vec(0, -1, 0, -1),
    "K": vec(0, 0, 1, 1),
    "K'": vec(0, 0, 1, -1),
    "L": vec(0, 0, -1, 1),
    "L'": vec(0, 0, -1, -1),
}

SIDE_INDEX = {label: i for i, label in enumerate(SIDE_ORDER)}


@dataclass(frozen=True)
class Side:
    label: str
    center: tuple
    sphere: Sphere


@dataclass(frozen=True)
class Ridge:
    """Codimension-2 face: intersection of two adjacent sides."""

    sides: frozenset  # two side labels
    vertices: tuple   # the three ideal vertices on it


@dataclass(frozen=True)
class EdgeFace:
    """Codimension-3 face: common intersection of three mutually adjacent
    sides, spanning two ideal vertices."""

    vertices: frozenset  # two ideal vertices
    sides: frozenset     # the side labels containing both


class Polytope24:
    def __init__(self):
        self.sides = {
            label: Side(label, c, Sphere(c, Fraction(1)))
            for label, c in SIDE_CENTERS.items()
        }
        for side in self.sides.values():
            if vdot(side.center, side.center) != 2:
                raise AssertionError("side centre must have squared norm 2")

        units = []
        for i in range(4):
            for s in (1, -1):
                units.append(vec(*(s if j == i else 0 for j in range(4))))
        halves = [
            tuple(Fraction(s, 2) for s in signs)
            for signs in itertools.product((1, -1), repeat=4)
        ]
        self.vertices = tuple(sorted(units + halves, reverse=True))
        if any(vdot(v, v) != 1 for v in self.vertices):
            raise AssertionError("ideal vertices must lie on S^3")

        self.vertex_sides = {
            v: frozenset(
                lab for lab, s in self.sides.items() if vdot(v, s.center) == 1
            )
            for v in self.vertices
        }
        self.side_vertices = {
            lab: tuple(v for v in self.vertices if lab in self.vertex_sides[v])
            for lab in SIDE_ORDER
        }

        ridges = []
        for la, lb in itertools.combinations(SIDE_ORDER, 2):
            if vdot(self.sides[la].center, self.sides[lb].center) == 1:
                verts = tuple(
                    v for v in self.side_vertices[la]
                    if lb in self.vertex_sides[v]
                )
                ridges.append(Ridge(frozenset((la, lb)), verts))
        self.ridges = tuple(ridges)
        self.ridge_by_sides = {r.sides: r for r in self.ridges}

        faces = []
        for va, vb in itertools.combinations(self.vertices, 2):
            common = self.vertex_sides[va] & self.vertex_sides[vb]
            if len(common) >= 3:
                faces.append(EdgeFace(frozenset((va, vb)), common))
        self.edge_faces = tuple(faces)
        self.edge_face_by_vertices = {f.vertices: f for f in self.edge_faces}

        self._sphere_to_side = {s.sphere: s for s in self.sides.values()}

    def side_of_sphere(self, gensphere):
        """The side whose sphere equals the given one, or None.

        A miss during cycle tracing signals a failed side-pairing condition
        for the code under test.
        """
        if not isinstance(gensphere, Sphere):
            return None
        return self._sphere_to_side.get(gensphere)

    def adjacent(self, la: str, lb: str) -> bool:
        return vdot(self.sides[la].center, self.sides[lb].center) == 1

    def incidence_summary(self):
        return {
            "sides": len(self.sides),
            "vertices": len(self.vertices),
            "ridges": len(self.ridges),
            "edge_faces": len(self.edge_faces),
        }

    def incidence_json(self):
        """Debug dump of the full incidence structure (JSON-serialisable)."""

        def v_str(v):
            return "(" + ",".join(str(x) for x in v) + ")"

        return {
            "sides": {
                lab: [v_str(v) for v in self.side_vertices[lab]]
                for lab in SIDE_ORDER
            },
            "ridges": [
                {
                    "sides": sorted(r.sides, key=SIDE_INDEX.get),
                    "vertices": [v_str(v) for v in r.vertices],
                }
                for r in self.ridges
            ],
            "edge_faces": [
                {
                    "sides": sorted(f.sides, key=SIDE_INDEX.get),
                    "vertices": sorted(v_str(v) for v in f.vertices),
                }
                for f in self.edge_faces
            ],
        }


@lru_cache(maxsize=1)
def build_polytope() -> Polytope24:
    return Polytope24()
