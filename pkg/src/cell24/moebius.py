"""Exact Moebius geometry of the conformal ball model of H^4.

Points live on R^4 together with a point at infinity; the maps we need are
generated by inversions in spheres, reflections in hyperplanes, and
sign-diagonal linear maps.  All of these are involutions, so a word is
inverted by reversing its atom sequence.

Convention (fixed once, used everywhere): words act on the left, the atom
sequence is applied right-to-left, i.e. ``MoebiusWord((f, g))`` is the map
f o g.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .exact import rat_rank, rat_solve, rat_str

Vec = tuple  # tuple of Fraction, length 4


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"


INF = _Infinity()


def vec(*coords) -> Vec:
    return tuple(Fraction(c) for c in coords)


def vdot(u: Vec, v: Vec) -> Fraction:
    return sum(a * b for a, b in zip(u, v))


def vsub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def vadd(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vscale(c, v: Vec) -> Vec:
    return tuple(c * a for a in v)


def vec_str(v: Vec) -> str:
    return "(" + ",".join(rat_str(c) for c in v) + ")"


@dataclass(frozen=True)
class Sphere:
    """Round sphere in R^4: centre and squared radius (radius_sq > 0)."""

    center: Vec
    radius_sq: Fraction

    def __post_init__(self):
        if self.radius_sq <= 0:
            raise ValueError("sphere needs positive squared radius")

    def contains(self, p) -> bool:
        if p is INF:
            return False
        d = vsub(p, self.center)
        return vdot(d, d) == self.radius_sq


def _plane_canonical(normal: Vec, offset: Fraction):
    # Scale so the normal is a primitive integer vector with positive leading
    # entry; planes are equal up to scalar, so this is the canonical form.
    denoms = [c.denominator for c in normal] + [offset.denominator]
    lcm = 1
    for d in denoms:
        lcm = lcm * d // gcd(lcm, d)
    ints = [int(c * lcm) for c in normal]
    off = offset * lcm
    g = 0
    for c in ints:
        g = gcd(g, abs(c))
    if g == 0:
        raise ValueError("plane needs a nonzero normal")
    lead = next(c for c in ints if c != 0)
    if lead < 0:
        g = -g
    return tuple(Fraction(c, g) for c in ints), off / g


@dataclass(frozen=True)
class Plane:
    """Hyperplane { x : normal . x = offset }, stored in canonical form."""

    normal: Vec
    offset: Fraction

    def __post_init__(self):
        n, d = _plane_canonical(self.normal, Fraction(self.offset))
        object.__setattr__(self, "normal", n)
        object.__setattr__(self, "offset", d)

    def contains(self, p) -> bool:
        if p is INF:
            return True
        return vdot(self.normal, p) == self.offset


# ---------------------------------------------------------------------------
# Atomic maps (all involutions)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Inversion:
    sphere: Sphere

    def point(self, p):
        c = self.sphere.center
        if p is INF:
            return c
        d = vsub(p, c)
        n = vdot(d, d)
        if n == 0:
            return INF
        return vadd(c, vscale(self.sphere.radius_sq / n, d))

    def gensphere(self, s):
        a = self.sphere.center
        r2 = self.sphere.radius_sq
        if isinstance(s, Sphere):
            d = vsub(s.center, a)
            t = vdot(d, d) - s.radius_sq
            if t == 0:
                # Sphere through the inversion centre maps to a hyperplane.
                return Plane(d, vdot(a, d) + r2 / 2)
            f = r2 / t
            return Sphere(vadd(a, vscale(f, d)), f * f * s.radius_sq)
        # Plane input.
        h = s.offset - vdot(a, s.normal)
        if h == 0:
            return s
        f = r2 / (2 * h)
        return Sphere(vadd(a, vscale(f, s.normal)), f * f * vdot(s.normal, s.normal))

    def __str__(self):
        return f"Inv[{vec_str(self.sphere.center)};{rat_str(self.sphere.radius_sq)}]"


@dataclass(frozen=True)
class SignFlip:
    signs: tuple  # entries in {-1, +1}

    def __post_init__(self):
        if any(s not in (-1, 1) for s in self.signs):
            raise ValueError("sign vector entries must be +-1")
        if all(s == 1 for s in self.signs):
            raise ValueError("identity sign flip is not an atom")

    def _flip(self, v: Vec) -> Vec:
        return tuple(s * c for s, c in zip(self.signs, v))

    def point(self, p):
        if p is INF:
            return INF
        return self._flip(p)

    def gensphere(self, s):
        if isinstance(s, Sphere):
            return Sphere(self._flip(s.center), s.radius_sq)
        return Plane(self._flip(s.normal), s.offset)

    def __str__(self):
        return "Diag[" + "".join("+" if s == 1 else "-" for s in self.signs) + "]"


@dataclass(frozen=True)
class PlaneReflect:
    plane: Plane

    def point(self, p):
        if p is INF:
            return INF
        n = self.plane.normal
        f = 2 * (vdot(p, n) - self.plane.offset) / vdot(n, n)
        return vsub(p, vscale(f, n))

    def gensphere(self, s):
        if isinstance(s, Sphere):
            return Sphere(self.point(s.center), s.radius_sq)
        m = self.plane.normal
        nn = vsub(s.normal, vscale(2 * vdot(s.normal, m) / vdot(m, m), m))
        # Offset via the image of one point of the plane: p0 = (offset/|n|^2) n.
        p0 = vscale(s.offset / vdot(s.normal, s.normal), s.normal)
        return Plane(nn, vdot(self.point(p0), nn))

    def __str__(self):
        return f"Refl[{vec_str(self.plane.normal)}={rat_str(self.plane.offset)}]"


# ---------------------------------------------------------------------------
# Words
# ---------------------------------------------------------------------------


class MoebiusWord:
    """Composable sequence of atomic maps, applied right-to-left."""

    __slots__ = ("atoms",)

    def __init__(self, atoms=()):
        object.__setattr__(self, "atoms", tuple(atoms))

    def __setattr__(self, *args):
        raise AttributeError("MoebiusWord is immutable")

    def __mul__(self, other):
        return MoebiusWord(self.atoms + other.atoms)

    def inverse(self):
        # Every atom is an involution.
        return MoebiusWord(tuple(reversed(self.atoms)))

    def __len__(self):
        return len(self.atoms)

    def __eq__(self, other):
        return isinstance(other, MoebiusWord) and self.atoms == other.atoms

    def __hash__(self):
        return hash(self.atoms)

    def point(self, p):
        for atom in reversed(self.atoms):
            p = atom.point(p)
        return p

    def gensphere(self, s):
        for atom in reversed(self.atoms):
            s = atom.gensphere(s)
        return s

    def is_identity(self) -> bool:
        """True iff the word fixes the 6-point certificate (hence is the
        identity transformation; see CERTIFICATE below)."""
        return all(self.point(p) == p for p in CERTIFICATE)

    def __str__(self):
        if not self.atoms:
            return "Id"
        return " o ".join(str(a) for a in self.atoms)

    def __repr__(self):
        return f"MoebiusWord({self.atoms!r})"


IDENTITY = MoebiusWord(())


# ---------------------------------------------------------------------------
# Identity certificate
# ---------------------------------------------------------------------------
#
# Six rational points of S^3 that lie on no common 2-sphere.  A ball-preserving
# Moebius transformation fixing all six is the identity: conjugating the first
# fixed point to infinity leaves a Euclidean similarity of the image hyperplane
# fixing four affinely independent points, which forces the identity on the
# plane, and preservation of the half-space rules out the normal reflection.
# The no-common-2-sphere condition is exactly rank([v | -1]) = 5, checked once
# at import time.

CERTIFICATE = (
    vec(1, 0, 0, 0),
    vec(0, 1, 0, 0),
    vec(0, 0, 1, 0),
    vec(0, 0, 0, 1),
    vec(Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)),
    vec(Fraction(1, 2), Fraction(-1, 2), Fraction(1, 2), Fraction(-1, 2)),
)


def _validate_certificate():
    rows = [list(p) + [Fraction(-1)] for p in CERTIFICATE]
    if rat_rank(rows) != 5:
        raise AssertionError("identity certificate points lie on a 2-sphere")
    for p in CERTIFICATE:
        if vdot(p, p) != 1:
            raise AssertionError("certificate points must lie on S^3")


_validate_certificate()


# ---------------------------------------------------------------------------
# Parabolic classification at an ideal fixed point
# ---------------------------------------------------------------------------

IDENTITY_CLASS = "identity"
TRANSLATION = "translation"
OTHER_PARABOLIC_OR_ELLIPTIC = "other"


def conjugate_to_infinity(v: Vec) -> MoebiusWord:
    """Inversion in the unit sphere centred at v in S^3; sends v to infinity
    and S^3 to the hyperplane { x . v = 1/2 }."""
    if vdot(v, v) != 1:
        raise ValueError("conjugation point must lie on S^3")
    return MoebiusWord((Inversion(Sphere(v, Fraction(1))),))


def horoplane_frame(v: Vec):
    """Exact affine frame (p0, p1, p2, p3) spanning the image hyperplane
    { x . v = 1/2 } of S^3 under ``conjugate_to_infinity(v)``."""
    p0 = vscale(Fraction(1, 2), v)
    basis = []
    for i in range(4):
        e = tuple(Fraction(1 if j == i else 0) for j in range(4))
        u = vsub(e, vscale(vdot(e, v), v))
        if rat_rank([list(b) for b in basis] + [list(u)]) > len(basis):
            basis.append(u)
        if len(basis) == 3:
            break
    if len(basis) != 3:
        raise AssertionError("failed to span the horoplane")
    return p0, tuple(basis)


def classify_parabolic(w: MoebiusWord, v: Vec) -> str:
    """Classify a word fixing the ideal point v: identity, pure translation of
    the conjugated horoplane, or anything else (rotation part present)."""
    if w.point(v) != v:
        raise ValueError("word does not fix the given ideal point")
    sigma = conjugate_to_infinity(v)
    conj = sigma * w * sigma
    p0, basis = horoplane_frame(v)
    q0 = conj.point(p0)
    if q0 is INF:
        raise AssertionError("conjugated word must fix infinity")
    translates = True
    for b in basis:
        pi = vadd(p0, b)
        qi = conj.point(pi)
        if qi is INF or vsub(qi, q0) != b:
            translates = False
            break
    if not translates:
        return OTHER_PARABOLIC_OR_ELLIPTIC
    return IDENTITY_CLASS if q0 == p0 else TRANSLATION


def affine_parts(w: MoebiusWord, v: Vec):
    """Exact affine form of the conjugated action on the horoplane at v.

    Returns (Q, t): a 3x3 Fraction matrix and a length-3 translation vector,
    both in the ``horoplane_frame`` basis, with w acting as x -> Q x + t.
    """
    if w.point(v) != v:
        raise ValueError("word does not fix the given ideal point")
    sigma = conjugate_to_infinity(v)
    conj = sigma * w * sigma
    p0, basis = horoplane_frame(v)
    cols = [list(b) for b in basis]
    a_rows = [[cols[j][i] for j in range(3)] for i in range(4)]

    def coords(x):
        return rat_solve(a_rows, list(x))

    q0 = conj.point(p0)
    t = coords(vsub(q0, p0))
    q_cols = []
    for b in basis:
        qi = conj.point(vadd(p0, b))
        q_cols.append(coords(vsub(qi, q0)))
    q = tuple(tuple(q_cols[j][i] for j in range(3)) for i in range(3))
    return q, tuple(t)
