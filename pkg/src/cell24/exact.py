"""Exact number systems used throughout: arbitrary-precision rationals
(stdlib ``fractions.Fraction``) and the real quadratic field Q(sqrt 2).

Everything downstream (ball-model coordinates, sphere inversions, layout
coordinates) is computed in these two systems, so every comparison in the
package is exact.
"""

from __future__ import annotations

from fractions import Fraction


def rat_str(q: Fraction) -> str:
    """Render a rational as ``p`` or ``p/q`` (denominator always positive)."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class QS2:
    """An element a + b*sqrt(2) of the field Q(sqrt 2).

    The pair (a, b) is a unique representation since sqrt(2) is irrational,
    so equality and hashing are componentwise.  Signs are decided exactly by
    comparing a^2 with 2 b^2 (no root extraction).
    """

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))

    def __setattr__(self, *args):
        raise AttributeError("QS2 values are immutable")

    # -- field operations ---------------------------------------------------

    @staticmethod
    def _coerce(x) -> "QS2":
        if isinstance(x, QS2):
            return x
        if isinstance(x, (int, Fraction)):
            return QS2(x, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QS2(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QS2(-self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QS2(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QS2(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def inverse(self) -> "QS2":
        # 1/(a + b r) = (a - b r) / (a^2 - 2 b^2); the norm vanishes only at 0.
        n = self.a * self.a - 2 * self.b * self.b
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt 2)")
        return QS2(self.a / n, -self.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    # -- order and identity -------------------------------------------------

    def sign(self) -> int:
        """Exact sign of a + b*sqrt(2) in {-1, 0, +1}."""
        a, b = self.a, self.b
        if b == 0:
            return 0 if a == 0 else (1 if a > 0 else -1)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # Mixed signs: compare |a| with |b| sqrt(2) via squares.
        d = a * a - 2 * b * b
        bigger_is_a = d > 0
        if d == 0:
            raise ArithmeticError("sqrt(2) cannot be rational")
        if a > 0:
            return 1 if bigger_is_a else -1
        return -1 if bigger_is_a else 1

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __lt__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self - o).sign() < 0

    def __le__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self - o).sign() <= 0

    def __float__(self):
        return float(self.a) + float(self.b) * 2 ** 0.5

    # -- text form ------------------------------------------------------------

    def __str__(self):
        if self.b == 0:
            return rat_str(self.a)
        bs = f"{rat_str(abs(self.b))}*sqrt2" if abs(self.b) != 1 else "sqrt2"
        if self.a == 0:
            return bs if self.b > 0 else "-" + bs
        op = "+" if self.b > 0 else "-"
        return f"{rat_str(self.a)} {op} {bs}"

    def __repr__(self):
        return f"QS2({self.a!r}, {self.b!r})"


SQRT2 = QS2(0, 1)


def qs2_parse(text: str) -> QS2:
    """Inverse of ``str(QS2)``.  Accepts e.g. '0', '-3/2', '1 + sqrt2',
    '1/2 - 3/4*sqrt2', 'sqrt2'."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty Q(sqrt2) literal")
    # Split into signed terms.
    terms = []
    i = 0
    start = 0
    for i, ch in enumerate(s):
        if ch in "+-" and i > start and s[i - 1] not in "+-/*":
            terms.append(s[start:i])
            start = i
    terms.append(s[start:])
    a = Fraction(0)
    b = Fraction(0)
    for term in terms:
        if "sqrt2" in term:
            coeff = term.replace("sqrt2", "").rstrip("*")
            if coeff in ("", "+"):
                b += 1
            elif coeff == "-":
                b -= 1
            else:
                b += Fraction(coeff)
        else:
            a += Fraction(term)
    return QS2(a, b)


# -- small exact linear algebra over Fraction --------------------------------


def rat_rank(rows) -> int:
    """Rank of a matrix of Fractions, by fraction-exact Gaussian elimination."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    row = 0
    for col in range(ncols):
        pivot = next((r for r in range(row, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        pv = m[row][col]
        for r in range(len(m)):
            if r != row and m[r][col] != 0:
                factor = m[r][col] / pv
                m[r] = [x - factor * y for x, y in zip(m[r], m[row])]
        row += 1
        rank += 1
        if row == len(m):
            break
    return rank


def rat_solve(a_rows, b_col):
    """Solve A x = b exactly; raises ValueError if inconsistent.

    Returns one solution (free variables set to 0), as a list of Fractions.
    """
    m = [list(r) + [bv] for r, bv in zip(a_rows, b_col)]
    nrows = len(m)
    ncols = len(a_rows[0]) if a_rows else 0
    pivots = []
    row = 0
    for col in range(ncols):
        pivot = next((r for r in range(row, nrows) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        pv = m[row][col]
        m[row] = [x / pv for x in m[row]]
        for r in range(nrows):
            if r != row and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [x - factor * y for x, y in zip(m[r], m[row])]
        pivots.append(col)
        row += 1
        if row == nrows:
            break
    for r in range(row, nrows):
        if m[r][ncols] != 0:
            raise ValueError("inconsistent linear system")
    x = [Fraction(0)] * ncols
    for r, col in enumerate(pivots):
        x[col] = m[r][ncols]
    return x
