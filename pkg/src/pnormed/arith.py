"""Exact rational scalars/matrices and certified interval arithmetic.

Everything downstream rests on two guarantees made here:

* rational linear algebra is exact (no rounding anywhere), and
* every irrational quantity (p-th powers, p-sum roots) is returned as an
  interval with rational endpoints that provably contains it, certified by
  integer comparisons only.  Refining the precision never widens an interval.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Iterable, Sequence

from .errors import DimensionMismatch, PnormedError

Q = Fraction

DEFAULT_PREC = 53


def q(x) -> Fraction:
    """Coerce ints, strings like '2/3' and Fractions to an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        raise PnormedError("floats are not accepted in certified paths; pass a Fraction or string")
    raise PnormedError(f"cannot coerce {x!r} to a rational")


def qvec(xs: Iterable) -> tuple[Fraction, ...]:
    return tuple(q(x) for x in xs)


@dataclass(frozen=True)
class PExponent:
    """The convexity exponent p as an exact rational s/t with 0 < p <= 1."""

    value: Fraction

    def __post_init__(self):
        v = q(self.value)
        object.__setattr__(self, "value", v)
        if not (0 < v <= 1):
            raise PnormedError(f"p must lie in (0, 1], got {v}")

    @property
    def num(self) -> int:
        return self.value.numerator

    @property
    def den(self) -> int:
        return self.value.denominator

    def __str__(self):
        return f"{self.num}/{self.den}"


def pexp(x) -> PExponent:
    return x if isinstance(x, PExponent) else PExponent(q(x))


def iroot(n: int, k: int) -> int:
    """Floor k-th root of a nonnegative integer, by Newton iteration."""
    if n < 0:
        raise PnormedError("iroot of a negative integer")
    if n == 0:
        return 0
    if k == 1:
        return n
    if k == 2:
        return isqrt(n)
    x = 1 << (n.bit_length() // k + 1)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    return x


@dataclass(frozen=True)
class Interval:
    """A real certified to lie in [lo, hi], both rational.

    Immutable; all operations return fresh intervals that contain the exact
    result whenever the operands contain theirs.
    """

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", q(self.lo))
        object.__setattr__(self, "hi", q(self.hi))
        if self.lo > self.hi:
            raise PnormedError(f"inverted interval [{self.lo}, {self.hi}]")

    # -- constructors -------------------------------------------------
    @staticmethod
    def point(x) -> "Interval":
        x = q(x)
        return Interval(x, x)

    @staticmethod
    def zero() -> "Interval":
        return _ZERO

    @staticmethod
    def one() -> "Interval":
        return _ONE

    @staticmethod
    def hull(items: Sequence["Interval"]) -> "Interval":
        if not items:
            raise PnormedError("hull of no intervals")
        return Interval(min(i.lo for i in items), max(i.hi for i in items))

    # -- queries -------------------------------------------------------
    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, x) -> bool:
        x = q(x)
        return self.lo <= x <= self.hi

    def certainly_le(self, other) -> bool:
        """True only if every value here is <= every value there."""
        o = other if isinstance(other, Interval) else Interval.point(other)
        return self.hi <= o.lo

    def certainly_lt(self, other) -> bool:
        o = other if isinstance(other, Interval) else Interval.point(other)
        return self.hi < o.lo

    def certainly_ge(self, other) -> bool:
        o = other if isinstance(other, Interval) else Interval.point(other)
        return self.lo >= o.hi

    def overlaps(self, other: "Interval") -> bool:
        return not (self.hi < other.lo or other.hi < self.lo)

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other) -> "Interval":
        o = other if isinstance(other, Interval) else Interval.point(other)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other) -> "Interval":
        o = other if isinstance(other, Interval) else Interval.point(other)
        return Interval(self.lo - o.hi, self.hi - o.lo)

    def __mul__(self, other) -> "Interval":
        o = other if isinstance(other, Interval) else Interval.point(other)
        products = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(products), max(products))

    __rmul__ = __mul__

    def scale(self, c) -> "Interval":
        c = q(c)
        if c >= 0:
            return Interval(self.lo * c, self.hi * c)
        return Interval(self.hi * c, self.lo * c)

    def reciprocal(self) -> "Interval":
        if self.lo <= 0 <= self.hi:
            raise PnormedError("reciprocal of an interval containing 0")
        return Interval(1 / self.hi, 1 / self.lo)

    def __abs__(self) -> "Interval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Interval(Q(0), max(-self.lo, self.hi))

    def max_with(self, other: "Interval") -> "Interval":
        return Interval(max(self.lo, other.lo), max(self.hi, other.hi))

    def min_with(self, other: "Interval") -> "Interval":
        return Interval(min(self.lo, other.lo), min(self.hi, other.hi))

    def clamp_nonneg(self) -> "Interval":
        return Interval(max(self.lo, Q(0)), max(self.hi, Q(0)))

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


_ZERO = Interval(Q(0), Q(0))
_ONE = Interval(Q(1), Q(1))


def root_pow(x, num: int, den: int, prec: int = DEFAULT_PREC) -> Interval:
    """Certified x**(num/den) for rational x >= 0 and integers num, den >= 1.

    The returned interval has width <= 2**(-prec) * max(1, x**(num/den)) and
    is certified purely by integer power comparisons: with lo = m / 2**k one
    has m**den <= (x**num) * 2**(k*den) < (m+1)**den unless the value is hit
    exactly, in which case a point interval is returned.
    """
    return _root_pow_cached(q(x), num, den, prec)


@lru_cache(maxsize=500_000)
def _root_pow_cached(x: Fraction, num: int, den: int, prec: int) -> Interval:
    if x < 0:
        raise PnormedError(f"root_pow of negative base {x}")
    if num < 0 or den <= 0:
        raise PnormedError("root_pow exponent must be a nonnegative rational")
    if x == 0:
        return Interval.point(0) if num > 0 else Interval.point(1)
    if num == 0:
        return Interval.point(1)
    xp = x ** num
    if den == 1:
        return Interval.point(xp)
    root = Fraction(iroot(xp.numerator, den), iroot(xp.denominator, den))
    if root ** den == xp:
        return Interval.point(root)
    k = prec + 1
    n, d = xp.numerator, xp.denominator
    scaled = (n << (k * den)) // d
    m = iroot(scaled, den)
    lo = Fraction(m, 1 << k)
    hi = Fraction(m + 1, 1 << k)
    # the floor division can only lose mass, so (m+1)/2^k >= x^(num/den)
    # whenever (m+1)^den * d >= n * 2^(k*den); bump once if not.
    if (m + 1) ** den * d < n << (k * den):
        hi = Fraction(m + 2, 1 << k)
    return Interval(lo, hi)


def p_pow(x, p: PExponent, prec: int = DEFAULT_PREC) -> Interval:
    """Certified x**p for rational x >= 0."""
    return root_pow(x, p.num, p.den, prec)


def interval_p_pow(iv: Interval, p: PExponent, prec: int = DEFAULT_PREC) -> Interval:
    """Monotone extension of p_pow to nonnegative intervals."""
    if iv.lo < 0:
        raise PnormedError("interval_p_pow needs a nonnegative interval")
    return Interval(p_pow(iv.lo, p, prec).lo, p_pow(iv.hi, p, prec).hi)


def interval_root(iv: Interval, p: PExponent, prec: int = DEFAULT_PREC) -> Interval:
    """Monotone x**(1/p) on nonnegative intervals (p = s/t, so exponent t/s)."""
    if iv.lo < 0:
        raise PnormedError("interval_root needs a nonnegative interval")
    return Interval(
        root_pow(iv.lo, p.den, p.num, prec).lo,
        root_pow(iv.hi, p.den, p.num, prec).hi,
    )


def p_sum_root(terms: Sequence[Interval], p: PExponent, prec: int = DEFAULT_PREC) -> Interval:
    """Certified (sum of terms)**(1/p); the caller supplies p-th powers.

    Monotone in every argument; the empty sum is [0, 0].
    """
    if not terms:
        return Interval.zero()
    lo = Q(0)
    hi = Q(0)
    for t in terms:
        if t.lo < 0:
            raise PnormedError("p_sum_root terms must be nonnegative intervals")
        lo += t.lo
        hi += t.hi
    return interval_root(Interval(lo, hi), p, prec)


def p_combine(norms: Sequence[Interval], p: PExponent, prec: int = DEFAULT_PREC) -> Interval:
    """Certified (sum ||x_i||^p)^(1/p) from intervals for the norms themselves."""
    powers = [interval_p_pow(n, p, prec) for n in norms]
    return p_sum_root(powers, p, prec)


Vector = tuple[Fraction, ...]


def vec_add(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vec_sub(a: Vector, b: Vector) -> Vector:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vec_scale(c, a: Vector) -> Vector:
    c = q(c)
    return tuple(c * x for x in a)


def vec_is_zero(a: Vector) -> bool:
    return all(x == 0 for x in a)


def vec_dot(a: Vector, b: Vector) -> Fraction:
    return sum((x * y for x, y in zip(a, b, strict=True)), Q(0))


class Matrix:
    """Dense exact rational matrix; immutable, supports 0-dimensional shapes."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[Iterable]):
        ent = tuple(tuple(q(x) for x in row) for row in entries)
        if len(ent) != rows or any(len(r) != cols for r in ent):
            raise DimensionMismatch(f"matrix data does not match shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self.entries = ent

    # -- constructors ---------------------------------------------------
    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "Matrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        return Matrix(r, c, rows)

    @staticmethod
    def from_cols(cols: Sequence[Sequence]) -> "Matrix":
        c = len(cols)
        r = len(cols[0]) if c else 0
        return Matrix(r, c, [[cols[j][i] for j in range(c)] for i in range(r)])

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(rows: int, cols: int) -> "Matrix":
        return Matrix(rows, cols, [[0] * cols for _ in range(rows)])

    # -- basics ----------------------------------------------------------
    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, {self.entries})"

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == Matrix.identity(self.rows)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def col(self, j: int) -> Vector:
        return tuple(self.entries[i][j] for i in range(self.rows))

    def columns(self) -> list[Vector]:
        return [self.col(j) for j in range(self.cols)]

    # -- algebra -----------------------------------------------------------
    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix addition shape mismatch")
        return Matrix(
            self.rows,
            self.cols,
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix subtraction shape mismatch")
        return Matrix(
            self.rows,
            self.cols,
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
        )

    def scale(self, c) -> "Matrix":
        c = q(c)
        return Matrix(self.rows, self.cols, [[c * x for x in row] for row in self.entries])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        ot = other.transpose().entries
        return Matrix(
            self.rows,
            other.cols,
            [[vec_dot(row, col) for col in ot] for row in self.entries],
        )

    def apply(self, v: Sequence) -> Vector:
        v = qvec(v)
        if len(v) != self.cols:
            raise DimensionMismatch(f"matrix expects vectors of length {self.cols}, got {len(v)}")
        return tuple(vec_dot(row, v) for row in self.entries)

    # -- elimination ------------------------------------------------------
    def _rref(self) -> tuple[list[list[Fraction]], list[int]]:
        """Row-reduced echelon form with deterministic first-nonzero pivoting."""
        m = [list(row) for row in self.entries]
        pivots: list[int] = []
        r = 0
        for c in range(self.cols):
            pivot_row = None
            for i in range(r, self.rows):
                if m[i][c] != 0:
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            m[r], m[pivot_row] = m[pivot_row], m[r]
            pv = m[r][c]
            m[r] = [x / pv for x in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return m, pivots

    def rank(self) -> int:
        return len(self._rref()[1])

    def kernel_basis(self) -> list[Vector]:
        """Exact basis of the null space, deterministic across runs."""
        m, pivots = self._rref()
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for fc in free:
            v = [Q(0)] * self.cols
            v[fc] = Q(1)
            for r, pc in enumerate(pivots):
                v[pc] = -m[r][fc]
            basis.append(tuple(v))
        return basis

    def solve(self, b: Sequence) -> Vector | None:
        """One exact solution of self @ x = b, or None if inconsistent.

        When the columns are independent the solution is unique.
        """
        b = qvec(b)
        if len(b) != self.rows:
            raise DimensionMismatch("solve: right-hand side length mismatch")
        aug = Matrix(self.rows, self.cols + 1, [list(row) + [bb] for row, bb in zip(self.entries, b)])
        m, pivots = aug._rref()
        if self.cols in pivots:
            return None
        x = [Q(0)] * self.cols
        for r, pc in enumerate(pivots):
            x[pc] = m[r][self.cols]
        return tuple(x)

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise DimensionMismatch("inverse of a non-square matrix")
        n = self.rows
        aug = Matrix(n, 2 * n, [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(self.entries)])
        m, pivots = aug._rref()
        if pivots != list(range(n)):
            raise PnormedError("matrix is singular")
        return Matrix(n, n, [row[n:] for row in m])

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise DimensionMismatch("hstack row mismatch")
        return Matrix(self.rows, self.cols + other.cols, [list(a) + list(b) for a, b in zip(self.entries, other.entries)])

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise DimensionMismatch("vstack column mismatch")
        return Matrix(self.rows + other.rows, self.cols, list(self.entries) + list(other.entries))
