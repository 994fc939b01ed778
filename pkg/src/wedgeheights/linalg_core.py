"""Exact rational vectors, matrices, minors and Grassmann coordinates.

Scalars are :class:`fractions.Fraction`.  Nothing in this module touches
floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Iterable, Iterator, Sequence

from .errors import DimensionError, InvariantViolation, ParseError, PreconditionError

Rational = Fraction
SubsetIndex = tuple  # strictly increasing 1-based row indices


def to_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        # exact binary value; callers wanting decimals should pass strings
        return Fraction(value)
    return Fraction(value)


class RationalVector:
    """Immutable column vector of Fractions."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Iterable):
        ent = tuple(to_rational(x) for x in entries)
        if not ent:
            raise DimensionError("vector must have positive dimension")
        object.__setattr__(self, "_entries", ent)

    def __setattr__(self, name, value):
        raise AttributeError("RationalVector is immutable")

    @property
    def entries(self) -> tuple[Fraction, ...]:
        return self._entries

    @property
    def dim(self) -> int:
        return len(self._entries)

    def __len__(self):
        return len(self._entries)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self._entries)

    def __getitem__(self, i):
        return self._entries[i]

    def __eq__(self, other):
        if isinstance(other, RationalVector):
            return self._entries == other._entries
        return NotImplemented

    def __hash__(self):
        return hash(("RationalVector", self._entries))

    def __repr__(self):
        return f"RationalVector([{', '.join(_fmt(x) for x in self._entries)}])"

    def _check(self, other: "RationalVector"):
        if other.dim != self.dim:
            raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other):
        other = as_vector(other)
        self._check(other)
        return RationalVector(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        other = as_vector(other)
        self._check(other)
        return RationalVector(a - b for a, b in zip(self, other))

    def __neg__(self):
        return RationalVector(-a for a in self)

    def scale(self, c) -> "RationalVector":
        c = to_rational(c)
        return RationalVector(c * a for a in self)

    def dot(self, other) -> Fraction:
        other = as_vector(other)
        self._check(other)
        return sum((a * b for a, b in zip(self, other)), Fraction(0))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self._entries)

    def restrict(self, rows: Sequence[int]) -> "RationalVector":
        """Entries at the given 1-based rows."""
        return RationalVector(self._entries[i - 1] for i in rows)


def as_vector(v) -> RationalVector:
    return v if isinstance(v, RationalVector) else RationalVector(v)


class RationalMatrix:
    """Immutable N x L matrix stored column-major."""

    __slots__ = ("_cols", "_nrows")

    def __init__(self, columns: Iterable[Iterable]):
        cols = tuple(tuple(to_rational(x) for x in c) for c in columns)
        if not cols:
            raise DimensionError("matrix must have at least one column")
        n = len(cols[0])
        if n == 0:
            raise DimensionError("matrix must have at least one row")
        if any(len(c) != n for c in cols):
            raise DimensionError("ragged columns")
        object.__setattr__(self, "_cols", cols)
        object.__setattr__(self, "_nrows", n)

    def __setattr__(self, name, value):
        raise AttributeError("RationalMatrix is immutable")

    @classmethod
    def from_columns(cls, columns) -> "RationalMatrix":
        return cls(columns)

    @classmethod
    def from_rows(cls, rows) -> "RationalMatrix":
        rows = [tuple(r) for r in rows]
        if not rows or not rows[0]:
            raise DimensionError("empty matrix")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionError("ragged rows")
        return cls(zip(*rows))

    @classmethod
    def identity(cls, n: int, l: int | None = None) -> "RationalMatrix":
        l = n if l is None else l
        return cls([[int(i == j) for i in range(n)] for j in range(l)])

    @property
    def rows(self) -> int:
        return self._nrows

    @property
    def cols(self) -> int:
        return len(self._cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self._nrows, len(self._cols)

    @property
    def entries(self) -> tuple[Fraction, ...]:
        return tuple(x for c in self._cols for x in c)

    @property
    def columns(self) -> tuple[RationalVector, ...]:
        return tuple(RationalVector(c) for c in self._cols)

    def column(self, j: int) -> RationalVector:
        return RationalVector(self._cols[j])

    def row(self, i: int) -> RationalVector:
        return RationalVector(c[i] for c in self._cols)

    def row_tuples(self) -> list[tuple[Fraction, ...]]:
        return [tuple(c[i] for c in self._cols) for i in range(self._nrows)]

    def __getitem__(self, ij):
        i, j = ij
        return self._cols[j][i]

    def __eq__(self, other):
        if isinstance(other, RationalMatrix):
            return self._cols == other._cols
        return NotImplemented

    def __hash__(self):
        return hash(("RationalMatrix", self._cols))

    def __repr__(self):
        body = "; ".join(" ".join(_fmt(x) for x in r) for r in self.row_tuples())
        return f"RationalMatrix[{self._nrows}x{self.cols}]({body})"

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.row_tuples())

    def submatrix_rows(self, rows: Sequence[int]) -> "RationalMatrix":
        """Keep the given 1-based rows, in the given order."""
        return RationalMatrix([c[i - 1] for i in rows] for c in self._cols)

    def delete_rows(self, rows: Iterable[int]) -> "RationalMatrix":
        drop = set(rows)
        return self.submatrix_rows([i for i in range(1, self._nrows + 1) if i not in drop])

    def scale_column(self, j: int, c) -> "RationalMatrix":
        c = to_rational(c)
        return RationalMatrix(
            [c * x for x in col] if k == j else col for k, col in enumerate(self._cols)
        )

    def swap_columns(self, i: int, j: int) -> "RationalMatrix":
        cols = list(self._cols)
        cols[i], cols[j] = cols[j], cols[i]
        return RationalMatrix(cols)

    def scale(self, c) -> "RationalMatrix":
        c = to_rational(c)
        return RationalMatrix([c * x for x in col] for col in self._cols)

    def matvec(self, y) -> RationalVector:
        y = [to_rational(t) for t in y]
        if len(y) != self.cols:
            raise DimensionError(f"expected vector of length {self.cols}, got {len(y)}")
        return RationalVector(
            sum((col[i] * t for col, t in zip(self._cols, y)), Fraction(0))
            for i in range(self._nrows)
        )

    def matmul(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        return RationalMatrix(self.matvec(c).entries for c in other._cols)


def as_matrix(m) -> RationalMatrix:
    """Accept a RationalMatrix or a list of rows."""
    return m if isinstance(m, RationalMatrix) else RationalMatrix.from_rows(m)


def matrix_from_vectors(vectors: Sequence) -> RationalMatrix:
    vecs = [as_vector(v) for v in vectors]
    if not vecs:
        raise DimensionError("need at least one vector")
    dims = {v.dim for v in vecs}
    if len(dims) != 1:
        raise DimensionError(f"vectors of mixed dimensions {sorted(dims)}")
    return RationalMatrix(v.entries for v in vecs)


# ---------------------------------------------------------------------------
# determinants and rank


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[int]], Fraction]:
    """Scale each row to integers; returns (int rows, product of the scale factors)."""
    out = []
    factor = Fraction(1)
    for r in rows:
        d = lcm(*(x.denominator for x in r)) if r else 1
        out.append([int(x * d) for x in r])
        factor *= d
    return out, factor


def _bareiss(a: list[list[int]]) -> int:
    """Fraction-free elimination on a square integer matrix (modified in place)."""
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            # smallest row index below k with a nonzero pivot
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def det_rows(rows: Sequence[Sequence]) -> Fraction:
    """Determinant of a square matrix given as a list of rows."""
    rows = [[to_rational(x) for x in r] for r in rows]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionError("determinant requires a square matrix")
    if n == 0:
        return Fraction(1)
    ints, factor = _integer_rows(rows)
    return Fraction(_bareiss(ints)) / factor


def det_exact(m) -> Fraction:
    m = as_matrix(m)
    if m.rows != m.cols:
        raise DimensionError(f"determinant requires a square matrix, got {m.rows}x{m.cols}")
    return det_rows(m.row_tuples())


def rank_rows(rows: Sequence[Sequence]) -> int:
    """Exact rank of a list of row vectors (all of equal length)."""
    rows = [[to_rational(x) for x in r] for r in rows]
    if not rows:
        return 0
    a, _ = _integer_rows(rows)
    nrows, ncols = len(a), len(a[0])
    rank = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(rank, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][c]
        for i in range(rank + 1, nrows):
            aic = a[i][c]
            for j in range(c + 1, ncols):
                a[i][j] = (a[i][j] * p - aic * a[rank][j]) // prev
            a[i][c] = 0
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def inverse_exact(m) -> RationalMatrix:
    """Gauss-Jordan inverse over the rationals."""
    m = as_matrix(m)
    n = m.rows
    if m.cols != n:
        raise DimensionError(f"inverse needs a square matrix, got {m.rows}x{m.cols}")
    a = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m.row_tuples())]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise PreconditionError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv_p = 1 / a[c][c]
        a[c] = [x * inv_p for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return RationalMatrix.from_rows([r[n:] for r in a])


def rank_exact(m) -> int:
    return rank_rows(as_matrix(m).row_tuples())


# ---------------------------------------------------------------------------
# Grassmann coordinates


@dataclass(frozen=True)
class WedgeCoordinates:
    """All maximal minors of an N x L column family, keyed by row subset."""

    n: int
    l: int
    coords: dict
    l1: Fraction

    def __iter__(self):
        return iter(self.coords.items())

    def nonzero(self) -> dict:
        return {k: v for k, v in self.coords.items() if v != 0}


def subsets(n: int, l: int) -> Iterator[tuple[int, ...]]:
    """l-subsets of {1..n} in lexicographic order."""
    return combinations(range(1, n + 1), l)


def wedge_coordinates(m) -> WedgeCoordinates:
    m = as_matrix(m)
    n, l = m.shape
    if l > n:
        raise DimensionError(f"grade {l} exceeds ambient dimension {n}")
    rows = m.row_tuples()
    coords = {}
    total = Fraction(0)
    for idx in subsets(n, l):
        d = det_rows([rows[i - 1] for i in idx])
        coords[idx] = d
        total += abs(d)
    return WedgeCoordinates(n, l, coords, total)


def wedge_l1(m) -> Fraction:
    return wedge_coordinates(m).l1


# ---------------------------------------------------------------------------
# norms


def l1_norm(v) -> Fraction:
    return sum((abs(x) for x in as_vector(v)), Fraction(0))


def linf_norm(v) -> Fraction:
    return max(abs(x) for x in as_vector(v))


def l2_squared(v) -> Fraction:
    return sum((x * x for x in as_vector(v)), Fraction(0))


def schinzel_norm(v) -> Fraction:
    """max(sum of positive parts, sum of negative parts).

    Cross-checked against |sum|/2 + l1/2; disagreement raises
    :class:`InvariantViolation`.
    """
    v = as_vector(v)
    pos = sum((x for x in v if x > 0), Fraction(0))
    neg = sum((-x for x in v if x < 0), Fraction(0))
    by_max = max(pos, neg)
    by_halves = abs(sum(v.entries, Fraction(0))) / 2 + l1_norm(v) / 2
    if by_max != by_halves:
        raise InvariantViolation(f"Schinzel norm formulas disagree: {by_max} != {by_halves}")
    return by_max


def is_diagonal(v, tol=0) -> bool:
    """Entries sum to zero (within ``tol``)."""
    return abs(sum(as_vector(v).entries, Fraction(0))) <= to_rational(tol)


def gram(m) -> RationalMatrix:
    m = as_matrix(m)
    if m.cols > m.rows:
        raise DimensionError("gram requires cols <= rows")
    cols = m.columns
    return RationalMatrix([[a.dot(b) for a in cols] for b in cols])


@dataclass(frozen=True)
class CauchyBinetCheck:
    lhs: Fraction
    rhs: Fraction
    equal: bool

    def __iter__(self):
        return iter((self.lhs, self.rhs, self.equal))


def cauchy_binet_check(m) -> CauchyBinetCheck:
    """Sum of squared maximal minors against det of the Gram matrix."""
    m = as_matrix(m)
    if m.cols > m.rows:
        raise DimensionError("cauchy_binet_check requires cols <= rows")
    wc = wedge_coordinates(m)
    lhs = sum((d * d for d in wc.coords.values()), Fraction(0))
    rhs = det_exact(gram(m))
    return CauchyBinetCheck(lhs, rhs, lhs == rhs)


# ---------------------------------------------------------------------------
# text format


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_rational(x) -> str:
    return _fmt(to_rational(x))


def parse_rational(token: str, line: int | None = None) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational token {token!r}", line) from exc


def parse_matrix(text: str) -> RationalMatrix:
    """Rows of whitespace-separated ``p/q`` or integer tokens; ``#`` comments."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        row = [parse_rational(tok, lineno) for tok in s.split()]
        if rows and len(row) != len(rows[0]):
            raise ParseError(f"expected {len(rows[0])} entries, got {len(row)}", lineno)
        rows.append(row)
    if not rows:
        raise ParseError("no matrix rows found")
    return RationalMatrix.from_rows(rows)


def format_matrix(m) -> str:
    m = as_matrix(m)
    return "".join(" ".join(_fmt(x) for x in r) + "\n" for r in m.row_tuples())


def parse_vector(text: str) -> RationalVector:
    """A vector file is either a single column or a single row."""
    m = parse_matrix(text)
    if m.cols == 1:
        return m.column(0)
    if m.rows == 1:
        return m.row(0)
    raise ParseError(f"expected a single row or column, got {m.rows}x{m.cols}")


def format_vector(v) -> str:
    return "".join(_fmt(x) + "\n" for x in as_vector(v))


def read_matrix(path) -> RationalMatrix:
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def write_matrix(path, m) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_matrix(m))
