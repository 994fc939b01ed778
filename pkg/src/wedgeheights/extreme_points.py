"""Extreme points of the Schinzel-norm unit ball.

The unit ball ``K_N = {x : delta(x) <= 1}`` has exactly ``N^2 + N`` extreme
points: the signed unit vectors ``+-e_m`` and the differences ``e_m - e_n``.
They are kept symbolic (kind plus indices) so minors over them stay in
small-integer arithmetic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionError, DomainError, ParseError, PreconditionError
from .linalg_core import RationalVector, as_vector, schinzel_norm

PLUS = "plus"
MINUS = "minus"
DIFF = "diff"

_KIND_RANK = {PLUS: 0, MINUS: 0, DIFF: 1}


@dataclass(frozen=True)
class ExtremePoint:
    kind: str
    m: int
    ambient: int
    n: int = 0  # second index, only for DIFF

    def __post_init__(self):
        if self.kind not in _KIND_RANK:
            raise DomainError(f"unknown extreme point kind {self.kind!r}")
        if not 1 <= self.m <= self.ambient:
            raise DomainError(f"index {self.m} outside 1..{self.ambient}")
        if self.kind == DIFF:
            if not 1 <= self.n <= self.ambient or self.n == self.m:
                raise DomainError(f"bad difference indices ({self.m}, {self.n})")
        elif self.n != 0:
            raise DomainError("unit points carry a single index")

    @property
    def is_unit(self) -> bool:
        return self.kind != DIFF

    def sort_key(self):
        """E_N before F_N; +e_m before -e_m; then lexicographic indices."""
        if self.kind == DIFF:
            return (1, self.m, self.n)
        return (0, self.m, 0 if self.kind == PLUS else 1)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def support(self) -> tuple[tuple[int, int], ...]:
        """Nonzero entries as (1-based row, value) pairs."""
        if self.kind == PLUS:
            return ((self.m, 1),)
        if self.kind == MINUS:
            return ((self.m, -1),)
        return ((self.m, 1), (self.n, -1))

    def negate(self) -> "ExtremePoint":
        if self.kind == PLUS:
            return ExtremePoint(MINUS, self.m, self.ambient)
        if self.kind == MINUS:
            return ExtremePoint(PLUS, self.m, self.ambient)
        return ExtremePoint(DIFF, self.n, self.ambient, self.m)

    def __str__(self):
        return render(self)


def plus_unit(m: int, ambient: int) -> ExtremePoint:
    return ExtremePoint(PLUS, m, ambient)


def minus_unit(m: int, ambient: int) -> ExtremePoint:
    return ExtremePoint(MINUS, m, ambient)


def difference(m: int, n: int, ambient: int) -> ExtremePoint:
    return ExtremePoint(DIFF, m, ambient, n)


def _all_points(n: int) -> list[ExtremePoint]:
    pts = []
    for m in range(1, n + 1):
        pts.append(plus_unit(m, n))
        pts.append(minus_unit(m, n))
    for m in range(1, n + 1):
        for k in range(1, n + 1):
            if k != m:
                pts.append(difference(m, k, n))
    return pts


def enumerate_extreme(n: int) -> list[ExtremePoint]:
    """All N^2 + N extreme points, E_N first then F_N."""
    if n < 2:
        raise DomainError("enumerate_extreme needs n >= 2")
    return _all_points(n)


def embed(p: ExtremePoint) -> RationalVector:
    x = [0] * p.ambient
    for i, v in p.support():
        x[i - 1] = v
    return RationalVector(x)


def restrict(p: ExtremePoint, rows: Sequence[int]) -> ExtremePoint | None:
    """Restriction to the rows ``rows`` relabelled 1..|rows|; None if it vanishes."""
    rows = tuple(rows)
    if not rows:
        raise DimensionError("restriction needs a nonempty index set")
    if any(b <= a for a, b in zip(rows, rows[1:])):
        raise DomainError("index set must be strictly increasing")
    if rows[0] < 1 or rows[-1] > p.ambient:
        raise DomainError(f"index set outside 1..{p.ambient}")
    pos = {r: k for k, r in enumerate(rows, start=1)}
    dim = len(rows)
    if p.kind == DIFF:
        a, b = pos.get(p.m), pos.get(p.n)
        if a and b:
            return difference(a, b, dim)
        if a:
            return plus_unit(a, dim)
        if b:
            return minus_unit(b, dim)
        return None
    a = pos.get(p.m)
    if a is None:
        return None
    return ExtremePoint(p.kind, a, dim)


# ---------------------------------------------------------------------------
# rendering


_TOKEN = re.compile(r"^(?:([+-])e(\d+)|e(\d+)-e(\d+))$")


def render(p: ExtremePoint) -> str:
    if p.kind == PLUS:
        return f"+e{p.m}"
    if p.kind == MINUS:
        return f"-e{p.m}"
    return f"e{p.m}-e{p.n}"


def parse_point(token: str, ambient: int) -> ExtremePoint:
    mt = _TOKEN.match(token.strip())
    if not mt:
        raise ParseError(f"bad extreme point token {token!r}")
    sign, m, a, b = mt.groups()
    if sign:
        return ExtremePoint(PLUS if sign == "+" else MINUS, int(m), ambient)
    return difference(int(a), int(b), ambient)


# ---------------------------------------------------------------------------
# exposing functionals and the boundary decomposition


def exposing_functional(p: ExtremePoint) -> RationalVector:
    """Coefficients of a linear functional attaining its max over K_N only at p."""
    n = p.ambient
    half = Fraction(1, 2)
    if p.kind == DIFF:
        c = [Fraction(0)] * n
        c[p.m - 1] = half
        c[p.n - 1] = -half
        return RationalVector(c)
    sgn = 1 if p.kind == PLUS else -1
    c = [sgn * half] * n
    c[p.m - 1] += sgn * half
    return RationalVector(c)


@dataclass(frozen=True)
class ConvexCombination:
    terms: tuple  # of (Fraction coefficient, ExtremePoint)

    def total(self) -> Fraction:
        return sum((c for c, _ in self.terms), Fraction(0))

    def reconstruct(self) -> RationalVector:
        n = self.terms[0][1].ambient
        acc = [Fraction(0)] * n
        for c, p in self.terms:
            for i, v in p.support():
                acc[i - 1] += c * v
        return RationalVector(acc)


def convex_decompose(x) -> ConvexCombination:
    """Write a point with delta(x) = 1 as a convex combination of extreme points.

    Coefficients: ``(1 - s_minus) x_m^+`` on ``e_m``, ``(1 - s_plus) x_n^-`` on
    ``-e_n`` and ``x_m^+ x_n^-`` on ``e_m - e_n``.  Zero terms are dropped.
    """
    x = as_vector(x)
    if schinzel_norm(x) != 1:
        raise PreconditionError("convex_decompose needs a point with Schinzel norm exactly 1")
    n = x.dim
    pos = [max(t, Fraction(0)) for t in x]
    neg = [max(-t, Fraction(0)) for t in x]
    s_plus, s_minus = sum(pos), sum(neg)
    terms = []
    for m in range(n):
        c = (1 - s_minus) * pos[m]
        if c:
            terms.append((c, plus_unit(m + 1, n)))
    for k in range(n):
        c = (1 - s_plus) * neg[k]
        if c:
            terms.append((c, minus_unit(k + 1, n)))
    for m in range(n):
        for k in range(n):
            c = pos[m] * neg[k]
            if m != k and c:
                terms.append((c, difference(m + 1, k + 1, n)))
    terms.sort(key=lambda t: t[1].sort_key())
    return ConvexCombination(tuple(terms))
