"""Certified values of mu_{L,N} and the wedge-norm inequalities built on them.

``mu_{L,N}`` is the largest l1 norm of ``x_1 ^ ... ^ x_L`` over the L-fold
product of the Schinzel unit ball.  The maximum is attained on extreme points,
so it can be computed exactly by enumerating tuples of extreme points.

Search space reductions used by :func:`mu_exact`:

* the norm is symmetric in the tuple and vanishes on repeats, so only
  strictly increasing tuples in the canonical order are visited;
* negating a column leaves the norm unchanged, so only one representative of
  each pair ``{p, -p}`` is used (``+e_m`` and ``e_m - e_n`` with ``m < n``);
* a partial tuple whose wedge is already zero is abandoned.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, prod
from typing import Sequence

from .errors import (
    BudgetExceeded,
    DimensionError,
    DomainError,
    InvariantViolation,
    ParseError,
    PreconditionError,
)
from .extreme_points import (
    ExtremePoint,
    difference,
    embed,
    parse_point,
    plus_unit,
    render,
    restrict,
)
from .linalg_core import (
    RationalMatrix,
    as_vector,
    det_rows,
    l1_norm,
    matrix_from_vectors,
    schinzel_norm,
    wedge_l1,
)

DEFAULT_BUDGET = 10**8


# ---------------------------------------------------------------------------
# sparse wedge over extreme points


def _extend(coords: dict, k: int, support) -> dict:
    """Wedge a k-column family (nonzero minors keyed by row bitmask) with one more column.

    ``support`` lists the nonzero entries of the new column as
    ``(0-based row, value)``.  Uses the Laplace expansion along the last column.
    """
    out: dict = {}
    for mask, c in coords.items():
        for i, v in support:
            bit = 1 << i
            if mask & bit:
                continue
            pos = (mask & (bit - 1)).bit_count()
            term = v * c if (pos + k) % 2 == 0 else -v * c
            key = mask | bit
            out[key] = out.get(key, 0) + term
    return {m: c for m, c in out.items() if c}


def _support0(p: ExtremePoint):
    return tuple((i - 1, v) for i, v in p.support())


def sparse_wedge(points: Sequence[ExtremePoint]) -> dict:
    """Nonzero minors of the embedded points, keyed by 0-based row bitmask."""
    coords = {0: 1}
    for k, p in enumerate(points):
        coords = _extend(coords, k, _support0(p))
        if not coords:
            break
    return coords


def extreme_wedge_l1(points: Sequence[ExtremePoint]) -> int:
    return sum(abs(c) for c in sparse_wedge(points).values())


def points_matrix(points: Sequence[ExtremePoint]) -> RationalMatrix:
    return matrix_from_vectors([embed(p) for p in points])


# ---------------------------------------------------------------------------
# exhaustive search


def canonical_candidates(n: int) -> list[ExtremePoint]:
    """One representative of each {p, -p}, in canonical order (units first)."""
    pts = [plus_unit(m, n) for m in range(1, n + 1)]
    pts += [difference(m, k, n) for m in range(1, n + 1) for k in range(m + 1, n + 1)]
    return pts


def tuple_count(l: int, n: int) -> int:
    return comb(len(canonical_candidates(n)), l)


def evaluation_count(l: int, n: int) -> int:
    """Upper bound on minor evaluations: tuples times minors per tuple."""
    return tuple_count(l, n) * comb(n, l)


def _search_shard(first: int, l: int, n: int) -> tuple[int, tuple[int, ...] | None]:
    supports = [_support0(p) for p in canonical_candidates(n)]
    total = len(supports)
    best = -1
    best_t = None
    start = _extend({0: 1}, 0, supports[first])

    def rec(lo: int, coords: dict, depth: int, chosen: tuple[int, ...]):
        nonlocal best, best_t
        last = depth + 1 == l
        for j in range(lo, total - (l - depth - 1)):
            new = _extend(coords, depth, supports[j])
            if not new:
                continue
            if last:
                val = sum(abs(c) for c in new.values())
                if val > best:
                    best, best_t = val, chosen + (j,)
            else:
                rec(j + 1, new, depth + 1, chosen + (j,))

    if l == 1:
        return sum(abs(c) for c in start.values()), (first,)
    rec(first + 1, start, 1, (first,))
    return best, best_t


def ratio_bound(l: int, n: int) -> Fraction | None:
    """(N/(N-L))^(N-L) for L < N."""
    if l >= n:
        return None
    return Fraction(n, n - l) ** (n - l)


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


@dataclass(frozen=True)
class MuResult:
    l: int
    n: int
    value: int
    witness: tuple[ExtremePoint, ...]
    bound_2l: int
    bound_ratio: Fraction | None
    binom_bound: int
    tuples_searched: int = 0
    from_cache: bool = field(default=False, compare=False)

    def render_witness(self) -> str:
        return " ".join(render(p) for p in self.witness)


def _make_result(l, n, value, witness, searched=0, cached=False) -> MuResult:
    res = MuResult(
        l=l,
        n=n,
        value=value,
        witness=tuple(witness),
        bound_2l=2**l,
        bound_ratio=ratio_bound(l, n),
        binom_bound=comb(n, l),
        tuples_searched=searched,
        from_cache=cached,
    )
    _check_mu_result(res)
    return res


def _check_mu_result(res: MuResult) -> None:
    l, n = res.l, res.n
    if len(res.witness) != l or any(p.ambient != n for p in res.witness):
        raise InvariantViolation(f"witness shape mismatch for mu({l},{n})")
    # independent recomputation through the general rational kernel
    recomputed = wedge_l1(points_matrix(res.witness))
    if recomputed != res.value:
        raise InvariantViolation(f"witness norm {recomputed} != mu value {res.value}")
    if res.value > res.binom_bound:
        raise InvariantViolation(f"mu({l},{n}) = {res.value} exceeds C(N,L)")
    if l < n and res.value > res.bound_2l:
        raise InvariantViolation(f"mu({l},{n}) = {res.value} exceeds 2^L")
    if l < n <= 2 * l and res.value > res.bound_ratio:
        raise InvariantViolation(f"mu({l},{n}) = {res.value} exceeds (N/(N-L))^(N-L)")


def mu_exact(
    l: int,
    n: int,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    cache: "MuCache | None" = None,
) -> MuResult:
    """Exact mu_{L,N} with an attaining witness tuple.

    The search is sharded over the first tuple element; shard results are
    merged by (value, canonical tuple order), so the witness does not depend on
    ``workers``.
    """
    if not 1 <= l <= n:
        raise DomainError(f"need 1 <= L <= N, got L={l}, N={n}")
    if cache is not None:
        hit = cache.get(l, n)
        if hit is not None:
            return hit
    evals = evaluation_count(l, n)
    if evals > budget:
        raise BudgetExceeded(
            f"mu({l},{n}) needs {tuple_count(l, n)} tuples x {comb(n, l)} minors = "
            f"{evals} evaluations, budget is {budget}"
        )
    cands = canonical_candidates(n)
    firsts = range(len(cands) - l + 1)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            shards = list(pool.map(_search_shard, firsts, [l] * len(firsts), [n] * len(firsts)))
    else:
        shards = [_search_shard(f, l, n) for f in firsts]
    best, best_t = -1, None
    for val, t in shards:
        if t is None:
            continue
        if val > best or (val == best and t < best_t):
            best, best_t = val, t
    if best_t is None:
        raise InvariantViolation(f"no independent tuple found for mu({l},{n})")
    res = _make_result(l, n, best, [cands[j] for j in best_t], searched=tuple_count(l, n))
    if cache is not None:
        cache.put(res)
    return res


# ---------------------------------------------------------------------------
# μ table cache


class MuCache:
    """Line-oriented table ``L N value witness...`` (witness in ``+e1``/``e1-e2`` form)."""

    FILENAME = "mu_table.txt"

    def __init__(self, path):
        path = os.fspath(path)
        if os.path.isdir(path):
            path = os.path.join(path, self.FILENAME)
        self.path = path

    def load(self) -> dict:
        table: dict = {}
        if not os.path.exists(self.path):
            return table
        with open(self.path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                s = raw.strip()
                if not s or s.startswith("#"):
                    continue
                toks = s.split()
                try:
                    l, n, value = int(toks[0]), int(toks[1]), int(toks[2])
                except (ValueError, IndexError) as exc:
                    raise ParseError("malformed mu record", lineno) from exc
                witness = [parse_point(t, n) for t in toks[3:]]
                if len(witness) != l:
                    raise ParseError(f"expected {l} witness points, got {len(witness)}", lineno)
                table[(l, n)] = (value, witness)
        return table

    def get(self, l: int, n: int) -> MuResult | None:
        rec = self.load().get((l, n))
        if rec is None:
            return None
        value, witness = rec
        # a corrupt cache entry fails loudly through the invariant check
        return _make_result(l, n, value, witness, cached=True)

    def put(self, res: MuResult) -> None:
        table = self.load()
        table[(res.l, res.n)] = (res.value, list(res.witness))
        d = os.path.dirname(self.path)
        if d:
            os.makedirs(d, exist_ok=True)
        tmp = self.path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write("# L N value witness...\n")
            for (l, n), (value, witness) in sorted(table.items()):
                fh.write(f"{l} {n} {value} {' '.join(render(p) for p in witness)}\n")
        os.replace(tmp, self.path)


# ---------------------------------------------------------------------------
# bound constants


def c_bound(q: int, r: int) -> Fraction:
    """min(2^q, ((r+1)/(r+1-q))^(r+1-q)) for 1 <= q <= r."""
    if not 1 <= q <= r:
        raise DomainError(f"c_bound needs 1 <= q <= r, got q={q}, r={r}")
    return min(Fraction(2**q), Fraction(r + 1, r + 1 - q) ** (r + 1 - q))


def wedge_constant(l: int, n: int) -> tuple[Fraction, str]:
    """Constant in ``||x_1 ^ ... ^ x_L||_1 <= const * prod delta(x_j)`` and its regime."""
    if l == n:
        return Fraction(1), "L=N"
    if l > n:
        raise DimensionError(f"{l} vectors in dimension {n}")
    ratio = ratio_bound(l, n)
    if 2 * l <= n:
        regime = "2L<=N"
    else:
        regime = "L<N<=2L"
    return min(Fraction(2**l), ratio), regime


@dataclass(frozen=True)
class BoundReport:
    lhs: Fraction
    rhs: Fraction
    constant_used: Fraction
    satisfied: bool
    regime: str = ""
    norm_product: Fraction = Fraction(0)

    @property
    def tight(self) -> bool:
        return self.lhs == self.rhs


def _common_matrix(vectors) -> RationalMatrix:
    vecs = [as_vector(v) for v in vectors]
    if not vecs:
        raise PreconditionError("need at least one vector")
    return matrix_from_vectors(vecs)


def verify_theorem_2_1(vectors) -> BoundReport:
    """Wedge l1 against the Schinzel-norm product with the applicable constant."""
    m = _common_matrix(vectors)
    n, l = m.shape
    if l > n:
        raise DimensionError(f"{l} vectors in dimension {n}")
    const, regime = wedge_constant(l, n)
    deltas = prod((schinzel_norm(c) for c in m.columns), start=Fraction(1))
    lhs = wedge_l1(m)
    rhs = const * deltas
    return BoundReport(lhs, rhs, const, lhs <= rhs, regime, deltas)


def verify_theorem_1_1(vectors, tol=0) -> BoundReport:
    """Diagonal vectors: wedge l1 <= 2^-q C(q, r) prod ||a_j||_1 with r + 1 = dimension."""
    m = _common_matrix(vectors)
    tol = Fraction(tol)
    dim, q = m.shape
    r = dim - 1
    for j, col in enumerate(m.columns):
        residual = abs(sum(col.entries, Fraction(0)))
        if residual > tol:
            raise PreconditionError(f"vector {j + 1} is off the diagonal subspace (sum {residual})")
    if q > r:
        raise PreconditionError(f"{q} diagonal vectors in dimension {dim} cannot be independent")
    norms = [l1_norm(c) for c in m.columns]
    if tol == 0:
        for col, nm in zip(m.columns, norms):
            if schinzel_norm(col) != nm / 2:
                raise InvariantViolation("delta != l1/2 on a diagonal vector")
    const = c_bound(q, r) / 2**q
    product = prod(norms, start=Fraction(1))
    lhs = wedge_l1(m)
    rhs = const * product
    if const > 1:
        raise InvariantViolation(f"2^-q C(q,r) = {const} exceeds 1")
    return BoundReport(lhs, rhs, const, lhs <= rhs, f"q={q},r={r}", product)


# ---------------------------------------------------------------------------
# constructions


def equality_construction(l: int, n: int) -> RationalMatrix:
    """Orthogonal columns e_{2j-1} - e_{2j}; wedge l1 is exactly 2^L."""
    if l < 1 or 2 * l > n:
        raise DomainError(f"equality construction needs 1 <= L and 2L <= N, got L={l}, N={n}")
    cols = []
    for j in range(l):
        c = [0] * n
        c[2 * j] = 1
        c[2 * j + 1] = -1
        cols.append(c)
    return RationalMatrix(cols)


def reduce_mixed(points: Sequence[ExtremePoint]) -> list[ExtremePoint]:
    """Drop the unit-vector columns and the rows they occupy; the wedge norm is unchanged.

    Input: independent extreme points of which K (1 <= K < L) are ``+-e_m``.
    Output: the remaining L-K difference columns with rows ``M`` deleted,
    as extreme points in dimension N-K.
    """
    points = list(points)
    if not points:
        raise PreconditionError("empty point family")
    n = points[0].ambient
    if any(p.ambient != n for p in points):
        raise DimensionError("points of mixed ambient dimension")
    units = [p for p in points if p.is_unit]
    diffs = [p for p in points if not p.is_unit]
    k, l = len(units), len(points)
    if not 1 <= k < l:
        raise PreconditionError(f"need 1 <= K < L unit points, got K={k}, L={l}")
    before = extreme_wedge_l1(points)
    if before == 0:
        raise PreconditionError("points are linearly dependent")
    occupied = {p.m for p in units}
    keep = [i for i in range(1, n + 1) if i not in occupied]
    reduced = [restrict(p, keep) for p in diffs]
    if any(p is None for p in reduced):
        raise InvariantViolation("independent family restricted to a zero column")
    after = extreme_wedge_l1(reduced)
    if after != before:
        raise InvariantViolation(f"row deletion changed the wedge norm: {before} -> {after}")
    return reduced


def extreme_minor_check(points: Sequence[ExtremePoint], rows: Sequence[int]) -> int:
    """det of the rows ``rows`` of the extreme-point matrix; always in {-1, 0, 1}."""
    rows = tuple(rows)
    if len(rows) != len(points):
        raise DimensionError(f"need {len(points)} rows, got {len(rows)}")
    m = points_matrix(points).row_tuples()
    d = det_rows([m[i - 1] for i in rows])
    if d not in (-1, 0, 1):
        raise InvariantViolation(f"extreme-point minor {d} outside {{-1, 0, 1}}")
    return int(d)
