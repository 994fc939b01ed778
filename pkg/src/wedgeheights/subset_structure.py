"""Pair systems, the closure map eta and the partition into minimal fixed sets.

Subsets of ``{1..N}`` are plain ints used as bitmasks: element ``k`` is bit
``k - 1``.  ``N`` is capped at 63.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import prod
from typing import Iterable, Sequence

from .errors import DomainError, InvariantViolation, ParseError, PreconditionError
from .linalg_core import RationalMatrix, as_matrix, rank_rows

MAX_GROUND = 63


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for k in elements:
        if k < 1:
            raise DomainError(f"element {k} outside the ground set")
        m |= 1 << (k - 1)
    return m


def members(mask: int) -> list[int]:
    out = []
    k = 1
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return out


def full_mask(n: int) -> int:
    return (1 << n) - 1


@dataclass(frozen=True)
class PairSystem:
    n: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_GROUND:
            raise DomainError(f"ground set size must be in 1..{MAX_GROUND}")
        seen = set()
        for a, b in self.pairs:
            if a == b or not (1 <= a <= self.n and 1 <= b <= self.n):
                raise DomainError(f"bad pair ({a}, {b}) for N={self.n}")
            key = (min(a, b), max(a, b))
            if key in seen:
                raise DomainError(f"repeated pair {key}")
            seen.add(key)
        covered = 0
        for a, b in self.pairs:
            covered |= (1 << (a - 1)) | (1 << (b - 1))
        if covered != full_mask(self.n):
            missing = members(full_mask(self.n) & ~covered)
            raise PreconditionError(f"pairs do not cover the ground set; missing {missing}")

    @classmethod
    def of(cls, n: int, pairs: Iterable[Sequence[int]]) -> "PairSystem":
        return cls(n, tuple((min(p), max(p)) for p in pairs))

    @property
    def l(self) -> int:
        return len(self.pairs)

    @property
    def pair_masks(self) -> tuple[int, ...]:
        return tuple((1 << (a - 1)) | (1 << (b - 1)) for a, b in self.pairs)

    @property
    def ground(self) -> int:
        return full_mask(self.n)


@dataclass(frozen=True)
class MinimalPartition:
    n: int
    blocks: tuple[int, ...]

    def as_sets(self) -> list[list[int]]:
        return [members(b) for b in self.blocks]

    @property
    def r(self) -> int:
        return len(self.blocks)


# ---------------------------------------------------------------------------
# construction from F-type columns


def from_columns(y) -> PairSystem:
    """Pair system of an N x L matrix whose columns are differences e_m - e_n."""
    y = as_matrix(y)
    n, l = y.shape
    pairs = []
    for j, col in enumerate(y.columns, start=1):
        nz = [(i, v) for i, v in enumerate(col, start=1) if v != 0]
        if len(nz) != 2 or any(abs(v) != 1 for _, v in nz) or nz[0][1] + nz[1][1] != 0:
            raise PreconditionError(
                f"column {j} is not of the form e_m - e_n (nonzeros: {[(i, str(v)) for i, v in nz]})"
            )
        pairs.append((nz[0][0], nz[1][0]))
    for i, row in enumerate(y.row_tuples(), start=1):
        if all(v == 0 for v in row):
            raise PreconditionError(f"row {i} is identically zero")
    return PairSystem.of(n, pairs)


# ---------------------------------------------------------------------------
# eta and its fixed points


def eta(sys: PairSystem, a: int) -> int:
    """Union of all pairs meeting ``a``."""
    out = 0
    for pm in sys.pair_masks:
        if pm & a:
            out |= pm
    return out


def is_fixed(sys: PairSystem, a: int) -> bool:
    return eta(sys, a) == a


def closure(sys: PairSystem, a: int) -> int:
    """Least fixed point of eta containing the nonempty set ``a``."""
    if a == 0:
        raise PreconditionError("closure of the empty set is not defined")
    current = a
    for _ in range(sys.n + 1):
        nxt = eta(sys, current)
        if nxt == current:
            return current
        current = nxt
    raise InvariantViolation("eta iteration did not stabilise within N steps")


def minimal_partition(sys: PairSystem) -> MinimalPartition:
    """Closures of singletons, deduplicated; these are the minimal fixed sets."""
    blocks: list[int] = []
    covered = 0
    for k in range(1, sys.n + 1):
        bit = 1 << (k - 1)
        c = closure(sys, bit)
        if covered & bit:
            # distinct minimal sets must be disjoint
            if c not in blocks:
                raise InvariantViolation(f"closure of {{{k}}} overlaps an earlier block")
            continue
        if c & covered:
            raise InvariantViolation(f"closure of {{{k}}} overlaps an earlier block")
        blocks.append(c)
        covered |= c
    if covered != sys.ground:
        raise InvariantViolation("minimal sets do not cover the ground set")
    return MinimalPartition(sys.n, tuple(blocks))


def is_minimal(sys: PairSystem, a: int) -> bool:
    """Brute force: a is fixed and no proper nonempty subset is fixed."""
    if a == 0 or not is_fixed(sys, a):
        return False
    sub = (a - 1) & a
    while sub:
        if is_fixed(sys, sub):
            return False
        sub = (sub - 1) & a
    return True


def verify_algebra(sys: PairSystem, a: int, b: int) -> bool:
    """Complement, union and intersection of fixed sets are fixed."""
    if not (is_fixed(sys, a) and is_fixed(sys, b)):
        raise PreconditionError("verify_algebra needs two fixed sets")
    ground = sys.ground
    return all(
        is_fixed(sys, s) for s in (ground & ~a, ground & ~b, a | b, a & b)
    )


# ---------------------------------------------------------------------------
# linear-algebra side


def _row_vectors(y: RationalMatrix) -> list[tuple[Fraction, ...]]:
    return y.row_tuples()


@dataclass(frozen=True)
class DependencyCheck:
    in_p: bool
    sums_zero: bool

    def __iter__(self):
        return iter((self.in_p, self.sums_zero))


def verify_dependency_equiv(y, a: int) -> DependencyCheck:
    """Fixed under eta versus the rows indexed by ``a`` summing to zero."""
    y = as_matrix(y)
    sys = from_columns(y)
    rows = _row_vectors(y)
    idx = members(a)
    total = [sum((rows[i - 1][j] for i in idx), Fraction(0)) for j in range(y.cols)]
    res = DependencyCheck(is_fixed(sys, a), all(t == 0 for t in total))
    if res.in_p != res.sums_zero:
        raise InvariantViolation(f"fixed-set / zero-sum equivalence fails on {idx}")
    return res


def verify_minimal_rank(y, a: int) -> bool:
    """Rows in a minimal set have rank |a| - 1 and every proper subfamily is independent."""
    y = as_matrix(y)
    sys = from_columns(y)
    if not is_minimal(sys, a):
        raise PreconditionError(f"{members(a)} is not a minimal fixed set")
    rows = _row_vectors(y)
    idx = members(a)
    if rank_rows([rows[i - 1] for i in idx]) != len(idx) - 1:
        return False
    # independence of every maximal proper subset implies it for all smaller ones
    for sub in combinations(idx, len(idx) - 1):
        if rank_rows([rows[i - 1] for i in sub]) != len(sub):
            return False
    return True


@dataclass(frozen=True)
class RankRelation:
    r: int
    n_minus_l: int
    equal: bool
    full_rank: bool

    def __iter__(self):
        return iter((self.r, self.n_minus_l, self.equal))


def rank_relation(y) -> RankRelation:
    """Block count r versus N - L; equality is forced when the columns are independent."""
    y = as_matrix(y)
    n, l = y.shape
    part = minimal_partition(from_columns(y))
    full = rank_rows(y.columns) == l if l <= n else False
    rel = RankRelation(part.r, n - l, part.r == n - l, full)
    if n - l > part.r:
        raise InvariantViolation(f"N - L = {n - l} exceeds block count {part.r}")
    if full and not rel.equal:
        raise InvariantViolation(f"full-rank system with r = {part.r} != N - L = {n - l}")
    return rel


@dataclass(frozen=True)
class AmGmBound:
    product: int
    bound: Fraction

    def __iter__(self):
        return iter((self.product, self.bound))


def amgm_bound(partition: MinimalPartition, l: int) -> AmGmBound:
    """prod |A_j| <= (N/(N-L))^(N-L) for a full-rank system with L < N <= 2L."""
    n = partition.n
    if not l < n <= 2 * l:
        raise PreconditionError(f"need L < N <= 2L, got L={l}, N={n}")
    if partition.r != n - l:
        raise PreconditionError(f"block count {partition.r} != N - L = {n - l}; system not full rank")
    product = prod(len(members(b)) for b in partition.blocks)
    bound = Fraction(n, n - l) ** (n - l)
    if product > bound:
        raise InvariantViolation(f"block product {product} exceeds {bound}")
    return AmGmBound(product, bound)


def system_matrix(sys: PairSystem, signs: Sequence[int] | None = None) -> RationalMatrix:
    """N x L matrix with column l equal to +-(e_a - e_b) for pair l = (a, b)."""
    signs = signs or [1] * sys.l
    cols = []
    for (a, b), s in zip(sys.pairs, signs):
        c = [0] * sys.n
        c[a - 1] = s
        c[b - 1] = -s
        cols.append(c)
    return RationalMatrix(cols)


# ---------------------------------------------------------------------------
# text format: one pair "m n" per line


def parse_pair_system(text: str, n: int | None = None) -> PairSystem:
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        toks = s.split()
        if len(toks) != 2:
            raise ParseError("expected two integers per line", lineno)
        try:
            pairs.append((int(toks[0]), int(toks[1])))
        except ValueError as exc:
            raise ParseError(f"bad pair {s!r}", lineno) from exc
    if not pairs:
        raise ParseError("no pairs found")
    if n is None:
        n = max(max(p) for p in pairs)
    return PairSystem.of(n, pairs)


def format_pair_system(sys: PairSystem) -> str:
    return "".join(f"{a} {b}\n" for a, b in sys.pairs)


def read_pair_system(path) -> PairSystem:
    with open(path, encoding="utf-8") as fh:
        return parse_pair_system(fh.read())
