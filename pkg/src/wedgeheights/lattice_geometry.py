"""The polytope norm y -> ||Xy||_1, its volumes, and successive minima on Z^L.

``B_X = {y : ||Xy||_1 <= 1}`` is a centrally symmetric polytope in R^L whose
polar body is the zonotope spanned by the rows of ``X``.  Everything exact is
done over Fractions; only :func:`primal_volume_estimate` uses floats.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from math import factorial, lcm, prod

import numpy as np

from .errors import BudgetExceeded, DimensionError, InvariantViolation, PreconditionError
from .linalg_core import (
    RationalMatrix,
    RationalVector,
    as_matrix,
    det_rows,
    gram,
    inverse_exact,
    is_diagonal,
    l1_norm,
    matrix_from_vectors,
    rank_rows,
    schinzel_norm,
    wedge_l1,
)

MAX_BOX_POINTS = 4_000_000


@dataclass(frozen=True)
class NormBallSpec:
    """Full-column-rank N x L matrix defining the norm y -> ||Xy||_1."""

    x: RationalMatrix

    def __post_init__(self):
        x = as_matrix(self.x)
        object.__setattr__(self, "x", x)
        if x.cols > x.rows:
            raise PreconditionError(f"need L <= N, got {x.rows}x{x.cols}")
        if wedge_l1(x) == 0:
            raise PreconditionError("X is rank deficient")

    @classmethod
    def of(cls, m) -> "NormBallSpec":
        return cls(as_matrix(m))

    @property
    def n(self) -> int:
        return self.x.rows

    @property
    def l(self) -> int:
        return self.x.cols

    def integer_rows(self) -> tuple[list[list[int]], int]:
        """(D*X as integer rows, D) with D the common denominator."""
        d = lcm(*(e.denominator for e in self.x.entries))
        return [[int(e * d) for e in r] for r in self.x.row_tuples()], d


def ball_norm(spec: NormBallSpec, y) -> Fraction:
    y = list(y)
    if len(y) != spec.l:
        raise DimensionError(f"expected a vector of length {spec.l}, got {len(y)}")
    return l1_norm(spec.x.matvec(y))


def dual_volume(spec: NormBallSpec) -> Fraction:
    """Volume of the zonotope {X^T w : ||w||_inf <= 1}: 2^L times the wedge l1."""
    return 2**spec.l * wedge_l1(spec.x)


# ---------------------------------------------------------------------------
# exact primal volume, L <= 3


def _cross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _ray_points(spec: NormBallSpec) -> list[tuple[Fraction, ...]]:
    """Boundary points of B_X on the rays of the hyperplane arrangement {g_n^perp}.

    Every vertex of B_X lies on one of these rays (the norm is linear on each
    cell), so their convex hull is B_X.
    """
    l = spec.l
    rows = [r for r in spec.x.row_tuples() if any(r)]
    dirs = []
    if l == 1:
        dirs = [(Fraction(1),)]
    elif l == 2:
        dirs = [(-g[1], g[0]) for g in rows]
    elif l == 3:
        for a, b in itertools.combinations(rows, 2):
            u = _cross(a, b)
            if any(u):
                dirs.append(u)
    else:
        raise DimensionError("ray enumeration implemented for L <= 3")
    pts = set()
    for u in dirs:
        nrm = ball_norm(spec, u)
        v = tuple(c / nrm for c in u)
        pts.add(v)
        pts.add(tuple(-c for c in v))
    return sorted(pts)


def _angle_cmp(p, q):
    def half(v):
        return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1

    hp, hq = half(p), half(q)
    if hp != hq:
        return hp - hq
    c = p[0] * q[1] - p[1] * q[0]
    return -1 if c > 0 else (1 if c < 0 else 0)


def _polygon_area(pts) -> Fraction:
    """Area of the convex polygon with the given vertices around the origin-free centroid."""
    k = len(pts)
    cx = sum((p[0] for p in pts), Fraction(0)) / k
    cy = sum((p[1] for p in pts), Fraction(0)) / k
    rel = sorted(((p[0] - cx, p[1] - cy) for p in pts), key=cmp_to_key(_angle_cmp))
    twice = sum(
        (rel[i][0] * rel[(i + 1) % k][1] - rel[(i + 1) % k][0] * rel[i][1] for i in range(k)),
        Fraction(0),
    )
    return abs(twice) / 2


def _facet_volume_3d(normal, face) -> Fraction:
    """Volume of the pyramid from the origin over a planar convex polygon."""
    drop = max(range(3), key=lambda i: abs(normal[i]))
    keep = [i for i in range(3) if i != drop]
    k = len(face)
    cx = sum((p[keep[0]] for p in face), Fraction(0)) / k
    cy = sum((p[keep[1]] for p in face), Fraction(0)) / k
    order = sorted(
        range(k),
        key=cmp_to_key(
            lambda i, j: _angle_cmp(
                (face[i][keep[0]] - cx, face[i][keep[1]] - cy),
                (face[j][keep[0]] - cx, face[j][keep[1]] - cy),
            )
        ),
    )
    poly = [face[i] for i in order]
    vol = Fraction(0)
    for i in range(1, k - 1):
        vol += abs(det_rows([poly[0], poly[i], poly[i + 1]]))
    return vol / 6


def primal_volume(spec: NormBallSpec) -> Fraction:
    """Exact L-volume of B_X for L <= 3."""
    l = spec.l
    if l > 3:
        raise DimensionError("exact primal volume is only available for L <= 3")
    if l == 1:
        return 2 / l1_norm(spec.x.column(0))
    pts = _ray_points(spec)
    if l == 2:
        return _polygon_area(pts)
    # facet normals are X^T s over sign vectors s; keep those whose face is 2-dimensional
    rows = spec.x.row_tuples()
    normals = set()
    for signs in itertools.product((1, -1), repeat=spec.n):
        normals.add(tuple(sum((s * r[j] for s, r in zip(signs, rows)), Fraction(0)) for j in range(3)))
    vol = Fraction(0)
    for a in sorted(normals):
        face = [p for p in pts if a[0] * p[0] + a[1] * p[1] + a[2] * p[2] == 1]
        if len(face) < 3:
            continue
        base = face[0]
        if rank_rows([[p[i] - base[i] for i in range(3)] for p in face[1:]]) < 2:
            continue
        vol += _facet_volume_3d(a, face)
    return vol


# ---------------------------------------------------------------------------
# certified bounds


def left_inverse_bound(spec: NormBallSpec) -> Fraction:
    """max |X^+_{ij}| for the left inverse X^+ = (X^T X)^{-1} X^T.

    Since y = X^+ (Xy), every coordinate satisfies |y_i| <= this * ||Xy||_1.
    """
    xp = inverse_exact(gram(spec.x)).matmul(spec.x.transpose())
    return max(abs(e) for e in xp.entries)


def box_radius(spec: NormBallSpec, level: Fraction) -> int:
    """Every y with ||Xy||_1 <= level has ||y||_inf <= the returned R."""
    t = Fraction(level) * left_inverse_bound(spec)
    return t.numerator // t.denominator


def primal_volume_estimate(spec: NormBallSpec, samples: int = 1_000_000, seed: int = 0) -> Fraction:
    """Monte Carlo volume of B_X; a labelled estimate, never used for exact checks."""
    if samples <= 0:
        raise ValueError("samples must be positive")
    h = left_inverse_bound(spec)
    hf = float(h)
    xf = np.array([[float(e) for e in r] for r in spec.x.row_tuples()])
    rng = np.random.default_rng(seed)
    hits = 0
    remaining = samples
    chunk = 200_000
    while remaining:
        k = min(chunk, remaining)
        y = rng.uniform(-hf, hf, size=(k, spec.l))
        hits += int(np.count_nonzero(np.abs(y @ xf.T).sum(axis=1) <= 1.0))
        remaining -= k
    return Fraction(hits, samples) * (2 * h) ** spec.l


# ---------------------------------------------------------------------------
# successive minima


@dataclass(frozen=True)
class MinimaResult:
    lambdas: tuple[Fraction, ...]
    minimizers: tuple[tuple[int, ...], ...]
    reduced: tuple[RationalVector, ...]
    index: int
    wedge_l1: Fraction
    box_radius: int = 0

    @property
    def lambda_product(self) -> Fraction:
        return prod(self.lambdas, start=Fraction(1))

    @property
    def reduced_norm_product(self) -> Fraction:
        return prod((l1_norm(b) for b in self.reduced), start=Fraction(1))


def _half_box(r: int, l: int, lead: int | None = None) -> np.ndarray:
    """Integer points of [-R, R]^L whose first nonzero entry is positive."""
    ranges = [range(-r, r + 1)] * l
    if lead is not None:
        ranges = [range(lead, lead + 1)] + [range(-r, r + 1)] * (l - 1)
    pts = np.array(list(itertools.product(*ranges)), dtype=np.int64).reshape(-1, l)
    nz = pts != 0
    first = np.argmax(nz, axis=1)
    lead_vals = pts[np.arange(len(pts)), first]
    keep = nz.any(axis=1) & (lead_vals > 0)
    return pts[keep]


def _norms_for(pts: np.ndarray, xi: np.ndarray) -> np.ndarray:
    return np.abs(pts @ xi.T).sum(axis=1)


def _shard(lead: int, r: int, l: int, xi: np.ndarray):
    pts = _half_box(r, l, lead)
    return pts, _norms_for(pts, xi)


def _enumerate(r: int, l: int, xi: np.ndarray, workers: int):
    if workers > 1 and l > 1:
        leads = list(range(0, r + 1))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_shard, leads, [r] * len(leads), [l] * len(leads), [xi] * len(leads)))
        pts = np.concatenate([p for p, _ in parts])
        norms = np.concatenate([n for _, n in parts])
    else:
        pts = _half_box(r, l)
        norms = _norms_for(pts, xi)
    return pts, norms


def _greedy(pts: np.ndarray, norms: np.ndarray, l: int):
    """Shortest independent vectors, ties to smaller coefficient l1 then lexicographically larger."""
    if pts.dtype == object or norms.dtype == object:
        order = sorted(
            range(len(pts)),
            key=lambda i: (norms[i], sum(abs(int(c)) for c in pts[i]), tuple(-int(c) for c in pts[i])),
        )
    else:
        keys = [-pts[:, j] for j in range(l - 1, -1, -1)]
        order = np.lexsort(keys + [np.abs(pts).sum(axis=1), norms])
    chosen: list[tuple[int, ...]] = []
    values: list[int] = []
    for idx in order:
        cand = tuple(int(c) for c in pts[idx])
        trial = chosen + [cand]
        if wedge_l1(RationalMatrix(trial)) != 0:
            chosen.append(cand)
            values.append(int(norms[idx]))
            if len(chosen) == l:
                break
    return chosen, values


def successive_minima(spec: NormBallSpec, workers: int = 1, max_points: int = MAX_BOX_POINTS) -> MinimaResult:
    """Exact successive minima of B_X on Z^L with integer minimizers.

    The search box is grown until it provably contains every lattice vector
    with norm up to the current candidate for the last minimum.
    """
    l = spec.l
    rows, d = spec.integer_rows()
    bound = max(abs(e) for r in rows for e in r) * spec.n * l
    xi = np.array(rows, dtype=object if bound > 2**40 else np.int64)
    r = 1
    while True:
        if (2 * r + 1) ** l > max_points:
            raise BudgetExceeded(
                f"successive minima search box radius {r} needs {(2 * r + 1) ** l} points "
                f"(limit {max_points})"
            )
        if r * bound > 2**62:
            xi = np.array(rows, dtype=object)
        pts, norms = _enumerate(r, l, xi, workers)
        chosen, values = _greedy(pts, norms, l)
        if len(chosen) < l:
            r *= 2
            continue
        needed = box_radius(spec, Fraction(values[-1], d))
        if needed <= r:
            break
        r = needed
    lambdas = tuple(Fraction(v, d) for v in values)
    reduced = tuple(spec.x.matvec(m) for m in chosen)
    index = abs(det_rows(chosen))
    res = MinimaResult(
        lambdas=lambdas,
        minimizers=tuple(chosen),
        reduced=reduced,
        index=int(index),
        wedge_l1=wedge_l1(spec.x),
        box_radius=r,
    )
    _check_minima(res)
    return res


def _check_minima(res: MinimaResult) -> None:
    if any(a > b for a, b in zip(res.lambdas, res.lambdas[1:])):
        raise InvariantViolation("successive minima not nondecreasing")
    for lam, b in zip(res.lambdas, res.reduced):
        if l1_norm(b) != lam:
            raise InvariantViolation("minimizer norm differs from its minimum")
    if res.index == 0:
        raise InvariantViolation("minimizers are dependent")


def reduce_basis(spec: NormBallSpec, workers: int = 1) -> MinimaResult:
    """Successive-minima basis with prod ||X m_l||_1 <= L! * wedge and index <= L!."""
    res = successive_minima(spec, workers=workers)
    lf = factorial(spec.l)
    if res.reduced_norm_product > lf * res.wedge_l1:
        raise InvariantViolation(
            f"product of minima {res.reduced_norm_product} exceeds L! * wedge = {lf * res.wedge_l1}"
        )
    if res.index > lf:
        raise InvariantViolation(f"index {res.index} exceeds L! = {lf}")
    return res


def theorem_1_2(vectors, workers: int = 1) -> MinimaResult:
    """Reduced generators of the subgroup spanned by diagonal log vectors.

    The returned product of l1 norms equals the height form prod 2*delta(beta_j),
    and the index of the reduced subgroup is at most q!.
    """
    m = matrix_from_vectors(vectors)
    for j, c in enumerate(m.columns, start=1):
        if not is_diagonal(c):
            raise PreconditionError(f"vector {j} is not on the diagonal subspace")
    if m.cols > m.rows or wedge_l1(m) == 0:
        raise PreconditionError("vectors are linearly dependent")
    res = reduce_basis(NormBallSpec(m), workers=workers)
    height_form = prod((2 * schinzel_norm(b) for b in res.reduced), start=Fraction(1))
    if height_form != res.reduced_norm_product:
        raise InvariantViolation("2*delta differs from l1 on a diagonal vector")
    return res


# ---------------------------------------------------------------------------
# Reisner / Minkowski sandwich


@dataclass(frozen=True)
class VolumeReport:
    dual_volume: Fraction
    primal_volume: Fraction | None
    reisner_lhs: Fraction
    reisner_ok: bool | None
    minkowski_low: Fraction
    minkowski_high: Fraction
    minkowski_ok: bool | None
    lambda_product: Fraction | None = None
    wedge_l1: Fraction | None = None
    reduction_ok: bool | None = None

    @property
    def mahler_product(self) -> Fraction | None:
        if self.primal_volume is None:
            return None
        return self.primal_volume * self.dual_volume

    @property
    def minkowski_product(self) -> Fraction | None:
        if self.primal_volume is None or self.lambda_product is None:
            return None
        return self.primal_volume * self.lambda_product


def reisner_minkowski_report(spec: NormBallSpec, workers: int = 1) -> VolumeReport:
    l = spec.l
    lf = factorial(l)
    dual = dual_volume(spec)
    reisner_lhs = Fraction(4**l, lf)
    low, high = Fraction(2**l, lf), Fraction(2**l)
    wedge = wedge_l1(spec.x)
    lam = successive_minima(spec, workers=workers).lambda_product
    primal = None
    reisner_ok = minkowski_ok = None
    if l <= 3:
        primal = primal_volume(spec)
        reisner_ok = reisner_lhs <= primal * dual
        minkowski_ok = low <= primal * lam <= high
    return VolumeReport(
        dual_volume=dual,
        primal_volume=primal,
        reisner_lhs=reisner_lhs,
        reisner_ok=reisner_ok,
        minkowski_low=low,
        minkowski_high=high,
        minkowski_ok=minkowski_ok,
        lambda_product=lam,
        wedge_l1=wedge,
        reduction_ok=lam <= lf * wedge,
    )
