import itertools
import random
from fractions import Fraction
from math import factorial

import numpy as np
import pytest
from scipy.spatial import ConvexHull, HalfspaceIntersection

from conftest import naive_wedge_l1
from wedgeheights.errors import PreconditionError
from wedgeheights.lattice_geometry import (
    NormBallSpec,
    ball_norm,
    box_radius,
    dual_volume,
    primal_volume,
    primal_volume_estimate,
    reduce_basis,
    reisner_minkowski_report,
    successive_minima,
    theorem_1_2,
)
from wedgeheights.linalg_core import RationalMatrix, l1_norm

HEXAGON = RationalMatrix([[1, 0, -1], [0, 1, -1]])


def hull_primal(x):
    """Volume of {y : ||Xy||_1 <= 1} via its 2^N half-spaces s.Xy <= 1."""
    x = np.asarray(x, dtype=float)
    n, l = x.shape
    hs = []
    for s in itertools.product([-1.0, 1.0], repeat=n):
        a = np.array(s) @ x
        if np.any(a):
            hs.append(np.append(a, -1.0))
    hsi = HalfspaceIntersection(np.array(hs), np.zeros(l))
    return ConvexHull(hsi.intersections).volume


def hull_dual(x):
    """Volume of the zonotope sum of segments [-g_n, g_n] over the rows g_n of X."""
    x = np.asarray(x, dtype=float)
    pts = [np.array(s) @ x for s in itertools.product([-1.0, 1.0], repeat=x.shape[0])]
    return ConvexHull(np.array(pts)).volume


def brute_minima(x, radius=5):
    x = np.asarray(x, dtype=float)
    l = x.shape[1]
    pts = np.array([p for p in itertools.product(range(-radius, radius + 1), repeat=l) if any(p)])
    norms = np.abs(pts @ x.T).sum(axis=1)
    order = np.argsort(norms, kind="stable")
    chosen, lam = [], []
    for i in order:
        cand = chosen + [pts[i]]
        if np.linalg.matrix_rank(np.array(cand)) == len(cand):
            chosen.append(pts[i])
            lam.append(norms[i])
            if len(chosen) == l:
                break
    return lam


def rows(m):
    return [[float(e) for e in r] for r in m.row_tuples()]


def random_matrix(rng, n, l, lo=-3, hi=3):
    while True:
        m = RationalMatrix([[rng.randint(lo, hi) for _ in range(n)] for _ in range(l)])
        if naive_wedge_l1([list(c) for c in m.columns]):
            return m


def test_hexagon_values():
    spec = NormBallSpec(HEXAGON)
    assert primal_volume(spec) == Fraction(3, 4)
    assert dual_volume(spec) == 12
    res = successive_minima(spec)
    assert res.lambdas == (2, 2)
    assert res.minimizers == ((1, 0), (0, 1))
    assert res.index == 1


def test_identity_volumes():
    assert primal_volume(NormBallSpec(RationalMatrix.identity(2))) == 2
    assert primal_volume(NormBallSpec(RationalMatrix.identity(3))) == Fraction(4, 3)
    assert primal_volume(NormBallSpec(RationalMatrix.identity(3).scale(2))) == Fraction(1, 6)
    assert primal_volume(NormBallSpec(RationalMatrix([[3]]))) == Fraction(2, 3)


@pytest.mark.parametrize("seed", range(12))
def test_volumes_match_hull_oracle(seed):
    rng = random.Random(seed)
    l = rng.choice([2, 3])
    n = rng.randint(l, 5)
    m = random_matrix(rng, n, l)
    spec = NormBallSpec(m)
    assert float(primal_volume(spec)) == pytest.approx(hull_primal(rows(m)), rel=1e-9)
    assert float(dual_volume(spec)) == pytest.approx(hull_dual(rows(m)), rel=1e-9)


@pytest.mark.parametrize("seed", range(12))
def test_minima_match_brute_force(seed):
    rng = random.Random(100 + seed)
    l = rng.choice([1, 2, 3])
    n = rng.randint(l, 4)
    m = random_matrix(rng, n, l)
    res = successive_minima(NormBallSpec(m))
    assert [float(v) for v in res.lambdas] == pytest.approx(brute_minima(rows(m), radius=6))


def test_workers_do_not_change_minima():
    m = RationalMatrix([[3, 1, -2, 0], [1, 4, 0, -1], [0, 1, 1, 5]])
    a = successive_minima(NormBallSpec(m), workers=1)
    b = successive_minima(NormBallSpec(m), workers=3)
    assert a == b


def test_box_radius_certifies():
    spec = NormBallSpec(RationalMatrix([[5, 1, 0], [1, 5, 1]]))
    level = Fraction(7)
    r = box_radius(spec, level)
    # every lattice point of norm <= level lies in the box
    for y in itertools.product(range(-12, 13), repeat=2):
        if ball_norm(spec, y) <= level:
            assert max(abs(t) for t in y) <= r


def test_reduce_basis_bounds():
    rng = random.Random(8)
    for _ in range(25):
        l = rng.randint(1, 3)
        n = rng.randint(l, 5)
        spec = NormBallSpec(random_matrix(rng, n, l))
        res = reduce_basis(spec)
        assert res.reduced_norm_product <= factorial(l) * res.wedge_l1
        assert 1 <= res.index <= factorial(l)
        assert all(l1_norm(b) == lam for b, lam in zip(res.reduced, res.lambdas))


def test_theorem_1_2_diagonal():
    res = theorem_1_2([[4, -1, -3], [1, 2, -3]])
    assert res.index <= 2
    assert all(sum(b) == 0 for b in res.reduced)
    with pytest.raises(PreconditionError):
        theorem_1_2([[1, 1, 0]])


def test_sandwich_report_hexagon():
    vr = reisner_minkowski_report(NormBallSpec(HEXAGON))
    assert vr.mahler_product == 9 and vr.reisner_lhs == 8 and vr.reisner_ok
    assert vr.minkowski_product == 3 and vr.minkowski_ok
    assert vr.lambda_product == 4 and vr.wedge_l1 == 3 and vr.reduction_ok


def test_monte_carlo_estimate_is_seeded():
    spec = NormBallSpec(HEXAGON)
    a = primal_volume_estimate(spec, samples=50_000, seed=3)
    assert a == primal_volume_estimate(spec, samples=50_000, seed=3)
    assert abs(float(a) - 0.75) < 0.02


def test_rank_deficient_rejected():
    with pytest.raises(PreconditionError):
        NormBallSpec(RationalMatrix([[1, 1], [2, 2]]))
