import itertools
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import naive_wedge_l1
from wedgeheights.errors import BudgetExceeded, DomainError, PreconditionError
from wedgeheights.extreme_points import difference, embed, enumerate_extreme, minus_unit, parse_point, plus_unit
from wedgeheights.linalg_core import schinzel_norm
from wedgeheights.mu_search import (
    MuCache,
    c_bound,
    equality_construction,
    extreme_minor_check,
    extreme_wedge_l1,
    mu_exact,
    reduce_mixed,
    verify_theorem_1_1,
    verify_theorem_2_1,
    wedge_constant,
)


def brute_mu(l, n):
    """All N^2+N extreme points, no symmetry reduction, float minors."""
    vecs = [np.array([float(x) for x in embed(p)]) for p in enumerate_extreme(n)]
    best = 0
    for tup in itertools.combinations(vecs, l):
        a = np.column_stack(tup)
        total = sum(abs(round(np.linalg.det(a[list(r), :]))) for r in itertools.combinations(range(n), l))
        best = max(best, total)
    return best


@pytest.mark.parametrize("l,n", [(1, 2), (1, 3), (2, 2), (2, 3), (3, 3), (2, 4), (3, 4), (4, 4)])
def test_mu_matches_unreduced_brute_force(l, n):
    assert mu_exact(l, n).value == brute_mu(l, n)


def test_mu_known_values():
    assert mu_exact(2, 3).value == 3
    assert mu_exact(2, 4).value == 4
    assert mu_exact(3, 3).value == 1
    r = mu_exact(3, 5)
    assert r.value <= min(8, int(r.bound_ratio))


def test_mu_witness_attains():
    r = mu_exact(3, 4)
    assert extreme_wedge_l1(r.witness) == r.value
    assert naive_wedge_l1([list(embed(p)) for p in r.witness]) == r.value


def test_mu_workers_bit_identical():
    a = mu_exact(3, 5, workers=1)
    b = mu_exact(3, 5, workers=3)
    assert (a.value, a.witness) == (b.value, b.witness)


def test_mu_budget_and_domain():
    with pytest.raises(BudgetExceeded, match="evaluations"):
        mu_exact(3, 6, budget=10)
    with pytest.raises(DomainError):
        mu_exact(4, 3)


def test_cache_roundtrip(tmp_path):
    cache = MuCache(tmp_path)
    first = mu_exact(2, 4, cache=cache)
    assert not first.from_cache
    again = mu_exact(2, 4, cache=cache)
    assert again.from_cache and again.value == first.value and again.witness == first.witness
    text = (tmp_path / "mu_table.txt").read_text()
    assert "2 4 4 " in text


def test_corrupt_cache_fails_loudly(tmp_path):
    (tmp_path / "mu_table.txt").write_text("2 3 5 e1-e2 e1-e3\n")
    from wedgeheights.errors import InvariantViolation

    with pytest.raises(InvariantViolation):
        mu_exact(2, 3, cache=MuCache(tmp_path))


def test_c_bound_values():
    assert c_bound(1, 1) == 2
    assert c_bound(2, 3) == 4
    assert c_bound(3, 3) == 4
    assert c_bound(2, 2) == 3
    assert c_bound(2, 5) == 4  # (6/4)^4 = 81/16 > 4
    for r in range(1, 8):
        for q in range(1, r + 1):
            assert c_bound(q, r) / 2**q <= 1


def test_wedge_constant_regimes():
    assert wedge_constant(3, 3) == (1, "L=N")
    assert wedge_constant(2, 4)[0] == 4
    assert wedge_constant(2, 3)[0] == 3
    assert wedge_constant(4, 6)[0] == 9


def test_equality_construction_tight():
    for l, n in [(1, 2), (2, 4), (2, 5), (3, 6)]:
        rep = verify_theorem_2_1(equality_construction(l, n).columns)
        assert rep.satisfied and rep.tight and rep.lhs == 2**l


def test_theorem_2_1_examples():
    rep = verify_theorem_2_1([[1, 0, -1], [0, 1, -1]])
    assert rep.satisfied and rep.lhs == 3 and rep.rhs == 3 and rep.tight
    rep = verify_theorem_2_1([[2, 0], [0, 3]])
    assert rep.lhs == 6 and rep.rhs == 6


@st.composite
def rational_family(draw):
    n = draw(st.integers(2, 5))
    l = draw(st.integers(1, n))
    cols = draw(
        st.lists(
            st.lists(st.fractions(-6, 6, max_denominator=5), min_size=n, max_size=n),
            min_size=l,
            max_size=l,
        )
    )
    return cols


@given(rational_family())
def test_theorem_2_1_property(cols):
    rep = verify_theorem_2_1(cols)
    assert rep.satisfied
    assert rep.lhs == naive_wedge_l1(cols)


def test_theorem_1_1_examples():
    rep = verify_theorem_1_1([[1, -1]])
    assert rep.satisfied and rep.lhs == 2 and rep.rhs == 2
    rep = verify_theorem_1_1([[1, -1, 0], [0, 1, -1]])
    assert rep.satisfied and rep.lhs == 3 and rep.rhs == 3
    with pytest.raises(PreconditionError):
        verify_theorem_1_1([[1, 1, 0]])


@st.composite
def diagonal_family(draw):
    r = draw(st.integers(1, 4))
    q = draw(st.integers(1, r))
    cols = []
    for _ in range(q):
        head = draw(st.lists(st.integers(-5, 5), min_size=r, max_size=r))
        cols.append(head + [-sum(head)])
    return cols


@given(diagonal_family())
def test_theorem_1_1_property(cols):
    rep = verify_theorem_1_1(cols)
    assert rep.satisfied
    assert rep.lhs <= rep.norm_product


def _mixed_family(rng, n, l, k):
    """k distinct unit points plus l - k differences, retried until independent."""
    while True:
        rows = rng.sample(range(1, n + 1), k)
        units = [plus_unit(m, n) if rng.random() < 0.5 else minus_unit(m, n) for m in rows]
        diffs = []
        for _ in range(l - k):
            a, b = rng.sample(range(1, n + 1), 2)
            diffs.append(difference(a, b, n))
        pts = units + diffs
        if extreme_wedge_l1(pts):
            return pts


def test_reduce_mixed_example():
    pts = [parse_point("+e1", 3), parse_point("e2-e3", 3)]
    red = reduce_mixed(pts)
    assert [str(p) for p in red] == ["e1-e2"]
    assert extreme_wedge_l1(red) == extreme_wedge_l1(pts) == 2


def test_reduce_mixed_seeded():
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randint(3, 7)
        l = rng.randint(2, n - 1)
        k = rng.randint(1, l - 1)
        pts = _mixed_family(rng, n, l, k)
        red = reduce_mixed(pts)
        assert len(red) == l - k
        assert all(p.ambient == n - k for p in red)
        assert extreme_wedge_l1(red) == extreme_wedge_l1(pts)


def test_reduce_mixed_preconditions():
    with pytest.raises(PreconditionError):
        reduce_mixed([difference(1, 2, 3), difference(2, 3, 3)])
    with pytest.raises(PreconditionError):
        reduce_mixed([plus_unit(1, 3), difference(2, 1, 3), difference(1, 2, 3)])


def test_extreme_minors_unimodular():
    rng = random.Random(1)
    pts_all = enumerate_extreme(5)
    for _ in range(200):
        l = rng.randint(1, 5)
        pts = rng.sample(pts_all, l)
        rows = sorted(rng.sample(range(1, 6), l))
        assert extreme_minor_check(pts, rows) in (-1, 0, 1)


def test_schinzel_of_witness_points():
    r = mu_exact(2, 5)
    assert all(schinzel_norm(embed(p)) == 1 for p in r.witness)
