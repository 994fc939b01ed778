"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -s`` (or ``python tests/test_acceptance.py``)
to see the lines.
"""

import math
import random
import sys
import time
from fractions import Fraction
from math import factorial
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

from wedgeheights.extreme_points import difference, minus_unit, plus_unit
from wedgeheights.lattice_geometry import NormBallSpec, dual_volume, primal_volume, reduce_basis, successive_minima
from wedgeheights.linalg_core import RationalMatrix, rank_exact, wedge_l1
from wedgeheights.mu_search import extreme_wedge_l1, mu_exact, reduce_mixed, verify_theorem_1_1, verify_theorem_2_1
from wedgeheights.subset_structure import (
    PairSystem,
    is_fixed,
    minimal_partition,
    rank_relation,
    system_matrix,
    verify_dependency_equiv,
)
from wedgeheights.sunit_io import parse_embedding, regulator_from_basis, subgroup_index


def report(k, ok, detail):
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def rand_fraction(rng, span=6, den=5):
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


# 1 -----------------------------------------------------------------------------


def test_criterion_1_mu_table():
    t0 = time.perf_counter()
    expected = {}
    for n in range(2, 6):
        expected[(n, n)] = 1
    for n in range(3, 6):
        expected[(n - 1, n)] = n
    for n in range(2, 7):
        for l in range(1, n // 2 + 1):
            expected[(l, n)] = 2**l
    bad = {k: mu_exact(*k, workers=4 if k == (3, 6) else 1).value for k in sorted(expected)}
    bad = {k: v for k, v in bad.items() if v != expected[k]}
    report(1, not bad, f"{len(expected)} exact mu values, mismatches {bad or 'none'}, {time.perf_counter() - t0:.2f}s")


# 2 -----------------------------------------------------------------------------


def test_criterion_2_wedge_vs_schinzel():
    rng = random.Random(2021)
    violations = 0
    regimes = {}
    for _ in range(500):
        n = rng.randint(1, 6)
        l = rng.randint(1, n)
        cols = [[rand_fraction(rng) for _ in range(n)] for _ in range(l)]
        rep = verify_theorem_2_1(cols)
        regimes[rep.regime] = regimes.get(rep.regime, 0) + 1
        violations += not rep.satisfied
    report(2, violations == 0, f"500 random families, {violations} violations, regimes {dict(sorted(regimes.items()))}")


# 3 -----------------------------------------------------------------------------


def test_criterion_3_diagonal_families():
    rng = random.Random(2022)
    violations = 0
    for _ in range(500):
        r = rng.randint(1, 5)
        q = rng.randint(1, r)
        cols = []
        for _ in range(q):
            head = [rand_fraction(rng) for _ in range(r)]
            cols.append(head + [-sum(head)])
        rep = verify_theorem_1_1(cols)
        violations += not (rep.satisfied and rep.lhs <= rep.norm_product)
    report(3, violations == 0, f"500 diagonal families, {violations} violations of either bound")


# 4 -----------------------------------------------------------------------------


def _random_system(rng, n):
    all_pairs = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    while True:
        l = rng.randint((n + 1) // 2, min(len(all_pairs), n + 2))
        pairs = rng.sample(all_pairs, l)
        if len({x for p in pairs for x in p}) == n:
            return PairSystem.of(n, pairs)


def test_criterion_4_subset_structure():
    rng = random.Random(2023)
    failures, full_rank, subsets_checked = 0, 0, 0
    for _ in range(200):
        n = rng.randint(2, 10)
        sys_ = _random_system(rng, n)
        part = minimal_partition(sys_)
        union = 0
        for b in part.blocks:
            failures += bool(union & b) or not is_fixed(sys_, b)
            union |= b
        failures += union != sys_.ground
        y = system_matrix(sys_, [rng.choice([1, -1]) for _ in sys_.pairs])
        if n <= 8:
            for a in range(1, 1 << n):
                in_p, zero = verify_dependency_equiv(y, a)
                failures += in_p != zero
                subsets_checked += 1
        if sys_.l <= n and rank_exact(y) == sys_.l:
            full_rank += 1
            failures += not rank_relation(y).equal
    report(4, failures == 0, f"200 systems, {subsets_checked} subsets checked, {full_rank} full-rank, {failures} failures")


# 5 -----------------------------------------------------------------------------


def test_criterion_5_hexagon_sandwich():
    spec = NormBallSpec(RationalMatrix([[1, 0, -1], [0, 1, -1]]))
    pv, dv = primal_volume(spec), dual_volume(spec)
    lam = successive_minima(spec).lambdas
    w = wedge_l1(spec.x)
    prod_lam = lam[0] * lam[1]
    ok = (
        pv == Fraction(3, 4)
        and dv == 12
        and pv * dv == 9 >= Fraction(4**2, 2)
        and lam == (2, 2)
        and pv * prod_lam == 3
        and Fraction(2**2, 2) <= pv * prod_lam <= 4
        and prod_lam == 4 <= factorial(2) * w == 6
    )
    report(5, ok, f"vol {pv}, dual {dv}, Mahler {pv * dv} >= 8, lambdas {lam[0]}, {lam[1]}, Minkowski {pv * prod_lam}, {prod_lam} <= {2 * w}")


# 6 -----------------------------------------------------------------------------


def test_criterion_6_reduction():
    rng = random.Random(2024)
    t0 = time.perf_counter()
    violations = done = 0
    while done < 200:
        l = rng.randint(1, 3)
        n = rng.randint(l, 5)
        m = RationalMatrix([[rng.randint(-4, 4) for _ in range(n)] for _ in range(l)])
        if wedge_l1(m) == 0:
            continue
        res = reduce_basis(NormBallSpec(m))
        violations += not (res.reduced_norm_product <= factorial(l) * res.wedge_l1 and res.index <= factorial(l))
        done += 1
    elapsed = time.perf_counter() - t0
    report(6, violations == 0 and elapsed <= 60, f"200 integer matrices, {violations} violations, {elapsed:.2f}s")


# 7 -----------------------------------------------------------------------------


QSQRT2 = """\
degree 2
places inf1:1 inf2:1
unit eps 0.881374 -0.881374
unit eps2 1.762748 -1.762748
"""


def test_criterion_7_regulator():
    t = parse_embedding(QSQRT2)
    reg = regulator_from_basis(t, ["eps"]).reg
    reg2 = regulator_from_basis(t, ["eps2"]).reg
    err = abs(reg - math.log(1 + math.sqrt(2)))
    ok = err <= 1e-6 and reg2 == 2 * reg and subgroup_index([[2]]) == 2
    report(7, ok, f"Reg {reg:.6f}, |Reg - ln(1+sqrt2)| = {err:.1e}, squared unit gives {reg2:.6f} (index 2)")


# 8 -----------------------------------------------------------------------------


def test_criterion_8_row_deletion():
    rng = random.Random(2025)
    violations = done = 0
    while done < 100:
        n = rng.randint(3, 8)
        l = rng.randint(2, n - 1)
        k = rng.randint(1, l - 1)
        rows = rng.sample(range(1, n + 1), k)
        pts = [plus_unit(m, n) if rng.random() < 0.5 else minus_unit(m, n) for m in rows]
        for _ in range(l - k):
            a, b = rng.sample(range(1, n + 1), 2)
            pts.append(difference(a, b, n))
        rng.shuffle(pts)
        before = extreme_wedge_l1(pts)
        if before == 0:
            continue
        after = extreme_wedge_l1(reduce_mixed(pts))
        violations += before != after
        done += 1
    report(8, violations == 0, f"100 mixed families, {violations} norm changes")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
