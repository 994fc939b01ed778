import itertools
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings

settings.register_profile("repo", max_examples=60, deadline=None)
settings.load_profile("repo")

DATA = Path(__file__).resolve().parent.parent / "demos" / "data"


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("WEDGEHEIGHTS_CACHE_DIR", str(tmp_path / "cache"))


@pytest.fixture
def data_dir():
    return DATA


# --- oracles shared by several test files: deliberately naive ---------------


def leibniz_det(rows):
    n = len(rows)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction(1)
        for i, p in enumerate(perm):
            term *= rows[i][p]
        total += -term if inv % 2 else term
    return total


def naive_wedge_l1(columns):
    """Sum of |maximal minors| from a list of column vectors."""
    n, l = len(columns[0]), len(columns)
    total = Fraction(0)
    for idx in itertools.combinations(range(n), l):
        total += abs(leibniz_det([[Fraction(columns[j][i]) for j in range(l)] for i in idx]))
    return total
