"""S-unit logarithmic-embedding tables: heights, regulators, indices, probes.

Input files store ``d_v * log||alpha||_v`` per place directly; no number-field
arithmetic happens here.  Values are parsed exactly (decimal literals become
Fractions) so the same table feeds both the float path used for genuine
transcendental data and the exact path used for synthetic data.

File format::

    # comment
    degree 2
    places inf1:1 inf2:1
    unit eps 0.881374 -0.881374
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import prod
from typing import Sequence

import numpy as np

from .errors import DimensionError, DomainError, ParseError, PreconditionError
from .linalg_core import as_matrix, det_exact, l1_norm, matrix_from_vectors, wedge_l1
from .mu_search import c_bound

log = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-9
# relative threshold on wedge_l1 / prod ||a_j||_1 below which a family counts as dependent
DEFAULT_INDEPENDENCE_THRESHOLD = 1e-9


@dataclass(frozen=True)
class PlaceRecord:
    place_id: str
    local_degree: int


@dataclass(frozen=True)
class UnitLogRecord:
    label: str
    logs: tuple[Fraction, ...]

    @property
    def floats(self) -> np.ndarray:
        return np.array([float(x) for x in self.logs])

    def residual(self) -> Fraction:
        return abs(sum(self.logs, Fraction(0)))


@dataclass(frozen=True)
class EmbeddingTable:
    places: tuple[PlaceRecord, ...]
    units: tuple[UnitLogRecord, ...]
    global_degree: int
    tolerance: float = DEFAULT_TOLERANCE
    warnings: tuple[str, ...] = field(default=(), compare=False)

    @property
    def r(self) -> int:
        return len(self.places) - 1

    def unit(self, label: str) -> UnitLogRecord:
        for u in self.units:
            if u.label == label:
                return u
        raise KeyError(f"no unit labelled {label!r}")

    def select(self, labels: Sequence[str]) -> list[UnitLogRecord]:
        return [self.unit(x) for x in labels]


def _parse_number(tok: str, lineno: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad numeric token {tok!r}", lineno) from exc


def parse_embedding(text: str, tolerance: float = DEFAULT_TOLERANCE) -> EmbeddingTable:
    degree = None
    places: list[PlaceRecord] | None = None
    units: list[UnitLogRecord] = []
    unit_lines: list[tuple[int, str, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        s = raw.split("#", 1)[0].strip()
        if not s:
            continue
        head, *rest = s.split()
        if head == "degree":
            if len(rest) != 1:
                raise ParseError("degree takes one integer", lineno)
            try:
                degree = int(rest[0])
            except ValueError as exc:
                raise ParseError(f"bad degree {rest[0]!r}", lineno) from exc
            if degree < 1:
                raise ParseError("degree must be positive", lineno)
        elif head == "places":
            if places is not None:
                raise ParseError("places declared twice", lineno)
            places = []
            for tok in rest:
                pid, sep, dv = tok.partition(":")
                if not sep:
                    raise ParseError(f"place {tok!r} must be id:local_degree", lineno)
                try:
                    d_v = int(dv)
                except ValueError as exc:
                    raise ParseError(f"bad local degree in {tok!r}", lineno) from exc
                if d_v < 1:
                    raise ParseError(f"local degree must be positive in {tok!r}", lineno)
                if any(p.place_id == pid for p in places):
                    raise ParseError(f"duplicate place {pid!r}", lineno)
                places.append(PlaceRecord(pid, d_v))
            if not places:
                raise ParseError("no places listed", lineno)
        elif head == "unit":
            if not rest:
                raise ParseError("unit needs a label", lineno)
            unit_lines.append((lineno, rest[0], rest[1:]))
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)
    if degree is None:
        raise ParseError("missing 'degree' line")
    if places is None:
        raise ParseError("missing 'places' line")
    seen = set()
    for lineno, label, toks in unit_lines:
        if label in seen:
            raise ParseError(f"duplicate unit label {label!r}", lineno)
        seen.add(label)
        if len(toks) != len(places):
            raise ParseError(f"unit {label!r} has {len(toks)} logs, expected {len(places)}", lineno)
        rec = UnitLogRecord(label, tuple(_parse_number(t, lineno) for t in toks))
        res = rec.residual()
        if res > Fraction(tolerance):
            raise ParseError(
                f"unit {label!r} violates the product formula: residual {float(res):.3e} "
                f"exceeds tolerance {tolerance:g}",
                lineno,
            )
        units.append(rec)
    warnings = []
    if not units:
        warnings.append("table has no units; rank-dependent reports will be empty")
        log.warning(warnings[-1])
    return EmbeddingTable(tuple(places), tuple(units), degree, tolerance, tuple(warnings))


def load_embedding(path, tolerance: float = DEFAULT_TOLERANCE) -> EmbeddingTable:
    with open(path, encoding="utf-8") as fh:
        return parse_embedding(fh.read(), tolerance)


def format_embedding(table: EmbeddingTable) -> str:
    lines = [f"degree {table.global_degree}"]
    lines.append("places " + " ".join(f"{p.place_id}:{p.local_degree}" for p in table.places))
    for u in table.units:
        lines.append("unit " + u.label + " " + " ".join(_fmt_exact(x) for x in u.logs))
    return "\n".join(lines) + "\n"


def _fmt_exact(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# heights and regulators


def height(u: UnitLogRecord, d: int) -> float:
    """Weil height h = ||a||_1 / (2d)."""
    return float(sum(abs(x) for x in u.logs)) / (2 * d)


def height_exact(u: UnitLogRecord, d: int) -> Fraction:
    return l1_norm(u.logs) / (2 * d)


def float_wedge_l1(vectors: np.ndarray) -> float:
    """Sum of |maximal minors| of the columns of an (r+1) x q float array."""
    n, q = vectors.shape
    total = 0.0
    for rows in combinations(range(n), q):
        total += abs(float(np.linalg.det(vectors[list(rows), :])))
    return total


@dataclass(frozen=True)
class RegulatorResult:
    reg: float
    wedge_l1: float
    norm_product: float
    condition: float  # wedge_l1 / prod ||a_j||_1, in (0, 1]; tiny means nearly dependent
    exact_wedge_l1: Fraction | None = None

    def __iter__(self):
        return iter((self.reg, self.wedge_l1))


def _columns(units: Sequence[UnitLogRecord]) -> np.ndarray:
    return np.column_stack([u.floats for u in units])


def regulator_from_basis(
    table: EmbeddingTable,
    labels: Sequence[str],
    threshold: float = DEFAULT_INDEPENDENCE_THRESHOLD,
    exact: bool = False,
) -> RegulatorResult:
    """(r+1) Reg = ||a_1 ^ ... ^ a_r||_1 for r chosen units."""
    r = table.r
    if len(labels) != r:
        raise PreconditionError(f"need exactly r = {r} units, got {len(labels)}")
    units = table.select(labels)
    cols = _columns(units)
    wedge = float_wedge_l1(cols)
    norms = float(np.prod(np.abs(cols).sum(axis=0)))
    cond = wedge / norms if norms > 0 else 0.0
    if norms == 0 or cond < threshold:
        raise PreconditionError(
            f"units {list(labels)} are numerically dependent (wedge/product = {cond:.3e})"
        )
    ex = wedge_l1(matrix_from_vectors([u.logs for u in units])) if exact else None
    return RegulatorResult(wedge / (r + 1), wedge, norms, cond, ex)


def subgroup_index(b) -> int:
    """|det B| for the integer coordinate-change matrix B."""
    b = as_matrix(b)
    if any(e.denominator != 1 for e in b.entries):
        raise DomainError("index matrix must have integer entries")
    d = det_exact(b)
    if d == 0:
        raise PreconditionError("singular coordinate matrix")
    return int(abs(d))


# ---------------------------------------------------------------------------
# conjecture probe


@dataclass(frozen=True)
class ConjectureReport:
    q: int
    r: int
    wedge_l1: float | Fraction
    norm_product: float | Fraction
    sandwich: float | Fraction  # 2^-q C(q, r) prod ||a_j||_1
    ratio: float | Fraction  # wedge / product
    constant: Fraction  # 2^-q C(q, r)
    wedge_le_sandwich: bool
    wedge_le_product: bool
    exact: bool


def conjecture_report(
    vectors,
    tolerance: float = DEFAULT_TOLERANCE,
    threshold: float = DEFAULT_INDEPENDENCE_THRESHOLD,
    exact: bool | None = None,
) -> ConjectureReport:
    """Wedge norm, product of norms and the sandwich constant for a diagonal family.

    Reports numbers only; makes no claim about the lower-bound conjectures.
    Exact path when every entry is a Fraction/int (or ``exact=True``), else
    floats compared with a relative tolerance.
    """
    vecs = [tuple(v) for v in vectors]
    if not vecs:
        raise PreconditionError("need at least one vector")
    dim = len(vecs[0])
    if any(len(v) != dim for v in vecs):
        raise DimensionError("vectors of mixed dimension")
    q, r = len(vecs), dim - 1
    if exact is None:
        exact = all(isinstance(x, (int, Fraction)) for v in vecs for x in v)
    if q > r:
        raise PreconditionError(f"{q} diagonal vectors in dimension {dim} cannot be independent")
    const = c_bound(q, r) / 2**q
    if exact:
        fv = [[Fraction(x) for x in v] for v in vecs]
        for j, v in enumerate(fv, start=1):
            if sum(v) != 0:
                raise PreconditionError(f"vector {j} is off the diagonal subspace")
        wedge = wedge_l1(matrix_from_vectors(fv))
        product = prod((l1_norm(v) for v in fv), start=Fraction(1))
        if wedge == 0:
            raise PreconditionError("vectors are linearly dependent")
        sandwich = const * product
        return ConjectureReport(
            q, r, wedge, product, sandwich, wedge / product, const,
            wedge <= sandwich, wedge <= product, True,
        )
    arr = np.column_stack([np.array([float(x) for x in v]) for v in vecs])
    for j in range(q):
        if abs(arr[:, j].sum()) > tolerance:
            raise PreconditionError(f"vector {j + 1} is off the diagonal subspace")
    wedge = float_wedge_l1(arr)
    product = float(np.prod(np.abs(arr).sum(axis=0)))
    if product == 0 or wedge / product < threshold:
        raise PreconditionError("vectors are numerically dependent")
    sandwich = float(const) * product
    slack = 1 + 1e-9
    return ConjectureReport(
        q, r, wedge, product, sandwich, wedge / product, const,
        wedge <= sandwich * slack, wedge <= product * slack, False,
    )


def table_report(table: EmbeddingTable, labels: Sequence[str], **kw) -> ConjectureReport:
    units = table.select(labels)
    return conjecture_report([u.floats for u in units], tolerance=table.tolerance, **kw)


def log1p_sqrt2() -> float:
    """ln(1 + sqrt 2), the regulator of Q(sqrt 2)."""
    return math.log(1 + math.sqrt(2))
