"""Command-line front end.

Exit status: 0 on success, 1 on bad input (parse, precondition, budget),
2 when a proven inequality or identity fails, which is always a bug.
"""

from __future__ import annotations

import argparse
import hashlib
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from . import __version__
from .errors import InvariantViolation, WedgeHeightsError
from .lattice_geometry import (
    NormBallSpec,
    dual_volume,
    primal_volume,
    primal_volume_estimate,
    reduce_basis,
    reisner_minkowski_report,
)
from .linalg_core import format_rational, read_matrix, schinzel_norm, wedge_coordinates
from .mu_search import DEFAULT_BUDGET, MuCache, mu_exact, verify_theorem_1_1, verify_theorem_2_1
from .subset_structure import minimal_partition, read_pair_system
from .sunit_io import (
    DEFAULT_INDEPENDENCE_THRESHOLD,
    DEFAULT_TOLERANCE,
    height,
    load_embedding,
    regulator_from_basis,
    table_report,
)

CACHE_ENV = "WEDGEHEIGHTS_CACHE_DIR"

EXIT_OK, EXIT_INPUT, EXIT_INVARIANT = 0, 1, 2


class UsageError(WedgeHeightsError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; 2 is reserved here
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class Report:
    command: str
    provenance: str = "exact"
    digest: str = ""
    results: list = field(default_factory=list)
    elapsed: float = 0.0

    def add(self, key: str, value) -> None:
        self.results.append((key, _text(value)))

    def porcelain(self) -> str:
        lines = [f"command={self.command}", f"inputs={self.digest or '-'}", f"path={self.provenance}"]
        lines += [f"{k}={v}" for k, v in self.results]
        return "\n".join(lines) + "\n"

    def human(self) -> str:
        width = max([len(k) for k, _ in self.results] + [6])
        out = [f"wedgeheights {self.command}"]
        out += [f"  {k.ljust(width)}  {v}" for k, v in self.results]
        out.append(f"  ({self.provenance} arithmetic; inputs {self.digest[:12] or '-'}; {self.elapsed:.3f}s)")
        return "\n".join(out) + "\n"


def _text(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def _both(x: Fraction) -> str:
    """Exact rational with its decimal value alongside."""
    s = format_rational(x)
    return s if x.denominator == 1 else f"{s} ({float(x):.6f})"


def _digest(*paths) -> str:
    h = hashlib.sha256()
    for p in paths:
        with open(p, "rb") as fh:
            h.update(fh.read())
    return h.hexdigest()


def _labels(text: str) -> list[str]:
    out = [t.strip() for t in text.split(",") if t.strip()]
    if not out:
        raise UsageError("empty label list")
    return out


def _positive(name):
    def conv(s):
        try:
            v = int(s)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be an integer") from None
        if v < 1:
            raise argparse.ArgumentTypeError(f"{name} must be positive")
        return v

    return conv


def _cache_dir(args) -> str:
    if args.cache_dir:
        return args.cache_dir
    env = os.environ.get(CACHE_ENV)
    if env:
        return env
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return os.path.join(base, "wedgeheights")


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise InvariantViolation(what)


# ---------------------------------------------------------------------------
# subcommands


def cmd_wedge_norm(args, rep: Report) -> None:
    m = read_matrix(args.matrix)
    rep.digest = _digest(args.matrix)
    wc = wedge_coordinates(m)
    rep.add("shape", f"{m.rows}x{m.cols}")
    rep.add("wedge_l1", wc.l1)
    rep.add("nonzero_coordinates", sum(1 for v in wc.coords.values() if v))
    rep.add("schinzel_norms", " ".join(format_rational(schinzel_norm(c)) for c in m.columns))


def cmd_mu(args, rep: Report) -> None:
    if args.grade is None or args.dim is None:
        raise UsageError("mu needs --grade and --dim")
    cache = None if args.no_cache else MuCache(_cache_dir(args))
    res = mu_exact(args.grade, args.dim, budget=args.budget, workers=args.workers, cache=cache)
    rep.add("L", res.l)
    rep.add("N", res.n)
    rep.add("mu", res.value)
    rep.add("witness", res.render_witness())
    rep.add("bound_2L", res.bound_2l)
    if res.bound_ratio is not None:
        rep.add("bound_ratio", _both(res.bound_ratio))
    rep.add("bound_binomial", res.binom_bound)
    rep.add("source", "cache" if res.from_cache else "search")


def cmd_verify(args, rep: Report) -> None:
    m = read_matrix(args.matrix)
    rep.digest = _digest(args.matrix)
    if args.theorem == "2.1":
        br = verify_theorem_2_1(m.columns)
    else:
        tol = Fraction(args.tolerance) if args.tolerance is not None else 0
        if tol:
            rep.provenance = "exact, diagonal tolerance"
        br = verify_theorem_1_1(m.columns, tol=tol)
    _require(br.satisfied, f"inequality fails: {br.lhs} > {br.rhs}")
    rep.add("inequality", "wedge-vs-schinzel" if args.theorem == "2.1" else "wedge-vs-l1-diagonal")
    rep.add("regime", br.regime)
    rep.add("lhs", _both(br.lhs))
    rep.add("rhs", _both(br.rhs))
    rep.add("constant", _both(br.constant_used))
    rep.add("norm_product", _both(br.norm_product))
    rep.add("satisfied", br.satisfied)
    rep.add("tight", br.tight)


def cmd_partition(args, rep: Report) -> None:
    sys_ = read_pair_system(args.system)
    rep.digest = _digest(args.system)
    part = minimal_partition(sys_)
    rep.add("N", sys_.n)
    rep.add("L", sys_.l)
    rep.add("r", part.r)
    rep.add("blocks", " ".join("{" + ",".join(map(str, b)) + "}" for b in part.as_sets()))
    rep.add("N_minus_L", sys_.n - sys_.l)


def cmd_reduce(args, rep: Report) -> None:
    spec = NormBallSpec(read_matrix(args.matrix))
    rep.digest = _digest(args.matrix)
    res = reduce_basis(spec, workers=args.workers)
    lf = factorial(spec.l)
    rep.add("lambdas", " ".join(format_rational(x) for x in res.lambdas))
    for j, (mvec, b) in enumerate(zip(res.minimizers, res.reduced), start=1):
        rep.add(f"m{j}", " ".join(map(str, mvec)))
        rep.add(f"beta{j}", " ".join(format_rational(x) for x in b))
    rep.add("norm_product", _both(res.reduced_norm_product))
    rep.add("wedge_l1", _both(res.wedge_l1))
    rep.add("bound", _both(lf * res.wedge_l1))
    rep.add("index", res.index)
    rep.add("index_bound", lf)
    if args.report == "volumes":
        vr = reisner_minkowski_report(spec, workers=args.workers)
        _volume_lines(rep, vr)


def _volume_lines(rep: Report, vr) -> None:
    rep.add("dual_volume", _both(vr.dual_volume))
    if vr.primal_volume is None:
        rep.add("primal_volume", "n/a (L > 3)")
        return
    _require(vr.reisner_ok, "Mahler product below 4^L/L!")
    _require(vr.minkowski_ok, "successive-minima product outside Minkowski bounds")
    rep.add("primal_volume", _both(vr.primal_volume))
    rep.add("mahler_product", _both(vr.mahler_product))
    rep.add("reisner_bound", _both(vr.reisner_lhs))
    rep.add("minkowski_product", _both(vr.minkowski_product))
    rep.add("minkowski_range", f"[{_both(vr.minkowski_low)}, {_both(vr.minkowski_high)}]")


def cmd_volume(args, rep: Report) -> None:
    spec = NormBallSpec(read_matrix(args.matrix))
    rep.digest = _digest(args.matrix)
    rep.add("dual_volume", _both(dual_volume(spec)))
    if spec.l <= 3:
        rep.add("primal_volume", _both(primal_volume(spec)))
    else:
        rep.provenance = "exact dual, Monte Carlo primal"
        est = primal_volume_estimate(spec, samples=args.samples, seed=args.seed)
        rep.add("primal_volume_estimate", f"{float(est):.6f}")
        rep.add("samples", args.samples)
        rep.add("seed", args.seed)


def _table(args):
    tol = float(args.tolerance) if args.tolerance is not None else DEFAULT_TOLERANCE
    t = load_embedding(args.table, tolerance=tol)
    return t


def cmd_regulator(args, rep: Report) -> None:
    if not args.basis:
        raise UsageError("regulator needs --basis")
    table = _table(args)
    rep.digest = _digest(args.table)
    rep.provenance = "float"
    labels = _labels(args.basis)
    try:
        res = regulator_from_basis(table, labels, threshold=args.threshold)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    rep.add("r", table.r)
    rep.add("basis", ",".join(labels))
    rep.add("wedge_l1", f"{res.wedge_l1:.9f}")
    rep.add("regulator", f"{res.reg:.9f}")
    rep.add("condition", f"{res.condition:.3e}")
    for u in table.select(labels):
        rep.add(f"height[{u.label}]", f"{height(u, table.global_degree):.9f}")


def cmd_conjecture(args, rep: Report) -> None:
    if not args.units:
        raise UsageError("conjecture needs --units")
    table = _table(args)
    rep.digest = _digest(args.table)
    rep.provenance = "float"
    labels = _labels(args.units)
    try:
        cr = table_report(table, labels, threshold=args.threshold)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    _require(cr.wedge_le_sandwich, "wedge exceeds the sandwich bound")
    _require(cr.wedge_le_product, "wedge exceeds the norm product")
    rep.add("q", cr.q)
    rep.add("r", cr.r)
    rep.add("wedge_l1", f"{float(cr.wedge_l1):.9f}")
    rep.add("norm_product", f"{float(cr.norm_product):.9f}")
    rep.add("constant", _both(cr.constant))
    rep.add("sandwich", f"{float(cr.sandwich):.9f}")
    rep.add("ratio", f"{float(cr.ratio):.9f}")


COMMANDS = {
    "wedge-norm": (cmd_wedge_norm, "l1 norm of the wedge of the matrix columns"),
    "mu": (cmd_mu, "exact extremal constant mu_{L,N} with a witness"),
    "verify": (cmd_verify, "check a wedge-norm inequality for the matrix columns"),
    "partition": (cmd_partition, "minimal fixed-set partition of a pair system"),
    "reduce": (cmd_reduce, "successive-minima basis reduction"),
    "volume": (cmd_volume, "volumes of the norm ball and its dual"),
    "regulator": (cmd_regulator, "regulator from chosen units of an embedding table"),
    "conjecture": (cmd_conjecture, "wedge norm versus product of norms for chosen units"),
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--porcelain", action="store_true", help="flat key=value output")
    common.add_argument("--workers", type=_positive("--workers"), default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tolerance", default=None, help="product-formula / diagonal tolerance")
    common.add_argument("--budget", type=_positive("--budget"), default=DEFAULT_BUDGET)
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--cache-dir", default=None, help=f"overrides ${CACHE_ENV}")

    p = _Parser(prog="wedgeheights", description="Exterior-product height inequalities, certified.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, helptext) in COMMANDS.items():
        sp = sub.add_parser(name, help=helptext, parents=[common])
        if name in ("wedge-norm", "verify", "reduce", "volume"):
            sp.add_argument("--matrix", required=True)
        if name == "mu":
            sp.add_argument("--grade", type=_positive("--grade"))
            sp.add_argument("--dim", type=_positive("--dim"))
        if name == "verify":
            sp.add_argument("--theorem", choices=["2.1", "1.1"], default="2.1")
        if name == "partition":
            sp.add_argument("--system", required=True)
        if name == "reduce":
            sp.add_argument("--report", choices=["volumes"], default=None)
        if name == "volume":
            sp.add_argument("--samples", type=_positive("--samples"), default=200_000)
        if name in ("regulator", "conjecture"):
            sp.add_argument("--table", required=True)
            sp.add_argument("--threshold", type=float, default=DEFAULT_INDEPENDENCE_THRESHOLD)
        if name == "regulator":
            sp.add_argument("--basis")
        if name == "conjecture":
            sp.add_argument("--units", "--basis", dest="units")
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.tolerance is not None:
            try:
                Fraction(args.tolerance)
            except ValueError:
                raise UsageError(f"bad --tolerance {args.tolerance!r}") from None
        rep = Report(args.command)
        t0 = time.perf_counter()
        COMMANDS[args.command][0](args, rep)
        rep.elapsed = time.perf_counter() - t0
    except InvariantViolation as exc:
        print(f"error: invariant violated: {exc}", file=stderr)
        return EXIT_INVARIANT
    except (WedgeHeightsError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    stdout.write(rep.porcelain() if args.porcelain else rep.human())
    return EXIT_OK


def main(argv=None) -> int:
    try:
        return run(argv)
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
