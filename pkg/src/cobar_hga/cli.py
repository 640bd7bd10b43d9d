"""Command-line front end.

    cobar-hga COMMAND (--example NAME | --input PATH) [options]

Commands: validate, cobar-check, hga-check, bar-bialgebra-check, homology.
Exit status is 0 when every selected check passes (warnings included), 1
when some check fails and 2 for unusable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor

from . import __version__, examples, specfile
from .barbialg import BAR_CHECKS, BarOfCobar, dg_bialgebra_verdict
from .barcobar import TruncationBounds, check_d_squared, check_derivation
from .dg import axiom_names, validate
from .errors import CobarHgaError, NotReduced, OutOfTruncatedRegion, SpecParseError, TruncationOverflow
from .hga import HGA_CHECKS, HgaContext
from .homology import ChainComplexSlice, gerstenhaber_check, homology_dims
from .report import FAIL, PASS, WARN, CheckResult, timed
from .twisting import check_brown, universal_cobar

SCHEMA = "cobar-hga-report/1"
DEFAULT_BOUNDS = TruncationBounds(10, 5)


class InputError(Exception):
    """The input cannot be checked at all (exit status 2)."""


class Session:
    """Everything derived from one input and one set of bounds, built lazily."""

    def __init__(self, source: tuple, bounds: TruncationBounds):
        self.source = source
        self.bounds = bounds
        self._cache: dict = {}

    def _get(self, key: str, build: Callable):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    @property
    def bialgebra(self):
        return self._get("bialgebra", lambda: load_source(self.source))

    @property
    def hga(self) -> HgaContext:
        return self._get("hga", lambda: HgaContext(self.bialgebra, self.bounds, validate=False))

    @property
    def bar(self) -> BarOfCobar:
        return self._get("bar", lambda: BarOfCobar(self.hga))

    @property
    def cobar_slice(self) -> ChainComplexSlice:
        return self._get("slice", lambda: ChainComplexSlice.from_complex(self.hga.cobar, self.bounds))


def load_source(source: tuple):
    if source[0] == "example":
        return examples.get(source[1])
    return specfile.parse(source[1])


# check catalogues: name -> function(session) -> CheckResult or list of them

def _structure(s: Session) -> CheckResult:
    report = validate(s.bialgebra)
    res = CheckResult("structure", region=f"{len(report.results)} axioms on all basis elements")
    res.checked = sum(r.checked for r in report.results)
    failed = report.failures()
    if failed:
        res.status = FAIL
        res.counterexample = failed[0].counterexample
        res.detail = "violated: " + ", ".join(r.name for r in failed)
    res.wall_time = sum(r.wall_time for r in report.results)
    return res


def _axiom(name: str):
    return lambda s: validate(s.bialgebra, [name]).results[0]


def _cobar_brown(s: Session) -> CheckResult:
    region = TruncationBounds(s.bounds.max_degree + 1, s.bounds.max_length)
    return check_brown(universal_cobar(s.bialgebra, region), "brown_universal")


def _hga(name: str):
    return lambda s: HGA_CHECKS[name](s.hga)


def _bar(name: str):
    return lambda s: BAR_CHECKS[name](s.bar, s.bounds)


def _verdict(s: Session) -> CheckResult:
    return dg_bialgebra_verdict(s.bar, s.bounds)["dg_bialgebra"]


def _boundary_squared(s: Session) -> CheckResult:
    res = CheckResult("boundary_squared", region=f"boundary matrices through degree {s.cobar_slice.full_degree}")
    with timed(res):
        bad = s.cobar_slice.boundary_squared_violations()
        res.checked = sum(s.cobar_slice.dim(n) for n in range(2, s.cobar_slice.full_degree + 1))
        if bad:
            res.record(False, s.hga.cobar.format_key(bad[0]))
    return res


def _dims_text(dims: dict[int, int]) -> str:
    return ", ".join(f"H_{n}={d}" for n, d in sorted(dims.items()) if d) or "all zero"


def _homology_dims(s: Session) -> CheckResult:
    sl = s.cobar_slice
    res = CheckResult("homology_dims", region=f"cobar degrees 0..{sl.full_degree - 1}")
    with timed(res):
        dims = homology_dims(sl)
        res.checked = len(dims)
        res.detail = _dims_text(dims)
    return res


def _order_invariance(s: Session) -> CheckResult:
    sl = s.cobar_slice
    res = CheckResult("homology_order_invariance", region=f"cobar degrees 0..{sl.full_degree - 1}")
    with timed(res):
        base = homology_dims(sl)
        for seed in (1, 2, 3):
            shuffled = ChainComplexSlice.from_complex(s.hga.cobar, s.bounds, seed=seed)
            res.record(homology_dims(shuffled) == base, f"shuffle seed {seed}")
    return res


def _gerstenhaber(s: Session) -> list[CheckResult]:
    return gerstenhaber_check(s.hga, s.bounds).results


def _bar_homology(s: Session) -> CheckResult:
    res = CheckResult("bar_homology")
    if s.bialgebra.connectivity < 3:
        res.warn("input is not 2-reduced; the bar construction of its cobar is not computed")
        return res
    with timed(res):
        sl = ChainComplexSlice.from_complex(s.bar.bar, s.bounds)
        dims = homology_dims(sl)
        res.region = f"bar degrees 0..{sl.full_degree - 1}"
        res.checked = len(dims)
        res.detail = _dims_text(dims)
    return res


COMMANDS: dict[str, dict] = {
    "validate": {
        "help": "check the DG-bialgebra axioms of the input",
        "catalogue": None,  # depends on whether the input has a product
        "needs_product": False,
        "connectivity": 0,
    },
    "cobar-check": {
        "help": "d^2 = 0, the derivation law and the Brown condition on the cobar construction",
        "catalogue": {
            "structure": _structure,
            "cobar_d_squared": lambda s: check_d_squared(s.hga.cobar, s.bounds, "cobar_d_squared"),
            "cobar_derivation": lambda s: check_derivation(s.hga.cobar, s.bounds, "cobar_derivation"),
            "brown_universal": _cobar_brown,
        },
        "needs_product": False,
        "connectivity": 2,
    },
    "hga-check": {
        "help": "the cup-1 and brace identities of the homotopy G-algebra on the cobar construction",
        "catalogue": {"structure": _structure, **{name: _hga(name) for name in HGA_CHECKS}},
        "needs_product": True,
        "connectivity": 2,
    },
    "bar-bialgebra-check": {
        "help": "the product on the bar construction of the cobar construction",
        "catalogue": {"structure": _structure, **{name: _bar(name) for name in BAR_CHECKS if name != "g_A"},
                      "dg_bialgebra": _verdict, "g_A": _bar("g_A")},
        "needs_product": True,
        "connectivity": 3,
    },
    "homology": {
        "help": "homology of the truncated cobar construction and the Gerstenhaber relations",
        "catalogue": {
            "structure": _structure,
            "boundary_squared": _boundary_squared,
            "homology_dims": _homology_dims,
            "homology_order_invariance": _order_invariance,
            "gerstenhaber": _gerstenhaber,
            "bar_homology": _bar_homology,
        },
        "needs_product": True,
        "connectivity": 2,
    },
}


def catalogue(command: str, bialgebra) -> dict[str, Callable]:
    cat = COMMANDS[command]["catalogue"]
    if cat is None:
        return {name: _axiom(name) for name in axiom_names(bialgebra)}
    return cat


def run_check(session: Session, command: str, name: str) -> list[CheckResult]:
    """Run one catalogue entry, turning truncation limits into warnings and
    other library errors into failures."""
    fn = catalogue(command, session.bialgebra)[name]
    try:
        out = fn(session)
    except (TruncationOverflow, OutOfTruncatedRegion) as exc:
        res = CheckResult(name)
        region = getattr(exc, "region", None)
        res.warn(f"{exc}" + (f" (cut region: {region})" if region else ""))
        return [res]
    except NotReduced:
        raise
    except CobarHgaError as exc:
        res = CheckResult(name, status=FAIL, detail=f"{type(exc).__name__}: {exc}")
        return [res]
    return out if isinstance(out, list) else [out]


_worker: dict = {}


def _init_worker(source, bounds):
    _worker["session"] = Session(source, bounds)


def _work(job):
    command, name = job
    return run_check(_worker["session"], command, name)


def execute(command: str, source: tuple, bounds: TruncationBounds, names: list[str], jobs: int = 1):
    """Run the named checks; the order of the results never depends on ``jobs``."""
    if jobs <= 1 or len(names) <= 1:
        session = Session(source, bounds)
        batches = [run_check(session, command, n) for n in names]
    else:
        with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker, initargs=(source, bounds)) as pool:
            batches = list(pool.map(_work, [(command, n) for n in names]))
    return [r for batch in batches for r in batch]


# reports

def _status(results: list[CheckResult]) -> tuple[str, int]:
    if any(r.status == FAIL for r in results):
        return FAIL, 1
    return PASS, 0


def render_machine(header: dict, results: list[CheckResult], error: dict | None, timing: bool) -> str:
    lines = [dict(record="header", **header)]
    lines += [dict(record="check", **r.as_dict(timing)) for r in results]
    if error:
        lines.append(dict(record="error", **error))
        status, code = "error", 2
    else:
        status, code = _status(results)
    lines.append({
        "record": "summary",
        "status": status,
        "total": len(results),
        "passed": sum(r.status == PASS for r in results),
        "warned": sum(r.status == WARN for r in results),
        "failed": sum(r.status == FAIL for r in results),
        "exit_code": code,
    })
    return "".join(json.dumps(line, sort_keys=True, ensure_ascii=False) + "\n" for line in lines)


def render_text(header: dict, results: list[CheckResult], error: dict | None, timing: bool) -> str:
    b = header["bounds"]
    out = [f"cobar-hga {header['version']}  {header['command']}  {header['input']['label']}"
           f"  ({header['input']['digest'][:19]})  degree <= {b['max_degree']}, length <= {b['max_length']}"]
    for r in results:
        line = f"{r.status.upper():4}  {r.name}  ({r.checked} checked"
        line += f"; {r.region})" if r.region else ")"
        if timing:
            line += f"  {r.wall_time:.3f}s"
        out.append(line)
        if r.counterexample is not None:
            out.append(f"      counterexample: {r.counterexample}")
        if r.detail:
            out.append(f"      {r.detail}")
        for w in r.warnings:
            out.append(f"      warning: {w}")
    if error:
        where = f" at line {error['line']}, column {error['column']}" if error.get("line") else ""
        out.append(f"ERROR {error['kind']}{where}: {error['message']}")
    else:
        failed = sum(r.status == FAIL for r in results)
        warned = sum(r.status == WARN for r in results)
        out.append(f"{len(results) - failed} of {len(results)} checks passed"
                   + (f", {warned} with warnings" if warned else "")
                   + (f"; {failed} failed" if failed else ""))
    return "\n".join(out) + "\n"


# argument handling

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cobar-hga", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"cobar-hga {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, entry in COMMANDS.items():
        p = sub.add_parser(name, help=entry["help"], description=entry["help"])
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--example", metavar="NAME", help="built-in example: " + ", ".join(examples.names()))
        src.add_argument("--input", metavar="PATH", help="bialgebra description file (YAML)")
        p.add_argument("--max-degree", type=int, default=DEFAULT_BOUNDS.max_degree, metavar="N")
        p.add_argument("--max-length", type=int, default=DEFAULT_BOUNDS.max_length, metavar="L")
        p.add_argument("--report", choices=("text", "machine"), default="text")
        p.add_argument("--checks", metavar="LIST", help="comma-separated subset of checks to run")
        p.add_argument("--jobs", type=int, default=1, metavar="N",
                       help="worker processes; results are identical at any setting")
        p.add_argument("--omit-timing", action="store_true", help="write null wall times")
        p.add_argument("--output", metavar="PATH", help="write the report here instead of stdout")
    return parser


def _prepare(args) -> tuple[tuple, str, str, object]:
    """Resolve the input; returns (source, label, digest, bialgebra)."""
    if args.example is not None:
        if args.example not in examples.names():
            raise InputError(f"unknown example {args.example!r}; choose from {', '.join(examples.names())}")
        b = examples.get(args.example)
        return ("example", args.example), args.example, specfile.digest(specfile.serialize(b)), b
    try:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {args.input}: {exc.strerror}") from None
    b = specfile.parse(text)
    return ("text", text), b.name or "input", specfile.digest(text), b


def _preconditions(command: str, b) -> None:
    entry = COMMANDS[command]
    if entry["needs_product"] and not b.has_product:
        raise InputError(f"{command} needs a bialgebra; the input is a coalgebra")
    need = entry["connectivity"]
    if need and b.connectivity < need:
        raise NotReduced(f"{command} needs a {need - 1}-reduced input (nothing in degrees 1 to {need - 1});"
                         f" the lowest non-unit degree is {b.connectivity}")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    timing = not args.omit_timing
    header = {
        "schema": SCHEMA,
        "tool": "cobar-hga",
        "version": __version__,
        "command": args.command,
        "input": {"label": args.example or args.input, "digest": ""},
        "bounds": {"max_degree": args.max_degree, "max_length": args.max_length},
    }
    results: list[CheckResult] = []
    error = None
    try:
        if args.max_degree < 0 or args.max_length < 0:
            raise InputError("bounds must be non-negative")
        if args.jobs < 1:
            raise InputError("--jobs must be at least 1")
        source, label, digest, b = _prepare(args)
        header["input"] = {"label": label, "digest": digest}
        _preconditions(args.command, b)
        available = list(catalogue(args.command, b))
        names = available
        if args.checks:
            names = [n.strip() for n in args.checks.split(",") if n.strip()]
            unknown = [n for n in names if n not in available]
            if unknown:
                raise InputError(f"unknown checks {', '.join(unknown)}; available: {', '.join(available)}")
        header["checks"] = names
        bounds = TruncationBounds(args.max_degree, args.max_length)
        results = execute(args.command, source, bounds, names, args.jobs)
    except SpecParseError as exc:
        error = {"kind": "SpecParseError", "message": exc.message, "line": exc.line, "column": exc.column}
    except (InputError, NotReduced) as exc:
        error = {"kind": type(exc).__name__, "message": str(exc), "line": None, "column": None}
    render = render_machine if args.report == "machine" else render_text
    text = render(header, results, error, timing)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if error:
        if args.report == "text" and args.output:
            print(f"error: {error['message']}", file=sys.stderr)
        return 2
    return _status(results)[1]


if __name__ == "__main__":
    sys.exit(main())
