"""Command-line front end.

Subcommands
-----------
eval        evaluate one operator for one class and q
numbers     deformed-number curves with asymptote tags
cutoff-map  cutoff regions of oel addition or multiplication on an (x, y) grid
entropy     two-state scans, equiprobable scans over W, admissibility reports
verify      run the law suites and print a JSON report

Datasets are written as CSV (header always present, 17 significant digits)
or JSON (sorted keys).  Non-finite values are written as the tokens
``inf``, ``-inf`` and ``undefined``, never as empty cells.

Exit codes: 0 success, 1 verification failure, 2 undefined result,
64 usage error, 74 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from typing import Any, Callable, Sequence

import numpy as np

from . import arith, calc, entropy, qnumbers, verify
from .core import Tag, Undefined, classify, exp_q, ln_q, reason

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_UNDEFINED = 2
EXIT_USAGE = 64
EXIT_IO = 74

CLASSES = ("ile", "ole", "iel", "oel")
DEFAULT_Q = (-1.0, 0.5, 1.0, 2.0, 3.0)

# name -> (arity, function of (cls, q, *operands))
OPERATORS: dict[str, tuple[int, Callable[..., float]]] = {
    "add": (2, lambda c, q, x, y: arith.op_closed(c, "add", q, x, y)),
    "sub": (2, lambda c, q, x, y: arith.op_closed(c, "sub", q, x, y)),
    "mul": (2, lambda c, q, x, y: arith.op_closed(c, "mul", q, x, y)),
    "div": (2, lambda c, q, x, y: arith.op_closed(c, "div", q, x, y)),
    "pow": (2, arith.tpow),
    "dot": (2, arith.dot_mul),
    "deform": (1, qnumbers.deform),
    "undeform": (1, qnumbers.undeform),
    "neg": (1, arith.neg),
    "inv": (1, arith.inv_mul),
    "h": (1, calc.h),
    "ln": (1, lambda c, q, x: ln_q(q, x)),
    "exp": (1, lambda c, q, x: exp_q(q, x)),
}


class UsageError(Exception):
    """Bad arguments; reported with exit code 64."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


# -- formatting ----------------------------------------------------------------------


def fmt(v: Any) -> str:
    """CSV cell text: 17 significant digits, or a non-finite token."""
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        tag = classify(float(v))
        if tag is not Tag.FINITE:
            return tag.value
        return format(float(v), ".17g")
    return str(v)


@dataclass
class Dataset:
    columns: tuple[str, ...]
    rows: list[tuple]
    meta: dict

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for row in self.rows:
            w.writerow([fmt(v) for v in row])
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "columns": list(self.columns),
            "meta": self.meta,
            "rows": [dict(zip(self.columns, row)) for row in self.rows],
        }
        return json.dumps(verify.to_jsonable(doc), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def render(self, form: str) -> str:
        return self.to_json() if form == "json" else self.to_csv()


# -- grids -----------------------------------------------------------------------------


@dataclass(frozen=True)
class GridSpec:
    """One swept variable: ``steps`` points from ``lo`` to ``hi``."""

    var: str
    lo: float
    hi: float
    steps: int

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        """Parse ``var:min:max:steps``.

        >>> GridSpec.parse("x:-1:1:5").values().tolist()
        [-1.0, -0.5, 0.0, 0.5, 1.0]
        """
        parts = text.split(":")
        if len(parts) != 4:
            raise UsageError(f"grid {text!r} is not var:min:max:steps")
        var, lo, hi, steps = parts
        try:
            g = cls(var, float(lo), float(hi), int(steps))
        except ValueError:
            raise UsageError(f"grid {text!r} has a non-numeric bound or step count") from None
        if not (math.isfinite(g.lo) and math.isfinite(g.hi) and g.lo < g.hi):
            raise UsageError(f"grid {text!r} needs finite min < max")
        if g.steps < 2:
            raise UsageError(f"grid {text!r} needs at least 2 steps")
        return g

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.steps)

    def log_values(self) -> np.ndarray:
        if self.lo <= 0:
            raise UsageError(f"log-spaced grid for {self.var} needs min > 0")
        return np.geomspace(self.lo, self.hi, self.steps)


def _grids(specs: Sequence[str] | None, defaults: dict[str, str]) -> dict[str, GridSpec]:
    out = {k: GridSpec.parse(v) for k, v in defaults.items()}
    for text in specs or ():
        g = GridSpec.parse(text)
        if g.var not in defaults:
            raise UsageError(f"unknown grid variable {g.var!r}; expected one of {sorted(defaults)}")
        out[g.var] = g
    return out


def _classes(text: str) -> tuple[str, ...]:
    names = tuple(s.strip() for s in text.split(",") if s.strip())
    for n in names:
        if n not in CLASSES:
            raise UsageError(f"unknown class {n!r}; expected some of {','.join(CLASSES)}")
    return names


# -- commands --------------------------------------------------------------------------


def cmd_eval(args) -> tuple[int, str]:
    """Evaluate one operator.  Prints the value, or a tag with its reason."""
    if args.op not in OPERATORS:
        raise UsageError(f"unknown operator {args.op!r}; expected one of {', '.join(OPERATORS)}")
    arity, fn = OPERATORS[args.op]
    if len(args.operands) != arity:
        raise UsageError(f"{args.op} takes {arity} operand(s), got {len(args.operands)}")
    v = fn(args.cls, args.q, *args.operands)
    tag = classify(v)
    if tag is Tag.UNDEFINED:
        return EXIT_UNDEFINED, f"undefined (reason: {reason(v) or 'not defined'})\n"
    if tag is Tag.FINITE:
        return EXIT_OK, format(v, f".{args.digits}g") + "\n"
    return EXIT_OK, f"{tag.value}\n"


def number_tag(cls: str, q: float, x: float, v: float) -> str:
    """``finite``, ``inf``, ``-inf``, ``undefined``, or ``plateau`` where the
    value sits on a horizontal asymptote or inside a zero plateau."""
    tag = classify(v)
    if tag is not Tag.FINITE:
        return tag.value
    a = qnumbers.asymptotes(cls, q)
    if any(v == level for level in a.horizontal):
        return "plateau"
    if any(lo <= x <= hi and x != 0 for lo, hi in a.plateau):
        return "plateau"
    return tag.value


def cmd_numbers(args) -> Dataset:
    g = _grids(args.grid, {"x": "x:-3:3:601"})["x"]
    rows = []
    for cls in _classes(args.classes):
        for q in args.q:
            for x in g.values():
                x = float(x)
                v = qnumbers.deform(cls, q, x)
                rows.append((cls, q, x, v, number_tag(cls, q, x, v)))
    meta = {
        "asymptotes": {
            f"{cls}@{q!r}": qnumbers.asymptotes(cls, q)._asdict() for cls in _classes(args.classes) for q in args.q
        }
    }
    return Dataset(("class", "q", "x", "value", "tag"), rows, meta)


def mul_border(q: float, x: float) -> float:
    """``(1 - |x|^(1-q))^(1/(1-q))``, the border ``|y|`` of the oel
    multiplication cutoff above ``x``; undefined where no border exists."""
    c = 1.0 - q
    if c == 0 or x == 0:
        return Undefined("no border")
    base = 1.0 - abs(x) ** c
    if not base > 0:
        return Undefined("no border")
    return base ** (1.0 / c)


def cmd_cutoff_map(args) -> Dataset:
    gs = _grids(args.grid, {"x": "x:-2:2:81", "y": "y:-2:2:81"})
    xs, ys = gs["x"].values(), gs["y"].values()
    rows: list[tuple] = []
    for x in xs:
        for y in ys:
            b = arith.cutoff_bracket(args.op, args.q, float(x), float(y))
            rows.append(("cell", float(x), float(y), int(not b > 0)))
    if args.op == "mul":
        for x in xs:
            yb = mul_border(args.q, float(x))
            if yb == yb and gs["y"].lo <= yb <= gs["y"].hi:
                rows.append(("border", float(x), yb, 1))
            if yb == yb and gs["y"].lo <= -yb <= gs["y"].hi:
                rows.append(("border", float(x), -yb, 1))
    meta = {"op": args.op, "q": args.q, "flagged": sum(r[3] for r in rows if r[0] == "cell")}
    return Dataset(("kind", "x", "y", "in_cutoff"), rows, meta)


def cmd_entropy(args) -> Dataset:
    classes = _classes(args.classes)
    if args.task == "two_state":
        g = _grids(args.grid, {"p": "p:0:1:101"})["p"]
        rows = []
        for cls in classes:
            for q in args.q:
                for p in g.values():
                    d = entropy.Distribution.two_state(float(p))
                    rows.append((cls, q, float(p), entropy.s_delta_closed(cls, q, d)))
        return Dataset(("class", "q", "p", "S"), rows, {"task": "two_state"})
    if args.task == "vs_w":
        g = _grids(args.grid, {"W": "W:1:1000:31"})["W"]
        ws = sorted({int(round(w)) for w in g.log_values()})
        rows = []
        for cls in classes:
            for q in args.q:
                for w in ws:
                    rows.append((cls, q, w, entropy.s_delta_closed(cls, q, entropy.Distribution.uniform(w))))
        return Dataset(("class", "q", "W", "S"), rows, {"task": "vs_w"})
    reports = [entropy.admissibility_report(cls, q, args.resolution).as_dict() for cls in classes for q in args.q]
    cols = tuple(reports[0]) if reports else ("cls", "q")
    return Dataset(cols, [tuple(r[c] for c in cols) for r in reports], {"task": "admissibility"})


def cmd_verify(args) -> tuple[int, str]:
    domain = verify.SampleDomain(seed=args.seed, count=args.count)
    if args.q_range is not None:
        lo, hi = args.q_range
        if not lo <= hi:
            raise UsageError("--q-range needs min <= max")
        domain = domain.replace(q_range=(lo, hi))
    report = verify.run_suite(args.suite, verify.suite_laws(args.suite), domain)
    return (EXIT_OK if report.passed else EXIT_FAIL), report.to_json() + "\n"


# -- parser --------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qdeform", description="q-deformed numbers, arithmetic, calculus and entropies")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def outputs(sp):
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--out", help="output path (default: stdout)")

    e = sub.add_parser("eval", help="evaluate one operator")
    e.add_argument("cls", choices=CLASSES)
    e.add_argument("op", help=f"one of {', '.join(OPERATORS)}")
    e.add_argument("--q", type=float, required=True)
    e.add_argument("operands", nargs="*", type=float)
    e.add_argument("--digits", type=int, default=15, choices=range(1, 18), metavar="1..17", help="significant digits")

    n = sub.add_parser("numbers", help="deformed-number curves")
    n.add_argument("--classes", default=",".join(CLASSES))
    n.add_argument("--q", type=float, nargs="+", default=list(DEFAULT_Q))
    n.add_argument("--grid", action="append", metavar="x:MIN:MAX:STEPS")
    outputs(n)

    c = sub.add_parser("cutoff-map", help="cutoff regions of oel add/mul")
    c.add_argument("op", choices=("add", "mul"))
    c.add_argument("--q", type=float, required=True)
    c.add_argument("--grid", action="append", metavar="VAR:MIN:MAX:STEPS")
    outputs(c)

    s = sub.add_parser("entropy", help="entropy scans")
    s.add_argument("task", choices=("two_state", "vs_w", "admissibility"))
    s.add_argument("--classes", default=",".join(CLASSES))
    s.add_argument("--q", type=float, nargs="+", default=list(DEFAULT_Q))
    s.add_argument("--grid", action="append", metavar="VAR:MIN:MAX:STEPS")
    s.add_argument("--resolution", type=int, default=1001, help="two-state grid size for admissibility")
    outputs(s)

    v = sub.add_parser("verify", help="run law suites")
    v.add_argument("suite", choices=("arith", "calc", "entropy", "all"))
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--count", type=int, default=1000, help="samples per law")
    v.add_argument("--q-range", type=float, nargs=2, metavar=("MIN", "MAX"))
    v.add_argument("--out", help="output path (default: stdout)")
    return p


def _write(text: str, path: str | None, stdout) -> None:
    if path is None:
        stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _operand(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"operand {text!r} is not a number") from None


def main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    """Run the command line; returns the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        parser = build_parser()
        args, extra = parser.parse_known_args(argv)
        if extra and args.command != "eval":
            parser.error(f"unrecognized arguments: {' '.join(extra)}")
        if args.command == "eval":
            args.operands = list(args.operands) + [_operand(t) for t in extra]
            code, text = cmd_eval(args)
            out = None
        elif args.command == "verify":
            if args.count < 1:
                raise UsageError("--count must be positive")
            code, text = cmd_verify(args)
            out = args.out
        else:
            if args.command == "entropy" and args.resolution < 3:
                raise UsageError("--resolution must be at least 3")
            cmd = {"numbers": cmd_numbers, "cutoff-map": cmd_cutoff_map, "entropy": cmd_entropy}[args.command]
            code, text = EXIT_OK, cmd(args).render(args.format)
            out = args.out
        _write(text, out, stdout)
        return code
    except UsageError as e:
        stderr.write(f"{e}\n")
        return EXIT_USAGE
    except OSError as e:
        stderr.write(f"qdeform: {e}\n")
        return EXIT_IO
    except SystemExit as e:  # --help
        return int(e.code or 0)
