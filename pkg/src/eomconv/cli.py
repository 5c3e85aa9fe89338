"""Command-line front end.

Exit codes: 0 success, 1 invalid parameters, 2 verification failure,
3 resource limit.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys
from pathlib import Path

from . import __version__, sweeps, tables
from .errors import EomError, InvalidParameterError
from .sweeps import Grid, SweepSpec
from .verify import run_verify

log = logging.getLogger("eomconv")

EXIT_OK, EXIT_INVALID, EXIT_VERIFY, EXIT_RESOURCE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _complex(text: str) -> complex:
    """Parse ``re,im`` or a bare real number."""
    try:
        parts = [float(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected re,im, got {text!r}") from None
    if len(parts) == 1:
        return complex(parts[0])
    if len(parts) == 2:
        return complex(*parts)
    raise argparse.ArgumentTypeError(f"expected re,im, got {text!r}")


def _angle(text: str) -> float:
    """Float, or a multiple of pi such as ``pi/4``, ``-pi/4``, ``2pi``."""
    t = text.strip().replace(" ", "")
    if "pi" not in t:
        return float(t)
    num, _, den = t.partition("/")
    factor = num.replace("*", "").replace("pi", "")
    try:
        scale = {"": 1.0, "-": -1.0}[factor] if factor in ("", "-") else float(factor)
        value = scale * math.pi
        return value / float(den) if den else value
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse angle {text!r}") from None


def _grid(text: str) -> Grid:
    try:
        return Grid.parse(text)
    except InvalidParameterError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _common(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="output path (default: standard output)")
    p.add_argument("--no-header-timestamp", action="store_true",
                   help="omit the generation timestamp so output is byte-reproducible")


def _coupling(p: argparse.ArgumentParser):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--k", type=float, help="coupling ratio G_o/G_w in [0, 1)")
    g.add_argument("--G-o", dest="G_o", type=float, help="optical multiphoton coupling (with --G-w)")
    p.add_argument("--G-w", dest="G_w", type=float, default=1.0, help="microwave multiphoton coupling")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="eomconv", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"eomconv {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("propagate", help="propagator coefficients at time t")
    _coupling(p)
    tg = p.add_mutually_exclusive_group(required=True)
    tg.add_argument("--t", type=float)
    tg.add_argument("--t-grid", type=_grid, help="start:stop:count")
    p.add_argument("--method", choices=("closed", "ode"), default="closed")
    p.add_argument("--tol", type=float, default=1e-10, help="ODE integration tolerance")
    _common(p)

    p = sub.add_parser("dark-times", help="dark-mode instants and coefficients")
    _coupling(p)
    p.add_argument("--count", type=int, default=3)
    _common(p)

    p = sub.add_parser("cqc", help="conditional conversion rate over a k grid")
    p.add_argument("--k-grid", type=_grid, default=Grid(0.0, 0.95, sweeps.DEFAULT_POINTS))
    _common(p)

    p = sub.add_parser("eaqc", help="entanglement-assisted rate over a phase grid")
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--theta", type=_angle, default=math.pi / 4)
    p.add_argument("--phi-grid", type=_grid, default=Grid(0.0, 2 * math.pi, sweeps.DEFAULT_POINTS))
    p.add_argument("--alpha", type=float, default=1.0, help="common amplitude |alpha| = |beta|")
    p.add_argument("--direction", choices=("o2w", "w2o"), default="o2w")
    _common(p)

    p = sub.add_parser("eaf", help="entanglement-affecting factor over a k grid")
    p.add_argument("--k-grid", type=_grid, default=Grid(0.95 / sweeps.DEFAULT_POINTS, 0.95, sweeps.DEFAULT_POINTS))
    p.add_argument("--phi", type=_angle, default=math.pi / 2)
    _common(p)

    p = sub.add_parser("concurrence", help="normalization, concurrence and means of a state")
    p.add_argument("--theta", type=_angle, required=True)
    p.add_argument("--alpha", type=_complex, required=True, help="re,im")
    p.add_argument("--beta", type=_complex, required=True, help="re,im")
    _common(p)

    p = sub.add_parser("figure", help="dataset behind one of the reference figures")
    p.add_argument("number", type=int, choices=(2, 3, 4))
    p.add_argument("--grid", type=_grid, help="override the x-axis grid")
    p.add_argument("--svg", help="also write a line plot (needs matplotlib)")
    _common(p)

    p = sub.add_parser("verify", help="run the invariant and oracle checks")
    p.add_argument("--full", action="store_true", help="include the Fock-space oracle checks")
    p.add_argument("--tol", type=float, help="override the ODE-vs-closed-form tolerance")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")
    return parser


def _coupling_fixed(args) -> dict:
    if args.G_o is not None:
        return {"G_o": args.G_o, "G_w": args.G_w}
    return {"k": args.k, "G_w": args.G_w}


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _sweep_spec(args) -> SweepSpec:
    c = args.command
    if c == "propagate":
        fixed = _coupling_fixed(args) | {"method": args.method, "tol": args.tol}
        if args.t is not None:
            fixed["t"] = args.t
        return SweepSpec("propagator", args.t_grid, fixed, args.format, args.out)
    if c == "dark-times":
        return SweepSpec("dark-times", None, _coupling_fixed(args) | {"count": args.count}, args.format, args.out)
    if c == "cqc":
        return SweepSpec("cqc-rate", args.k_grid, {}, args.format, args.out)
    if c == "eaqc":
        fixed = {"k": args.k, "theta": args.theta, "alpha": args.alpha, "direction": args.direction}
        return SweepSpec("eaqc-rate", args.phi_grid, fixed, args.format, args.out)
    if c == "eaf":
        return SweepSpec("eaf", args.k_grid, {"phi": args.phi}, args.format, args.out)
    return SweepSpec("concurrence", None, {"theta": args.theta, "alpha": args.alpha, "beta": args.beta},
                     args.format, args.out)


def _plot(table: tables.Table, path: str):
    import matplotlib

    matplotlib.use("svg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    x = table.column(table.columns[0])
    for name in table.columns[1:]:
        ys = table.column(name)
        if all(isinstance(v, float) for v in ys):
            ax.plot(x, ys, label=name, linestyle="--" if name == "unity_reference" else "-")
    ax.set_xlabel(table.columns[0])
    ax.set_title(table.title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "verify":
            report = run_verify("full" if args.full else "quick", tol=args.tol, seed=args.seed)
            if args.format == "json":
                import json
                from dataclasses import asdict

                doc = {"level": report.level, "passed": report.passed,
                       "checks": [asdict(c) for c in report.checks]}
                _emit(json.dumps(doc, indent=2) + "\n", args.out)
            else:
                _emit("\n".join(report.lines()) + "\n", args.out)
            return EXIT_OK if report.passed else EXIT_VERIFY

        if args.command == "figure":
            table = {2: sweeps.figure2, 3: sweeps.figure3, 4: sweeps.figure4}[args.number](args.grid)
            if args.svg:
                _plot(table, args.svg)
            out = args.out
        else:
            spec = _sweep_spec(args)
            table = sweeps.run_sweep(spec)
            out = spec.out
        _emit(tables.render(table, args.format, timestamp=not args.no_header_timestamp), out)
        return EXIT_OK
    except EomError as exc:
        log.error("%s", exc)
        print(f"eomconv: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, ZeroDivisionError) as exc:
        print(f"eomconv: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
