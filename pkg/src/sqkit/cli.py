"""Command-line interface: ``sqkit bench | export | solve``.

Exit codes: 0 on success, 1 on usage errors, 2 on model or solver errors.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from threadpoolctl import threadpool_limits

from . import bench
from .errors import SqkitError
from .index import ALL, SPIN, Index
from .modelfile import load_model_file
from .properties import DiagonalizerPropertyExtractor
from .solver import diagonalize
from .sparse import assemble_triplets, write_matrix_market, write_triplets_csv

EXIT_OK, EXIT_USAGE, EXIT_MODEL = 0, 1, 2

PROPERTIES = (
    "eigenvalues", "dos", "density", "ldos", "magnetization",
    "spin_polarized_ldos", "wave_functions", "greens_function",
)
NEEDS_WINDOW = {"dos", "ldos", "spin_polarized_ldos", "greens_function"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _int_list(text):
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _window(text):
    parts = text.split(",")
    try:
        lo, hi, res = float(parts[0]), float(parts[1]), int(parts[2])
    except (IndexError, ValueError):
        raise argparse.ArgumentTypeError(f"expected lower,upper,resolution; got {text!r}")
    if len(parts) != 3 or not lo < hi or res < 1:
        raise argparse.ArgumentTypeError(f"invalid window {text!r}")
    return lo, hi, res


def _props(text):
    props = [p.strip() for p in text.split(",") if p.strip()]
    unknown = [p for p in props if p not in PROPERTIES]
    if unknown or not props:
        raise argparse.ArgumentTypeError(
            f"unknown properties {unknown}; choose from {', '.join(PROPERTIES)}"
        )
    return props


def _pattern(text):
    try:
        return Index.parse(text)
    except (ValueError, TypeError, SqkitError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sqkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("bench", help="time cubic model setup and sparse extraction")
    p.add_argument("--sizes", type=_int_list, default=[10, 16, 25, 40],
                   help="comma-separated cube edge lengths (default 10,16,25,40)")
    p.add_argument("--reps", type=int, default=3, help="repetitions per size (median reported)")
    p.add_argument("--lookups", type=int, default=20_000, help="lookups timed per size")
    p.add_argument("--out", default="-", help="CSV output file (default stdout)")
    p.add_argument("--threads", type=int, default=1,
                   help="BLAS/OpenMP threads during timing; SQKIT_THREADS overrides")

    p = sub.add_parser("export", help="write the Hamiltonian of a model file")
    p.add_argument("--model", required=True, help="model file")
    p.add_argument("--format", choices=("matrixmarket", "csv"), default="matrixmarket")
    p.add_argument("--out", default="-", help="output file (default stdout)")

    p = sub.add_parser("solve", help="diagonalize a model and write properties as CSV")
    p.add_argument("--model", required=True, help="model file")
    p.add_argument("--props", type=_props, default=["eigenvalues"],
                   help=f"comma-separated subset of {','.join(PROPERTIES)}")
    p.add_argument("--window", type=_window, help="lower,upper,resolution")
    p.add_argument("--pattern", type=_pattern, action="append",
                   help="index pattern such as '[ALL, ALL, SUM_ALL]' (repeatable)")
    p.add_argument("--eta", type=float, help="Green's function broadening (default: bin width)")
    p.add_argument("--out", default=".", help="output directory")
    return parser


def _join_negative_values(argv, options=("--window",)):
    # let "--window -2,2,4" through; argparse would read -2,2,4 as an option
    out, it = [], iter(argv)
    for arg in it:
        if arg in options:
            nxt = next(it, None)
            if nxt is not None:
                arg = f"{arg}={nxt}"
        out.append(arg)
    return out


def _open_out(path):
    if path == "-":
        return _Stdout()
    return open(path, "w", newline="")


class _Stdout:
    def __enter__(self):
        return sys.stdout

    def __exit__(self, *exc):
        return False


def _cmd_bench(args):
    threads = int(os.environ.get("SQKIT_THREADS", args.threads))
    log = lambda msg: print(msg, file=sys.stderr)  # noqa: E731
    with threadpool_limits(limits=threads):
        records, slopes = bench.run_benchmark(args.sizes, args.reps, args.lookups, log=log)
    with _open_out(args.out) as fh:
        bench.write_records_csv(records, fh)
    for name, slope in slopes.items():
        print(f"log-log slope {name}: {slope:.3f}", file=sys.stderr)
    return EXIT_OK


def _cmd_export(args):
    triplets = assemble_triplets(load_model_file(args.model))
    with _open_out(args.out) as fh:
        if args.format == "matrixmarket":
            write_matrix_market(triplets, fh)
        else:
            write_triplets_csv(triplets, fh)
    return EXIT_OK


def _default_patterns(model, spin=False):
    lengths = sorted({len(index) for index, _ in model.tree.leaves()})
    if spin:
        return [Index([ALL] * (n - 1) + [SPIN]) for n in lengths]
    return [Index([ALL] * n) for n in lengths]


def _cmd_solve(args):
    missing = NEEDS_WINDOW.intersection(args.props)
    if missing and args.window is None:
        raise UsageError(f"--window is required for {', '.join(sorted(missing))}")
    model = load_model_file(args.model)
    extractor = DiagonalizerPropertyExtractor(diagonalize(model))
    if args.window is not None:
        extractor.set_energy_window(*args.window)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    for prop in args.props:
        if prop == "eigenvalues":
            result = extractor.get_eigen_values()
        elif prop == "dos":
            result = extractor.calculate_dos()
        elif prop in ("density", "ldos", "wave_functions"):
            patterns = args.pattern or _default_patterns(model)
            method = {"density": extractor.calculate_density,
                      "ldos": extractor.calculate_ldos,
                      "wave_functions": extractor.calculate_wave_functions}[prop]
            result = method(patterns)
        elif prop in ("magnetization", "spin_polarized_ldos"):
            patterns = args.pattern or _default_patterns(model, spin=True)
            method = getattr(extractor, f"calculate_{prop}")
            result = method(patterns)
        else:
            pairs = [(i, i) for i, _ in model.tree.leaves()]
            result = extractor.calculate_greens_function(pairs, eta=args.eta)
        with open(out_dir / f"{prop}.csv", "w", newline="") as fh:
            result.to_csv(fh)
    return EXIT_OK


COMMANDS = {"bench": _cmd_bench, "export": _cmd_export, "solve": _cmd_solve}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative_values(argv))
        if args.command is None:
            parser.print_help(sys.stderr)
            return EXIT_USAGE
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (SqkitError, OSError) as exc:
        print(f"sqkit: error: {exc}", file=sys.stderr)
        return EXIT_MODEL


if __name__ == "__main__":
    sys.exit(main())
