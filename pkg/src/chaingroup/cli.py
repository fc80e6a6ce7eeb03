"""Command-line interface.

Exit codes: 0 success, 1 usage or parse error, 2 domain error.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import sys

import numpy as np

from . import cupflow, numeric
from .equivalence import compare, essential_graph
from .errors import ChainGroupError, GraphError
from .graph import classify, format_set, parse_graph, serialize_graph
from .imset import standard_imset
from .symmetry import group_description


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _vertex_list(text):
    try:
        values = sorted({int(v) for v in text.split(",") if v.strip()})
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated vertex ids, got {text!r}") from None
    return values


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser():
    p = _Parser(prog="chaingroup", description="Symmetry groups of Gaussian chain graph models.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", help="print the graph class")
    s.add_argument("graph")

    s = sub.add_parser("essential", help="print the essential graph")
    s.add_argument("graph")

    s = sub.add_parser("equivalent", help="test Markov equivalence of two graphs")
    s.add_argument("graph1")
    s.add_argument("graph2")

    s = sub.add_parser("imset", help="print the standard imset of a DAG")
    s.add_argument("graph")

    s = sub.add_parser("group", help="describe the stabilizer group")
    s.add_argument("graph")
    s.add_argument("--n", type=_positive, help="sample size for the breakdown bound")
    s.add_argument("--json", action="store_true")

    s = sub.add_parser("vanishing", help="decide whether a minor of K vanishes on the model")
    s.add_argument("graph")
    s.add_argument("--rows", type=_vertex_list, required=True)
    s.add_argument("--cols", type=_vertex_list, required=True)
    s.add_argument("--numeric", action="store_true")
    s.add_argument("--trials", type=_positive, default=5)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--tol", type=float, default=1e-9)

    s = sub.add_parser("invariant", help="maximal invariant of a data matrix")
    s.add_argument("graph")
    s.add_argument("--data", required=True, help="CSV, one line per variable")

    s = sub.add_parser("sample", help="print K, or a data sample with --data N")
    s.add_argument("graph")
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--data", type=_positive, metavar="N")
    return p


def _read_graph(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_graph(text)
    except GraphError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _format_matrix(a):
    return "".join(",".join(f"{v:.10g}" for v in row) + "\n" for row in np.atleast_2d(a))


def _check_vertices(h, values, flag):
    for v in values:
        if not 1 <= v <= h.m:
            raise UsageError(f"{flag}: vertex {v} not in 1..{h.m}")


def _dispatch(args, out):
    if args.command == "validate":
        out.write(f"{classify(_read_graph(args.graph))}\n")
    elif args.command == "essential":
        out.write(serialize_graph(essential_graph(_read_graph(args.graph)).graph))
    elif args.command == "equivalent":
        verdict = compare(_read_graph(args.graph1), _read_graph(args.graph2))
        out.write(("equivalent" if verdict.equivalent else "not equivalent") + f": {verdict.reason}\n")
    elif args.command == "imset":
        out.write(standard_imset(_read_graph(args.graph)).render())
    elif args.command == "group":
        desc = group_description(_read_graph(args.graph))
        out.write(desc.to_json(args.n) + "\n" if args.json else desc.render(args.n))
    elif args.command == "vanishing":
        h = _read_graph(args.graph)
        _check_vertices(h, args.rows, "--rows")
        _check_vertices(h, args.cols, "--cols")
        if len(args.rows) != len(args.cols):
            raise UsageError("--rows and --cols must have the same number of vertices")
        vanishes = cupflow.vanishing_minor(h, args.rows, args.cols)
        out.write(f"minor: rows {format_set(args.rows)} cols {format_set(args.cols)}\n")
        out.write(f"vanishes: {'yes' if vanishes else 'no'}\n")
        if args.numeric:
            dets = numeric.numeric_determinants(h, args.rows, args.cols, args.trials, args.seed)
            num = all(abs(d) < args.tol for d in dets)
            biggest = max(abs(d) for d in dets)
            out.write(f"numeric: {'yes' if num else 'no'} (max |det| = {biggest:.3e} over {args.trials} draws)\n")
    elif args.command == "invariant":
        h = _read_graph(args.graph)
        try:
            x = np.loadtxt(args.data, delimiter=",", ndmin=2)
        except (OSError, ValueError) as exc:
            raise UsageError(f"--data: cannot read {args.data}: {exc}") from None
        stat = numeric.maximal_invariant(h, x)
        for cls, proj in zip(stat.classes, stat.projections):
            out.write(f"class {format_set(cls)}\n")
            out.write(_format_matrix(proj))
    elif args.command == "sample":
        h = _read_graph(args.graph)
        if args.data is None:
            out.write(_format_matrix(numeric.concentration(numeric.sample_parameters(h, args.seed))))
        else:
            out.write(_format_matrix(numeric.sample_data(h, args.seed, args.data)))


def run(argv):
    """Run the CLI and return ``(exit_code, stdout, stderr)``."""
    out, err = io.StringIO(), io.StringIO()
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            try:
                args = parser.parse_args(argv)
            except SystemExit as exc:  # --help
                return int(exc.code or 0), out.getvalue(), err.getvalue()
        _dispatch(args, out)
        code = 0
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        code = 1
    except ChainGroupError as exc:
        err.write(f"error: {exc}\n")
        code = 2
    return code, out.getvalue(), err.getvalue()


def main(argv=None):
    code, stdout, stderr = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(stdout)
    sys.stderr.write(stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
