"""Command-line entry point: ``recipro <command> ...``.

Exit status: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import bounds, graphicality, oracle, rewire
from .core import BiSequence, rho
from .errors import BudgetExhausted, ReciproError
from .netio import CSV_HEADER, analyze_graph, read_edge_list, serialize_edge_list

log = logging.getLogger("recipro")

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_seq(text: str) -> list[int]:
    try:
        vals = [int(tok) for tok in text.replace(" ", "").split(",") if tok != ""]
    except ValueError:
        raise UsageError(f"not an integer list: {text!r}") from None
    return vals


def _bisequence(args) -> BiSequence:
    d_plus, d_minus = parse_seq(args.d_plus), parse_seq(args.d_minus)
    if len(d_plus) != len(d_minus):
        raise UsageError("d+ and d- must have the same length")
    return BiSequence(d_plus, d_minus)


def _limits(args) -> oracle.OracleLimits:
    return oracle.OracleLimits(max_nodes=args.oracle_max_nodes, max_edges=args.oracle_max_edges)


def _open_out(args):
    if args.out in (None, "-"):
        return sys.stdout, False
    return open(args.out, "w", encoding="utf-8", newline=""), True


def _fmt_bool(x):
    return "true" if x else "false"


def _expand_inputs(paths):
    files = []
    for p in map(Path, paths):
        if p.is_dir():
            files.extend(sorted(q for q in p.iterdir() if q.is_file() and not q.name.startswith(".")))
        else:
            files.append(p)
    return files


def _analyze_one(job):
    path, sample = job
    try:
        g, _, _ = read_edge_list(path)
        rec = analyze_graph(Path(path).stem, g, sample)
        return rec.as_row(), None
    except (ReciproError, OSError, UnicodeDecodeError) as exc:
        return None, f"{path}: {type(exc).__name__}: {exc}"


def cmd_analyze(args) -> int:
    files = _expand_inputs(args.paths)
    jobs = [(str(f), args.audit_sample) for f in files]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_analyze_one, jobs))
    else:
        results = [_analyze_one(j) for j in jobs]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    failed = 0
    for row, err in results:
        if err is not None:
            failed += 1
            print(err, file=sys.stderr)
        else:
            writer.writerow(row)
    out, close = _open_out(args)
    try:
        out.write(buf.getvalue())
    finally:
        if close:
            out.close()
    return EXIT_DATA if failed else EXIT_OK


def cmd_graphical(args) -> int:
    first = parse_seq(args.seq)
    if args.seq2 is None:
        k = graphicality.erdos_gallai_violation(first)
        label = "odd-sum"
    else:
        second = parse_seq(args.seq2)
        if len(second) != len(first):
            raise UsageError("d+ and d- must have the same length")
        k = graphicality.fulkerson_chen_anstee_violation(BiSequence(first, second))
        label = "unequal-sums"
    if k is None:
        print("GRAPHIC")
    elif k == 0:
        print(f"NOT-GRAPHIC {label}")
    else:
        print(f"NOT-GRAPHIC k={k}")
    return EXIT_OK


def cmd_bound(args) -> int:
    bs = _bisequence(args)
    rep = bounds.bound_report(bs)
    nu = rep.epsilon - rep.beta
    print(f"epsilon={rep.epsilon} beta={rep.beta} nu={nu}")
    print(f"min_graphic={_fmt_bool(rep.min_graphic)} max_graphic={_fmt_bool(rep.max_graphic)}")
    print(f"sufficient={_fmt_bool(rep.sufficient_holds)}")
    if rep.exact_value is not None:
        print(f"exact={rep.exact_value} (balanced)")
    elif rep.sufficient_holds:
        print(f"exact={rep.beta} (sufficient condition)")
    if rep.gap_candidates is not None:
        print("gap_candidates=" + ",".join(map(str, sorted(rep.gap_candidates))))
    return EXIT_OK


def cmd_realize(args) -> int:
    first = parse_seq(args.seq)
    out, close = _open_out(args)
    try:
        if args.seq2 is None:
            ug = graphicality.realize_undirected(first)
            for u, v in ug.edges():
                out.write(f"{u} {v}\n")
        else:
            second = parse_seq(args.seq2)
            if len(second) != len(first):
                raise UsageError("d+ and d- must have the same length")
            g = graphicality.realize_digraph(BiSequence(first, second))
            for u, v in g.edges():
                out.write(f"{u} {v}\n")
    finally:
        if close:
            out.close()
    return EXIT_OK


def cmd_rewire(args) -> int:
    g, labels, _ = read_edge_list(args.path)
    stats = {}
    h, steps = rewire.greedy_rewire(g, stats=stats)
    name = labels.label_of
    out, close = _open_out(args)
    try:
        out.write(f"# steps={len(steps)} rho {rho(g)} -> {rho(h)} reseeds={stats['reseeds']}\n")
        for i, st in enumerate(steps, 1):
            rem = " ".join(f"{name(a)}->{name(b)}" for a, b in st.removed)
            add = " ".join(f"{name(a)}->{name(b)}" for a, b in st.added)
            out.write(f"# step {i} type={st.ptype.value} gain={st.gain} removed {rem} added {add}\n")
        out.write(serialize_edge_list(h, labels))
    finally:
        if close:
            out.close()
    return EXIT_OK


def cmd_oracle(args) -> int:
    bs = _bisequence(args)
    limits = _limits(args)
    try:
        value, _ = oracle.max_reciprocity_exact(bs, limits)
        exact = True
    except BudgetExhausted as exc:
        value, exact = exc.rho_lower, False
    count = oracle.count_realizations(bs, limits)
    suffix = "" if exact else " (lower bound: budget exhausted)"
    print(f"rho_max={value} realizations={count}{suffix}")
    return EXIT_OK


def cmd_reduce(args) -> int:
    inst = bounds.TomographyInstance(
        parse_seq(args.r_w), parse_seq(args.r_b), parse_seq(args.s_w), parse_seq(args.s_b))
    bs, target = bounds.tomography_to_bisequence(inst)
    print("d_plus=" + ",".join(map(str, bs.d_plus)))
    print("d_minus=" + ",".join(map(str, bs.d_minus)))
    print(f"beta_target={target}")
    graphic = graphicality.fulkerson_chen_anstee(bs)
    print(f"graphic={_fmt_bool(graphic)}")
    grid = oracle.tomography_feasible_bruteforce(inst)
    print(f"feasible={_fmt_bool(grid is not None)}")
    if grid is not None:
        print("grid=" + "/".join("".join(row) for row in grid))
    if graphic:
        value, witness = oracle.max_reciprocity_exact(bs, _limits(args))
        achieved = value == target
        print(f"rho_max={value} achieved={_fmt_bool(achieved)}")
        if achieved:
            decoded = bounds.decode_tomography_solution(witness, inst)
            print("decoded=" + "/".join("".join(row) for row in decoded))
    else:
        achieved = False
    print(f"equivalent={_fmt_bool((grid is not None) == (graphic and achieved))}")
    return EXIT_OK


def cmd_audit(args) -> int:
    g, labels, _ = read_edge_list(args.path)
    rep = rewire.structural_audit(g, args.audit_sample)
    print(f"three_path_optimal={_fmt_bool(rep.three_path_optimal)}")
    print(f"ga_acyclic={_fmt_bool(rep.ga_acyclic)}")
    print(f"ga_only_disjoint_3cycles={_fmt_bool(rep.ga_only_disjoint_3cycles)}")
    print(f"ga_nontrivial_sccs={len(rep.ga_nontrivial_sccs)}")
    print(f"odd_paths_checked={rep.paths_checked} shortcut_violations={len(rep.shortcut_violations)}")
    print(f"three_cycle_violations={len(rep.three_cycle_violations)}")
    found = rewire.even_cycle_improve(g, args.max_even_cycle)
    print(f"even_cycle_gain={found[1] if found else 0}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                        help="parallel workers for analyze")
    common.add_argument("--oracle-max-nodes", type=int, default=oracle.OracleLimits.max_nodes)
    common.add_argument("--oracle-max-edges", type=int, default=oracle.OracleLimits.max_edges)
    common.add_argument("--max-even-cycle", "--lemma6-max-cycle", dest="max_even_cycle",
                        type=int, default=8,
                        help="longest even cycle tried by the even-cycle improver")
    common.add_argument("--audit-sample", type=int, default=10_000,
                        help="number of length-5 unreciprocated paths checked")

    parser = _Parser(prog="recipro", description="Reciprocity analysis for directed graphs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", parents=[common], help="CSV report for edge-list files")
    p.add_argument("paths", nargs="+", help="edge-list files or directories")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("graphical", parents=[common], help="graphicality verdict")
    p.add_argument("seq", help="degree sequence, or d+ when seq2 is given (comma separated)")
    p.add_argument("seq2", nargs="?", help="d- of a bi-sequence")
    p.set_defaults(func=cmd_graphical)

    for name, func, text in (("bound", cmd_bound, "upper bound and exact special cases"),
                             ("oracle", cmd_oracle, "exhaustive maximum reciprocity")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("d_plus")
        p.add_argument("d_minus")
        p.set_defaults(func=func)

    p = sub.add_parser("realize", parents=[common], help="construct a realization")
    p.add_argument("seq")
    p.add_argument("seq2", nargs="?")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("rewire", parents=[common], help="greedy 3-path rewiring of an edge list")
    p.add_argument("path")
    p.set_defaults(func=cmd_rewire)

    p = sub.add_parser("reduce", parents=[common], help="encode a 3-color tomography instance")
    for arg in ("r_w", "r_b", "s_w", "s_b"):
        p.add_argument(arg)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("audit", parents=[common], help="structural audit of an edge list")
    p.add_argument("path")
    p.set_defaults(func=cmd_audit)
    return parser


def _setup_logging():
    level = os.environ.get("RECIPRO_LOG", "error").lower()
    levels = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}
    logging.basicConfig(level=levels.get(level, logging.ERROR), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


def main(argv=None) -> int:
    _setup_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be >= 1")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"recipro: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ReciproError, OSError, UnicodeDecodeError) as exc:
        print(f"recipro: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
