"""Command-line harness.

Subcommands: compare, corpus, perturb, dcg, generate, sample.  Every
command is deterministic for fixed inputs and --seed and writes
comma-separated tables (plus JSONL streams where a report has nested
structure).  Pass --figures DIR to also render PNG charts of the report
next to the delimited output.

Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path

from .corpus import load_judgments_file, load_snapshot_file
from .distsim import DEFAULT_RESAMPLES
from .errors import SerpsimError, UsageError
from .generate import generate_corpus, load_profile
from .normalize import DUP_MODES
from .perturb import Mode, sweep
from .ranksim import WeightKind
from .report import (
    DCG_COLUMNS,
    RDCG_BIN_LABELS,
    compare_lists,
    corpus_report,
    dcg_table,
    reports_csv,
    reports_jsonl,
    rows_csv,
)
from .sampling import StrataConfig, load_query_log_file, stratified_sample

log = logging.getLogger("serpsim")


class _Parser(argparse.ArgumentParser):
    """argparse parser that reports usage problems as exit code 1."""

    def error(self, message):
        raise UsageError(message)


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")


def _sibling(out: str | None, suffix: str) -> Path | None:
    if out is None:
        return None
    path = Path(out)
    return path.with_name(path.stem + suffix)


def _cmd_compare(args) -> int:
    left = load_snapshot_file(args.left, top_n=args.top)
    right = load_snapshot_file(args.right, top_n=args.top)
    judgments = load_judgments_file(args.judgments) if args.judgments else None
    report = compare_lists(
        left, right, top_n=args.top, seed=args.seed, dupmode=args.dupmode,
        resamples=args.resamples, judgments=judgments,
    )
    _write(reports_csv([report]), args.out)
    jsonl_path = _sibling(args.out, ".jsonl")
    if jsonl_path is not None:
        jsonl_path.write_text(reports_jsonl([report]), encoding="utf-8")
    return 0


def _cmd_corpus(args) -> int:
    judgments = load_judgments_file(args.judgments) if args.judgments else None
    histogram, reports = corpus_report(
        args.dir, top_n=args.top, seed=args.seed, dupmode=args.dupmode,
        resamples=args.resamples, judgments=judgments,
    )
    _write(histogram.csv(), args.out)
    queries_csv = _sibling(args.out, "_queries.csv")
    if queries_csv is not None:
        queries_csv.write_text(reports_csv(reports), encoding="utf-8")
        _sibling(args.out, "_queries.jsonl").write_text(reports_jsonl(reports), encoding="utf-8")
    else:
        sys.stdout.write("\n" + reports_csv(reports))
    if args.figures:
        from .figures import render_overlap_histogram

        render_overlap_histogram(histogram, Path(args.figures) / "corpus_histogram.png")
    return 0


def _cmd_perturb(args) -> int:
    mode = Mode(args.mode)
    kinds = (
        (WeightKind(args.weights),)
        if args.weights
        else (WeightKind.IOTA, WeightKind.DCGW)
    )
    rows = sweep(mode, list_len=args.len, weight_kinds=kinds)
    columns = ["mode", "list_len", "common_count", "block_position"]
    columns += [c for c in rows[0] if c not in columns]
    _write(rows_csv(columns, rows), args.out)
    if args.figures:
        from .figures import render_perturbation_sweep

        render_perturbation_sweep(rows, Path(args.figures) / f"perturb_{mode.value}.png")
    return 0


def _cmd_dcg(args) -> int:
    judgments = load_judgments_file(args.judgments)
    rows, low_overlap_bins = dcg_table(
        args.dir, judgments, n=args.n, top_n=args.top, seed=args.seed,
        dupmode=args.dupmode, resamples=args.resamples,
    )
    _write(rows_csv(DCG_COLUMNS, rows), args.out)
    hist_path = _sibling(args.out, "_rdcg_hist.csv")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["bin", "count"])
    for label, count in zip(RDCG_BIN_LABELS, low_overlap_bins):
        writer.writerow([label, str(count)])
    if hist_path is not None:
        hist_path.write_text(buf.getvalue(), encoding="utf-8")
    else:
        sys.stdout.write("\n" + buf.getvalue())
    if args.figures:
        from .figures import render_dcg_scatter, render_rdcg_histogram

        render_dcg_scatter(rows, Path(args.figures) / "dcg_scatter.png")
        render_rdcg_histogram(low_overlap_bins, Path(args.figures) / "dcg_rdcg_hist.png")
    return 0


def _cmd_generate(args) -> int:
    profile = load_profile(args.profile)
    ground_truth = generate_corpus(profile, seed=args.seed, out_dir=args.out)
    log.info("wrote %d query pairs under %s", len(ground_truth), args.out)
    return 0


def _cmd_sample(args) -> int:
    query_log = load_query_log_file(args.log)
    cfg = StrataConfig(per_stratum=args.per_stratum, seed=args.seed, hi=args.hi, lo=args.lo)
    records = stratified_sample(query_log, args.market, cfg)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["id", "text", "market", "stratum", "timestamp"])
    for rec in records:
        writer.writerow([rec.id, rec.text, rec.market, rec.frequency_stratum.value, str(rec.timestamp)])
    _write(buf.getvalue(), args.out)
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="serpsim", description=__doc__)
    sub = parser.add_subparsers(dest="command", metavar="command")

    def common(p, with_figures=True):
        p.add_argument("--top", type=int, default=10, help="rank cutoff (default 10)")
        p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
        p.add_argument("--out", default=None, help="output CSV path (default stdout)")
        p.add_argument("--resamples", type=int, default=DEFAULT_RESAMPLES,
                       help="permutation resamples per p-value")
        p.add_argument("--dupmode", choices=DUP_MODES, default="consensus",
                       help="cross-list duplicate test used by URL normalization")
        if with_figures:
            p.add_argument("--figures", default=None, metavar="DIR",
                           help="also render PNG figures into DIR")

    p = sub.add_parser("compare", help="compare two snapshot files")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--judgments", default=None)
    common(p, with_figures=False)
    p.set_defaults(fn=_cmd_compare)

    p = sub.add_parser("corpus", help="per-query reports and overlap histogram for a snapshot directory")
    p.add_argument("--dir", required=True)
    p.add_argument("--judgments", default=None)
    common(p)
    p.set_defaults(fn=_cmd_corpus)

    p = sub.add_parser("perturb", help="planted-block perturbation sweep of the rank measures")
    p.add_argument("--mode", required=True, choices=[m.value for m in Mode])
    p.add_argument("--weights", default=None, choices=[WeightKind.IOTA.value, WeightKind.DCGW.value],
                   help="restrict to one weighting (default: both)")
    p.add_argument("--len", type=int, default=10, help="list length (default 10)")
    p.add_argument("--out", default=None)
    p.add_argument("--figures", default=None, metavar="DIR")
    p.set_defaults(fn=_cmd_perturb)

    p = sub.add_parser("dcg", help="join relative DCG with the similarity measures")
    p.add_argument("--judgments", required=True)
    p.add_argument("--dir", required=True)
    p.add_argument("--n", type=int, default=5, help="DCG rank cutoff (default 5)")
    common(p)
    p.set_defaults(fn=_cmd_dcg)

    p = sub.add_parser("generate", help="write a synthetic corpus with planted ground truth")
    p.add_argument("--profile", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True, help="corpus output directory")
    p.set_defaults(fn=_cmd_generate)

    p = sub.add_parser("sample", help="stratified query sample from a query log")
    p.add_argument("--log", required=True)
    p.add_argument("--market", required=True)
    p.add_argument("--per-stratum", type=int, required=True, dest="per_stratum")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--hi", type=int, default=1000, help="highly-frequent boundary")
    p.add_argument("--lo", type=int, default=10, help="infrequent boundary")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_sample)

    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("a command is required (see --help)")
        return args.fn(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except SerpsimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
