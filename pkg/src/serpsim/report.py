"""Pairwise comparison reports, corpus histograms, and DCG join tables.

This is the measurement orchestration behind the CLI: load two
snapshots, normalize their URL naming, run every measure, and emit one
flat record per query.  Numeric fields that cannot be computed (for
example a content measure over an entry with no fetched document) are
reported as absent together with a reason code, never silently dropped.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from bisect import bisect_left
from dataclasses import dataclass, field
from pathlib import Path

from ._util import derive_seed, fmt_num, stable_hash64
from .corpus import (
    OMEGA,
    JudgmentSet,
    ResultList,
    load_snapshot_file,
)
from .distsim import DEFAULT_RESAMPLES, DistanceResult, Measure, phi, suite_all
from .errors import EmptyHistogram, MissingDocument, NoJudgedQueries, NoPairs
from .normalize import NormalizedPair, normalize_lists
from .quality import dcg, relative_dcg
from .ranksim import IOTA, footrule, kendall
from .setsim import j_term, j_url
from .textpipe import paired_cdf, term_histogram, tokenize

log = logging.getLogger("serpsim")

CONTENT_NS = (1, 5, 10)

# Overlap histogram bins: a bin for exactly 0 plus ten width-0.1 intervals.
_BIN_EDGES = [i / 10 for i in range(1, 11)]
BIN_LABELS = ("0",) + tuple(f"({(i - 1) / 10:.1f},{i / 10:.1f}]" for i in range(1, 11))


def bin_index(value: float) -> int:
    """Histogram bin for a Jaccard value in [0, 1]; bin 0 holds exactly 0."""
    if value == 0:
        return 0
    return bisect_left(_BIN_EDGES, value - 1e-12) + 1


@dataclass
class MeasureReport:
    """Every measure computed for one (query, engine pair)."""

    query_id: str
    engine_left: str
    engine_right: str
    market: str
    top_n: int
    j_url: float
    s_url: float
    k_url: float
    omega_left: int
    omega_right: int
    intersection_before: int
    intersection_after: int
    j_term: dict[int, float | None] = field(default_factory=dict)
    phi_term: dict[int, float | None] = field(default_factory=dict)
    suite: tuple[DistanceResult, ...] | None = None
    r_dcg: float | None = None
    reasons: dict[str, str] = field(default_factory=dict)


def _content_histogram(results: ResultList, n: int):
    sequences = []
    for entry in results.top(n):
        if entry.doc is None:
            raise MissingDocument(results.query_id, entry.url)
        sequences.append(tokenize(entry.doc.body))
    return term_histogram(*sequences)


def _rank_elements(results: ResultList, n: int) -> list[str]:
    return [e.url for e in results.top(n) if e.url != OMEGA]


def compare_lists(
    left: ResultList,
    right: ResultList,
    top_n: int = 10,
    seed: int = 0,
    dupmode: str = "consensus",
    resamples: int = DEFAULT_RESAMPLES,
    judgments: JudgmentSet | None = None,
    dcg_n: int = 5,
    content_ns: tuple[int, ...] = CONTENT_NS,
) -> MeasureReport:
    """Run the full measure stack over one pair of result lists.

    URL-based measures (Jaccard, footrule, Kendall) are computed on the
    normalized lists with placeholder entries excluded; content-based
    measures need no URL normalization and run on the lists as loaded.
    The unweighted (constant) weighting is used for the rank measures.
    """
    normalized: NormalizedPair = normalize_lists(
        left, right, dupmode=dupmode, resamples=resamples, seed=seed
    )
    before = len(set(left.urls()) & set(right.urls()))
    left_urls = {u for u in normalized.sigma_tilde.urls() if u != OMEGA}
    right_urls = {u for u in normalized.pi_tilde.urls() if u != OMEGA}
    after = len(left_urls & right_urls)

    sigma_elems = _rank_elements(normalized.sigma_tilde, top_n)
    pi_elems = _rank_elements(normalized.pi_tilde, top_n)
    report = MeasureReport(
        query_id=left.query_id,
        engine_left=left.engine,
        engine_right=right.engine,
        market=left.market,
        top_n=top_n,
        j_url=j_url(normalized.sigma_tilde, normalized.pi_tilde, top_n).value,
        s_url=footrule(sigma_elems, pi_elems, IOTA).normalized,
        k_url=kendall(sigma_elems, pi_elems, IOTA).normalized,
        omega_left=sum(1 for u in normalized.sigma_tilde.urls() if u == OMEGA),
        omega_right=sum(1 for u in normalized.pi_tilde.urls() if u == OMEGA),
        intersection_before=before,
        intersection_after=after,
    )

    for n in content_ns:
        try:
            report.j_term[n] = j_term(left, right, n).value
        except MissingDocument as exc:
            report.j_term[n] = None
            report.reasons[f"j_term_{n}"] = f"missing_document:{exc.url}"
        try:
            h_left = _content_histogram(left, n)
            h_right = _content_histogram(right, n)
            report.phi_term[n] = phi(paired_cdf(h_left, h_right))
        except MissingDocument as exc:
            report.phi_term[n] = None
            report.reasons[f"phi_term_{n}"] = f"missing_document:{exc.url}"
        except EmptyHistogram:
            report.phi_term[n] = None
            report.reasons[f"phi_term_{n}"] = "empty_documents"

    try:
        h_left = _content_histogram(left, top_n)
        h_right = _content_histogram(right, top_n)
        lo, hi = sorted((stable_hash64(repr(sorted(h_left.counts.items()))),
                         stable_hash64(repr(sorted(h_right.counts.items())))))
        report.suite = suite_all(h_left, h_right, resamples=resamples, seed=derive_seed(seed, lo, hi))
    except MissingDocument as exc:
        report.suite = None
        report.reasons["suite"] = f"missing_document:{exc.url}"
    except EmptyHistogram:
        report.suite = None
        report.reasons["suite"] = "empty_documents"

    if judgments is None:
        report.reasons["r_dcg"] = "no_judgments"
    elif left.query_id not in judgments.query_ids():
        report.reasons["r_dcg"] = "query_not_judged"
    else:
        report.r_dcg = relative_dcg(dcg(left, judgments, dcg_n), dcg(right, judgments, dcg_n))
    return report


# ---------------------------------------------------------------------------
# flat renderings

def report_columns(content_ns: tuple[int, ...] = CONTENT_NS) -> list[str]:
    cols = [
        "query_id", "engine_left", "engine_right", "market", "top_n",
        "j_url", "s_url", "k_url",
        "omega_left", "omega_right", "intersection_before", "intersection_after",
    ]
    cols += [f"j_term_{n}" for n in content_ns]
    cols += [f"phi_term_{n}" for n in content_ns]
    for m in Measure:
        cols += [f"{m.value}_distance", f"{m.value}_p"]
    cols += ["r_dcg", "reasons"]
    return cols


def _reason_cell(reasons: dict[str, str]) -> str:
    return ";".join(f"{k}={v}" for k, v in sorted(reasons.items()))


def report_row(report: MeasureReport, content_ns: tuple[int, ...] = CONTENT_NS) -> list[str]:
    row = [
        report.query_id, report.engine_left, report.engine_right, report.market,
        str(report.top_n),
        fmt_num(report.j_url), fmt_num(report.s_url), fmt_num(report.k_url),
        str(report.omega_left), str(report.omega_right),
        str(report.intersection_before), str(report.intersection_after),
    ]
    row += [fmt_num(report.j_term.get(n)) for n in content_ns]
    row += [fmt_num(report.phi_term.get(n)) for n in content_ns]
    by_measure = {r.measure: r for r in report.suite} if report.suite else {}
    for m in Measure:
        r = by_measure.get(m)
        row += [fmt_num(r.distance) if r else "", fmt_num(r.p_value) if r else ""]
    row += [fmt_num(report.r_dcg), _reason_cell(report.reasons)]
    return row


def report_dict(report: MeasureReport) -> dict:
    """JSON-ready rendering with explicit nulls for absent fields."""
    out = {
        "query_id": report.query_id,
        "engine_left": report.engine_left,
        "engine_right": report.engine_right,
        "market": report.market,
        "top_n": report.top_n,
        "j_url": report.j_url,
        "s_url": report.s_url,
        "k_url": report.k_url,
        "omega_left": report.omega_left,
        "omega_right": report.omega_right,
        "intersection_before": report.intersection_before,
        "intersection_after": report.intersection_after,
        "j_term": {str(n): v for n, v in report.j_term.items()},
        "phi_term": {str(n): v for n, v in report.phi_term.items()},
        "suite": (
            {
                r.measure.value: {"distance": r.distance, "p_value": r.p_value, "gated": r.gated}
                for r in report.suite
            }
            if report.suite is not None
            else None
        ),
        "r_dcg": report.r_dcg,
        "reasons": dict(sorted(report.reasons.items())),
    }
    return out


def reports_csv(reports: list[MeasureReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(report_columns())
    for r in reports:
        writer.writerow(report_row(r))
    return buf.getvalue()


def reports_jsonl(reports: list[MeasureReport]) -> str:
    return "".join(json.dumps(report_dict(r), sort_keys=True) + "\n" for r in reports)


# ---------------------------------------------------------------------------
# corpus runs

@dataclass
class HistogramReport:
    """Counts of queries per overlap bin, overall and per market."""

    counts: list[int]
    per_market: dict[str, list[int]]
    total: int

    def csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["market", "bin", "count"])
        for i, label in enumerate(BIN_LABELS):
            writer.writerow(["ALL", label, str(self.counts[i])])
        for market in sorted(self.per_market):
            for i, label in enumerate(BIN_LABELS):
                writer.writerow([market, label, str(self.per_market[market][i])])
        return buf.getvalue()


def build_histogram(values_by_market: list[tuple[str, float]]) -> HistogramReport:
    counts = [0] * len(BIN_LABELS)
    per_market: dict[str, list[int]] = {}
    for market, value in values_by_market:
        idx = bin_index(value)
        counts[idx] += 1
        per_market.setdefault(market, [0] * len(BIN_LABELS))[idx] += 1
    return HistogramReport(counts=counts, per_market=per_market, total=len(values_by_market))


def discover_pairs(directory: str | Path, top_n: int = 10) -> list[tuple[ResultList, ResultList]]:
    """Load every comparable snapshot pair under a directory.

    Snapshots are grouped by query_id; a query contributes a pair only when
    exactly two engines are present (others are skipped with a warning).
    Engines are ordered by name so output does not depend on file order.
    """
    directory = Path(directory)
    by_query: dict[str, list[ResultList]] = {}
    for path in sorted(directory.rglob("*.jsonl")):
        if path.name == "ground_truth.jsonl":
            continue
        try:
            snapshot = load_snapshot_file(path, top_n=top_n)
        except Exception as exc:  # noqa: BLE001 - skip non-snapshot files
            log.warning("skipping %s: %s", path, exc)
            continue
        by_query.setdefault(snapshot.query_id, []).append(snapshot)

    pairs = []
    for query_id in sorted(by_query):
        group = sorted(by_query[query_id], key=lambda s: s.engine)
        if len(group) != 2:
            log.warning("query %s has %d snapshots, need exactly 2; skipped", query_id, len(group))
            continue
        pairs.append((group[0], group[1]))
    if not pairs:
        raise NoPairs(f"no comparable snapshot pairs under {directory}")
    return pairs


def corpus_report(
    directory: str | Path,
    top_n: int = 10,
    seed: int = 0,
    dupmode: str = "consensus",
    resamples: int = DEFAULT_RESAMPLES,
    judgments: JudgmentSet | None = None,
) -> tuple[HistogramReport, list[MeasureReport]]:
    """Compare every snapshot pair under a directory and bin the URL overlap.

    Per-query work is independent (safe to farm out to workers); results
    are keyed and ordered by query_id, so output never depends on schedule
    or file discovery order.
    """
    pairs = discover_pairs(directory, top_n=top_n)
    reports = [
        compare_lists(
            left, right, top_n=top_n, seed=seed, dupmode=dupmode,
            resamples=resamples, judgments=judgments,
        )
        for left, right in pairs
    ]
    histogram = build_histogram([(r.market, r.j_url) for r in reports])
    return histogram, reports


# ---------------------------------------------------------------------------
# DCG join

DCG_COLUMNS = [
    "query_id", "engine_left", "engine_right",
    "dcg_left", "dcg_right", "r_dcg",
    "j_url_5", "s_url_5", "j_term_10", "phi_term_10",
]

RDCG_BIN_LABELS = tuple(
    f"[{-1 + 0.2 * i:.1f},{-1 + 0.2 * (i + 1):.1f}{']' if i == 9 else ')'}" for i in range(10)
)


def rdcg_bin_index(value: float) -> int:
    idx = int((value + 1.0) / 0.2)
    return min(max(idx, 0), 9)


def dcg_table(
    directory: str | Path,
    judgments: JudgmentSet,
    n: int = 5,
    top_n: int = 10,
    seed: int = 0,
    dupmode: str = "consensus",
    resamples: int = DEFAULT_RESAMPLES,
) -> tuple[list[dict], list[int]]:
    """Join relative DCG with the similarity measures per judged query.

    Returns the scatter-ready rows plus the distribution of relative DCG
    restricted to low URL overlap (Jaccard below 0.2).
    """
    pairs = discover_pairs(directory, top_n=top_n)
    judged = judgments.query_ids()
    rows: list[dict] = []
    low_overlap_bins = [0] * 10
    for left, right in pairs:
        if left.query_id not in judged:
            continue
        normalized = normalize_lists(left, right, dupmode=dupmode, resamples=resamples, seed=seed)
        dcg_left = dcg(left, judgments, n)
        dcg_right = dcg(right, judgments, n)
        r = relative_dcg(dcg_left, dcg_right)
        overlap5 = j_url(normalized.sigma_tilde, normalized.pi_tilde, 5).value
        s5 = footrule(
            _rank_elements(normalized.sigma_tilde, 5),
            _rank_elements(normalized.pi_tilde, 5),
            IOTA,
        ).normalized
        try:
            jt10 = j_term(left, right, 10).value
        except MissingDocument:
            jt10 = None
        try:
            pt10 = phi(paired_cdf(_content_histogram(left, 10), _content_histogram(right, 10)))
        except (MissingDocument, EmptyHistogram):
            pt10 = None
        rows.append(
            {
                "query_id": left.query_id,
                "engine_left": left.engine,
                "engine_right": right.engine,
                "dcg_left": dcg_left,
                "dcg_right": dcg_right,
                "r_dcg": r,
                "j_url_5": overlap5,
                "s_url_5": s5,
                "j_term_10": jt10,
                "phi_term_10": pt10,
            }
        )
        if overlap5 < 0.2:
            low_overlap_bins[rdcg_bin_index(r)] += 1
    if not rows:
        raise NoJudgedQueries("the judgment file covers no query in the snapshot set")
    return rows, low_overlap_bins


def rows_csv(columns: list[str], rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([fmt_num(row[c]) if isinstance(row[c], float) else ("" if row[c] is None else str(row[c])) for c in columns])
    return buf.getvalue()
