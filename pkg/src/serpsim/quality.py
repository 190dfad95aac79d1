"""Discounted cumulative gain over judged results and the signed relative
DCG between two engines."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .corpus import Grade, JudgmentSet, ResultList


@dataclass(frozen=True)
class DcgScore:
    per_query: dict[str, float]
    mean: float
    n: int


def gain(judgment: Grade) -> float:
    """Exponential gain 2^(j-1) - 1 for grade level j (Bad..Perfect -> 0..15)."""
    return float(2 ** (judgment.value - 1) - 1)


def dcg(results: ResultList, judgments: JudgmentSet, n: int = 5) -> float:
    """Gain discounted by log2(1 + rank), summed over the top-n results.

    Unjudged URLs contribute zero gain, keeping engines with partial
    judgment coverage comparable.
    """
    total = 0.0
    for entry in results.top(n):
        grade = judgments.get(results.query_id, entry.url)
        if grade is not None:
            total += gain(grade) / math.log2(1 + entry.rank)
    return total


def dcg_scores(lists: dict[str, ResultList], judgments: JudgmentSet, n: int = 5) -> DcgScore:
    """Per-query DCG for one engine's lists keyed by query_id, plus the mean."""
    per_query = {qid: dcg(rl, judgments, n) for qid, rl in sorted(lists.items())}
    mean = sum(per_query.values()) / len(per_query) if per_query else 0.0
    return DcgScore(per_query=per_query, mean=mean, n=n)


def relative_dcg(dcg1: float, dcg2: float) -> float:
    """Signed difference scaled by the larger value, in [-1, 1].

    Defined as 0 when both inputs are 0.
    """
    top = max(dcg1, dcg2)
    if top == 0.0:
        return 0.0
    return (dcg1 - dcg2) / top
