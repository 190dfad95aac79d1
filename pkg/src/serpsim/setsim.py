"""Jaccard ratio over finite sets, specialized to URL sets and shingle sets."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .corpus import OMEGA, ResultList
from .errors import MissingDocument
from .textpipe import SHINGLE_CAP, SHINGLE_WINDOW, shingle, tokenize


@dataclass(frozen=True)
class JaccardScore:
    value: float
    intersection_size: int
    union_size: int


def jaccard(a: Iterable, b: Iterable) -> JaccardScore:
    """Intersection-over-union of two finite sets.

    Two empty sets score 1 (identical by vacuity), so duplicate detection
    on two empty documents reports equality.
    """
    sa, sb = set(a), set(b)
    inter = len(sa & sb)
    union = len(sa | sb)
    value = 1.0 if union == 0 else inter / union
    return JaccardScore(value=value, intersection_size=inter, union_size=union)


def j_url(a: ResultList, b: ResultList, n: int = 10) -> JaccardScore:
    """Jaccard ratio of the URL names in the top-n entries of each list.

    Placeholder entries left behind by list normalization are excluded.
    A list shorter than n contributes all of its entries.
    """
    ua = {e.url for e in a.top(n) if e.url != OMEGA}
    ub = {e.url for e in b.top(n) if e.url != OMEGA}
    return jaccard(ua, ub)


def _list_shingles(results: ResultList, n: int, window: int, cap: int) -> set[int]:
    out: set[int] = set()
    for entry in results.top(n):
        if entry.doc is None:
            raise MissingDocument(results.query_id, entry.url)
        out |= shingle(tokenize(entry.doc.body), window=window, cap=cap).shingles
    return out


def j_term(
    a: ResultList,
    b: ResultList,
    n: int = 10,
    window: int = SHINGLE_WINDOW,
    cap: int = SHINGLE_CAP,
) -> JaccardScore:
    """Jaccard ratio of the unions of per-document shingle sets of the
    top-n entries of each list.  Every compared entry must carry a
    document body."""
    return jaccard(
        _list_shingles(a, n, window, cap),
        _list_shingles(b, n, window, cap),
    )
