"""Tokenization, shingling, term histograms, and paired CDF construction.

These are the content representations every content-based measure is
built on: a document becomes a term sequence, a term sequence becomes
either a set of shingle codes or a term-count histogram, and two
histograms become a pair of cumulative distributions over a merged,
lexicographically sorted support.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import EmptyHistogram
from ._util import stable_hash64

TermSequence = tuple[str, ...]

SHINGLE_WINDOW = 10
SHINGLE_CAP = 1000

_SHINGLE_SEP = "\x1f"


@lru_cache(maxsize=None)
def _is_separator(ch: str) -> bool:
    return ch.isspace() or unicodedata.category(ch).startswith("P")


def tokenize(text: str) -> TermSequence:
    """Split text into lowercased terms.

    Splits on Unicode whitespace and punctuation, lowercases with simple
    (one-to-one) case mapping, and drops empty tokens.  No stemming, no
    stopword removal, no language-specific analysis.
    """
    tokens: list[str] = []
    buf: list[str] = []
    for ch in text:
        if _is_separator(ch):
            if buf:
                tokens.append("".join(buf).lower())
                buf.clear()
        else:
            buf.append(ch)
    if buf:
        tokens.append("".join(buf).lower())
    return tuple(tokens)


@dataclass(frozen=True)
class ShingleSet:
    """Distinct shingle codes summarizing a document.

    A shingle is a window of `window` consecutive terms encoded as a
    stable 64-bit integer; only the first `cap` distinct shingles (in
    first-occurrence order) are retained.
    """

    shingles: frozenset[int]
    window: int
    cap: int

    def __len__(self) -> int:
        return len(self.shingles)


def shingle_code(terms: Sequence[str]) -> int:
    """Encode one window of terms as a stable 64-bit integer."""
    return stable_hash64(_SHINGLE_SEP.join(terms))


def shingle(seq: Sequence[str], window: int = SHINGLE_WINDOW, cap: int = SHINGLE_CAP) -> ShingleSet:
    """Slide a window of consecutive terms over the sequence with stride 1.

    Duplicate windows are dropped (multiplicity is ignored) and collection
    stops after `cap` distinct shingles.  A non-empty sequence shorter
    than the window yields a single whole-sequence shingle; an empty
    sequence yields an empty set.
    """
    if window < 1:
        raise ValueError(f"shingle window must be >= 1, got {window}")
    n = len(seq)
    seen: set[int] = set()
    if 0 < n < window:
        seen.add(shingle_code(seq))
    else:
        for i in range(n - window + 1):
            seen.add(shingle_code(seq[i : i + window]))
            if len(seen) >= cap:
                break
    return ShingleSet(shingles=frozenset(seen), window=window, cap=cap)


@dataclass(frozen=True)
class TermHistogram:
    """Term -> positive count map with its precomputed total."""

    counts: dict[str, int]
    total: int

    def __post_init__(self):
        assert all(c > 0 for c in self.counts.values()), "zero counts are not stored"
        assert self.total == sum(self.counts.values())

    @property
    def vocabulary(self) -> frozenset[str]:
        return frozenset(self.counts)


def term_histogram(*seqs: Sequence[str]) -> TermHistogram:
    """Count term occurrences over the concatenation of the input sequences."""
    counts: dict[str, int] = {}
    for seq in seqs:
        for term in seq:
            counts[term] = counts.get(term, 0) + 1
    return TermHistogram(counts=counts, total=sum(counts.values()))


@dataclass(frozen=True)
class PairedCdf:
    """Two cumulative distributions aligned on a merged sorted support.

    Both arrays are non-decreasing and end at exactly 1; terms absent from
    one histogram contribute zero mass but still occupy a support position.
    """

    support: tuple[str, ...]
    f_sigma: np.ndarray
    f_pi: np.ndarray


def aligned_counts(h1: TermHistogram, h2: TermHistogram) -> tuple[tuple[str, ...], np.ndarray, np.ndarray]:
    """Integer count vectors for both histograms over the sorted merged support."""
    support = tuple(sorted(h1.vocabulary | h2.vocabulary))
    c1 = np.array([h1.counts.get(t, 0) for t in support], dtype=np.int64)
    c2 = np.array([h2.counts.get(t, 0) for t in support], dtype=np.int64)
    return support, c1, c2


def paired_cdf(h1: TermHistogram, h2: TermHistogram) -> PairedCdf:
    """Build the two aligned CDFs via a lexicographic merge of both vocabularies."""
    if h1.total == 0 or h2.total == 0:
        raise EmptyHistogram("cannot build a CDF from an empty histogram")
    support, c1, c2 = aligned_counts(h1, h2)
    f1 = np.cumsum(c1) / h1.total
    f2 = np.cumsum(c2) / h2.total
    return PairedCdf(support=support, f_sigma=f1, f_pi=f2)


def shingle_documents(bodies: Iterable[str], window: int = SHINGLE_WINDOW, cap: int = SHINGLE_CAP) -> frozenset[int]:
    """Union of per-document shingle sets over several raw text bodies."""
    out: set[int] = set()
    for body in bodies:
        out |= shingle(tokenize(body), window=window, cap=cap).shingles
    return frozenset(out)
