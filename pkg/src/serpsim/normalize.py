"""Cross-list URL normalization: rebind duplicate documents to one
canonical name within and across two result lists, then pad subsequent
within-list duplicates with the omega placeholder.

Different engines may name the same document differently, so raw URL
string comparison understates the overlap of two result lists.  This
module rewrites both lists over a shared naming: within a list an item
is a duplicate when its shingle Jaccard ratio against another item
reaches the threshold; across lists (second list against the first) the
looser consensus vote of the distribution measures decides, with
priority given to names from the first list.  Once rewritten, any
repeat of a name within a list is replaced by the omega placeholder,
which keeps its ranking position but never takes part in a comparison
again, penalizing engines that emit duplicates.

Entries without a document body degrade to exact URL string matching.
"""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import OMEGA, ResultEntry, ResultList
from .distsim import CONSENSUS_ALPHA, DEFAULT_RESAMPLES, consensus_duplicate
from .setsim import jaccard
from .textpipe import SHINGLE_CAP, SHINGLE_WINDOW, shingle, tokenize

SHINGLE_DUPLICATE_THRESHOLD = 0.5

DUP_MODES = ("consensus", "shingle")


@dataclass(frozen=True)
class NormalizedPair:
    """Both rewritten lists plus the binding from original positions.

    Output lists have the same lengths as the inputs; every non-omega name
    appears at most once per list, and omega entries sit exactly where a
    within-list duplicate was flagged.  The binding maps ("sigma"|"pi",
    original rank) to the final name (or omega).
    """

    sigma_tilde: ResultList
    pi_tilde: ResultList
    binding: dict[tuple[str, int], str]


def duplicate_by_shingles(
    d1,
    d2,
    threshold: float = SHINGLE_DUPLICATE_THRESHOLD,
    window: int = SHINGLE_WINDOW,
    cap: int = SHINGLE_CAP,
) -> bool:
    """True when two documents share at least `threshold` of their shingles."""
    s1 = shingle(tokenize(d1.body), window=window, cap=cap).shingles
    s2 = shingle(tokenize(d2.body), window=window, cap=cap).shingles
    return jaccard(s1, s2).value >= threshold


class _Matcher:
    """Duplicate predicates with per-call caching of shingles and votes."""

    def __init__(self, threshold, window, cap, dupmode, alpha, resamples, seed):
        self.threshold = threshold
        self.window = window
        self.cap = cap
        self.dupmode = dupmode
        self.alpha = alpha
        self.resamples = resamples
        self.seed = seed
        self._shingles: dict[str, frozenset[int]] = {}
        self._votes: dict[tuple[str, str], bool] = {}

    def _shingles_of(self, entry: ResultEntry) -> frozenset[int]:
        body = entry.doc.body
        got = self._shingles.get(body)
        if got is None:
            got = shingle(tokenize(body), window=self.window, cap=self.cap).shingles
            self._shingles[body] = got
        return got

    def by_shingles(self, a: ResultEntry, b: ResultEntry) -> bool:
        if a.doc is None or b.doc is None:
            return a.url == b.url
        return jaccard(self._shingles_of(a), self._shingles_of(b)).value >= self.threshold

    def cross(self, a: ResultEntry, b: ResultEntry) -> bool:
        if self.dupmode == "shingle":
            return self.by_shingles(a, b)
        if a.doc is None or b.doc is None:
            return a.url == b.url
        key = (a.doc.body, b.doc.body) if a.doc.body <= b.doc.body else (b.doc.body, a.doc.body)
        got = self._votes.get(key)
        if got is None:
            got = consensus_duplicate(
                a.doc, b.doc, alpha=self.alpha, resamples=self.resamples, seed=self.seed
            ).is_duplicate
            self._votes[key] = got
        return got


def _pad_duplicates(source: ResultList, names: list[str]) -> ResultList:
    entries = []
    seen: set[str] = set()
    for entry, name in zip(source.entries, names):
        if name == OMEGA or name in seen:
            entries.append(ResultEntry(rank=entry.rank, url=OMEGA, doc=None))
        else:
            seen.add(name)
            entries.append(ResultEntry(rank=entry.rank, url=name, doc=entry.doc))
    return ResultList(
        query_id=source.query_id,
        engine=source.engine,
        entries=tuple(entries),
        fetched_at=source.fetched_at,
        market=source.market,
    )


def normalize_lists(
    sigma: ResultList,
    pi: ResultList,
    shingle_threshold: float = SHINGLE_DUPLICATE_THRESHOLD,
    *,
    dupmode: str = "consensus",
    alpha: float = CONSENSUS_ALPHA,
    resamples: int = DEFAULT_RESAMPLES,
    seed: int = 0,
    window: int = SHINGLE_WINDOW,
    cap: int = SHINGLE_CAP,
) -> NormalizedPair:
    """Rewrite two result lists over a shared canonical naming.

    Pass 1 scans the first list top-down and rebinds every item after the
    first to the earliest previously kept name whose document is a shingle
    duplicate of it.  Pass 2 scans the second list top-down; candidate
    names come from within-list shingle duplicates and from cross-list
    matches against the first list (consensus vote by default, shingles
    when dupmode="shingle"), preferring the earliest matching name of the
    first list, then of the second.  Finally any repeat of a name within a
    list is replaced by the omega placeholder.

    Deterministic for fixed inputs and seed; omega entries pass through
    untouched, so the function is idempotent on its own output.
    """
    if dupmode not in DUP_MODES:
        raise ValueError(f"dupmode must be one of {DUP_MODES}, got {dupmode!r}")
    matcher = _Matcher(shingle_threshold, window, cap, dupmode, alpha, resamples, seed)

    sigma_names: list[str] = []
    for idx, entry in enumerate(sigma.entries):
        if entry.url == OMEGA:
            sigma_names.append(OMEGA)
            continue
        if idx == 0:
            sigma_names.append(entry.url)
            continue
        image = {v.url for v in sigma.entries if v.url != OMEGA and matcher.by_shingles(v, entry)}
        name = next((nm for nm in sigma_names if nm != OMEGA and nm in image), None)
        sigma_names.append(name if name is not None else entry.url)

    pi_names: list[str] = []
    for entry in pi.entries:
        if entry.url == OMEGA:
            pi_names.append(OMEGA)
            continue
        image = {v.url for v in pi.entries if v.url != OMEGA and matcher.by_shingles(v, entry)}
        image |= {v.url for v in sigma.entries if v.url != OMEGA and matcher.cross(v, entry)}
        name = next((nm for nm in sigma_names if nm != OMEGA and nm in image), None)
        if name is None:
            name = next((nm for nm in pi_names if nm != OMEGA and nm in image), None)
        pi_names.append(name if name is not None else entry.url)

    sigma_tilde = _pad_duplicates(sigma, sigma_names)
    pi_tilde = _pad_duplicates(pi, pi_names)
    binding = {("sigma", e.rank): e.url for e in sigma_tilde.entries}
    binding.update({("pi", e.rank): e.url for e in pi_tilde.entries})
    return NormalizedPair(sigma_tilde=sigma_tilde, pi_tilde=pi_tilde, binding=binding)
