"""Distribution distances over term histograms: a CDF discrepancy measure
with a variance-like denominator, its integral analog, and eight classic
two-sample distances, each paired with a pooled-permutation p-value, a
low-overlap gate, and a majority-vote duplicate predicate.

All distances are zero for identical inputs and symmetric as implemented.
p-values are deterministic given (inputs, seed): resampling uses a seeded
generator and an internal canonical ordering of the two histograms, so
swapping the arguments never changes any result.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from ._util import derive_seed, stable_hash64
from .corpus import DocumentText
from .errors import EmptyHistogram
from .setsim import jaccard
from .textpipe import PairedCdf, TermHistogram, aligned_counts, term_histogram, tokenize

OVERLAP_GATE_THRESHOLD = 0.30
CONSENSUS_ALPHA = 0.05
CONSENSUS_MAJORITY = 4  # duplicate iff votes exceed this
DEFAULT_RESAMPLES = 199

_LOG_FLOOR = 1e-10
_TIE_TOLERANCE = 1e-12


class Measure(Enum):
    PHI = "phi"
    XI = "xi"
    KOLMOGOROV_SMIRNOV = "ks"
    KULLBACK_LEIBLER = "kl"
    JENSEN_SHANNON = "js"
    CHI_SQUARE = "chi2"
    HELLINGER = "hellinger"
    CRAMER_VON_MISES = "cvm"
    EUCLID = "euclid"
    CANBERRA = "canberra"


@dataclass(frozen=True)
class DistanceResult:
    measure: Measure
    distance: float
    p_value: float
    gated: bool


@dataclass(frozen=True)
class ConsensusVerdict:
    """Outcome of the 10-measure duplicate vote between two documents."""

    votes_duplicate: int
    is_duplicate: bool
    per_measure: tuple[DistanceResult, ...]


def _safe_ratio(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    out = np.zeros_like(num, dtype=np.float64)
    np.divide(num, den, out=out, where=den > 0)
    return out


def _phi_stat(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    # Positions where the denominator vanishes force F = G for valid CDFs,
    # so they contribute 0.
    mid = (f + g) / 2.0
    den = np.sqrt(np.minimum(mid, 1.0 - mid))
    return _safe_ratio(np.abs(f - g), den).max(axis=-1)


def _xi_stat(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    mid = (f + g) / 2.0
    den = np.minimum(mid, 1.0 - mid)
    terms = _safe_ratio((f - g) ** 2, den)
    return np.sqrt(terms.mean(axis=-1))


def _kl_sym(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    logs = np.log(np.maximum(p, _LOG_FLOOR)) - np.log(np.maximum(q, _LOG_FLOOR))
    return ((p - q) * logs).sum(axis=-1)


def _js(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    m = (p + q) / 2.0
    left = np.where(p > 0, p * (np.log(np.maximum(p, _LOG_FLOOR)) - np.log(np.maximum(m, _LOG_FLOOR))), 0.0)
    right = np.where(q > 0, q * (np.log(np.maximum(q, _LOG_FLOOR)) - np.log(np.maximum(m, _LOG_FLOOR))), 0.0)
    return 0.5 * left.sum(axis=-1) + 0.5 * right.sum(axis=-1)


def _chi_square(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    return _safe_ratio((p - q) ** 2, p + q).sum(axis=-1)


def _hellinger(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    return np.sqrt(0.5 * ((np.sqrt(p) - np.sqrt(q)) ** 2).sum(axis=-1))


def _cramer_von_mises(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    return ((f - g) ** 2).sum(axis=-1) / f.shape[-1]


def _euclid(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    return np.sqrt(((p - q) ** 2).sum(axis=-1))


def _canberra(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    return _safe_ratio(np.abs(p - q), p + q).sum(axis=-1)


def _distance_from_counts(
    measure: Measure, c1: np.ndarray, c2: np.ndarray, total1: int, total2: int
) -> np.ndarray:
    p = c1 / total1
    q = c2 / total2
    if measure in (Measure.PHI, Measure.XI, Measure.KOLMOGOROV_SMIRNOV, Measure.CRAMER_VON_MISES):
        f = np.cumsum(c1, axis=-1) / total1
        g = np.cumsum(c2, axis=-1) / total2
        if measure is Measure.PHI:
            return _phi_stat(f, g)
        if measure is Measure.XI:
            return _xi_stat(f, g)
        if measure is Measure.KOLMOGOROV_SMIRNOV:
            return np.abs(f - g).max(axis=-1)
        return _cramer_von_mises(f, g)
    if measure is Measure.KULLBACK_LEIBLER:
        return _kl_sym(p, q)
    if measure is Measure.JENSEN_SHANNON:
        return _js(p, q)
    if measure is Measure.CHI_SQUARE:
        return _chi_square(p, q)
    if measure is Measure.HELLINGER:
        return _hellinger(p, q)
    if measure is Measure.EUCLID:
        return _euclid(p, q)
    return _canberra(p, q)


def phi(cdf: PairedCdf) -> float:
    """Largest pointwise CDF gap scaled by a variance-like denominator.

    Zero for identical distributions; the attainable maximum is sqrt(2)
    (two point masses on different support elements).
    """
    return float(_phi_stat(np.asarray(cdf.f_sigma), np.asarray(cdf.f_pi)))


def _require_mass(h1: TermHistogram, h2: TermHistogram) -> None:
    if h1.total == 0 or h2.total == 0:
        raise EmptyHistogram("distribution measures need non-empty histograms")


def observed_distance(measure: Measure, h1: TermHistogram, h2: TermHistogram) -> float:
    """The named distance between two term histograms, without gating."""
    _require_mass(h1, h2)
    _, c1, c2 = aligned_counts(h1, h2)
    return float(_distance_from_counts(measure, c1, c2, h1.total, h2.total))


def overlap_gate(h1: TermHistogram, h2: TermHistogram, threshold: float = OVERLAP_GATE_THRESHOLD) -> bool:
    """True when the vocabularies overlap too little to compare distributions.

    The gate fires when the Jaccard ratio of the vocabularies is strictly
    below the threshold; a ratio exactly at the threshold passes.
    """
    return jaccard(h1.vocabulary, h2.vocabulary).value < threshold


def _hist_key(h: TermHistogram):
    return (h.total, sorted(h.counts.items()))


def p_value(
    measure: Measure,
    h1: TermHistogram,
    h2: TermHistogram,
    resamples: int = DEFAULT_RESAMPLES,
    seed: int = 0,
) -> float:
    """Pooled permutation p-value for the observed distance.

    The two term multisets are pooled and re-split `resamples` times into
    their original sizes (a uniform without-replacement draw); p is
    (1 + #{resampled distance >= observed}) / (1 + resamples).  An observed
    distance of exactly zero short-circuits to p = 1, which every resample
    would confirm since distances are non-negative.
    """
    _require_mass(h1, h2)
    if _hist_key(h2) < _hist_key(h1):
        h1, h2 = h2, h1
    _, c1, c2 = aligned_counts(h1, h2)
    d_obs = float(_distance_from_counts(measure, c1, c2, h1.total, h2.total))
    if d_obs == 0.0:
        return 1.0
    rng = np.random.default_rng(seed)
    pool = c1 + c2
    drawn = rng.multivariate_hypergeometric(pool, h1.total, size=resamples)
    d_star = _distance_from_counts(measure, drawn, pool - drawn, h1.total, h2.total)
    at_least = int(np.count_nonzero(d_star >= d_obs - _TIE_TOLERANCE))
    return (1 + at_least) / (1 + resamples)


def suite_distance(
    measure: Measure,
    h1: TermHistogram,
    h2: TermHistogram,
    resamples: int = DEFAULT_RESAMPLES,
    seed: int = 0,
    gate_threshold: float = OVERLAP_GATE_THRESHOLD,
) -> DistanceResult:
    """One suite measure with gating: distance plus permutation p-value.

    When the overlap gate fires the result is pinned to distance 1 and
    p-value 1 and marked gated.
    """
    _require_mass(h1, h2)
    if overlap_gate(h1, h2, threshold=gate_threshold):
        return DistanceResult(measure=measure, distance=1.0, p_value=1.0, gated=True)
    distance = observed_distance(measure, h1, h2)
    p = p_value(measure, h1, h2, resamples=resamples, seed=seed)
    return DistanceResult(measure=measure, distance=distance, p_value=p, gated=False)


def suite_all(
    h1: TermHistogram,
    h2: TermHistogram,
    resamples: int = DEFAULT_RESAMPLES,
    seed: int = 0,
    gate_threshold: float = OVERLAP_GATE_THRESHOLD,
) -> tuple[DistanceResult, ...]:
    """All ten suite measures, each with an independently derived substream."""
    return tuple(
        suite_distance(
            m, h1, h2,
            resamples=resamples,
            seed=derive_seed(seed, m.value),
            gate_threshold=gate_threshold,
        )
        for m in Measure
    )


def consensus_duplicate(
    doc1: DocumentText,
    doc2: DocumentText,
    alpha: float = CONSENSUS_ALPHA,
    resamples: int = DEFAULT_RESAMPLES,
    seed: int = 0,
) -> ConsensusVerdict:
    """Majority vote of the ten distribution measures on two documents.

    A measure votes duplicate when it is not gated and its p-value fails to
    reject equality at level alpha (p >= alpha); the documents are declared
    duplicates when more than four of the ten measures vote that way.
    Documents that tokenize to nothing are not comparable and never vote.
    """
    h1 = term_histogram(tokenize(doc1.body))
    h2 = term_histogram(tokenize(doc2.body))
    if h1.total == 0 or h2.total == 0:
        return ConsensusVerdict(votes_duplicate=0, is_duplicate=False, per_measure=())
    # Substreams are derived from the document contents (order-independently),
    # so verdicts do not depend on argument order or on how a URL is named.
    lo, hi = sorted((stable_hash64(doc1.body), stable_hash64(doc2.body)))
    results = suite_all(h1, h2, resamples=resamples, seed=derive_seed(seed, lo, hi))
    votes = sum(1 for r in results if not r.gated and r.p_value >= alpha)
    return ConsensusVerdict(
        votes_duplicate=votes,
        is_duplicate=votes > CONSENSUS_MAJORITY,
        per_measure=results,
    )
