"""Rank extension for partial lists, weighted Spearman footrule and
weighted Kendall tau with [-1, 1] normalizations, weighting functions,
and an independent bubble-sort oracle for the Kendall raw value.

Two top-n result lists are rarely permutations of each other.  Each
list is therefore extended by appending the elements it is missing, in
the order they hold in the other list, which induces two same-length
permutations that the classic measures apply to.  Weights are evaluated
at the rank an element holds in the first (reference) list, making the
weighted scores a function of the argument order; the unweighted scores
are symmetric.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Hashable, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import DuplicateElement, NotPermutation


class WeightKind(Enum):
    IOTA = "iota"
    DCGW = "dcgw"
    CUSTOM = "custom"


@dataclass(frozen=True)
class WeightFn:
    """Positive per-rank weight; rank 1 is the top of the list."""

    kind: WeightKind
    eval: Callable[[int], float]

    def __call__(self, rank: int) -> float:
        return self.eval(rank)


def weight_iota(i: int) -> float:
    """Constant weight: every rank matters equally."""
    return 1.0


def weight_dcgw(i: int) -> float:
    """Steeply decaying weight log10(1+i) / 2^i, echoing the DCG discount."""
    return math.log10(1 + i) / (2.0 ** i)


IOTA = WeightFn(WeightKind.IOTA, weight_iota)
DCGW = WeightFn(WeightKind.DCGW, weight_dcgw)

_WEIGHTS = {"iota": IOTA, "dcgw": DCGW}


def weight_by_name(name: str) -> WeightFn:
    return _WEIGHTS[name.lower()]


@dataclass(frozen=True)
class RankExtension:
    """Same-length rank maps induced from two partial lists.

    Both maps are bijections onto 1..N where N is the size of the element
    union; elements keep their native relative order, and elements missing
    from a list are appended after its last rank in the order they hold in
    the other list.
    """

    items: tuple[Hashable, ...]
    rank_sigma: dict[Hashable, int]
    rank_pi: dict[Hashable, int]
    n: int


def _check_distinct(name: str, seq: Sequence[Hashable]) -> None:
    if len(set(seq)) != len(seq):
        raise DuplicateElement(f"{name} list repeats an element: {list(seq)!r}")


def extend_ranks(sigma: Sequence[Hashable], pi: Sequence[Hashable]) -> RankExtension:
    """Extend two partial lists into a pair of aligned rank bijections."""
    _check_distinct("first", sigma)
    _check_distinct("second", pi)
    in_sigma = set(sigma)
    in_pi = set(pi)
    sigma_missing = [e for e in pi if e not in in_sigma]  # keep pi's relative order
    pi_missing = [e for e in sigma if e not in in_pi]  # keep sigma's relative order
    rank_sigma = {e: i + 1 for i, e in enumerate(list(sigma) + sigma_missing)}
    rank_pi = {e: i + 1 for i, e in enumerate(list(pi) + pi_missing)}
    items = tuple(rank_sigma)
    assert sorted(rank_sigma.values()) == list(range(1, len(items) + 1))
    assert sorted(rank_pi.values()) == list(range(1, len(items) + 1))
    return RankExtension(items=items, rank_sigma=rank_sigma, rank_pi=rank_pi, n=len(items))


@dataclass(frozen=True)
class ListScore:
    """Raw displacement/swap cost and its normalization into [-1, 1]."""

    raw: float
    normalized: float
    denominator: float


def _degenerate_score() -> ListScore:
    # Zero or one shared element: both denominators vanish and the pair is
    # trivially concordant, so the normalized score is defined as 1.
    return ListScore(raw=0.0, normalized=1.0, denominator=1.0)


def max_footrule_displacement(n: int, w: WeightFn) -> float:
    """Largest possible weighted footrule over permutations of 1..n.

    For constant weights this is attained by the reversed permutation and
    equals sum w(i) * |i - (n - i + 1)|.  For non-constant weights the
    reversal is not always optimal, so the exact maximum is solved as a
    linear assignment; using anything smaller would let the normalized
    score escape [-1, 1].
    """
    weights = [w(i) for i in range(1, n + 1)]
    if n <= 1:
        return 0.0
    if len(set(weights)) == 1:
        return weights[0] * sum(abs(2 * i - n - 1) for i in range(1, n + 1))
    cost = np.abs(np.arange(n)[:, None] - np.arange(n)[None, :]) * np.asarray(weights)[:, None]
    rows, cols = linear_sum_assignment(cost, maximize=True)
    return float(cost[rows, cols].sum())


def footrule(sigma: Sequence[Hashable], pi: Sequence[Hashable], w: WeightFn = IOTA) -> ListScore:
    """Weighted Spearman footrule between two partial lists.

    raw = sum over the element union of w(reference rank) * |rank
    displacement| on the extended lists; normalized = 1 - 2*raw/denominator
    with the denominator the maximum raw value any permutation can reach.
    """
    ext = extend_ranks(sigma, pi)
    if ext.n <= 1:
        return _degenerate_score()
    raw = math.fsum(
        w(ext.rank_sigma[e]) * abs(ext.rank_sigma[e] - ext.rank_pi[e]) for e in ext.items
    )
    denominator = max_footrule_displacement(ext.n, w)
    return ListScore(raw=raw, normalized=1.0 - 2.0 * raw / denominator, denominator=denominator)


def kendall(sigma: Sequence[Hashable], pi: Sequence[Hashable], w: WeightFn = IOTA) -> ListScore:
    """Weighted Kendall tau between two partial lists.

    Relabel elements by their reference ranks so the first list becomes the
    identity; every pair ranked in opposite orders by the two lists then
    costs (w(i)+w(j))/2, with i < j the reference ranks of the pair.  The
    denominator sums that cost over all pairs, which the reversed
    permutation attains.
    """
    ext = extend_ranks(sigma, pi)
    if ext.n <= 1:
        return _degenerate_score()
    weights = [0.0] + [w(i) for i in range(1, ext.n + 1)]  # 1-based
    pi_of = [0] * (ext.n + 1)
    for e in ext.items:
        pi_of[ext.rank_sigma[e]] = ext.rank_pi[e]
    # fsum keeps the raw value independent of pair enumeration order, so it
    # matches the bubble-sort oracle bit for bit.
    raw = math.fsum(
        (weights[i] + weights[j]) / 2.0
        for i in range(1, ext.n + 1)
        for j in range(i + 1, ext.n + 1)
        if pi_of[i] > pi_of[j]
    )
    denominator = math.fsum(
        (weights[i] + weights[j]) / 2.0 for i, j in itertools.combinations(range(1, ext.n + 1), 2)
    )
    return ListScore(raw=raw, normalized=1.0 - 2.0 * raw / denominator, denominator=denominator)


def kendall_oracle(pi: Sequence[int], w: WeightFn = IOTA) -> float:
    """Bubble-sort cost of reducing a permutation of 1..N to the identity.

    Each executed adjacent swap of the elements with identity ranks i and j
    costs (w(i)+w(j))/2.  Serves as an independent check of kendall().raw.
    """
    n = len(pi)
    if sorted(pi) != list(range(1, n + 1)):
        raise NotPermutation(f"expected a permutation of 1..{n}, got {list(pi)!r}")
    work = list(pi)
    costs: list[float] = []
    swapped = True
    while swapped:
        swapped = False
        for k in range(n - 1):
            if work[k] > work[k + 1]:
                costs.append((w(work[k]) + w(work[k + 1])) / 2.0)
                work[k], work[k + 1] = work[k + 1], work[k]
                swapped = True
    return math.fsum(costs)
