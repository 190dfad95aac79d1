"""Perturbation sweeps: list pairs with a planted common block, used to
study how the weighted and unweighted list measures respond as the
block's size and position vary.

The construction starts from two fully disjoint lists of the same
length and copies a contiguous block of items from the first list into
the second at the same positions.  In anti-correlated mode the copied
block's internal order is reversed relative to the first list.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import InvalidSpec
from .ranksim import DCGW, IOTA, WeightFn, WeightKind, footrule, kendall


class Mode(Enum):
    CORRELATED = "correlated"
    ANTI_CORRELATED = "anticorrelated"


@dataclass(frozen=True)
class PerturbationSpec:
    mode: Mode
    common_count: int
    block_position: int
    list_len: int = 10
    weights: WeightKind = WeightKind.IOTA

    def __post_init__(self):
        if self.list_len < 1:
            raise InvalidSpec(f"list_len must be >= 1, got {self.list_len}")
        if not 1 <= self.common_count <= self.list_len:
            raise InvalidSpec(f"common_count must be in 1..{self.list_len}, got {self.common_count}")
        if not 1 <= self.block_position <= self.list_len:
            raise InvalidSpec(f"block_position must be in 1..{self.list_len}, got {self.block_position}")
        if self.common_count + self.block_position - 1 > self.list_len:
            raise InvalidSpec(
                f"block of {self.common_count} at position {self.block_position} "
                f"does not fit in a list of {self.list_len}"
            )


def build_pair(spec: PerturbationSpec) -> tuple[list[int], list[int]]:
    """The reference list 1..n and its perturbed disjoint counterpart."""
    n = spec.list_len
    reference = list(range(1, n + 1))
    other = list(range(n + 1, 2 * n + 1))
    lo = spec.block_position - 1
    hi = lo + spec.common_count
    block = reference[lo:hi]
    if spec.mode is Mode.ANTI_CORRELATED:
        block = block[::-1]
    other[lo:hi] = block
    return reference, other


def evaluate_pair(spec: PerturbationSpec, w: WeightFn) -> tuple[float, float]:
    """Normalized footrule and Kendall tau of the spec's list pair."""
    reference, other = build_pair(spec)
    return footrule(reference, other, w).normalized, kendall(reference, other, w).normalized


def sweep(mode: Mode, list_len: int = 10, weight_kinds: tuple[WeightKind, ...] = (WeightKind.IOTA, WeightKind.DCGW)) -> list[dict]:
    """Evaluate every valid (common_count, block_position) cell.

    Returns plot-ready rows with one footrule and one Kendall column per
    requested weighting.
    """
    by_kind = {WeightKind.IOTA: IOTA, WeightKind.DCGW: DCGW}
    rows = []
    for count in range(1, list_len + 1):
        for position in range(1, list_len - count + 2):
            spec = PerturbationSpec(
                mode=mode, common_count=count, block_position=position, list_len=list_len
            )
            row: dict = {
                "mode": mode.value,
                "list_len": list_len,
                "common_count": count,
                "block_position": position,
            }
            for kind in weight_kinds:
                s, k = evaluate_pair(spec, by_kind[kind])
                row[f"footrule_{kind.value}"] = s
                row[f"kendall_{kind.value}"] = k
            rows.append(row)
    return rows
