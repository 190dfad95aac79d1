"""Stratified query sampling from a query log.

Queries are partitioned into three frequency strata by configurable
count boundaries and sampled without replacement in equal amounts from
each stratum, so frequent queries do not drown out tail queries.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .corpus import QueryRecord, Stratum
from .errors import EmptyMarket, ParseError, SchemaError


@dataclass(frozen=True)
class LogRecord:
    text: str
    market: str
    count: int
    timestamp: int

    def __post_init__(self):
        if self.count < 1:
            raise SchemaError(f"frequency count must be >= 1, got {self.count}")


@dataclass(frozen=True)
class QueryLog:
    records: tuple[LogRecord, ...]


@dataclass(frozen=True)
class StrataConfig:
    """Frequency boundaries and per-stratum sample size.

    Counts >= hi are highly frequent, counts in [lo, hi) frequent, and
    counts < lo infrequent.
    """

    per_stratum: int
    seed: int
    hi: int = 1000
    lo: int = 10

    def __post_init__(self):
        if not self.hi > self.lo >= 1:
            raise SchemaError(f"strata boundaries need hi > lo >= 1, got hi={self.hi} lo={self.lo}")
        if self.per_stratum < 1:
            raise SchemaError("per_stratum must be >= 1")

    def stratum_of(self, count: int) -> Stratum:
        if count >= self.hi:
            return Stratum.HIGHLY_FREQUENT
        if count >= self.lo:
            return Stratum.FREQUENT
        return Stratum.INFREQUENT


def load_query_log(data: bytes | str) -> QueryLog:
    """Parse a query log file; every record is {text, market, count, timestamp}."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    records = []
    for lineno, line in enumerate(data.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"line {lineno}: not valid JSON: {exc}") from exc
        try:
            records.append(
                LogRecord(
                    text=str(obj["text"]),
                    market=str(obj["market"]),
                    count=int(obj["count"]),
                    timestamp=int(obj["timestamp"]),
                )
            )
        except KeyError as exc:
            raise SchemaError(f"line {lineno}: missing field {exc}") from exc
    return QueryLog(records=tuple(records))


def load_query_log_file(path: str | Path) -> QueryLog:
    return load_query_log(Path(path).read_bytes())


def stratified_sample(
    log: QueryLog,
    market: str,
    cfg: StrataConfig,
    exclude: Iterable[str] = (),
) -> list[QueryRecord]:
    """Draw per-stratum uniform samples without replacement for one market.

    Each stratum contributes cfg.per_stratum queries (all of it when it is
    smaller).  Query texts listed in `exclude` (e.g. a prior day's sample)
    are never drawn.  Deterministic for a fixed log, config, and seed.
    """
    excluded = set(exclude)
    pool = [
        (i, rec)
        for i, rec in enumerate(log.records)
        if rec.market == market and rec.text not in excluded
    ]
    if not pool:
        raise EmptyMarket(f"query log has no records for market {market!r}")

    by_stratum: dict[Stratum, list[tuple[int, LogRecord]]] = {s: [] for s in Stratum}
    for item in pool:
        by_stratum[cfg.stratum_of(item[1].count)].append(item)

    rng = random.Random(cfg.seed)
    sampled: list[QueryRecord] = []
    for stratum in Stratum:
        members = by_stratum[stratum]
        take = members if len(members) <= cfg.per_stratum else rng.sample(members, cfg.per_stratum)
        for i, rec in take:
            sampled.append(
                QueryRecord(
                    id=f"{market.lower()}-{i:06d}",
                    text=rec.text,
                    market=market,
                    frequency_stratum=stratum,
                    timestamp=rec.timestamp,
                )
            )
    return sampled
