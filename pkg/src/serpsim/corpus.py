"""Domain types for queries, snapshots, documents, and judgments, plus
file ingestion and validation.

Snapshot and judgment files are line-oriented JSON records (UTF-8, one
object per line); the exact field names are documented in docs/formats.md.
All types are immutable after construction and safe to share across
concurrent workers; loading is a pure function of its input bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from pathlib import Path
from typing import Callable

from .errors import DuplicateKeyError, ParseError, SchemaError

DEFAULT_TOP_N = 10

# Placeholder URL for a within-list duplicate flagged by list normalization.
# It keeps its ranking position but is excluded from every measure.
OMEGA = "ω"


class Stratum(Enum):
    HIGHLY_FREQUENT = "HighlyFrequent"
    FREQUENT = "Frequent"
    INFREQUENT = "Infrequent"


class Grade(IntEnum):
    """Editorial judgment grades; the numeric value is the grade level j."""

    BAD = 1
    FAIR = 2
    GOOD = 3
    EXCELLENT = 4
    PERFECT = 5


GRADE_LABELS = {
    "Bad": Grade.BAD,
    "Fair": Grade.FAIR,
    "Good": Grade.GOOD,
    "Excellent": Grade.EXCELLENT,
    "Perfect": Grade.PERFECT,
}


@dataclass(frozen=True)
class QueryRecord:
    id: str
    text: str
    market: str
    frequency_stratum: Stratum
    timestamp: int

    def __post_init__(self):
        if not self.id:
            raise SchemaError("query id must be non-empty")
        if len(self.market) != 2 or not self.market.isascii() or not self.market.isupper():
            raise SchemaError(f"market must be a 2-letter uppercase code, got {self.market!r}")


@dataclass(frozen=True)
class DocumentText:
    """Extracted plain text of a landing page (markup already stripped)."""

    url: str
    body: str
    byte_len: int

    @classmethod
    def from_body(cls, url: str, body: str) -> "DocumentText":
        return cls(url=url, body=body, byte_len=len(body.encode("utf-8")))


@dataclass(frozen=True)
class ResultEntry:
    rank: int
    url: str
    doc: DocumentText | None = None

    def __post_init__(self):
        if self.rank < 1:
            raise SchemaError(f"rank must be >= 1, got {self.rank}")
        if not self.url:
            raise SchemaError("url must be non-empty")


@dataclass(frozen=True)
class ResultList:
    """Ranked results one engine returned for one query at one time."""

    query_id: str
    engine: str
    entries: tuple[ResultEntry, ...]
    fetched_at: int
    market: str = "XX"

    def __post_init__(self):
        ranks = [e.rank for e in self.entries]
        if ranks != list(range(1, len(ranks) + 1)):
            raise SchemaError(f"ranks must be exactly 1..{len(ranks)}, got {ranks}")

    def __len__(self) -> int:
        return len(self.entries)

    def top(self, n: int) -> tuple[ResultEntry, ...]:
        return self.entries[:n]

    def urls(self) -> tuple[str, ...]:
        return tuple(e.url for e in self.entries)


@dataclass
class JudgmentSet:
    """Map from (query_id, url) to an editorial grade."""

    grades: dict[tuple[str, str], Grade] = field(default_factory=dict)

    def get(self, query_id: str, url: str) -> Grade | None:
        return self.grades.get((query_id, url))

    def query_ids(self) -> set[str]:
        return {q for q, _ in self.grades}

    def __len__(self) -> int:
        return len(self.grades)


def _decode(data: bytes | str) -> str:
    if isinstance(data, bytes):
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not valid UTF-8: {exc}") from exc
    return data


def _records(text: str) -> list[dict]:
    records = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"line {lineno}: not valid JSON: {exc}") from exc
        if not isinstance(obj, dict):
            raise ParseError(f"line {lineno}: expected a JSON object")
        obj["_lineno"] = lineno
        records.append(obj)
    return records


def _require(record: dict, name: str, kind: type):
    if name not in record:
        raise SchemaError(f"line {record['_lineno']}: missing field {name!r}")
    value = record[name]
    if kind is int and isinstance(value, bool):
        raise SchemaError(f"line {record['_lineno']}: field {name!r} must be {kind.__name__}")
    if not isinstance(value, kind):
        raise SchemaError(f"line {record['_lineno']}: field {name!r} must be {kind.__name__}")
    return value


def load_snapshot(
    data: bytes | str,
    top_n: int = DEFAULT_TOP_N,
    doc_loader: Callable[[str], str] | None = None,
) -> ResultList:
    """Parse one snapshot file into a validated ResultList.

    Entries beyond `top_n` (in rank order) are dropped and the survivors
    renumbered 1..m without reordering.  Entries referencing an external
    document (`doc_path`) are resolved through `doc_loader` when given,
    otherwise loaded without a body.
    """
    records = _records(_decode(data))
    if not records:
        raise ParseError("snapshot file is empty")
    header, *rows = records
    if header.get("type") != "header":
        raise SchemaError("first record must have type 'header'")
    query_id = _require(header, "query_id", str)
    engine = _require(header, "engine", str)
    market = _require(header, "market", str)
    fetched_at = _require(header, "fetched_at", int)
    if not query_id or not engine:
        raise SchemaError("query_id and engine must be non-empty")

    seen_ranks: set[int] = set()
    parsed: list[tuple[int, str, DocumentText | None]] = []
    for row in rows:
        if row.get("type") != "entry":
            raise SchemaError(f"line {row['_lineno']}: expected an 'entry' record")
        rank = _require(row, "rank", int)
        url = _require(row, "url", str)
        if rank < 1:
            raise SchemaError(f"line {row['_lineno']}: rank must be >= 1")
        if not url:
            raise SchemaError(f"line {row['_lineno']}: empty url")
        if rank in seen_ranks:
            raise SchemaError(f"line {row['_lineno']}: duplicate rank {rank}")
        seen_ranks.add(rank)
        doc: DocumentText | None = None
        if "text" in row:
            doc = DocumentText.from_body(url, _require(row, "text", str))
        elif "doc_path" in row and doc_loader is not None:
            doc = DocumentText.from_body(url, doc_loader(_require(row, "doc_path", str)))
        parsed.append((rank, url, doc))

    parsed.sort(key=lambda t: t[0])
    entries = tuple(
        ResultEntry(rank=i + 1, url=url, doc=doc)
        for i, (_, url, doc) in enumerate(parsed[:top_n])
    )
    return ResultList(
        query_id=query_id, engine=engine, entries=entries, fetched_at=fetched_at, market=market
    )


def load_snapshot_file(path: str | Path, top_n: int = DEFAULT_TOP_N) -> ResultList:
    """Load a snapshot from disk, resolving doc_path references relative to it."""
    path = Path(path)

    def loader(rel: str) -> str:
        return (path.parent / rel).read_text(encoding="utf-8")

    return load_snapshot(path.read_bytes(), top_n=top_n, doc_loader=loader)


def dump_snapshot(result_list: ResultList) -> str:
    """Serialize a ResultList back to snapshot format (documents inline)."""
    lines = [
        json.dumps(
            {
                "type": "header",
                "query_id": result_list.query_id,
                "engine": result_list.engine,
                "market": result_list.market,
                "fetched_at": result_list.fetched_at,
            },
            sort_keys=True,
            ensure_ascii=False,
        )
    ]
    for entry in result_list.entries:
        record: dict = {"type": "entry", "rank": entry.rank, "url": entry.url}
        if entry.doc is not None:
            record["text"] = entry.doc.body
        lines.append(json.dumps(record, sort_keys=True, ensure_ascii=False))
    return "\n".join(lines) + "\n"


def load_judgments(data: bytes | str) -> JudgmentSet:
    """Parse a judgment file; every record is {query_id, url, grade}."""
    grades: dict[tuple[str, str], Grade] = {}
    for record in _records(_decode(data)):
        query_id = _require(record, "query_id", str)
        url = _require(record, "url", str)
        label = _require(record, "grade", str)
        if label not in GRADE_LABELS:
            raise ParseError(
                f"line {record['_lineno']}: unknown grade {label!r}; "
                f"expected one of {sorted(GRADE_LABELS)}"
            )
        key = (query_id, url)
        if key in grades:
            raise DuplicateKeyError(f"line {record['_lineno']}: repeated judgment for {key}")
        grades[key] = GRADE_LABELS[label]
    return JudgmentSet(grades=grades)


def load_judgments_file(path: str | Path) -> JudgmentSet:
    return load_judgments(Path(path).read_bytes())
