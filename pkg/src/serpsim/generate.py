"""Synthetic corpus generation with planted ground truth.

The generator writes paired snapshot files whose per-query URL overlap
follows a configured distribution exactly (largest-remainder
apportionment over the query count), optionally injecting cross-list
duplicate documents served under different URLs.  Every planted fact is
recorded in a ground-truth sidecar so pipeline output can be checked
against it, and identical (profile, seed) inputs produce byte-identical
corpora.

Distinct synthetic documents use disjoint vocabularies, so the only
content duplicates in a generated corpus are the injected ones.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path

from .corpus import DocumentText, ResultEntry, ResultList, dump_snapshot
from .errors import InvalidProfile, ParseError

FETCHED_AT = 1_700_000_000  # fixed timestamp keeps generated corpora reproducible


@dataclass(frozen=True)
class CorpusProfile:
    """Synthetic corpus description.

    common_urls maps a common-URL count to the fraction of queries planted
    with exactly that many shared URLs; fractions must sum to 1.
    """

    queries: int
    engines: tuple[str, str]
    market: str
    common_urls: dict[int, float]
    list_len: int = 10
    duplicate_pairs_per_query: int = 0
    doc_terms: int = 30

    def __post_init__(self):
        if self.queries < 1:
            raise InvalidProfile("queries must be >= 1")
        if len(self.engines) != 2 or self.engines[0] == self.engines[1]:
            raise InvalidProfile("exactly two distinct engines are required")
        if len(self.market) != 2 or not self.market.isupper():
            raise InvalidProfile(f"market must be a 2-letter uppercase code, got {self.market!r}")
        if self.list_len < 1:
            raise InvalidProfile("list_len must be >= 1")
        if not self.common_urls:
            raise InvalidProfile("common_urls distribution is empty")
        for count, frac in self.common_urls.items():
            if not 0 <= count <= self.list_len:
                raise InvalidProfile(f"common count {count} outside 0..{self.list_len}")
            if frac < 0:
                raise InvalidProfile(f"negative fraction for common count {count}")
        if abs(sum(self.common_urls.values()) - 1.0) > 1e-9:
            raise InvalidProfile("common_urls fractions must sum to 1")
        if self.duplicate_pairs_per_query < 0:
            raise InvalidProfile("duplicate_pairs_per_query must be >= 0")
        max_common = max(c for c, f in self.common_urls.items() if f > 0)
        if self.duplicate_pairs_per_query > self.list_len - max_common:
            raise InvalidProfile(
                "duplicate_pairs_per_query needs that many non-common entries per list"
            )
        if self.doc_terms < 1:
            raise InvalidProfile("doc_terms must be >= 1")


def load_profile(path: str | Path) -> CorpusProfile:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"profile is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise InvalidProfile("profile must be a JSON object")
    try:
        return CorpusProfile(
            queries=int(raw["queries"]),
            engines=tuple(raw["engines"]),
            market=str(raw["market"]),
            common_urls={int(k): float(v) for k, v in raw["common_urls"].items()},
            list_len=int(raw.get("list_len", 10)),
            duplicate_pairs_per_query=int(raw.get("duplicate_pairs_per_query", 0)),
            doc_terms=int(raw.get("doc_terms", 30)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidProfile(f"bad profile field: {exc}") from exc


def _apportion(fractions: dict[int, float], total: int) -> dict[int, int]:
    """Integer counts per key matching the fractions exactly via largest remainder."""
    quotas = {k: fractions[k] * total for k in sorted(fractions)}
    counts = {k: int(q) for k, q in quotas.items()}
    leftover = total - sum(counts.values())
    by_remainder = sorted(quotas, key=lambda k: (counts[k] - quotas[k], k))
    for k in by_remainder[:leftover]:
        counts[k] += 1
    return counts


def _doc_body(query_id: str, tag: str, doc_terms: int) -> str:
    # Alphanumeric-only tokens keep the tokenizer from splitting them, and
    # the (query_id, tag) prefix keeps vocabularies of distinct docs disjoint.
    return " ".join(f"{query_id}{tag}w{j:04d}" for j in range(doc_terms))


def _entry(rank: int, url: str, body: str) -> ResultEntry:
    return ResultEntry(rank=rank, url=url, doc=DocumentText.from_body(url, body))


def generate_corpus(profile: CorpusProfile, seed: int, out_dir: str | Path) -> list[dict]:
    """Write snapshot pairs plus a ground-truth sidecar; returns the ground truth.

    Each query gets `list_len` results per engine; the planted number of
    common URLs (same string, same document, in both lists) follows the
    profile distribution exactly, and `duplicate_pairs_per_query` extra
    cross-list pairs share a document under two different URLs.
    """
    out_dir = Path(out_dir)
    snap_dir = out_dir / "snapshots"
    snap_dir.mkdir(parents=True, exist_ok=True)

    rng = random.Random(seed)
    counts = _apportion(profile.common_urls, profile.queries)
    planted = [c for c in sorted(counts) for _ in range(counts[c])]
    rng.shuffle(planted)

    length = profile.list_len
    dup_k = profile.duplicate_pairs_per_query
    ground_truth: list[dict] = []
    for qidx in range(profile.queries):
        query_id = f"q{qidx:05d}"
        common = planted[qidx]
        sigma_urls = [f"https://{query_id}s{j:02d}.example.com/" for j in range(length)]
        pi_urls = [f"https://{query_id}p{j:02d}.example.com/" for j in range(length)]

        common_urls = [f"https://{query_id}c{j:02d}.example.com/" for j in range(common)]
        for pos, url in zip(sorted(rng.sample(range(length), common)), common_urls):
            sigma_urls[pos] = url
        for pos, url in zip(sorted(rng.sample(range(length), common)), common_urls):
            pi_urls[pos] = url

        bodies = {
            url: _doc_body(query_id, f"c{j:02d}", profile.doc_terms)
            for j, url in enumerate(common_urls)
        }
        for url in sigma_urls:
            if url not in bodies:
                bodies[url] = _doc_body(query_id, f"s{sigma_urls.index(url):02d}", profile.doc_terms)
        for url in pi_urls:
            if url not in bodies:
                bodies[url] = _doc_body(query_id, f"p{pi_urls.index(url):02d}", profile.doc_terms)

        duplicate_pairs: list[tuple[str, str]] = []
        if dup_k:
            sigma_only = [u for u in sigma_urls if u not in common_urls]
            pi_only = [u for u in pi_urls if u not in common_urls]
            sources = rng.sample(sigma_only, dup_k)
            targets = rng.sample(pi_only, dup_k)
            for src, dst in zip(sources, targets):
                bodies[dst] = bodies[src]
                duplicate_pairs.append((src, dst))

        lists = {
            profile.engines[0]: sigma_urls,
            profile.engines[1]: pi_urls,
        }
        for engine, urls in lists.items():
            snapshot = ResultList(
                query_id=query_id,
                engine=engine,
                entries=tuple(_entry(i + 1, url, bodies[url]) for i, url in enumerate(urls)),
                fetched_at=FETCHED_AT,
                market=profile.market,
            )
            (snap_dir / f"{query_id}_{engine}.jsonl").write_text(
                dump_snapshot(snapshot), encoding="utf-8"
            )

        ground_truth.append(
            {
                "query_id": query_id,
                "common_count": common,
                "planted_j_url": common / (2 * length - common) if length else 0.0,
                "duplicate_pairs": [list(p) for p in duplicate_pairs],
            }
        )

    sidecar = "\n".join(json.dumps(g, sort_keys=True) for g in ground_truth) + "\n"
    (out_dir / "ground_truth.jsonl").write_text(sidecar, encoding="utf-8")
    return ground_truth
