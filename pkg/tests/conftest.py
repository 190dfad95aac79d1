"""Shared builders for result lists and documents used across the suite."""

from __future__ import annotations

import pytest

from serpsim.corpus import DocumentText, ResultEntry, ResultList


def doc(url: str, body: str) -> DocumentText:
    return DocumentText.from_body(url, body)


def entry(rank: int, url: str, body: str | None = None) -> ResultEntry:
    return ResultEntry(rank=rank, url=url, doc=None if body is None else doc(url, body))


def result_list(query_id, engine, items, fetched_at=0, market="US") -> ResultList:
    """items: iterable of url or (url, body) in rank order."""
    entries = []
    for i, item in enumerate(items):
        if isinstance(item, tuple):
            url, body = item
        else:
            url, body = item, None
        entries.append(entry(i + 1, url, body))
    return ResultList(
        query_id=query_id, engine=engine, entries=tuple(entries),
        fetched_at=fetched_at, market=market,
    )


@pytest.fixture
def list_pair_disjoint_docs():
    """Two 3-entry lists with pairwise unrelated documents and no shared URLs."""
    left = result_list("q", "e1", [
        ("https://a.example/", "alpha beta gamma delta epsilon"),
        ("https://b.example/", "one two three four five"),
        ("https://c.example/", "red orange yellow green blue"),
    ])
    right = result_list("q", "e2", [
        ("https://x.example/", "north south east west center"),
        ("https://y.example/", "cat dog bird fish mouse"),
        ("https://z.example/", "iron copper zinc lead tin"),
    ])
    return left, right
