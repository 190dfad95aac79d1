import json

import pytest

from serpsim.corpus import Stratum
from serpsim.errors import EmptyMarket, SchemaError
from serpsim.sampling import LogRecord, QueryLog, StrataConfig, load_query_log, stratified_sample


def make_log(counts_by_market):
    records = []
    for market, counts in counts_by_market.items():
        for i, count in enumerate(counts):
            records.append(LogRecord(text=f"{market.lower()} query {i}", market=market,
                                     count=count, timestamp=1_700_000_000 + i))
    return QueryLog(records=tuple(records))


BALANCED = make_log({"US": [5000] * 8 + [100] * 8 + [2] * 8, "FR": [5000, 100, 2]})
CFG = StrataConfig(per_stratum=3, seed=42)


class TestStratifiedSample:
    def test_equal_amounts_from_each_stratum(self):
        sample = stratified_sample(BALANCED, "US", CFG)
        assert len(sample) == 9
        by_stratum = {s: 0 for s in Stratum}
        for rec in sample:
            by_stratum[rec.frequency_stratum] += 1
        assert set(by_stratum.values()) == {3}

    def test_small_stratum_returned_whole(self):
        log = make_log({"US": [5000] * 8 + [100] * 2 + [2] * 8})
        sample = stratified_sample(log, "US", CFG)
        frequent = [r for r in sample if r.frequency_stratum is Stratum.FREQUENT]
        assert len(frequent) == 2
        assert len(sample) == 8

    def test_deterministic_given_seed(self):
        first = stratified_sample(BALANCED, "US", CFG)
        second = stratified_sample(BALANCED, "US", CFG)
        assert first == second

    def test_seed_changes_membership_not_counts(self):
        alt = StrataConfig(per_stratum=3, seed=43)
        first = stratified_sample(BALANCED, "US", CFG)
        second = stratified_sample(BALANCED, "US", alt)
        assert len(first) == len(second)
        assert {r.frequency_stratum for r in first} == {r.frequency_stratum for r in second}
        assert [r.id for r in first] != [r.id for r in second]

    def test_no_query_sampled_twice(self):
        sample = stratified_sample(BALANCED, "US", CFG)
        ids = [r.id for r in sample]
        assert len(ids) == len(set(ids))

    def test_stratum_tags_match_boundaries(self):
        cfg = StrataConfig(per_stratum=8, seed=1, hi=1000, lo=10)
        by_text = {rec.text: rec.count for rec in BALANCED.records if rec.market == "US"}
        for rec in stratified_sample(BALANCED, "US", cfg):
            count = by_text[rec.text]
            if count >= 1000:
                assert rec.frequency_stratum is Stratum.HIGHLY_FREQUENT
            elif count >= 10:
                assert rec.frequency_stratum is Stratum.FREQUENT
            else:
                assert rec.frequency_stratum is Stratum.INFREQUENT

    def test_market_filter(self):
        sample = stratified_sample(BALANCED, "FR", StrataConfig(per_stratum=2, seed=1))
        assert all(r.market == "FR" for r in sample)
        assert len(sample) == 3

    def test_empty_market_rejected(self):
        with pytest.raises(EmptyMarket):
            stratified_sample(BALANCED, "JP", CFG)

    def test_exclusion_list_respected(self):
        excluded = {r.text for r in stratified_sample(BALANCED, "US", CFG)}
        fresh = stratified_sample(BALANCED, "US", CFG, exclude=excluded)
        assert excluded.isdisjoint({r.text for r in fresh})

    def test_bad_boundaries_rejected(self):
        with pytest.raises(SchemaError):
            StrataConfig(per_stratum=1, seed=0, hi=10, lo=10)
        with pytest.raises(SchemaError):
            StrataConfig(per_stratum=0, seed=0)


class TestLoadQueryLog:
    def test_round_trip_fields(self):
        line = json.dumps({"text": "weather", "market": "US", "count": 7, "timestamp": 123})
        log = load_query_log(line)
        assert log.records == (LogRecord(text="weather", market="US", count=7, timestamp=123),)

    def test_zero_count_rejected(self):
        line = json.dumps({"text": "x", "market": "US", "count": 0, "timestamp": 1})
        with pytest.raises(SchemaError):
            load_query_log(line)
