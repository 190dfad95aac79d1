import json

import pytest

from serpsim.errors import InvalidProfile
from serpsim.generate import CorpusProfile, generate_corpus, load_profile
from serpsim.normalize import normalize_lists
from serpsim.report import corpus_report
from serpsim.corpus import load_snapshot_file
from serpsim.setsim import j_url


def profile(**overrides):
    base = dict(
        queries=12,
        engines=("alpha", "beta"),
        market="US",
        common_urls={2: 0.5, 5: 0.5},
        list_len=10,
        duplicate_pairs_per_query=0,
        doc_terms=20,
    )
    base.update(overrides)
    return CorpusProfile(**base)


class TestProfileValidation:
    def test_fractions_must_sum_to_one(self):
        with pytest.raises(InvalidProfile):
            profile(common_urls={2: 0.5, 5: 0.4})

    def test_common_count_within_list(self):
        with pytest.raises(InvalidProfile):
            profile(common_urls={11: 1.0})

    def test_engines_must_differ(self):
        with pytest.raises(InvalidProfile):
            profile(engines=("alpha", "alpha"))

    def test_duplicates_need_room(self):
        with pytest.raises(InvalidProfile):
            profile(common_urls={8: 1.0}, duplicate_pairs_per_query=3)

    def test_load_profile_round_trip(self, tmp_path):
        raw = {
            "queries": 4,
            "engines": ["alpha", "beta"],
            "market": "US",
            "common_urls": {"3": 1.0},
            "doc_terms": 15,
        }
        path = tmp_path / "profile.json"
        path.write_text(json.dumps(raw), encoding="utf-8")
        loaded = load_profile(path)
        assert loaded.queries == 4
        assert loaded.common_urls == {3: 1.0}


class TestGenerateCorpus:
    def test_planted_distribution_is_exact(self, tmp_path):
        truth = generate_corpus(profile(), seed=3, out_dir=tmp_path)
        counts = sorted(g["common_count"] for g in truth)
        assert counts == [2] * 6 + [5] * 6

    def test_snapshots_reproduce_planted_overlap(self, tmp_path):
        truth = generate_corpus(profile(queries=6), seed=5, out_dir=tmp_path)
        for g in truth:
            left = load_snapshot_file(tmp_path / "snapshots" / f"{g['query_id']}_alpha.jsonl")
            right = load_snapshot_file(tmp_path / "snapshots" / f"{g['query_id']}_beta.jsonl")
            raw = j_url(left, right, 10).value
            assert raw == pytest.approx(g["planted_j_url"])

    def test_no_duplicates_means_normalization_is_identity(self, tmp_path):
        truth = generate_corpus(profile(queries=4), seed=7, out_dir=tmp_path)
        for g in truth:
            left = load_snapshot_file(tmp_path / "snapshots" / f"{g['query_id']}_alpha.jsonl")
            right = load_snapshot_file(tmp_path / "snapshots" / f"{g['query_id']}_beta.jsonl")
            pair = normalize_lists(left, right, seed=1)
            assert pair.sigma_tilde.urls() == left.urls()
            assert pair.pi_tilde.urls() == right.urls()

    def test_injected_duplicates_raise_overlap_after_normalization(self, tmp_path):
        prof = profile(queries=6, common_urls={2: 0.5, 4: 0.5}, duplicate_pairs_per_query=2)
        truth = generate_corpus(prof, seed=11, out_dir=tmp_path)
        _, reports = corpus_report(tmp_path, top_n=10, seed=1)
        by_query = {r.query_id: r for r in reports}
        for g in truth:
            assert len(g["duplicate_pairs"]) == 2
            report = by_query[g["query_id"]]
            planted = g["planted_j_url"]
            assert report.j_url > planted
            c, k, length = g["common_count"], 2, 10
            expected_after = (c + k) / (2 * length - c - k)
            assert report.j_url == pytest.approx(expected_after)

    def test_byte_identical_for_same_profile_and_seed(self, tmp_path):
        first = tmp_path / "one"
        second = tmp_path / "two"
        generate_corpus(profile(), seed=13, out_dir=first)
        generate_corpus(profile(), seed=13, out_dir=second)
        first_files = sorted(p.relative_to(first) for p in first.rglob("*") if p.is_file())
        second_files = sorted(p.relative_to(second) for p in second.rglob("*") if p.is_file())
        assert first_files == second_files
        for rel in first_files:
            assert (first / rel).read_bytes() == (second / rel).read_bytes()

    def test_seed_changes_content(self, tmp_path):
        generate_corpus(profile(), seed=1, out_dir=tmp_path / "a")
        generate_corpus(profile(), seed=2, out_dir=tmp_path / "b")
        a = (tmp_path / "a" / "ground_truth.jsonl").read_text()
        b = (tmp_path / "b" / "ground_truth.jsonl").read_text()
        assert a != b
