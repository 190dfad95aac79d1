import math
import random

import numpy as np
import pytest

from conftest import doc
from serpsim.distsim import (
    Measure,
    consensus_duplicate,
    observed_distance,
    overlap_gate,
    p_value,
    phi,
    suite_all,
    suite_distance,
)
from serpsim.errors import EmptyHistogram
from serpsim.textpipe import PairedCdf, paired_cdf, term_histogram


def hist(text: str):
    return term_histogram(tuple(text.split()))


def random_hist(rng, vocab, max_len=40):
    return term_histogram(tuple(rng.choices(vocab, k=rng.randint(1, max_len))))


class TestPhi:
    def test_golden_histograms(self):
        cdf = paired_cdf(hist("a b e a e"), hist("h a e a"))
        assert phi(cdf) == pytest.approx(0.25 / math.sqrt(0.125), abs=1e-12)
        assert phi(cdf) == pytest.approx(0.70711, abs=1e-4)

    def test_identical_distributions(self):
        h = hist("x y z x")
        assert phi(paired_cdf(h, h)) == 0.0

    def test_sharp_upper_bound_witness(self):
        cdf = paired_cdf(hist("a"), hist("b"))
        np.testing.assert_allclose(cdf.f_sigma, [1.0, 1.0])
        np.testing.assert_allclose(cdf.f_pi, [0.0, 1.0])
        assert phi(cdf) == pytest.approx(1 / math.sqrt(0.5), abs=1e-12)
        assert phi(cdf) == pytest.approx(math.sqrt(2), abs=1e-12)

    def test_symmetry_and_range(self):
        rng = random.Random(41)
        vocab = [f"w{i}" for i in range(15)]
        for _ in range(2000):
            h1, h2 = random_hist(rng, vocab), random_hist(rng, vocab)
            fwd = phi(paired_cdf(h1, h2))
            back = phi(paired_cdf(h2, h1))
            assert fwd == back
            assert 0.0 <= fwd <= math.sqrt(2) + 1e-12

    def test_zero_denominator_positions_contribute_zero(self):
        # Both CDFs saturate at 1 before the end of the support.
        cdf = PairedCdf(support=("a", "b"), f_sigma=np.array([1.0, 1.0]), f_pi=np.array([1.0, 1.0]))
        assert phi(cdf) == 0.0


class TestObservedDistances:
    def test_zero_on_identical_for_every_measure(self):
        h = hist("alpha beta beta gamma")
        for m in Measure:
            assert observed_distance(m, h, h) == 0.0

    def test_symmetric_for_every_measure(self):
        rng = random.Random(43)
        vocab = [f"w{i}" for i in range(12)]
        for _ in range(300):
            h1, h2 = random_hist(rng, vocab), random_hist(rng, vocab)
            for m in Measure:
                assert observed_distance(m, h1, h2) == pytest.approx(
                    observed_distance(m, h2, h1), abs=1e-12
                )

    def test_nonnegative(self):
        rng = random.Random(44)
        vocab = [f"w{i}" for i in range(10)]
        for _ in range(500):
            h1, h2 = random_hist(rng, vocab), random_hist(rng, vocab)
            for m in Measure:
                assert observed_distance(m, h1, h2) >= 0.0

    def test_empty_histogram_rejected(self):
        with pytest.raises(EmptyHistogram):
            observed_distance(Measure.PHI, term_histogram(()), hist("a"))


class TestOverlapGate:
    def test_identical_vocabulary_gate_off(self):
        assert overlap_gate(hist("a b c"), hist("c b a a")) is False

    def test_disjoint_vocabulary_gate_on(self):
        assert overlap_gate(hist("a b"), hist("x y")) is True

    def test_boundary_inclusive(self):
        # 3 shared terms, union of 10: ratio exactly 0.30 passes the gate.
        h1 = hist("a b c d e f")
        h2 = hist("a b c x y z w")
        assert overlap_gate(h1, h2) is False

    def test_just_below_boundary(self):
        # 3 shared of 11 is below 0.30.
        h1 = hist("a b c d e f")
        h2 = hist("a b c x y z w v")
        assert overlap_gate(h1, h2) is True


class TestPValue:
    def test_identical_histograms_give_one(self):
        h = hist("a a b c")
        assert p_value(Measure.HELLINGER, h, h, seed=1) == 1.0

    def test_large_disjoint_histograms_reject(self):
        h1 = term_histogram(tuple(f"a{i}" for i in range(50)) * 3)
        h2 = term_histogram(tuple(f"b{i}" for i in range(50)) * 3)
        for m in Measure:
            assert p_value(m, h1, h2, resamples=199, seed=5) <= 0.05

    def test_deterministic_given_seed(self):
        rng = random.Random(47)
        vocab = [f"w{i}" for i in range(8)]
        for _ in range(50):
            h1, h2 = random_hist(rng, vocab), random_hist(rng, vocab)
            for m in (Measure.PHI, Measure.CANBERRA):
                first = p_value(m, h1, h2, resamples=49, seed=123)
                second = p_value(m, h1, h2, resamples=49, seed=123)
                assert first == second

    def test_symmetric_in_arguments(self):
        rng = random.Random(48)
        vocab = [f"w{i}" for i in range(8)]
        for _ in range(100):
            h1, h2 = random_hist(rng, vocab), random_hist(rng, vocab)
            for m in (Measure.KOLMOGOROV_SMIRNOV, Measure.EUCLID):
                assert p_value(m, h1, h2, resamples=49, seed=9) == p_value(
                    m, h2, h1, resamples=49, seed=9
                )

    def test_in_unit_interval(self):
        rng = random.Random(49)
        vocab = [f"w{i}" for i in range(6)]
        for _ in range(200):
            h1, h2 = random_hist(rng, vocab), random_hist(rng, vocab)
            for m in Measure:
                p = p_value(m, h1, h2, resamples=19, seed=3)
                assert 0.0 <= p <= 1.0


class TestSuite:
    def test_gated_pair_pins_distance_and_p(self):
        h1, h2 = hist("a b"), hist("x y")
        for m in Measure:
            r = suite_distance(m, h1, h2, seed=1)
            assert r.gated is True
            assert r.distance == 1.0 and r.p_value == 1.0

    def test_ungated_identical_pair(self):
        h = hist("m n o p q")
        for r in suite_all(h, h, seed=2):
            assert r.gated is False
            assert r.distance == 0.0
            assert r.p_value == 1.0

    def test_suite_covers_all_ten_measures(self):
        h = hist("a b c")
        results = suite_all(h, h, seed=0)
        assert [r.measure for r in results] == list(Measure)
        assert len(results) == 10


class TestConsensusDuplicate:
    def test_identical_documents_all_vote(self):
        d = doc("u", "the quick brown fox jumps over the lazy dog")
        verdict = consensus_duplicate(d, doc("v", d.body), seed=11)
        assert verdict.votes_duplicate == 10
        assert verdict.is_duplicate is True

    def test_low_overlap_documents_fully_gated(self):
        verdict = consensus_duplicate(
            doc("u", "alpha beta gamma delta"), doc("v", "one two three four"), seed=11
        )
        assert verdict.votes_duplicate == 0
        assert verdict.is_duplicate is False
        assert all(r.gated for r in verdict.per_measure)

    def test_same_histogram_different_order_is_duplicate(self):
        verdict = consensus_duplicate(doc("u", "a b c a b c"), doc("v", "c b a c b a"), seed=11)
        assert verdict.is_duplicate is True

    def test_empty_document_not_comparable(self):
        verdict = consensus_duplicate(doc("u", ""), doc("v", "some text"), seed=11)
        assert verdict.votes_duplicate == 0
        assert verdict.is_duplicate is False
        assert verdict.per_measure == ()

    def test_symmetric(self):
        rng = random.Random(53)
        vocab = [f"w{i}" for i in range(10)]
        for _ in range(100):
            d1 = doc("u", " ".join(rng.choices(vocab, k=rng.randint(1, 12))))
            d2 = doc("v", " ".join(rng.choices(vocab, k=rng.randint(1, 12))))
            fwd = consensus_duplicate(d1, d2, resamples=19, seed=5)
            back = consensus_duplicate(d2, d1, resamples=19, seed=5)
            assert fwd == back

    def test_deterministic(self):
        d1 = doc("u", "one two three four five one two")
        d2 = doc("v", "two three four six seven two")
        first = consensus_duplicate(d1, d2, seed=77)
        second = consensus_duplicate(d1, d2, seed=77)
        assert first == second
