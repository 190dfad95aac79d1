import math
import random

import numpy as np
import pytest

from serpsim.errors import EmptyHistogram
from serpsim.textpipe import (
    paired_cdf,
    shingle,
    shingle_code,
    term_histogram,
    tokenize,
)


class TestTokenize:
    def test_case_fold_and_punctuation(self):
        assert tokenize("The cat, the CAT") == ("the", "cat", "the", "cat")

    def test_empty(self):
        assert tokenize("") == ()

    def test_letter_sequence(self):
        assert tokenize("a b e a e") == ("a", "b", "e", "a", "e")

    def test_unicode_whitespace_and_punctuation(self):
        assert tokenize("foo bar—baz…qux") == ("foo", "bar", "baz", "qux")

    def test_underscore_is_punctuation(self):
        assert tokenize("a_b") == ("a", "b")

    def test_no_empty_tokens(self):
        assert "" not in tokenize("... , ;; a !")


class TestShingle:
    def test_three_distinct_windows_with_duplicate_dropped(self):
        # (a,b,c,a,b,c) with window 3 has four windows but the last repeats
        # the first, so only three distinct shingles survive.
        got = shingle(tuple("abcabc"), window=3)
        expected = {shingle_code(w) for w in [("a", "b", "c"), ("b", "c", "a"), ("c", "a", "b")]}
        assert got.shingles == frozenset(expected)

    def test_reversed_sequence_shares_nothing(self):
        fwd = shingle(tuple("abcabc"), window=3).shingles
        rev = shingle(tuple("cbacba"), window=3).shingles
        assert len(rev) == 3
        assert fwd & rev == frozenset()

    def test_cap_binds(self):
        seq = tuple(f"t{i}" for i in range(2000))
        got = shingle(seq, window=10, cap=1000)
        assert len(got) == 1000

    def test_short_sequence_one_whole_shingle(self):
        got = shingle(("only", "two"), window=10)
        assert got.shingles == frozenset({shingle_code(("only", "two"))})

    def test_empty_sequence(self):
        assert shingle((), window=10).shingles == frozenset()

    def test_repetition_invariance(self):
        base = tuple("xyzw")
        doubled = base * 3
        assert shingle(base * 2, window=2).shingles == shingle(doubled, window=2).shingles

    def test_window_must_be_positive(self):
        with pytest.raises(ValueError):
            shingle(tuple("abc"), window=0)

    def test_codes_are_stable_64_bit(self):
        code = shingle_code(("hello", "world"))
        assert code == shingle_code(("hello", "world"))
        assert 0 <= code < 2**64
        assert code != shingle_code(("world", "hello"))


class TestTermHistogram:
    def test_counts_and_total(self):
        h = term_histogram(tuple("abeae"))
        assert h.counts == {"a": 2, "b": 1, "e": 2}
        assert h.total == 5

    def test_second_example(self):
        h = term_histogram(tuple("haea"))
        assert h.counts == {"a": 2, "e": 1, "h": 1}
        assert h.total == 4

    def test_empty(self):
        h = term_histogram(())
        assert h.counts == {} and h.total == 0

    def test_concatenates_multiple_sequences(self):
        h = term_histogram(("a", "b"), ("b", "c"))
        assert h.counts == {"a": 1, "b": 2, "c": 1}


class TestPairedCdf:
    def test_golden_pair(self):
        cdf = paired_cdf(term_histogram(tuple("abeae")), term_histogram(tuple("haea")))
        assert cdf.support == ("a", "b", "e", "h")
        np.testing.assert_allclose(cdf.f_sigma, [0.4, 0.6, 1.0, 1.0])
        np.testing.assert_allclose(cdf.f_pi, [0.5, 0.5, 0.75, 1.0])

    def test_identical_histograms(self):
        h = term_histogram(tuple("abcabc"))
        cdf = paired_cdf(h, h)
        np.testing.assert_array_equal(cdf.f_sigma, cdf.f_pi)

    def test_disjoint_vocabularies(self):
        cdf = paired_cdf(term_histogram(("a",)), term_histogram(("b",)))
        assert cdf.support == ("a", "b")
        np.testing.assert_allclose(cdf.f_sigma, [1.0, 1.0])
        np.testing.assert_allclose(cdf.f_pi, [0.0, 1.0])

    def test_swap_symmetry(self):
        h1 = term_histogram(tuple("aabbcx"))
        h2 = term_histogram(tuple("bccdd"))
        fwd = paired_cdf(h1, h2)
        back = paired_cdf(h2, h1)
        assert fwd.support == back.support
        np.testing.assert_array_equal(fwd.f_sigma, back.f_pi)
        np.testing.assert_array_equal(fwd.f_pi, back.f_sigma)

    def test_empty_histogram_rejected(self):
        with pytest.raises(EmptyHistogram):
            paired_cdf(term_histogram(()), term_histogram(("a",)))

    def test_random_cdfs_monotone_and_end_at_one(self):
        rng = random.Random(20240611)
        vocab = [f"w{i}" for i in range(30)]
        for _ in range(500):
            seq1 = tuple(rng.choices(vocab, k=rng.randint(1, 60)))
            seq2 = tuple(rng.choices(vocab, k=rng.randint(1, 60)))
            cdf = paired_cdf(term_histogram(seq1), term_histogram(seq2))
            for arr in (cdf.f_sigma, cdf.f_pi):
                assert np.all(np.diff(arr) >= 0)
                assert math.isclose(arr[-1], 1.0, abs_tol=1e-12)
