"""ROUGE-N / ROUGE-L behaviour, symmetry and oracle agreement."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from greeksum_eval.metrics.rouge import lcs_length, rouge_l, rouge_n

from oracles import clipped_overlap_bruteforce, prf_from_counts

tokens = st.lists(st.sampled_from("αβγδε"), max_size=12)


class TestRougeN:
    def test_identity(self):
        assert rouge_n(["α", "β", "γ"], ["α", "β", "γ"], 1).f1 == 1.0

    def test_two_of_three_unigrams(self):
        score = rouge_n(["α", "β", "γ"], ["α", "β", "δ"], 1)
        assert score.precision == pytest.approx(2 / 3)
        assert score.recall == pytest.approx(2 / 3)
        assert score.f1 == pytest.approx(2 / 3)

    def test_empty_candidate(self):
        score = rouge_n([], ["α"], 1)
        assert (score.precision, score.recall, score.f1) == (0.0, 0.0, 0.0)

    def test_empty_reference(self):
        score = rouge_n(["α"], [], 1)
        assert (score.precision, score.recall, score.f1) == (0.0, 0.0, 0.0)

    def test_repeated_tokens_are_clipped(self):
        # candidate repeats the matching token; precision must not be gamed
        score = rouge_n(["α", "α", "α"], ["α", "β"], 1)
        assert score.precision == pytest.approx(1 / 3)
        assert score.recall == pytest.approx(1 / 2)

    def test_order_zero_rejected(self):
        with pytest.raises(ValueError):
            rouge_n(["α"], ["α"], 0)

    @given(tokens, tokens, st.integers(min_value=1, max_value=3))
    @settings(max_examples=300, deadline=None)
    def test_symmetry_swap(self, a, b, n):
        assert rouge_n(a, b, n).precision == rouge_n(b, a, n).recall

    @given(tokens, tokens, st.integers(min_value=1, max_value=3))
    @settings(max_examples=300, deadline=None)
    def test_bounds(self, a, b, n):
        score = rouge_n(a, b, n)
        for value in (score.precision, score.recall, score.f1):
            assert 0.0 <= value <= 1.0

    @given(tokens, tokens, st.integers(min_value=1, max_value=2))
    @settings(max_examples=300, deadline=None)
    def test_matches_bruteforce_oracle(self, a, b, n):
        overlap, cand_total, ref_total = clipped_overlap_bruteforce(a, b, n)
        expected = prf_from_counts(overlap, cand_total, ref_total)
        score = rouge_n(a, b, n)
        assert (score.precision, score.recall, score.f1) == expected

    def test_appending_unmatched_token_never_helps(self):
        rng = random.Random(3)
        for _ in range(200):
            a = [rng.choice("αβγ") for _ in range(rng.randint(1, 8))]
            b = [rng.choice("αβγ") for _ in range(rng.randint(1, 8))]
            before = rouge_n(a, b, 1)
            after = rouge_n(a + ["ω"], b, 1)  # "ω" never occurs in b
            assert after.recall <= before.recall
            # the overlap (precision numerator) cannot grow
            assert after.precision * (len(a) + 1) <= before.precision * len(a) + 1e-12


class TestLcs:
    def test_hand_filled_table(self):
        assert lcs_length(["a", "b", "c", "d", "e"], ["a", "c", "e"]) == 3

    def test_identity(self):
        x = ["α", "β", "γ", "δ"]
        assert lcs_length(x, x) == len(x)

    def test_empty(self):
        assert lcs_length(["α"], []) == 0


class TestRougeL:
    def test_identity(self):
        assert rouge_l(["α", "β"], ["α", "β"]).f1 == 1.0

    def test_hand_computed(self):
        score = rouge_l(["a", "b", "c", "d"], ["a", "c", "d"])
        assert score.precision == pytest.approx(3 / 4)
        assert score.recall == pytest.approx(1.0)
        assert score.f1 == pytest.approx(6 / 7)

    def test_disjoint(self):
        score = rouge_l(["α", "β"], ["γ", "δ"])
        assert (score.precision, score.recall, score.f1) == (0.0, 0.0, 0.0)

    def test_empty_sides(self):
        assert rouge_l([], ["α"]).f1 == 0.0
        assert rouge_l(["α"], []).f1 == 0.0

    @given(tokens, tokens)
    @settings(max_examples=300, deadline=None)
    def test_symmetry_swap(self, a, b):
        assert rouge_l(a, b).precision == rouge_l(b, a).recall

    @given(tokens, tokens)
    @settings(max_examples=300, deadline=None)
    def test_bounds(self, a, b):
        score = rouge_l(a, b)
        for value in (score.precision, score.recall, score.f1):
            assert 0.0 <= value <= 1.0
