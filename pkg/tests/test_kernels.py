"""Backend equivalence and correctness of the LCS kernel."""

import random

import pytest

from greeksum_eval import kernels
from greeksum_eval.kernels import _pure

from oracles import lcs_memoized


def test_examples():
    assert kernels.lcs_length(list("abcde"), list("ace")) == 3
    assert kernels.lcs_length(list("abc"), list("abc")) == 3
    assert kernels.lcs_length(list("abc"), []) == 0
    assert kernels.lcs_length([], []) == 0
    assert kernels.lcs_length(list("abc"), list("xyz")) == 0


def test_matches_memoized_oracle():
    rng = random.Random(20240817)
    for _ in range(300):
        a = [rng.choice("αβγδε") for _ in range(rng.randint(0, 10))]
        b = [rng.choice("αβγδε") for _ in range(rng.randint(0, 10))]
        assert kernels.lcs_length(a, b) == lcs_memoized(a, b)


def test_pure_backend_agrees_with_dispatcher():
    rng = random.Random(7)
    for _ in range(200):
        a = [rng.choice("abcde") for _ in range(rng.randint(0, 40))]
        b = [rng.choice("abcde") for _ in range(rng.randint(0, 40))]
        ea, eb = kernels._encode(a, b)
        assert _pure.lcs_length_ids(ea, eb) == kernels.lcs_length(a, b)


@pytest.mark.skipif(kernels.BACKEND != "cython", reason="compiled kernel not built")
def test_native_backend_agrees_with_pure():
    from greeksum_eval.kernels import _native

    rng = random.Random(99)
    for _ in range(300):
        a = [rng.randrange(50) for _ in range(rng.randint(0, 64))]
        b = [rng.randrange(50) for _ in range(rng.randint(0, 64))]
        ea, eb = kernels._encode(a, b)
        assert _native.lcs_length_ids(ea, eb) == _pure.lcs_length_ids(ea, eb)


def test_backend_name_is_reported():
    assert kernels.BACKEND in ("cython", "python")
