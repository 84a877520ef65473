"""Benchmark the compiled LCS kernel against the pure-Python fallback.

Simulates a full-split ROUGE-L run: thousands of candidate/reference pairs at
news-summary lengths. Run with ``python benchmarks/bench_kernels.py``.
"""

from __future__ import annotations

import random
import time

from greeksum_eval import kernels
from greeksum_eval.kernels import _pure


def make_pairs(count: int, seed: int = 2024) -> list[tuple[list[str], list[str]]]:
    rng = random.Random(seed)
    vocab = [f"w{i}" for i in range(2000)]
    pairs = []
    for _ in range(count):
        cand = [rng.choice(vocab) for _ in range(rng.randint(20, 80))]
        ref = [rng.choice(vocab) for _ in range(rng.randint(15, 40))]
        pairs.append((cand, ref))
    return pairs


def run(backend, pairs) -> tuple[float, int]:
    started = time.perf_counter()
    checksum = 0
    for cand, ref in pairs:
        ea, eb = kernels._encode(cand, ref)
        checksum += backend(ea, eb)
    return time.perf_counter() - started, checksum


def main() -> None:
    pairs = make_pairs(3000)
    print(f"LCS over {len(pairs)} candidate/reference pairs "
          f"(lengths 20-80 vs 15-40 tokens)\n")

    pure_time, pure_sum = run(_pure.lcs_length_ids, pairs)
    print(f"  pure python : {pure_time:8.3f}s")

    if kernels.BACKEND == "cython":
        from greeksum_eval.kernels import _native

        native_time, native_sum = run(_native.lcs_length_ids, pairs)
        assert native_sum == pure_sum, "backends disagree"
        print(f"  cython      : {native_time:8.3f}s")
        print(f"\n  speedup     : {pure_time / native_time:8.1f}x")
    else:
        print("  cython      : not built (install compiles it; "
              "GREEKSUM_EVAL_PURE=1 forces the fallback)")


if __name__ == "__main__":
    main()
