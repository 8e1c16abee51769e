"""Throughput comparison of the compiled and pure-Python tokenizers.

Runs both implementations over the fixture corpus (repeated to a useful
size) and prints tokens/second plus the speedup.  The compiled backend
is the default at import time; this script calls both directly.

Usage: python3 benchmarks/bench_lexer.py [--repeats N] [--rounds N]
"""

import argparse
import time
from pathlib import Path

from cohwatch.cpp import _tokenizer_py

try:
    from cohwatch.cpp import _tokenizer_cy
except ImportError:
    _tokenizer_cy = None

FIXTURE = Path(__file__).parent.parent / "tests" / "data" / \
    "fifty_functions.cpp"


def bench(impl, text, rounds):
    tokens = 0
    best = float("inf")
    for _ in range(rounds):
        started = time.perf_counter()
        toks, err_off, err_msg = impl.tokenize(text)
        elapsed = time.perf_counter() - started
        assert err_off < 0, err_msg
        tokens = len(toks)
        best = min(best, elapsed)
    return tokens, best


def main():
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--repeats", type=int, default=40,
                        help="fixture file repetitions per round")
    parser.add_argument("--rounds", type=int, default=5,
                        help="timed rounds; the best one counts")
    args = parser.parse_args()

    text = FIXTURE.read_text(encoding="utf-8") * args.repeats
    print(f"corpus: {len(text):,} chars "
          f"({args.repeats}x fixture, best of {args.rounds} rounds)")

    tokens_py, t_py = bench(_tokenizer_py, text, args.rounds)
    print(f"pure python: {tokens_py:>9,} tokens in {t_py * 1e3:8.2f} ms "
          f"({tokens_py / t_py / 1e6:6.2f} M tokens/s)")

    if _tokenizer_cy is None:
        print("compiled:    not built (pip install -e . rebuilds it)")
        return

    tokens_cy, t_cy = bench(_tokenizer_cy, text, args.rounds)
    assert tokens_cy == tokens_py, "backends disagree on token count"
    print(f"compiled:    {tokens_cy:>9,} tokens in {t_cy * 1e3:8.2f} ms "
          f"({tokens_cy / t_cy / 1e6:6.2f} M tokens/s)")
    print(f"speedup: {t_py / t_cy:.1f}x")


if __name__ == "__main__":
    main()
