"""Compare the compiled and pure-Python edit kernels.

    python3 benchmarks/bench_kernels.py [--words N] [--repeat R]

Checks that both backends return identical results on the sample, then
reports the best-of-R wall time per kernel and the speedup.
"""
import argparse
import random
import sys
import timeit
from pathlib import Path

from ctxspell import _pykernels

try:
    from ctxspell import _kernels
except ImportError:
    _kernels = None

DEFAULT_LEXICON = Path(__file__).resolve().parents[1] / "tests" / "data" / "lexicon.tsv"


def sample_words(path, n, rng):
    forms = [line.split("\t", 1)[0].lower() for line in path.read_text(encoding="utf-8").splitlines()
             if line and not line.startswith("#")]
    forms = sorted({f for f in forms if f.isalpha() and f.isascii()})
    return rng.sample(forms, min(n, len(forms)))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--lexicon", type=Path, default=DEFAULT_LEXICON)
    ap.add_argument("--words", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)

    if _kernels is None:
        print("compiled extension not built; run `pip install -e . --no-build-isolation` first")
        return 1

    rng = random.Random(args.seed)
    words = sample_words(args.lexicon, args.words, rng)
    pairs = [(a, b) for a, b in zip(words, words[1:])]

    for w in words:
        assert _kernels.damerau_neighbors(w) == _pykernels.damerau_neighbors(w), w
    for a, b in pairs:
        assert _kernels.osa_distance(a, b) == _pykernels.osa_distance(a, b), (a, b)

    cases = {
        "damerau_neighbors": lambda m: [m.damerau_neighbors(w) for w in words],
        "osa_distance": lambda m: [m.osa_distance(a, b) for a, b in pairs],
    }
    print(f"{len(words)} words, {len(pairs)} pairs, best of {args.repeat}")
    print(f"{'kernel':<20}{'python s':>10}{'cython s':>10}{'speedup':>9}")
    for name, fn in cases.items():
        py = min(timeit.repeat(lambda: fn(_pykernels), number=1, repeat=args.repeat))
        cy = min(timeit.repeat(lambda: fn(_kernels), number=1, repeat=args.repeat))
        print(f"{name:<20}{py:>10.4f}{cy:>10.4f}{py / cy:>8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
