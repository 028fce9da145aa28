"""Throughput of the numba kernels against the pure-NumPy fallback.

Usage::

    python benchmarks/bench_kernels.py --spec 5,5,5 --batch 2000 --repeat 3
"""

import argparse
import time

import numpy as np

from spcpc import ProductCode, kernels, set_backend
from spcpc._jit import NUMBA_AVAILABLE


def _cases(code, batch, rng):
    llr = rng.normal(1.0, 1.5, size=(batch, code.n))
    erased = rng.random((batch, code.n)) < 0.3
    rx = np.where(erased, kernels.ERASED, 0).astype(np.int8)
    zeros = np.zeros((batch, code.n), dtype=np.uint8)
    cases = {
        "sc_llr": lambda: kernels.sc_llr(code, llr, False),
        "elias_llr": lambda: kernels.elias_llr(code, llr, False),
        "sc_ternary": lambda: kernels.sc_ternary(code, rx),
    }
    if code.k <= 64:
        cases["ml_erasure"] = lambda: kernels.ml_erasure(code, erased, zeros)
    return cases


def _time(fn, repeat):
    fn()  # warm-up, includes JIT compilation
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--spec", default="5,5,5")
    parser.add_argument("--batch", type=int, default=2000)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    code = ProductCode.parse(args.spec)
    cases = _cases(code, args.batch, np.random.default_rng(args.seed))
    backends = ["numpy"] + (["numba"] if NUMBA_AVAILABLE else [])
    print(f"code n={code.n} k={code.k}, batch={args.batch}, best of {args.repeat}")
    print(f"{'kernel':<12}" + "".join(f"{b + ' [words/s]':>22}" for b in backends) + f"{'speedup':>10}")
    prev = set_backend("numpy")
    try:
        for name, fn in cases.items():
            rates = []
            for b in backends:
                set_backend(b)
                rates.append(args.batch / _time(fn, args.repeat))
            speed = f"{rates[1] / rates[0]:>9.1f}x" if len(rates) == 2 else f"{'n/a':>10}"
            print(f"{name:<12}" + "".join(f"{r:>22.0f}" for r in rates) + speed)
    finally:
        set_backend(prev)


if __name__ == "__main__":
    main()
