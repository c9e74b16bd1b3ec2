"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Each kernel is timed on both backends with identical inputs and the outputs
are checked to agree before timings are reported.
"""

import argparse
import random
import timeit

from shadowjones import _pykernels

try:
    from shadowjones import _ckernels
except ImportError:
    _ckernels = None


def cases():
    rng = random.Random(1)
    a = [rng.randint(-10**6, 10**6) for _ in range(600)]
    b = [rng.randint(-10**6, 10**6) for _ in range(600)]
    return [
        ("convolve 600x600", "convolve", (a, b)),
        ("log_qfact_table d=5001", "log_qfact_table", (5001,)),
        ("log_binomial_power_sum k=250", "log_binomial_power_sum", (250, 501, 4.0)),
        ("log_binomial_power_sum k=2500", "log_binomial_power_sum", (2500, 5001, 4.0)),
    ]


def _agree(x, y):
    if isinstance(x, (list, tuple)):
        return len(x) == len(y) and all(_agree(p, q) for p, q in zip(x, y))
    if isinstance(x, float):
        return abs(x - y) <= 1e-12 * max(1.0, abs(x))
    return x == y


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled extension not built; only the Python backend is available")
    print(f"{'kernel':34s} {'python (ms)':>12s} {'cython (ms)':>12s} {'speed-up':>9s}")
    for label, name, argv in cases():
        py = getattr(_pykernels, name)
        t_py = min(timeit.repeat(lambda: py(*argv), number=1, repeat=args.repeat)) * 1e3
        if _ckernels is None:
            print(f"{label:34s} {t_py:12.3f} {'-':>12s} {'-':>9s}")
            continue
        c = getattr(_ckernels, name)
        if not _agree(py(*argv), c(*argv)):
            raise SystemExit(f"backends disagree on {label}")
        t_c = min(timeit.repeat(lambda: c(*argv), number=1, repeat=args.repeat)) * 1e3
        print(f"{label:34s} {t_py:12.3f} {t_c:12.3f} {t_py / t_c:8.1f}x")


if __name__ == "__main__":
    main()
