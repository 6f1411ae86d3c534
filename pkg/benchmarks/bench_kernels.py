"""Compare the compiled kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5] [--n 400]
"""
import argparse
import timeit

import numpy as np

import combzero.recurrence as recurrence
import combzero.roots as roots
from combzero._backend import available_backends
from combzero.combo import Combination
from combzero.normalize import NormalizationSeq
from combzero.recurrence import RecurrenceFamily


def _best(fn, repeat, number):
    return min(timeit.repeat(fn, repeat=repeat, number=number)) / number


def _sweep(kern, top):
    # end-to-end certification with every kernel call routed to ``kern``
    saved = recurrence.kernels, roots.kernels
    recurrence.kernels = roots.kernels = kern
    roots.monic_zeros.cache_clear()
    roots.zeta_max.cache_clear()
    try:
        fam, rho, comb = RecurrenceFamily.hermite(), NormalizationSeq.pow2(), Combination((1, 1, 1, 1))
        for n in range(16, top + 1):
            assert roots.certify_qn(fam, rho, comb, n).certified
    finally:
        recurrence.kernels, roots.kernels = saved


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--n", type=int, default=400)
    args = ap.parse_args()
    n = args.n
    fam = RecurrenceFamily.laguerre(0.5)
    b, chat = fam.arrays(n + 1)
    xs = np.linspace(0.0, 4.0 * n, 257)
    d, e = b[:n], np.sqrt(chat[1:n])

    cases = {
        f"monic_tail n={n}, 257 points": lambda k: k.monic_tail(b, chat, xs, n, 3),
        f"tridiag_eigvalsh n={n}": lambda k: k.tridiag_eigvalsh(d, e),
        f"tridiag_extreme n={n}": lambda k: k.tridiag_extreme(d, e),
        "certify sweep n=16..80": lambda k: _sweep(k, 80),
    }
    backends = available_backends()
    names = [k.BACKEND for k in backends]
    print(f"{'case':34s}" + "".join(f"{nm:>12s}" for nm in names) + ("     speedup" if len(names) > 1 else ""))
    for label, fn in cases.items():
        number = 1 if "sweep" in label or "eigvalsh" in label else 20
        times = [_best(lambda k=k: fn(k), args.repeat, number) for k in backends]
        row = f"{label:34s}" + "".join(f"{t * 1e3:10.3f}ms" for t in times)
        if len(times) > 1:
            row += f"{times[0] / times[1]:11.1f}x"
        print(row)
    if len(names) == 1:
        print("compiled extension not built; only the fallback was timed")


if __name__ == "__main__":
    main()
