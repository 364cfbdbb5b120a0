"""Timing comparison of the compiled coefficient kernel and the pure fallback.

Runs the shared dense mod-p primitives on identical randomized inputs and
reports microseconds per call for each backend. The dispatch rule in
mkt.zkernel sends word-sized primes to the compiled extension when it is
importable; primes at or above 2^31 always use the pure path, so they are
benchmarked pure-only here.

Usage: python3 benchmarks/bench_kernel.py [--trials N] [--seed S]
"""

import argparse
import random
import time

from mkt import _zpoly_py as pure
from mkt import zkernel

try:
    from mkt import _zpoly as compiled
except ImportError:
    compiled = None

SMALL_PRIMES = (5, 65537, 2147483629)
BIG_PRIME = 2 ** 61 - 1


def rand_poly(rng, deg, p):
    # canonical trimmed list, exact degree
    c = [rng.randrange(p) for _ in range(deg)]
    c.append(rng.randrange(1, p))
    return c


def bench(fn, calls, trials):
    # calls is a list of prepared argument tuples, cycled over the trials
    t0 = time.perf_counter()
    for i in range(trials):
        fn(*calls[i % len(calls)])
    return (time.perf_counter() - t0) / trials * 1e6


def op_cases(rng, p, deg):
    a = [rand_poly(rng, deg, p) for _ in range(8)]
    b = [rand_poly(rng, deg, p) for _ in range(8)]
    wide = [rand_poly(rng, 2 * deg, p) for _ in range(8)]
    f = rand_poly(rng, deg, p)
    e = 10 ** 9 + 7
    return {
        "mul": [(x, y, p) for x, y in zip(a, b)],
        "divmod": [(w, x, p) for w, x in zip(wide, a)],
        "gcd": [(x, y, p) for x, y in zip(a, b)],
        "powmod": [(x, e, f, p) for x in b],
        "eval": [(w, rng.randrange(p), p) for w in wide],
    }


def run(trials, seed):
    rng = random.Random(seed)
    print(f"selected backend: {zkernel.backend_name()}")
    if compiled is None:
        print("compiled extension not importable; timing the pure kernel only")
    header = f"{'p':>12}  {'deg':>4}  {'op':<7} {'compiled':>10}  {'pure':>10}  {'ratio':>6}"
    print(header)
    print("-" * len(header))
    for p in SMALL_PRIMES:
        for deg in (16, 64, 256):
            cases = op_cases(rng, p, deg)
            for op, calls in cases.items():
                n = trials if deg < 256 else max(trials // 8, 1)
                if op == "powmod":
                    n = max(n // 8, 1)
                t_py = bench(getattr(pure, "zp_" + op), calls, n)
                if compiled is None:
                    print(f"{p:>12}  {deg:>4}  {op:<7} {'-':>10}  {t_py:>8.1f}us  {'-':>6}")
                    continue
                t_c = bench(getattr(compiled, "zp_" + op), calls, n)
                ratio = t_py / t_c if t_c > 0 else float("inf")
                print(f"{p:>12}  {deg:>4}  {op:<7} {t_c:>8.1f}us  {t_py:>8.1f}us  {ratio:>5.1f}x")
    # the dispatcher itself, at a prime past the compiled word bound
    cases = op_cases(rng, BIG_PRIME, 64)
    t = bench(zkernel.zp_mul, cases["mul"], trials)
    print(f"\nzkernel.zp_mul at p = 2^61-1 (routed pure): {t:.1f}us per call")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    run(args.trials, args.seed)


if __name__ == "__main__":
    main()
