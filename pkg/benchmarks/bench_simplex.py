"""Time the GMP tableau against the pure-Python one.

    python3 benchmarks/bench_simplex.py [--repeat 3] [--games 10]

Workloads: dense random LPs of a few sizes, and the full per-game pipeline
used by the Figure 2 sweep (NE, SSE and the SSE-in-NE check).  Both
backends pivot identically, so the optimal values are asserted equal.
"""
import argparse
import random
import time
from fractions import Fraction as F

from secgame.experiments import GeneratorParams, evaluate_game, generate_game
from secgame.lp import GE, LE, MAXIMIZE, LinearProgram, available_backends, solve_lp


def dense_lp(rng, n, m):
    # feasible by construction: every row holds at an interior anchor point
    lp = LinearProgram()
    anchor = [F(rng.randint(1, 9), rng.randint(1, 4)) for _ in range(n)]
    for j in range(n):
        lp.add_variable(f"x{j}", 0, 10)
    for _ in range(m):
        a = [F(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n)]
        rel = rng.choice([LE, LE, GE])
        slack = F(rng.randint(0, 20), rng.randint(1, 7))
        b = sum(ai * xi for ai, xi in zip(a, anchor)) + (slack if rel == LE else -slack)
        lp.add_constraint(a, rel, b)
    lp.set_objective([F(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(n)], MAXIMIZE)
    return lp


def best_of(fn, repeat):
    out, best = None, float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return out, best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--games", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    backends = available_backends()
    print(f"backends: {', '.join(backends)}")
    if len(backends) < 2:
        print("GMP kernel not built, only the Python tableau can be timed")

    cases = []
    for n, m, k in ((5, 8, 40), (12, 16, 10), (25, 30, 3)):
        rng = random.Random(args.seed + n)
        lps = [dense_lp(rng, n, m) for _ in range(k)]
        cases.append((f"{k} dense LPs {n}x{m}",
                      lambda be, lps=lps: [solve_lp(lp, be).objective_value for lp in lps]))
    for size, L in ((1, 1), (2, 1), (1, 2)):
        p = GeneratorParams(10, 2, L, size, 10, args.games, args.seed)
        gs = [generate_game(p, i) for i in range(args.games)]
        cases.append((f"{args.games} games n=10 size={size} L={L}",
                      lambda be, gs=gs: [evaluate_game(g, be) for g in gs]))

    head = f"{'workload':<30}" + "".join(f"{b:>12}" for b in backends)
    if len(backends) == 2:
        head += f"{'speedup':>10}"
    print(head)
    for name, fn in cases:
        results, times = [], []
        for be in backends:
            r, t = best_of(lambda: fn(be), args.repeat)
            results.append(r)
            times.append(t)
        assert all(r == results[0] for r in results), f"backends disagree on {name}"
        line = f"{name:<30}" + "".join(f"{t:>11.3f}s" for t in times)
        if len(times) == 2:
            line += f"{times[backends.index('python')] / times[backends.index('gmp')]:>9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
