"""Compare the compiled and pure-Python kernels on representative workloads.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--quick]
"""

import argparse
import math
import time

from permgen import kernels
from permgen.groups import GroupHandle
from permgen.pairs import OmegaTriple, build_pair


def pair_arrays(n, k, s=1):
    p = build_pair(OmegaTriple(n, k, s))
    return GroupHandle([p.a, p.b]).arrays


def workloads(quick):
    degrees = (12, 20) if quick else (12, 20, 30, 40)
    for n in degrees:
        gens = pair_arrays(n, 4 if n % 4 else 6)
        bound = math.factorial(n) // 2
        yield f"schreier_sims n={n}", lambda m, g=gens, n=n, b=bound: m.schreier_sims(g, n, b)
    gens = pair_arrays(40, 30)
    yield "minimal_block x39 n=40", lambda m, g=gens: [m.minimal_block(g, 40, 0, b)
                                                          for b in range(1, 40)]
    gens = pair_arrays(12, 5)
    yield "tuple_orbit n=12 t=5", lambda m, g=gens: m.tuple_orbit_size(g, 12, 5, 10**7)
    gens = pair_arrays(8, 3)
    yield "closure n=8 (A_8)", lambda m, g=gens: m.closure_size(g, 8, 10**6)


def best_of(fn, mod, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(mod)
        best = min(best, time.perf_counter() - start)
    return best, result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller degrees only")
    args = ap.parse_args(argv)
    mods = kernels.backends()
    names = [m.BACKEND for m in mods]
    print(f"{'workload':<26}" + "".join(f"{n:>12}" for n in names)
          + ("     speedup" if len(mods) == 2 else ""))
    for label, fn in workloads(args.quick):
        times = []
        results = []
        for m in mods:
            t, r = best_of(fn, m, args.repeat)
            times.append(t)
            results.append(r)
        if len(results) == 2 and results[0] != results[1]:
            raise SystemExit(f"backends disagree on {label}")
        row = f"{label:<26}" + "".join(f"{t * 1e3:>10.1f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
