"""Compare the compiled F_p kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N] [--steps N]

Times ``surd_run`` on random monic sextics and on the sqrt input with
regulators 6 and 7 at p = 5, 11, plus polynomial multiplication and division.
"""

import argparse
import random
import timeit

from cfreduce import _kernels_py as pure

try:
    from cfreduce import _kernels as compiled
except ImportError:
    compiled = None

D2 = [2, 2, 3, -2, 1]


def _sqrt_part(d, p):
    from cfreduce.algebra import GF, Poly
    from cfreduce.series import series_sqrt
    poly = Poly(d, GF(p))
    return [int(c) for c in series_sqrt(poly, poly.deg).floor().coeffs]


def workloads(steps: int):
    rng = random.Random(1)
    out = []
    for p in (5, 11):
        d = [c % p for c in D2]
        out.append((f"surd_run D2 mod {p}", "surd_run", (d, _sqrt_part(d, p), p, steps, True)))
    p = 10007
    sextics = []
    for _ in range(5):
        d = [rng.randrange(p) for _ in range(6)] + [1]
        sextics.append((d, _sqrt_part(d, p), p, steps, False))
    out.append((f"surd_run 5 sextics mod {p}, {steps} steps", "surd_batch", sextics))
    a = [rng.randrange(p) for _ in range(60)]
    b = [rng.randrange(p) for _ in range(25)] + [1]
    out.append(("poly_mul deg 59 x 25", "poly_mul", (a, b, p)))
    out.append(("poly_divmod deg 59 / 25", "poly_divmod", (a, b, p)))
    return out


def run(mod, op, args):
    if op == "surd_batch":
        for case in args:
            mod.surd_run(*case)
    else:
        getattr(mod, op)(*args)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--steps", type=int, default=200)
    args = ap.parse_args(argv)
    impls = [("python", pure)] + ([("cython", compiled)] if compiled else [])
    if compiled is None:
        print("compiled kernels not built; timing the pure-Python fallback only")
    print(f"{'workload':44} " + " ".join(f"{n:>10}" for n, _ in impls) + "   speedup")
    for label, op, wargs in workloads(args.steps):
        times = []
        for _, mod in impls:
            number = 1 if op.startswith("surd") else 200
            t = min(timeit.repeat(lambda: run(mod, op, wargs), number=number,
                                  repeat=args.repeat)) / number
            times.append(t)
        row = f"{label:44} " + " ".join(f"{t * 1e3:8.3f}ms" for t in times)
        if len(times) == 2:
            row += f"   {times[0] / times[1]:6.1f}x"
        print(row)


if __name__ == "__main__":
    main()
