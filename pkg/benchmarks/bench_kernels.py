"""Compare the compiled and pure-Python kernel backends.

Each backend runs in its own interpreter (the backend is fixed at import):

    python benchmarks/bench_kernels.py            # both, side by side
    python benchmarks/bench_kernels.py --inner    # one run in this process
"""

import argparse
import json
import os
import random
import subprocess
import sys
import time
import timeit


def _random_poly(rng, kern, terms, deg):
    return {kern.pack(rng.randint(0, deg), rng.randint(0, deg), rng.randint(0, deg)):
            rng.randint(-10**6, 10**6) or 1 for _ in range(terms)}


def inner(repeat):
    from yk import kernels
    from yk.symfun import all_of_degree
    from yk.yangian import verify_relations

    rng = random.Random(0)
    a = _random_poly(rng, kernels, 40, 6)
    b = _random_poly(rng, kernels, 40, 6)
    ab = kernels.pmul(a, b)
    out = {"backend": kernels.BACKEND}
    for name, fn in (("pmul 40x40", lambda: kernels.pmul(a, b)),
                     ("pdivexact", lambda: kernels.pdivexact(ab, b)),
                     ("ppow ^4", lambda: kernels.ppow(a, 4))):
        out[name] = min(timeit.repeat(fn, number=20, repeat=repeat)) / 20
    t0 = time.perf_counter()
    all_of_degree(5, 2)
    verify_relations(1, 1, 4, 2)
    out["3-Jacks deg 5 + relations (N=2)"] = time.perf_counter() - t0
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--inner", action="store_true")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if args.inner:
        print(json.dumps(inner(args.repeat)))
        return
    rows = {}
    for flag in ("0", "1"):
        env = dict(os.environ, YK_PURE_PYTHON=flag)
        res = subprocess.run([sys.executable, __file__, "--inner", "--repeat", str(args.repeat)],
                             env=env, capture_output=True, text=True, check=True)
        r = json.loads(res.stdout)
        rows[r.pop("backend")] = r
    names = list(next(iter(rows.values())))
    backends = list(rows)
    print(f"{'benchmark':36}" + "".join(f"{b:>14}" for b in backends) + f"{'speedup':>10}")
    for n in names:
        vals = [rows[b][n] for b in backends]
        speed = rows["python"][n] / rows["cython"][n] if {"python", "cython"} <= set(rows) else 1
        print(f"{n:36}" + "".join(f"{v * 1e3:12.3f}ms" for v in vals) + f"{speed:9.2f}x")


if __name__ == "__main__":
    main()
