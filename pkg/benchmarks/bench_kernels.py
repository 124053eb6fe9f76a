"""Compare the compiled and pure-Python reduction kernels.

    python3 benchmarks/bench_kernels.py [--repeat N] [--heavy]

Each workload is run once per backend to warm caches, then timed N times;
the best time is reported.  Both backends must produce identical bases.
"""

import argparse
import time

from liaison import kernels
from liaison.groebner import buchberger
from liaison.ideals import Ideal
from liaison.polyring import GF, QQ, polynomial_ring
from liaison.resolution import betti_table, minimal_free_resolution


def cyclic(n, field):
    v = [f"z{i}" for i in range(n)]
    R = polynomial_ring(" ".join(v), field=field)
    gens = [" + ".join("*".join(v[(i + j) % n] for j in range(k)) for i in range(n)) for k in range(1, n)]
    gens.append("*".join(v) + " - 1")
    return [R.parse(g) for g in gens]


def katsura(n, field):
    v = [f"u{i}" for i in range(n + 1)]
    R = polynomial_ring(" ".join(v), field=field)

    def u(i):
        return v[abs(i)] if abs(i) <= n else None

    gens = [" + ".join(("2*" if i else "") + v[i] for i in range(n + 1)) + " - 1"]
    for m in range(n):
        terms = [f"{u(l)}*{u(m - l)}" for l in range(-n, n + 1) if u(l) and u(m - l)]
        gens.append(" + ".join(terms) + f" - {v[m]}")
    return [R.parse(g) for g in gens]


def workloads(heavy):
    for fname, field in (("GF(32003)", GF(32003)), ("QQ", QQ)):
        yield f"gb katsura-4 {fname}", lambda f=field: buchberger(katsura(4, f))
        yield f"gb katsura-5 {fname}", lambda f=field: buchberger(katsura(5, f))
        yield f"gb cyclic-5 {fname}", lambda f=field: buchberger(cyclic(5, f))
    yield "gb cyclic-6 GF(32003)", lambda: buchberger(cyclic(6, GF(32003)))
    if heavy:
        yield "gb cyclic-6 QQ", lambda: buchberger(cyclic(6, QQ))
    R5 = polynomial_ring("x0 x1 x2 x3 x4")
    rnc = ["x0*x2 - x1^2", "x0*x3 - x1*x2", "x0*x4 - x1*x3", "x1*x3 - x2^2", "x1*x4 - x2*x3", "x2*x4 - x3^2"]
    yield "betti rational quartic", lambda: betti_table(minimal_free_resolution(Ideal.parse(R5, rnc)))


def bench(fn, repeat):
    out = fn()
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def fingerprint(out):
    if hasattr(out, "elements"):
        return [g._t for g in out.elements]
    return out.entries


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--heavy", action="store_true", help="include cyclic-6 over QQ (tens of seconds)")
    args = ap.parse_args()
    names = [b for b in ("python", "cython") if b in kernels.BACKENDS]
    if len(names) < 2:
        print("compiled extension not built; only the python backend is available")
    before = kernels.BACKEND
    print(f"{'workload':26s}" + "".join(f"{n:>10s}" for n in names) + ("   speedup" if len(names) == 2 else ""))
    try:
        for label, fn in workloads(args.heavy):
            times, prints = [], []
            for name in names:
                kernels.set_backend(name)
                t, out = bench(fn, args.repeat)
                times.append(t)
                prints.append(fingerprint(out))
            assert all(p == prints[0] for p in prints), f"{label}: backends disagree"
            row = f"{label:26s}" + "".join(f"{t:10.3f}" for t in times)
            if len(times) == 2:
                row += f"{times[0] / times[1]:9.2f}x"
            print(row)
    finally:
        kernels.set_backend(before)


if __name__ == "__main__":
    main()
