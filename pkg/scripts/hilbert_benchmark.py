"""Time both Hilbert basis procedures on random systems and check them by brute force.

    python scripts/hilbert_benchmark.py --systems 50 --bound 15 --seed 0
"""

import argparse
import time

import numpy as np

from jonesurf.hilbert import DiophantineSystem, hilbert_basis, verify_basis


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--systems", type=int, default=50)
    ap.add_argument("--bound", type=int, default=15)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-eqs", type=int, default=4)
    ap.add_argument("--max-vars", type=int, default=8)
    ap.add_argument("--completion", action="store_true",
                    help="also time the completion procedure (slow on 3+ equations)")
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    totals = {"pottier": 0.0, "completion": 0.0}
    bad = 0
    print(f"{'#':>3} {'m':>2} {'n':>2} {'size':>5} {'pottier':>9} {'completion':>11}  check")
    for k in range(args.systems):
        m = int(rng.integers(1, args.max_eqs + 1))
        n = int(rng.integers(2, args.max_vars + 1))
        sys_ = DiophantineSystem(rng.integers(-5, 6, size=(m, n)).tolist())
        t0 = time.perf_counter()
        basis = hilbert_basis(sys_)
        tp = time.perf_counter() - t0
        totals["pottier"] += tp
        tc = "-"
        if args.completion:
            t0 = time.perf_counter()
            same = hilbert_basis(sys_, method="completion") == basis
            dt = time.perf_counter() - t0
            totals["completion"] += dt
            tc = f"{dt:.3f}" + ("" if same else " DIFF")
        rep = verify_basis(sys_, basis, args.bound)
        bad += not rep.ok
        print(f"{k:>3} {m:>2} {n:>2} {len(basis):>5} {tp:>9.3f} {tc:>11}  {'ok' if rep.ok else rep}")
    print(f"total pottier {totals['pottier']:.2f}s"
          + (f", completion {totals['completion']:.2f}s" if args.completion else "")
          + f"; {bad} failures")


if __name__ == "__main__":
    main()
