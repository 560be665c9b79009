"""Degree table and slope data for the torus-knot calibration.

Computes J_K(n) by cabling for small n, checks each value against Morton's
closed formula, then fits the degree quasi-polynomials on the longer
formula-backed range. Also prints the unknot detector under both readings.

    python scripts/degree_table.py --cabled 6 --n-max 10
"""

import argparse
import time
from pathlib import Path

from jonesurf.degrees import (UNKNOT_JS, CableBrackets, degree_sequence, detect_unknot,
                              slopes_from_sequence)
from jonesurf.diagram import load_pd
from jonesurf.oracles import torus_colored_jones, unknot_colored_jones

KNOTS = Path(__file__).resolve().parents[1] / "src" / "jonesurf" / "data" / "knots"
CASES = (("trefoil", 2, 3), ("8_19", 3, 4))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cabled", type=int, default=5, help="largest color computed by cabling")
    ap.add_argument("--n-max", type=int, default=10)
    args = ap.parse_args()

    for name, a, b in CASES:
        cb = CableBrackets(load_pd(KNOTS / f"{name}.pd"))
        print(f"== {name} = T({a},{b})")
        print(f"{'n':>3} {'d+':>8} {'d-':>8}  source")
        for n, hi, lo in degree_sequence(None, args.n_max,
                                         jones=lambda n: torus_colored_jones(a, b, n)):
            src = "formula"
            if n <= args.cabled:
                t0 = time.perf_counter()
                same = cb.colored_jones(n) == torus_colored_jones(a, b, n)
                src = f"cabled, {'agrees' if same else 'DISAGREES'} ({time.perf_counter() - t0:.2f}s)"
            print(f"{n:>3} {str(hi):>8} {str(lo):>8}  {src}")
        rows = degree_sequence(None, args.n_max, jones=lambda n: torus_colored_jones(a, b, n))
        s = slopes_from_sequence(rows)
        print(f"js={sorted(map(str, s.js))} js*={sorted(map(str, s.js_star))} "
              f"jx={sorted(map(str, s.jx))} jx*={sorted(map(str, s.jx_star))} period={s.period}")

    u = slopes_from_sequence(degree_sequence(None, 8, jones=unknot_colored_jones))
    print("== unknot")
    print(f"js={sorted(map(str, u.js))} jx={sorted(map(str, u.jx))}")
    print(f"detector on jx with reference 1: {detect_unknot(u)}")
    print(f"detector on js with reference {UNKNOT_JS}: {detect_unknot(u, UNKNOT_JS, 'js')}")


if __name__ == "__main__":
    main()
