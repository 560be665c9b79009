"""Run the decision pipeline on the bundled demo triangulation in four settings.

Prints the overall status of: the annotation oracle as shipped, the same
oracle with the max-side witness relabelled not-essential, the slope
removed from the boundary-slope set, and the assume-essential mode.
Pass ``--json`` to dump the baseline report.
"""

import argparse
from pathlib import Path

from jonesurf.conjecture import (EssentialityOracle, PipelineConfig, check_strong_slope,
                                 corollary_check, load_slopes)
from jonesurf.normal import load_triangulation

TRIS = Path(__file__).resolve().parents[1] / "src" / "jonesurf" / "data" / "triangulations"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    tri = load_triangulation(TRIS / "demo.tri")
    slopes = load_slopes(TRIS / "demo_slopes.json")

    def oracle():
        return EssentialityOracle.load(TRIS / "demo.oracle")

    base = check_strong_slope(slopes, tri, oracle())
    if args.json:
        print(base.dumps(), end="")
        return
    print(f"baseline          {base.status.value}")
    for v in base.verdicts:
        w = v.witness
        print(f"  {v.side} slope {v.slope}: {v.status.value}, witness chi={w['chi']} "
              f"sheets={w['sheets']} x={w['x_value']}")
    top = next(v for v in base.verdicts if v.side == "max")
    flipped = oracle().with_label(top.witness["coords"], "not-essential")
    r = check_strong_slope(slopes, tri, flipped)
    print(f"witness flipped   {r.status.value}")
    for v in r.verdicts:
        for note in v.notes:
            print(f"  {v.side} slope {v.slope}: {note}")
    kept = frozenset(base.boundary_slopes) - {top.slope}
    r = check_strong_slope(slopes, tri, oracle(), PipelineConfig(boundary_slopes=kept))
    print(f"slope removed     {r.status.value} (missing {[str(s) for s in r.membership.missing]})")
    r = check_strong_slope(slopes, tri, EssentialityOracle.assume_essential())
    print(f"assume-essential  {r.status.value}")
    again = check_strong_slope(slopes, tri, oracle())
    print(f"deterministic     {again.dumps() == base.dumps()}")
    print(f"corollary at {top.slope}: {corollary_check(base, top.slope, True).reason}")


if __name__ == "__main__":
    main()
