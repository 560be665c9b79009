"""Regenerate the bundled PD corpus from braid words and print determinants.

The determinant |V(-1)| is a cheap identity check for each knot: 4_1 -> 5,
8_19 -> 3, 8_20 -> 9, 8_21 -> 15.
"""

import cmath
from pathlib import Path

from jonesurf.bracket import colored_jones
from jonesurf.diagram import braid_closure, parse_pd
from jonesurf.laurent import DELTA
from jonesurf.oracles import divexact

OUT = Path(__file__).resolve().parents[1] / "src" / "jonesurf" / "data" / "knots"

BRAIDS = {
    "figure8": ([1, -2, 1, -2], 3),
    "8_19": ([1, 2] * 4, 3),
    "8_20": ([1, 1, 1, -2, -1, -1, -1, -2], 3),
    "8_21": ([-1, -1, -1, -2, 1, 1, -2, -2], 3),
}
LITERAL = {
    "unknot": "# zero-crossing unknot\n",
    "trefoil": "# right-handed trefoil, writhe +3\nX 1 4 2 5\nX 3 6 4 1\nX 5 2 6 3\n",
    "unlink2": "# two-component unlink\nO\nO\n",
}


def determinant(d) -> int:
    # normalized Jones at t = -1, i.e. q = exp(i pi / 4)
    v = divexact(colored_jones(d, 2), DELTA)
    q = cmath.exp(1j * cmath.pi / 4)
    val = sum(c * q ** e for e, c in v)
    return round(abs(val))


def to_text(d, comment: str) -> str:
    lines = [f"# {comment}"] + [f"X {a} {b} {c} {e}" for a, b, c, e in d.crossings]
    return "\n".join(lines) + "\n"


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    for name, text in LITERAL.items():
        (OUT / f"{name}.pd").write_text(text)
    for name, (word, strands) in BRAIDS.items():
        d = braid_closure(word, strands, name)
        (OUT / f"{name}.pd").write_text(to_text(d, f"{name}: closure of braid {word}"))
    for path in sorted(OUT.glob("*.pd")):
        d = parse_pd(path.read_text(), path.stem)
        det = determinant(d) if d.components == 1 else None
        print(f"{path.stem:10s} crossings={d.crossing_count:2d} components={d.components} "
              f"writhe={d.writhe:3d} det={det}")


if __name__ == "__main__":
    main()
