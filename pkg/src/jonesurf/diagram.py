"""PD-coded knot and link diagrams.

A crossing is a quadruple ``(a, b, c, d)`` of arc labels. ``a`` is the
incoming under-strand, the under-strand leaves through ``c``, and ``b``/``d``
are the two ends of the over-strand, listed in cyclic order around the
crossing. A crossing is positive when the over-strand runs from ``b`` to ``d``.

With that rule the classic code ``X 1 4 2 5, X 3 6 4 1, X 5 2 6 3`` is a
trefoil of writhe +3, and the smoothing convention used by
:mod:`jonesurf.bracket` is chosen to agree with it (see ``A_PAIRS`` there).

Records are ``X a b c d``. A bare ``O`` adds a crossingless circle, which is
how split unknotted components are written. Empty input is the 0-crossing
unknot.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property


class PDError(ValueError):
    pass


Crossing = tuple[int, int, int, int]


@dataclass(frozen=True)
class Diagram:
    crossings: tuple[Crossing, ...] = ()
    free_loops: int = 0
    name: str = field(default="", compare=False)

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    @cached_property
    def _orientation(self) -> tuple[tuple[int, ...], int]:
        return _orient(self.crossings)

    @property
    def signs(self) -> tuple[int, ...]:
        return self._orientation[0]

    @property
    def components(self) -> int:
        return self._orientation[1] + self.free_loops

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    @property
    def positive(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    @property
    def negative(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    def mirror(self) -> "Diagram":
        return mirror(self)

    def to_pd(self) -> str:
        lines = [f"X {a} {b} {c} {d}" for a, b, c, d in self.crossings]
        lines += ["O"] * self.free_loops
        return "\n".join(lines) + ("\n" if lines else "")


def _arc_counts(crossings) -> Counter:
    return Counter(label for x in crossings for label in x)


def _bad_arcs(crossings) -> list[int]:
    return sorted(label for label, n in _arc_counts(crossings).items() if n != 2)


def _occurrences(crossings) -> dict[int, list[tuple[int, int]]]:
    occ: dict[int, list[tuple[int, int]]] = {}
    for i, x in enumerate(crossings):
        for pos, label in enumerate(x):
            occ.setdefault(label, []).append((i, pos))
    return occ


def _other(occ, label, here):
    first, second = occ[label]
    return second if first == here else first


def _orient(crossings) -> tuple[tuple[int, ...], int]:
    """Propagate strand orientations; return (crossing signs, #components)."""
    bad = _bad_arcs(crossings)
    if bad:
        raise PDError(f"inconsistent PD code: arcs {bad} do not appear exactly twice")
    occ = _occurrences(crossings)
    # label -> the (crossing, position) where the arc ends
    head: dict[int, tuple[int, int]] = {}
    starts = {x[0] for x in crossings}
    pending = sorted(occ, key=lambda lab: (lab not in starts, lab))
    components = 0
    for label in pending:
        if label in head:
            continue
        components += 1
        if label in starts:
            i = next(i for i, x in enumerate(crossings) if x[0] == label)
            enter = (i, 0)
        else:
            enter = occ[label][0]
        cur = label
        while cur not in head:
            head[cur] = enter
            i, pos = enter
            if pos == 2:
                raise PDError(
                    f"inconsistent PD code: arc {cur} enters crossing {i} at the "
                    "outgoing under position"
                )
            nxt = crossings[i][(pos + 2) % 4]
            enter = _other(occ, nxt, (i, (pos + 2) % 4))
            cur = nxt
    signs = []
    for i, x in enumerate(crossings):
        if head[x[0]] != (i, 0):
            raise PDError(f"inconsistent PD code: under-strand orientation at crossing {i}")
        # over-strand enters at position 1 (b -> d) or 3 (d -> b)
        if head[x[1]] == (i, 1):
            signs.append(1)
        elif head[x[3]] == (i, 3):
            signs.append(-1)
        else:
            raise PDError(f"inconsistent PD code: over-strand orientation at crossing {i}")
    return tuple(signs), components


_TOKEN = re.compile(r"[^\s,\[\]()]+")


def parse_pd(text: str, name: str = "") -> Diagram:
    """Parse ``X a b c d`` records (and ``O`` circles); ``#`` starts a comment."""
    tokens: list[str] = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        tokens.extend(_TOKEN.findall(line))
    if not tokens:
        return Diagram((), 1, name=name)
    crossings: list[Crossing] = []
    loops = 0
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if tok in ("X", "x"):
            chunk = tokens[i + 1:i + 5]
            if len(chunk) < 4:
                raise PDError(f"parse error: truncated crossing record at token {i}")
            try:
                crossings.append(tuple(int(t) for t in chunk))
            except ValueError:
                raise PDError(f"parse error: non-numeric arc label in {chunk}") from None
            i += 5
        elif tok in ("O", "o"):
            loops += 1
            i += 1
        elif tok == "PD":
            i += 1
        else:
            raise PDError(f"parse error: unexpected token {tok!r}")
    d = Diagram(tuple(crossings), loops, name=name)
    d._orientation  # validate eagerly
    return d


def load_pd(path) -> Diagram:
    from pathlib import Path

    path = Path(path)
    return parse_pd(path.read_text(), name=path.stem)


def writhe(d: Diagram) -> int:
    return d.writhe


def mirror(d: Diagram) -> Diagram:
    out = []
    for x, s in zip(d.crossings, d.signs):
        a, b, c, e = x
        # the incoming end of the old over-strand becomes the new ``a``
        out.append((b, c, e, a) if s > 0 else (e, a, b, c))
    return Diagram(tuple(out), d.free_loops, name=d.name + "*" if d.name else "")


def disjoint_union(d1: Diagram, d2: Diagram) -> Diagram:
    shift = max((abs(l) for x in d1.crossings for l in x), default=0)
    moved = tuple(tuple(l + shift for l in x) for x in d2.crossings)
    return Diagram(d1.crossings + moved, d1.free_loops + d2.free_loops)


def relabel(d: Diagram) -> Diagram:
    """Renumber arcs 1..2c in order of first appearance."""
    mapping: dict[int, int] = {}
    out = []
    for x in d.crossings:
        out.append(tuple(mapping.setdefault(l, len(mapping) + 1) for l in x))
    return Diagram(tuple(out), d.free_loops, name=d.name)


def cable(d: Diagram, m: int) -> Diagram:
    """Blackboard-framed ``m``-parallel of ``d``.

    Each crossing becomes an ``m x m`` grid. Copies are indexed by their
    offset to one fixed side of the oriented strand, so copy ``k`` of an arc
    is the same strand at both of its ends.
    """
    if m < 0:
        raise ValueError("cable size must be non-negative")
    if m == 0:
        return Diagram((), 0, name=f"{d.name}^0" if d.name else "")
    if m == 1:
        return d
    fresh = iter(range(1, 1 << 62))
    ext: dict[tuple[int, int], int] = {}

    def outer(label: int, k: int) -> int:
        key = (label, k)
        if key not in ext:
            ext[key] = next(fresh)
        return ext[key]

    out: list[Crossing] = []
    for x, s in zip(d.crossings, d.signs):
        a, b, c, e = x
        under = [[outer(a, k)] + [next(fresh) for _ in range(m - 1)] + [outer(c, k)]
                 for k in range(m)]
        over = [[outer(e, j)] + [next(fresh) for _ in range(m - 1)] + [outer(b, j)]
                for j in range(m)]
        for k in range(m):
            for j in range(m):
                # rank of over-copy j along under-copy k
                r = m - 1 - j if s < 0 else j
                out.append((under[k][r], over[j][k + 1], under[k][r + 1], over[j][k]))
    name = f"{d.name}^{m}" if d.name else ""
    return relabel(Diagram(tuple(out), d.free_loops * m, name=name))


@dataclass
class ValidationReport:
    ok: bool
    bad_arcs: list[int]
    orientation_error: str | None
    components: int | None
    crossings: int

    def __str__(self) -> str:
        if self.ok:
            return f"ok: {self.crossings} crossings, {self.components} component(s)"
        msg = []
        if self.bad_arcs:
            msg.append(f"arcs not appearing exactly twice: {self.bad_arcs}")
        if self.orientation_error:
            msg.append(self.orientation_error)
        return "invalid: " + "; ".join(msg)


def validate(d: Diagram) -> ValidationReport:
    bad = _bad_arcs(d.crossings)
    if bad:
        return ValidationReport(False, bad, None, None, len(d.crossings))
    try:
        _, comps = _orient(d.crossings)
    except PDError as exc:
        return ValidationReport(False, [], str(exc), None, len(d.crossings))
    return ValidationReport(True, [], None, comps + d.free_loops, len(d.crossings))


def braid_closure(word, strands: int | None = None, name: str = "") -> Diagram:
    """Closure of a braid word: ``k`` is ``sigma_k``, ``-k`` its inverse (1-based).

    ``sigma_k`` crosses positions ``k`` and ``k+1`` and closes to a positive crossing.
    """
    word = [int(g) for g in word]
    if strands is None:
        strands = max((abs(g) for g in word), default=0) + 1
    current = list(range(1, strands + 1))
    fresh = strands + 1
    crossings: list[list[int]] = []
    for g in word:
        i = abs(g) - 1
        if not 0 <= i < strands - 1:
            raise ValueError(f"generator {g} out of range for {strands} strands")
        left_in, right_in = current[i], current[i + 1]
        top_left, top_right = fresh, fresh + 1
        fresh += 2
        if g > 0:
            crossings.append([right_in, left_in, top_left, top_right])
        else:
            crossings.append([left_in, top_left, top_right, right_in])
        current[i], current[i + 1] = top_left, top_right
    close = {top: bottom for bottom, top in zip(range(1, strands + 1), current)}
    touched = {l for x in crossings for l in x}
    loops = sum(1 for b in range(1, strands + 1) if b not in touched)
    out = tuple(tuple(close.get(l, l) for l in x) for x in crossings)
    return relabel(Diagram(out, loops, name=name))
