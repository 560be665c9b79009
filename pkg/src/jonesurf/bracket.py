"""Kauffman bracket and colored Jones polynomial via Chebyshev cabling.

Brackets are unreduced: a crossingless circle is ``delta = -q^2 - q^-2`` and
the empty diagram is 1. With ``A = t^(-1/4) = q^-1`` the A-smoothing carries
weight ``q^-1`` and the B-smoothing ``q``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product

import numpy as np

from .diagram import Diagram, cable
from .errors import ResourceLimitError
from .laurent import DELTA, LaurentPolynomial

# position pairs joined by each smoothing of (a, b, c, d)
A_PAIRS = ((0, 3), (1, 2))
B_PAIRS = ((0, 1), (2, 3))


@dataclass(frozen=True)
class BracketLimits:
    max_crossings: int = int(os.environ.get("JONESURF_MAX_CROSSINGS", 400))
    max_states: int = int(os.environ.get("JONESURF_MAX_STATES", 3_000_000))
    bruteforce_crossings: int = 16


DEFAULT_LIMITS = BracketLimits()


def chebyshev(n: int) -> list[int]:
    """Coefficients of ``S_n``: ``S_0 = 1``, ``S_1 = x``, ``S_{k+2} = x S_{k+1} - S_k``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    prev, cur = [1], [0, 1]
    if n == 0:
        return prev
    for _ in range(n - 1):
        nxt = [0] + cur
        for k, c in enumerate(prev):
            nxt[k] -= c
        prev, cur = cur, nxt
    return cur


def _loop_count(crossings, smoothing) -> int:
    """Number of circles after smoothing every crossing (union-find on arc ends)."""
    parent: dict = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    # node = (crossing, position); an arc joins its two ends
    ends: dict[int, list] = {}
    for i, x in enumerate(crossings):
        for pos, label in enumerate(x):
            ends.setdefault(label, []).append((i, pos))
            find((i, pos))
    for pair in ends.values():
        union(*pair)
    for i, choice in enumerate(smoothing):
        for p, r in (A_PAIRS if choice else B_PAIRS):
            union((i, p), (i, r))
    return len({find(x) for x in parent})


def bracket_bruteforce(d: Diagram, limits: BracketLimits = DEFAULT_LIMITS) -> LaurentPolynomial:
    """All ``2^c`` Kauffman states, loops counted per state."""
    c = len(d.crossings)
    if c > limits.bruteforce_crossings:
        raise ResourceLimitError(
            f"brute-force bracket limited to {limits.bruteforce_crossings} crossings (got {c})"
        )
    acc: dict[int, int] = {}
    delta_pows: dict[int, LaurentPolynomial] = {}
    for smoothing in product((1, 0), repeat=c):
        loops = _loop_count(d.crossings, smoothing) + d.free_loops
        n_a = sum(smoothing)
        shift = (c - n_a) - n_a
        if loops not in delta_pows:
            delta_pows[loops] = DELTA ** loops
        for e, coef in delta_pows[loops]:
            acc[e + shift] = acc.get(e + shift, 0) + coef
    return LaurentPolynomial(acc)


def crossing_order(crossings) -> list[int]:
    """Greedy sweep order keeping the number of open arc ends small."""
    n = len(crossings)
    if n == 0:
        return []
    incident: dict[int, list[int]] = {}
    for i, x in enumerate(crossings):
        for label in x:
            incident.setdefault(label, []).append(i)
    done = [False] * n
    open_count: dict[int, int] = {}
    order: list[int] = []
    # gain[i] = number of open ends that crossing i would close
    gain = [0] * n
    for _ in range(n):
        best, best_key = -1, None
        for i in range(n):
            if done[i]:
                continue
            closes = gain[i]
            key = (-(2 * closes - 4), -closes, i) if order else (0, 0, i)
            if best_key is None or key < best_key:
                best, best_key = i, key
        done[best] = True
        order.append(best)
        for label in crossings[best]:
            open_count[label] = open_count.get(label, 0) + 1
            for j in incident[label]:
                if not done[j]:
                    gain[j] = sum(1 for l in crossings[j] if open_count.get(l, 0) == 1)
    return order


def _pack_params(d: Diagram) -> tuple[int, int]:
    c = len(d.crossings)
    loops = c + d.components + 1
    bits = c + loops + 3
    offset = (c + 2 * loops) // 4 + 3
    return bits, offset


def _times_delta(r: int, val: int, K: int) -> tuple[int, int]:
    # exponent e = 4*slot + r; delta = -(q^2 + q^-2)
    if r < 2:
        return r + 2, -(val + (val >> K))
    return r - 2, -((val << K) + val)


def kauffman_bracket(d: Diagram, limits: BracketLimits = DEFAULT_LIMITS) -> LaurentPolynomial:
    """Unreduced bracket by a sweep over crossings, merging equal boundary states.

    After each crossing the set of open arc labels is the same for every
    state, so all states live in one table: row ``i`` holds the planar pairing
    of the open ends (as partner indices) plus the residue mod 4 shared by the
    exponents of its polynomial. Rows with equal pairing and residue merge.
    Polynomials are packed into integers, ``K`` bits per power of ``q^4``.
    """
    c = len(d.crossings)
    if c > limits.max_crossings:
        raise ResourceLimitError(f"bracket limited to {limits.max_crossings} crossings (got {c})")
    if c == 0:
        return DELTA ** d.free_loops
    K, off = _pack_params(d)

    open_labels: list[int] = []
    pairing = np.zeros((1, 0), dtype=np.int16)
    residue = np.zeros(1, dtype=np.int8)
    values = np.empty(1, dtype=object)
    values[0] = 1 << (K * off)

    for idx in crossing_order(d.crossings):
        x = d.crossings[idx]
        new_labels = [l for l in dict.fromkeys(x) if l not in open_labels]
        ext = open_labels + new_labels
        pos = {l: i for i, l in enumerate(ext)}
        parts = []
        for pairs, up in ((A_PAIRS, False), (B_PAIRS, True)):
            parts.append(_smooth(pairing, residue, values, x, pairs, up, pos,
                                 len(open_labels), K))
        closed = parts[0][3]
        keep = [i for i, l in enumerate(ext) if l not in closed]
        remap = np.full(len(ext) + 1, -1, dtype=np.int16)
        remap[keep] = np.arange(len(keep), dtype=np.int16)
        open_labels = [ext[i] for i in keep]
        tables = [remap[w[:, keep]] for w, _, _, _ in parts]
        pairing, residue, values = _merge(
            np.concatenate(tables),
            np.concatenate([r for _, r, _, _ in parts]),
            np.concatenate([v for _, _, v, _ in parts]),
        )
        if len(values) > limits.max_states:
            raise ResourceLimitError(
                f"bracket state space exceeded max_states={limits.max_states}"
            )
    total = LaurentPolynomial()
    for res, val in zip(residue.tolist(), values.tolist()):
        for _ in range(d.free_loops):
            res, val = _times_delta(res, val, K)
        total = total + _unpack(val, K, off, res)
    return total


def _smooth(pairing, residue, values, x, pairs, up, pos, n_open, K):
    """Apply one smoothing of crossing ``x`` to every state row."""
    n = len(values)
    work = np.full((n, len(pos)), -1, dtype=np.int16)
    work[:, :n_open] = pairing
    rows = np.arange(n)
    loops = np.zeros(n, dtype=np.int8)
    status = {l: ("open" if pos[l] < n_open else "fresh") for l in pos}
    closed: set[int] = set()
    for p, r in pairs:
        u, v = x[p], x[r]
        if u == v:
            loops += 1
            closed.add(u)
            continue
        iu, iv = pos[u], pos[v]
        su, sv = status[u], status[v]
        if su == "fresh" and sv == "fresh":
            work[:, iu] = iv
            work[:, iv] = iu
            status[u] = status[v] = "open"
            continue
        if su == "fresh":
            iu, iv, u, v = iv, iu, v, u
            su, sv = sv, su
        # u is open from here on
        pu = work[:, iu].copy()
        if sv == "fresh":
            work[rows, pu] = iv
            work[:, iv] = pu
            status[v] = "open"
        else:
            pv = work[:, iv].copy()
            is_loop = pu == iv
            loops += is_loop
            live = ~is_loop
            work[rows[live], pu[live]] = pv[live]
            work[rows[live], pv[live]] = pu[live]
            status[v] = "closed"
            closed.add(v)
        status[u] = "closed"
        closed.add(u)
    res = residue.astype(np.int8).copy()
    vals = values.copy()
    if up:
        wrap = res == 3
        res = np.where(wrap, 0, res + 1).astype(np.int8)
        if wrap.any():
            vals[wrap] = vals[wrap] << K
    else:
        wrap = res == 0
        res = np.where(wrap, 3, res - 1).astype(np.int8)
        if wrap.any():
            vals[wrap] = vals[wrap] >> K
    for _ in range(int(loops.max(initial=0))):
        hit = loops > 0
        low = hit & (res < 2)
        high = hit & (res >= 2)
        if low.any():
            v = vals[low]
            vals[low] = -(v + (v >> K))
            res[low] += 2
        if high.any():
            v = vals[high]
            vals[high] = -((v << K) + v)
            res[high] -= 2
        loops = loops - hit
    return work, res, vals, closed


def _merge(table, residue, values):
    n, width = table.shape
    # partner indices fit in 6 bits; 10 of them per int64 column
    cols = [residue.astype(np.int64)]
    for lo in range(0, width, 10):
        chunk = table[:, lo:lo + 10].astype(np.int64)
        col = np.zeros(n, dtype=np.int64)
        for j in range(chunk.shape[1]):
            col |= chunk[:, j] << (6 * j)
        cols.append(col)
    order = np.lexsort(cols[::-1])
    keys = np.stack([col[order] for col in cols], axis=1)
    starts = np.ones(n, dtype=bool)
    if n > 1:
        starts[1:] = (keys[1:] != keys[:-1]).any(axis=1)
    bounds = np.flatnonzero(starts)
    summed = np.add.reduceat(values[order], bounds) if n else values[:0]
    first = order[bounds]
    nonzero = np.fromiter((v != 0 for v in summed), dtype=bool, count=len(summed))
    return table[first][nonzero], residue[first][nonzero], summed[nonzero]


def _unpack(value: int, K: int, off: int, res: int) -> LaurentPolynomial:
    terms = {}
    mask = (1 << K) - 1
    half = 1 << (K - 1)
    slot = 0
    while value:
        digit = value & mask
        if digit >= half:
            digit -= 1 << K
        value = (value - digit) >> K
        if digit:
            terms[4 * (slot - off) + res] = digit
        slot += 1
    return LaurentPolynomial(terms)


def colored_jones(d: Diagram, n: int, limits: BracketLimits = DEFAULT_LIMITS,
                  bracket=None) -> LaurentPolynomial:
    """Unnormalized colored Jones polynomial ``J_K(n)`` (unknot gives ``[n]`` up to sign)."""
    if n < 1:
        raise ValueError("color n must be >= 1")
    if d.components != 1:
        raise ValueError(f"colored Jones needs a knot diagram (got {d.components} components)")
    bracket = bracket or kauffman_bracket
    coeffs = chebyshev(n - 1)
    total = LaurentPolynomial()
    for k, ck in enumerate(coeffs):
        if ck:
            total = total + bracket(cable(d, k), limits) * ck if k else total + ck
    sign = -1 if (n - 1) % 2 else 1
    w = d.writhe
    # ((-1)^(n-1) t^((n^2-1)/4))^w (-1)^(n-1), with t^(1/4) = q
    framing = LaurentPolynomial.monomial((n * n - 1) * w, sign ** (w % 2) * sign)
    return framing * total
