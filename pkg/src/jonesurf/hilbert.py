"""Minimal non-negative solutions of homogeneous integer systems ``A x = 0``.

Two independent procedures compute the basis: pair completion over one
hyperplane at a time (the default) and Contejean-Devie completion.
:func:`bounded_minimal_solutions` is an exhaustive search used as the oracle.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import ResourceLimitError

Vector = tuple[int, ...]


@dataclass(frozen=True)
class DiophantineSystem:
    matrix: tuple[tuple[int, ...], ...]
    unknowns: int

    def __init__(self, matrix: Sequence[Sequence[int]], unknowns: int | None = None):
        rows = tuple(tuple(int(x) for x in row) for row in matrix)
        if unknowns is None:
            if not rows:
                raise ValueError("unknowns must be given for an empty system")
            unknowns = len(rows[0])
        if any(len(r) != unknowns for r in rows):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "matrix", rows)
        object.__setattr__(self, "unknowns", int(unknowns))

    @property
    def equations(self) -> int:
        return len(self.matrix)

    def array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=np.int64).reshape(self.equations, self.unknowns)

    def residual(self, v: Sequence[int]) -> Vector:
        return tuple(sum(a * x for a, x in zip(row, v)) for row in self.matrix)

    def solves(self, v: Sequence[int]) -> bool:
        return all(r == 0 for r in self.residual(v))


@dataclass(frozen=True)
class HilbertLimits:
    max_frontier: int = int(os.environ.get("JONESURF_MAX_FRONTIER", 200_000))
    max_solutions: int = int(os.environ.get("JONESURF_MAX_SOLUTIONS", 20_000))
    max_level: int = int(os.environ.get("JONESURF_MAX_LEVEL", 10_000))


DEFAULT_LIMITS = HilbertLimits()


def _dominates(v: np.ndarray, basis: np.ndarray) -> np.ndarray:
    """Row mask: which rows of ``v`` are >= some row of ``basis``."""
    if len(basis) == 0 or len(v) == 0:
        return np.zeros(len(v), dtype=bool)
    out = np.zeros(len(v), dtype=bool)
    # chunk to keep the broadcast small
    step = max(1, 2_000_000 // (len(basis) * v.shape[1] + 1))
    for lo in range(0, len(v), step):
        block = v[lo:lo + step]
        out[lo:lo + step] = (block[:, None, :] >= basis[None, :, :]).all(axis=2).any(axis=1)
    return out


def _completion(A: np.ndarray, limits: HilbertLimits) -> np.ndarray:
    """Contejean-Devie completion for ``A y = 0``; rows of the result are the minimal solutions."""
    n = A.shape[1]
    cols = A.T  # A e_j
    frontier = np.eye(n, dtype=np.int64)
    residual = cols.copy()
    basis = np.zeros((0, n), dtype=np.int64)
    level = 1
    while len(frontier):
        solved = ~residual.any(axis=1)
        if solved.any():
            basis = np.concatenate([basis, np.unique(frontier[solved], axis=0)])
            if len(basis) > limits.max_solutions:
                raise ResourceLimitError(
                    f"hilbert basis exceeded max_solutions={limits.max_solutions}",
                    partial=_sorted(basis),
                )
        frontier, residual = frontier[~solved], residual[~solved]
        if not len(frontier):
            break
        level += 1
        if level > limits.max_level:
            raise ResourceLimitError(f"hilbert basis exceeded max_level={limits.max_level}",
                                     partial=_sorted(basis))
        # <A v, A e_j> < 0 selects the directions that shrink the residual
        rows, js = np.nonzero(residual @ cols.T < 0)
        cand = frontier[rows].copy()
        cand[np.arange(len(rows)), js] += 1
        cres = residual[rows] + cols[js]
        if len(cand):
            cand, idx = np.unique(cand, axis=0, return_index=True)
            cres = cres[idx]
            keep = ~_dominates(cand, basis)
            cand, cres = cand[keep], cres[keep]
        if len(cand) > limits.max_frontier:
            raise ResourceLimitError(
                f"hilbert basis exceeded max_frontier={limits.max_frontier} at level {level}",
                partial=_sorted(basis),
            )
        frontier, residual = cand, cres
    return basis


def _minimal_rows(rows: np.ndarray) -> np.ndarray:
    """Rows not dominating another row. Equal-sum rows never dominate each other."""
    if not len(rows):
        return rows
    rows = np.unique(rows, axis=0)
    sums = rows.sum(axis=1)
    keep = np.zeros((0, rows.shape[1]), dtype=rows.dtype)
    for level in np.unique(sums):
        block = rows[sums == level]
        block = block[~_dominates(block, keep)]
        keep = np.concatenate([keep, block])
    return keep


def _reducible(S: np.ndarray, ls: np.ndarray, T: np.ndarray, lt: np.ndarray,
               mode: int) -> np.ndarray:
    """Mask over ``S``: some ``t < s`` in ``T`` with ``lt`` on the same side as ``ls``.

    ``mode`` 1 asks ``0 < lt <= ls``, -1 asks ``ls <= lt < 0``, 0 drops the condition.
    Strict ``t < s`` is ``t <= s`` with a smaller coordinate sum.
    """
    out = np.zeros(len(S), dtype=bool)
    if not len(T) or not len(S):
        return out
    ts = T.sum(axis=1)
    ss = S.sum(axis=1)
    step = max(1, 4_000_000 // (len(T) + 1))
    for lo in range(0, len(S), step):
        blk = S[lo:lo + step]
        hit = ts[None, :] < ss[lo:lo + step, None]
        if mode > 0:
            hit &= lt[None, :] <= ls[lo:lo + step, None]
        elif mode < 0:
            hit &= lt[None, :] >= ls[lo:lo + step, None]
        for j in range(S.shape[1]):
            if not hit.any():
                break
            hit &= T[None, :, j] <= blk[:, j, None]
        out[lo:lo + step] = hit.any(axis=1)
    return out


def _fresh(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    if not len(X) or not len(Y):
        return X
    seen = {r.tobytes() for r in Y}
    return X[[r.tobytes() not in seen for r in X]]


def _cut(B: np.ndarray, a: np.ndarray, limits: HilbertLimits) -> np.ndarray:
    """Minimal generators of ``{x in monoid(B) : a.x = 0}`` by pair completion.

    Positive and negative elements are summed pairwise until no new element
    survives reduction; the zero-level elements that remain irreducible are
    the answer.
    """
    l = B @ a
    Z, P, N = B[l == 0], B[l > 0], B[l < 0]
    newP, newN = P, N
    while len(newP) or len(newN):
        pairs = []
        if len(newP) and len(N):
            pairs.append((newP[:, None, :] + N[None, :, :]).reshape(-1, B.shape[1]))
        if len(P) and len(newN):
            pairs.append((P[:, None, :] + newN[None, :, :]).reshape(-1, B.shape[1]))
        if not pairs:
            break
        S = np.unique(np.concatenate(pairs), axis=0)
        if len(S) > limits.max_frontier:
            raise ResourceLimitError(
                f"hilbert basis exceeded max_frontier={limits.max_frontier}",
                partial=_sorted(Z))
        ls = S @ a
        PZ, NZ = np.concatenate([P, Z]), np.concatenate([N, Z])
        addP, addN, addZ = S[ls > 0], S[ls < 0], S[ls == 0]
        addP = addP[~_reducible(addP, addP @ a, PZ, PZ @ a, 1)]
        addN = addN[~_reducible(addN, addN @ a, NZ, NZ @ a, -1)]
        addZ = addZ[~_reducible(addZ, addZ @ a, Z, Z @ a, 0)]
        addP, addN, addZ = _fresh(addP, P), _fresh(addN, N), _fresh(addZ, Z)
        addP = addP[~_reducible(addP, addP @ a, addP, addP @ a, 1)]
        addN = addN[~_reducible(addN, addN @ a, addN, addN @ a, -1)]
        addZ = _minimal_rows(addZ)
        P, N, Z = (np.concatenate([P, addP]), np.concatenate([N, addN]),
                   np.concatenate([Z, addZ]))
        if len(P) + len(N) + len(Z) > limits.max_solutions:
            raise ResourceLimitError(
                f"hilbert basis exceeded max_solutions={limits.max_solutions}",
                partial=_sorted(Z))
        newP, newN = addP, addN
    return _minimal_rows(Z)


def _pottier(A: np.ndarray, limits: HilbertLimits) -> np.ndarray:
    """Intersect with one hyperplane at a time, cheapest cut first."""
    B = np.eye(A.shape[1], dtype=np.int64)
    rows = [r for r in A if r.any()]
    while rows and len(B):
        def cost(k):
            l = B @ rows[k]
            return int((l > 0).sum()) * int((l < 0).sum())
        B = _cut(B, rows.pop(min(range(len(rows)), key=cost)), limits)
    return B


def hilbert_basis(sys: DiophantineSystem, limits: HilbertLimits = DEFAULT_LIMITS,
                  method: str = "pottier") -> list[Vector]:
    """Every minimal nonzero solution in ``N^n``, sorted lexicographically.

    ``method="pottier"`` cuts the positive orthant by one equation at a time
    (pair completion); ``"completion"`` is the Contejean-Devie procedure.
    They agree; the first is much faster once there are several equations.
    """
    A = sys.array()
    if method == "pottier":
        rows = _pottier(A, limits)
    elif method == "completion":
        rows = _completion(A, limits)
    else:
        raise ValueError(f"unknown method {method!r}")
    if len(rows) > limits.max_solutions:
        raise ResourceLimitError(f"hilbert basis exceeded max_solutions={limits.max_solutions}",
                                 partial=_sorted(rows))
    return _sorted(rows)


def _sorted(rows: np.ndarray) -> list[Vector]:
    return sorted({tuple(int(x) for x in r) for r in rows})


# -- oracle -------------------------------------------------------------------

def _column_order(A: np.ndarray) -> list[int]:
    """Order unknowns so that equations become fully assigned early."""
    m, n = A.shape
    support = [set(np.flatnonzero(A[i])) for i in range(m)]
    order: list[int] = []
    left = set(range(n))
    while left:
        def score(j):
            closes = sum(1 for s in support if j in s and s <= set(order) | {j})
            touches = sum(1 for s in support if j in s)
            return (-closes, -touches, j)
        j = min(left, key=score)
        order.append(j)
        left.remove(j)
    return order


def bounded_solutions(sys: DiophantineSystem, bound: int) -> np.ndarray:
    """All nonzero solutions with coordinate sum ``<= bound`` (exhaustive)."""
    n = sys.unknowns
    A = sys.array()
    order = _column_order(A)
    pos = {j: k for k, j in enumerate(order)}
    # equation i is checkable once its last unknown (in sweep order) is placed
    ready: dict[int, list[int]] = {}
    for i in range(A.shape[0]):
        nz = np.flatnonzero(A[i])
        if len(nz):
            ready.setdefault(max(pos[j] for j in nz), []).append(i)
    prefix = np.zeros((1, 0), dtype=np.int16)
    total = np.zeros(1, dtype=np.int32)
    for k, j in enumerate(order):
        room = bound - total
        reps = room + 1
        base = np.repeat(np.arange(len(prefix)), reps)
        starts = np.cumsum(reps) - reps
        vals = (np.arange(reps.sum()) - np.repeat(starts, reps)).astype(np.int16)
        prefix = np.concatenate([prefix[base], vals[:, None]], axis=1)
        total = total[base] + vals
        for i in ready.get(k, []):
            coeffs = A[i, order[:k + 1]]
            ok = (prefix.astype(np.int64) @ coeffs) == 0
            prefix, total = prefix[ok], total[ok]
    out = np.zeros((len(prefix), n), dtype=np.int64)
    out[:, order] = prefix
    return out[total > 0]


def bounded_minimal_solutions(sys: DiophantineSystem, bound: int) -> list[Vector]:
    sols = bounded_solutions(sys, bound)
    sols = sols[np.argsort(sols.sum(axis=1), kind="stable")]
    minimal = np.zeros((0, sys.unknowns), dtype=np.int64)
    for s in sols:
        if not _dominates(s[None, :], minimal)[0]:
            minimal = np.concatenate([minimal, s[None, :]])
    return _sorted(minimal)


@dataclass
class VerifyReport:
    bound: int
    not_solutions: list[Vector] = field(default_factory=list)
    not_minimal: list[Vector] = field(default_factory=list)
    missing: list[Vector] = field(default_factory=list)
    zero_vector: bool = False

    @property
    def ok(self) -> bool:
        return not (self.not_solutions or self.not_minimal or self.missing or self.zero_vector)

    def __str__(self) -> str:
        if self.ok:
            return f"basis verified up to coordinate sum {self.bound}"
        parts = []
        if self.zero_vector:
            parts.append("zero vector listed")
        if self.not_solutions:
            parts.append(f"solvability violation at {self.not_solutions}")
        if self.not_minimal:
            parts.append(f"minimality violation at {self.not_minimal}")
        if self.missing:
            parts.append(f"completeness violation at {self.missing}")
        return "; ".join(parts)


def verify_basis(sys: DiophantineSystem, basis: Sequence[Sequence[int]], bound: int) -> VerifyReport:
    """Check ``basis`` against exhaustive search over coordinate sums up to ``bound``.

    Minimality is checked against the other listed vectors and against the
    bounded search, so a vector ``u + w`` is caught whenever ``u`` is found.
    """
    report = VerifyReport(bound)
    vecs = [tuple(int(x) for x in v) for v in basis]
    truth = set(bounded_minimal_solutions(sys, bound))
    arr = np.array(vecs, dtype=np.int64).reshape(len(vecs), sys.unknowns)
    known = np.array(sorted(truth), dtype=np.int64).reshape(len(truth), sys.unknowns)
    for k, v in enumerate(vecs):
        if not any(v):
            report.zero_vector = True
            continue
        if not sys.solves(v):
            report.not_solutions.append(v)
            continue
        row = arr[k][None, :]
        others = np.concatenate([np.delete(arr, k, axis=0), known])
        others = others[(others != arr[k]).any(axis=1) & others.any(axis=1)]
        others = others[[sys.solves(o) for o in others]] if len(others) else others
        if _dominates(row, others)[0]:
            report.not_minimal.append(v)
    listed = set(vecs)
    report.missing = sorted(truth - listed)
    return report


def read_matrix(path) -> DiophantineSystem:
    rows = []
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append([int(x) for x in line.split()])
    if not rows:
        raise ValueError("matrix file has no rows")
    return DiophantineSystem(rows)


def write_matrix(sys: DiophantineSystem) -> str:
    return "".join(" ".join(str(x) for x in row) + "\n" for row in sys.matrix)
