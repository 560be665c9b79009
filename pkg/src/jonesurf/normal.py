"""Triangulations with torus boundary and normal surfaces in standard coordinates.

Conventions
-----------
* Face ``K`` of a tetrahedron is the face opposite vertex ``K``.
* A gluing ``face K -> tet J perm PQRS`` sends vertex ``i`` of this
  tetrahedron to vertex ``perm[i]`` of tetrahedron ``J``.
* Edges of a tetrahedron are numbered ``01, 02, 03, 12, 13, 23`` -> ``0..5``.
* Disc coordinates per tetrahedron: triangles at vertices ``0..3``, then
  quads ``01|23``, ``02|13``, ``03|12``.

Homology convention on the boundary torus: each boundary triangle gets the
orientation induced as part of the boundary of the oriented 3-manifold, and
a curve crossing a directed edge from its left to its right counts ``+1``.
For a boundary curve ``c`` write ``[c] = a mu + b lambda``; then
``a = (c.lambda)/(mu.lambda)`` and ``b = -(c.mu)/(mu.lambda)``, so the
longitude itself has slope ``0`` and the meridian ``1/0``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations
from math import gcd
from typing import Sequence

import numpy as np

from .hilbert import DEFAULT_LIMITS, DiophantineSystem, HilbertLimits, hilbert_basis
from .sheets import Slope

EDGES: tuple[tuple[int, int], ...] = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
EDGE_INDEX = {e: i for i, e in enumerate(EDGES)}
QUADS: tuple[tuple[tuple[int, int], tuple[int, int]], ...] = (
    ((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))


def quad_with_pair(u: int, v: int) -> int:
    """Index of the quad type that puts ``u`` and ``v`` on the same side."""
    for q, (p1, p2) in enumerate(QUADS):
        if {u, v} in ({*p1}, {*p2}):
            return q
    raise ValueError(f"no quad pairs {u} with {v}")


def quads_meeting_edge(u: int, v: int) -> tuple[int, int]:
    same = quad_with_pair(u, v)
    return tuple(q for q in range(3) if q != same)


def _edge_key(u: int, v: int) -> int:
    return EDGE_INDEX[(min(u, v), max(u, v))]


def _perm_sign(p: Sequence[int]) -> int:
    sign, seen = 1, set()
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _inverse(p: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


class TriangulationError(ValueError):
    pass


class GluingError(TriangulationError):
    pass


class BoundaryError(TriangulationError):
    pass


class MeridianError(TriangulationError):
    pass


class LongitudeError(TriangulationError):
    pass


class SurfaceError(ValueError):
    pass


@dataclass(frozen=True)
class Gluing:
    tet: int
    perm: tuple[int, int, int, int]


@dataclass(frozen=True)
class EdgeRef:
    """Edge ``edge`` of tetrahedron ``tet``, traversed low -> high vertex unless ``reverse``."""

    tet: int
    edge: int
    reverse: bool = False

    def ends(self) -> tuple[int, int]:
        u, v = EDGES[self.edge]
        return (v, u) if self.reverse else (u, v)


@dataclass(frozen=True)
class Triangulation:
    gluings: tuple[tuple[Gluing | None, ...], ...]
    meridian: EdgeRef | None = None
    longitude: tuple[EdgeRef, ...] = ()
    name: str = ""

    @property
    def size(self) -> int:
        return len(self.gluings)

    # -- derived structure ------------------------------------------------

    @cached_property
    def orientation(self) -> tuple[int, ...]:
        o = [0] * self.size
        for start in range(self.size):
            if o[start]:
                continue
            o[start] = 1
            stack = [start]
            while stack:
                t = stack.pop()
                for g in self.gluings[t]:
                    if g is None:
                        continue
                    want = -o[t] * _perm_sign(g.perm)
                    if o[g.tet] == 0:
                        o[g.tet] = want
                        stack.append(g.tet)
                    elif o[g.tet] != want:
                        raise GluingError("gluings are not orientation-consistent")
        return tuple(o)

    @cached_property
    def _edges(self) -> tuple[dict, dict, list]:
        """Edge classes with a fixed direction per class.

        Returns ``(cls, sign, members)``: ``cls[(t, e)]`` is the class id,
        ``sign[(t, e)]`` is +1 when low -> high in ``t`` agrees with the class
        direction.
        """
        cls: dict[tuple[int, int], int] = {}
        sign: dict[tuple[int, int], int] = {}
        members: list[list[tuple[int, int]]] = []
        for t in range(self.size):
            for e in range(6):
                if (t, e) in cls:
                    continue
                cid = len(members)
                members.append([])
                cls[(t, e)], sign[(t, e)] = cid, 1
                stack = [(t, e)]
                while stack:
                    s, f = stack.pop()
                    members[cid].append((s, f))
                    u, v = EDGES[f]
                    for k in range(4):
                        g = self.gluings[s][k]
                        if k in (u, v) or g is None:
                            continue
                        pu, pv = g.perm[u], g.perm[v]
                        key = (g.tet, _edge_key(pu, pv))
                        sgn = sign[(s, f)] * (1 if pu < pv else -1)
                        if key not in cls:
                            cls[key], sign[key] = cid, sgn
                            stack.append(key)
                        elif sign[key] != sgn:
                            raise GluingError("an edge is identified with itself in reverse")
        return cls, sign, members

    @property
    def edge_count(self) -> int:
        return len(self._edges[2])

    def edge_class(self, t: int, e: int) -> int:
        return self._edges[0][(t, e)]

    def edge_sign(self, t: int, e: int) -> int:
        return self._edges[1][(t, e)]

    def edge_members(self, cid: int) -> list[tuple[int, int]]:
        return list(self._edges[2][cid])

    @cached_property
    def vertex_classes(self) -> tuple[tuple[int, ...], ...]:
        parent = list(range(4 * self.size))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for t, row in enumerate(self.gluings):
            for k, g in enumerate(row):
                if g is None:
                    continue
                for v in range(4):
                    if v != k:
                        parent[find(4 * t + v)] = find(4 * g.tet + g.perm[v])
        roots: dict[int, int] = {}
        out = []
        for t in range(self.size):
            out.append(tuple(roots.setdefault(find(4 * t + v), len(roots)) for v in range(4)))
        return tuple(out)

    @property
    def vertex_count(self) -> int:
        return 1 + max((v for row in self.vertex_classes for v in row), default=-1)

    @cached_property
    def boundary_faces(self) -> tuple[tuple[int, int], ...]:
        return tuple((t, k) for t in range(self.size) for k in range(4)
                     if self.gluings[t][k] is None)

    @cached_property
    def interior_faces(self) -> tuple[tuple[int, int, Gluing], ...]:
        """Each glued face pair once, from the side with the smaller ``(tet, face)``."""
        out = []
        for t in range(self.size):
            for k in range(4):
                g = self.gluings[t][k]
                if g is not None and (t, k) < (g.tet, g.perm[k]):
                    out.append((t, k, g))
        return tuple(out)

    def face_order(self, t: int, k: int) -> tuple[int, int, int]:
        """Vertices of boundary face ``(t, k)`` in the induced boundary orientation."""
        a, b, c = (v for v in range(4) if v != k)
        sign = self.orientation[t] * (-1 if k % 2 else 1)
        return (a, b, c) if sign > 0 else (a, c, b)

    @cached_property
    def boundary_edges(self) -> frozenset[int]:
        return frozenset(self.edge_class(t, _edge_key(u, v))
                         for t, k in self.boundary_faces
                         for u, v in _face_edges(k))

    @cached_property
    def _link(self) -> dict[tuple[int, int], tuple[int, int]]:
        """Counter-clockwise successor of each boundary edge end around its vertex.

        An end is ``(edge class, 0 | 1)``: 0 is the tail of the class direction.
        """
        succ = {}
        for t, k in self.boundary_faces:
            p = self.face_order(t, k)
            for i in range(3):
                a, b, c = p[i], p[(i + 1) % 3], p[(i + 2) % 3]
                first, second = self._end(t, a, b), self._end(t, a, c)
                if first in succ:
                    raise BoundaryError("boundary is not a surface near a vertex")
                succ[first] = second
        return succ

    def _end(self, t: int, at: int, other: int) -> tuple[int, int]:
        e = _edge_key(at, other)
        forward = (at < other) == (self.edge_sign(t, e) > 0)
        return (self.edge_class(t, e), 0 if forward else 1)

    def directed(self, ref: EdgeRef) -> tuple[int, int]:
        """``(class, +1 | -1)`` for an edge reference, relative to the class direction."""
        s = self.edge_sign(ref.tet, ref.edge)
        return self.edge_class(ref.tet, ref.edge), -s if ref.reverse else s

    def _path_vertices(self, ref: EdgeRef) -> tuple[int, int]:
        u, v = ref.ends()
        vc = self.vertex_classes[ref.tet]
        return vc[u], vc[v]

    def path_dot(self, path: Sequence[EdgeRef], edge: EdgeRef) -> int:
        """Algebraic intersection of a closed boundary edge path with a directed edge.

        The path is pushed off to its left at each vertex it passes; the
        pushed copy crosses every edge end strictly inside the left turn.
        """
        target, t_dir = self.directed(edge)
        steps = [self.directed(r) for r in path]
        total = 0
        for i, (cid, d) in enumerate(steps):
            nxt, nd = steps[(i + 1) % len(steps)]
            back = (cid, 1 if d > 0 else 0)
            end = self._link[(nxt, 0 if nd > 0 else 1)]
            guard = 0
            while end != back:
                if end[0] == target:
                    tail = (end[1] == 0) == (t_dir > 0)
                    total += 1 if tail else -1
                end = self._link[end]
                guard += 1
                if guard > len(self._link):
                    raise LongitudeError("broken longitude: consecutive edges do not meet")
        return total

    @cached_property
    def lambda_dot_mu(self) -> int:
        if self.meridian is None or not self.longitude:
            raise LongitudeError("triangulation has no meridian/longitude marking")
        return self.path_dot(self.longitude, self.meridian)


def _face_edges(k: int) -> list[tuple[int, int]]:
    a, b, c = (v for v in range(4) if v != k)
    return [(a, b), (a, c), (b, c)]


# -- parsing and validation ---------------------------------------------------

def _parse_ref(tokens: list[str], lineno: int) -> EdgeRef:
    if len(tokens) != 2:
        raise TriangulationError(f"line {lineno}: edge reference needs 'I E'")
    tet, edge = tokens
    reverse = edge.startswith("~")
    try:
        ref = EdgeRef(int(tet), int(edge.lstrip("~")), reverse)
    except ValueError:
        raise TriangulationError(f"line {lineno}: bad edge reference {' '.join(tokens)!r}") from None
    if not 0 <= ref.edge < 6:
        raise TriangulationError(f"line {lineno}: edge index must be 0..5")
    return ref


def parse_triangulation(text: str, name: str = "") -> Triangulation:
    """Read the line format described in the module docs and validate it.

    ``longitude`` lists ``I E`` pairs; ``I ~E`` walks edge ``E`` high -> low.
    """
    tets: list[list[Gluing | None | str]] = []
    meridian = None
    longitude: list[EdgeRef] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        head = tok[0].lower()
        if head == "tet":
            if len(tok) != 2 or not tok[1].isdigit() or int(tok[1]) != len(tets):
                raise TriangulationError(f"line {lineno}: expected 'tet {len(tets)}'")
            tets.append(["unset"] * 4)
        elif head == "face":
            if not tets:
                raise TriangulationError(f"line {lineno}: face before any tet")
            try:
                k = int(tok[1])
                if tok[2] != "->":
                    raise ValueError
                if tok[3] == "bdry" and len(tok) == 4:
                    glue = None
                elif tok[3] == "tet" and len(tok) == 7 and tok[5] == "perm":
                    perm = tuple(int(c) for c in tok[6])
                    if sorted(perm) != [0, 1, 2, 3]:
                        raise ValueError
                    glue = Gluing(int(tok[4]), perm)
                else:
                    raise ValueError
            except (ValueError, IndexError):
                raise TriangulationError(f"line {lineno}: cannot parse {line!r}") from None
            if not 0 <= k < 4:
                raise TriangulationError(f"line {lineno}: face index must be 0..3")
            tets[-1][k] = glue
        elif head == "meridian":
            meridian = _parse_ref(tok[1:], lineno)
        elif head == "longitude":
            rest = tok[1:]
            if len(rest) % 2:
                raise LongitudeError(f"line {lineno}: longitude needs 'I E' pairs")
            longitude += [_parse_ref(rest[i:i + 2], lineno) for i in range(0, len(rest), 2)]
        else:
            raise TriangulationError(f"line {lineno}: unknown record {tok[0]!r}")
    for t, row in enumerate(tets):
        for k, g in enumerate(row):
            if g == "unset":
                raise TriangulationError(f"tet {t} face {k} has no gluing record")
    tri = Triangulation(tuple(tuple(row) for row in tets), meridian, tuple(longitude), name)
    validate(tri)
    return tri


def load_triangulation(path) -> Triangulation:
    from pathlib import Path

    p = Path(path)
    return parse_triangulation(p.read_text(), name=p.stem)


def write_triangulation(tri: Triangulation) -> str:
    lines = []
    for t, row in enumerate(tri.gluings):
        lines.append(f"tet {t}")
        for k, g in enumerate(row):
            if g is None:
                lines.append(f"face {k} -> bdry")
            else:
                lines.append(f"face {k} -> tet {g.tet} perm {''.join(map(str, g.perm))}")
    if tri.meridian is not None:
        lines.append(f"meridian {_ref_text(tri.meridian)}")
    if tri.longitude:
        lines.append("longitude " + " ".join(_ref_text(r) for r in tri.longitude))
    return "\n".join(lines) + "\n"


def _ref_text(r: EdgeRef) -> str:
    return f"{r.tet} {'~' if r.reverse else ''}{r.edge}"


def validate(tri: Triangulation, require_boundary: bool = True) -> None:
    """Raise a specific :class:`TriangulationError` subclass on the first defect."""
    n = tri.size
    if n == 0:
        raise TriangulationError("no tetrahedra")
    for t, row in enumerate(tri.gluings):
        for k, g in enumerate(row):
            if g is None:
                continue
            if not 0 <= g.tet < n:
                raise GluingError(f"tet {t} face {k}: target tet {g.tet} out of range")
            if g.tet == t and g.perm[k] == k:
                raise GluingError(f"non-involutive gluing: tet {t} face {k} glued to itself")
            back = tri.gluings[g.tet][g.perm[k]]
            if back is None or back.tet != t or back.perm != _inverse(g.perm):
                raise GluingError(f"non-involutive gluing at tet {t} face {k}")
    tri.orientation  # orientation consistency
    tri._edges  # no edge reversed onto itself
    if not require_boundary:
        return
    faces = tri.boundary_faces
    if not faces:
        raise BoundaryError("boundary not a torus: the triangulation is closed")
    uses: dict[int, int] = defaultdict(int)
    verts: set[int] = set()
    for t, k in faces:
        for u, v in _face_edges(k):
            uses[tri.edge_class(t, _edge_key(u, v))] += 1
            verts.update((tri.vertex_classes[t][u], tri.vertex_classes[t][v]))
    if any(c != 2 for c in uses.values()):
        raise BoundaryError("boundary not a torus: boundary is not a closed surface")
    euler = len(verts) - len(uses) + len(faces)
    if euler != 0 or not _boundary_connected(tri):
        raise BoundaryError(f"boundary not a torus (boundary Euler characteristic {euler})")
    tri._link
    if tri.meridian is not None:
        m = tri.meridian
        if not 0 <= m.tet < n or tri.edge_class(m.tet, m.edge) not in tri.boundary_edges:
            raise MeridianError("meridian edge is not on the boundary")
    if tri.longitude:
        path = tri.longitude
        for r in path:
            if not 0 <= r.tet < n or tri.edge_class(r.tet, r.edge) not in tri.boundary_edges:
                raise LongitudeError("broken longitude: edge not on the boundary")
        for i, r in enumerate(path):
            nxt = path[(i + 1) % len(path)]
            if tri._path_vertices(r)[1] != tri._path_vertices(nxt)[0]:
                raise LongitudeError(f"broken longitude: step {i} does not close up")
        if tri.meridian is not None and abs(tri.lambda_dot_mu) != 1:
            raise LongitudeError(
                f"broken longitude: meets the meridian {tri.lambda_dot_mu} times algebraically")


def _boundary_connected(tri: Triangulation) -> bool:
    faces = tri.boundary_faces
    by_edge: dict[int, list[int]] = defaultdict(list)
    for i, (t, k) in enumerate(faces):
        for u, v in _face_edges(k):
            by_edge[tri.edge_class(t, _edge_key(u, v))].append(i)
    seen, stack = {0}, [0]
    while stack:
        i = stack.pop()
        t, k = faces[i]
        for u, v in _face_edges(k):
            for j in by_edge[tri.edge_class(t, _edge_key(u, v))]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
    return len(seen) == len(faces)


# -- normal surfaces ----------------------------------------------------------

def matching_equations(tri: Triangulation) -> DiophantineSystem:
    """Three rows per interior face: arcs around each corner agree on both sides."""
    rows = []
    for t, k, g in tri.interior_faces:
        u = g.tet
        for v in range(4):
            if v == k:
                continue
            row = [0] * (7 * tri.size)
            w = g.perm[v]
            row[7 * t + v] += 1
            row[7 * t + 4 + quad_with_pair(v, k)] += 1
            row[7 * u + w] -= 1
            row[7 * u + 4 + quad_with_pair(w, g.perm[k])] -= 1
            rows.append(row)
    return DiophantineSystem(rows, 7 * tri.size)


@dataclass(frozen=True)
class NormalSurface:
    coords: tuple[int, ...]

    def __init__(self, coords: Sequence[int]):
        c = tuple(int(x) for x in coords)
        if len(c) % 7:
            raise SurfaceError("coordinate vector length must be a multiple of 7")
        if any(x < 0 for x in c):
            raise SurfaceError("normal coordinates must be non-negative")
        object.__setattr__(self, "coords", c)

    @property
    def size(self) -> int:
        return len(self.coords) // 7

    def triangles(self, t: int) -> tuple[int, ...]:
        return self.coords[7 * t:7 * t + 4]

    def quads(self, t: int) -> tuple[int, ...]:
        return self.coords[7 * t + 4:7 * t + 7]

    @property
    def admissible(self) -> bool:
        return all(sum(1 for q in self.quads(t) if q) <= 1 for t in range(self.size))

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other: "NormalSurface") -> "NormalSurface":
        return haken_sum(self, other)

    def __mul__(self, k: int) -> "NormalSurface":
        return NormalSurface([k * x for x in self.coords])

    __rmul__ = __mul__

    def __str__(self) -> str:
        return " ".join(map(str, self.coords))


def _check(tri: Triangulation, s: NormalSurface) -> None:
    if s.size != tri.size:
        raise SurfaceError(f"surface has {s.size} tetrahedra, triangulation {tri.size}")
    if not matching_equations(tri).solves(s.coords):
        raise SurfaceError("coordinates violate the matching equations")


def satisfies_matching(tri: Triangulation, s: NormalSurface) -> bool:
    return s.size == tri.size and matching_equations(tri).solves(s.coords)


def fundamental_surfaces(tri: Triangulation,
                         limits: HilbertLimits = DEFAULT_LIMITS) -> list[NormalSurface]:
    return [NormalSurface(v) for v in hilbert_basis(matching_equations(tri), limits)]


def edge_weight(s: NormalSurface, t: int, e: int) -> int:
    u, v = EDGES[e]
    tri = s.triangles(t)
    q = s.quads(t)
    return tri[u] + tri[v] + sum(q[i] for i in quads_meeting_edge(u, v))


def _arcs_on_face(s: NormalSurface, t: int, k: int) -> int:
    return sum(s.triangles(t)[v] for v in range(4) if v != k) + sum(s.quads(t))


def euler_characteristic(tri: Triangulation, s: NormalSurface) -> int:
    """``V - E + F`` of the cell structure cut out by the 2-skeleton.

    Vertices sit on edges of the triangulation, edges are normal arcs in
    faces, faces are the normal discs. Edge weights are read from every
    tetrahedron around an edge and must agree.
    """
    _check(tri, s)
    if not s.admissible:
        raise SurfaceError("not an embedded surface: two quad types in one tetrahedron")
    verts = 0
    for cid in range(tri.edge_count):
        weights = {edge_weight(s, t, e) for t, e in tri.edge_members(cid)}
        if len(weights) != 1:
            raise SurfaceError(f"inconsistent weights {sorted(weights)} on edge class {cid}")
        verts += weights.pop()
    arcs = sum(_arcs_on_face(s, t, k) for t, k, _ in tri.interior_faces)
    arcs += sum(_arcs_on_face(s, t, k) for t, k in tri.boundary_faces)
    return verts - arcs + sum(s.coords)


def compatible(s1: NormalSurface, s2: NormalSurface) -> bool:
    if s1.size != s2.size:
        raise SurfaceError("surfaces live in different triangulations")
    for t in range(s1.size):
        used = {i for i, q in enumerate(s1.quads(t)) if q} | {i for i, q in enumerate(s2.quads(t)) if q}
        if len(used) > 1:
            return False
    return True


def haken_sum(s1: NormalSurface, s2: NormalSurface) -> NormalSurface:
    if not compatible(s1, s2):
        raise SurfaceError("incompatible quadrilateral types")
    return NormalSurface([a + b for a, b in zip(s1.coords, s2.coords)])


# -- boundary curves ----------------------------------------------------------

@dataclass(frozen=True)
class BoundaryData:
    """Boundary of a normal surface on the torus.

    ``slope`` is ``None`` when every component is inessential (trivial
    class). ``classes`` lists ``(a, b)`` per component, each normalised so
    ``b > 0`` or ``b == 0 < a``; inessential ones are ``(0, 0)``.
    """

    slope: Slope | None
    boundary_count: int
    sheets: int
    classes: tuple[tuple[int, int], ...]

    @property
    def essential_count(self) -> int:
        return sum(1 for c in self.classes if c != (0, 0))

    @property
    def trivial(self) -> bool:
        return self.slope is None

    @property
    def coherent(self) -> bool:
        return len({c for c in self.classes if c != (0, 0)}) <= 1


def _corner_count(s: NormalSurface, t: int, k: int, v: int) -> int:
    return s.triangles(t)[v] + s.quads(t)[quad_with_pair(v, k)]


def boundary_curves(tri: Triangulation, s: NormalSurface) -> list[list[tuple[int, int]]]:
    """Trace boundary normal curves; each is a list of ``(edge class, sign)`` crossings.

    ``sign`` is +1 when the curve crosses the directed class edge from left to right.
    """
    # node (edge class, position from class tail) -> arcs through it
    adj: dict[tuple[int, int], list[tuple[int, tuple, tuple]]] = defaultdict(list)
    arcs = []
    for fi, (t, k) in enumerate(tri.boundary_faces):
        order = tri.face_order(t, k)
        for i, x in enumerate(order):
            y, z = order[(i + 1) % 3], order[(i + 2) % 3]
            for depth in range(_corner_count(s, t, k, x)):
                ends = []
                for other in (y, z):
                    e = _edge_key(x, other)
                    cid = tri.edge_class(t, e)
                    w = edge_weight(s, t, e)
                    from_tail = (x < other) == (tri.edge_sign(t, e) > 0)
                    pos = depth if from_tail else w - 1 - depth
                    # leaving this face across x->other (class-directed)
                    left = _is_left(order, x, other) == from_tail
                    ends.append(((cid, pos), 1 if left else -1))
                aid = len(arcs)
                arcs.append(ends)
                for node, _ in ends:
                    adj[node].append(aid)
    if any(len(v) != 2 for v in adj.values()):
        raise SurfaceError("boundary arcs do not close up; check the matching equations")
    used = [False] * len(arcs)
    curves = []
    for start in range(len(arcs)):
        if used[start]:
            continue
        curve = []
        aid, enter = start, arcs[start][0][0]
        while not used[aid]:
            used[aid] = True
            a, b = arcs[aid]
            out = b if a[0] == enter else a
            node, sign = out
            curve.append((node[0], sign))
            nxt = [x for x in adj[node] if x != aid]
            aid, enter = (nxt[0] if nxt else aid), node
        curves.append(curve)
    return curves


def _is_left(order: tuple[int, int, int], u: int, v: int) -> bool:
    """Is the positively ordered face on the left of directed edge ``u -> v``?"""
    i = order.index(u)
    return order[(i + 1) % 3] == v


def boundary_data(tri: Triangulation, s: NormalSurface) -> BoundaryData:
    _check(tri, s)
    if tri.meridian is None or not tri.longitude:
        raise TriangulationError("triangulation has no meridian/longitude marking")
    curves = boundary_curves(tri, s)
    if not curves:
        raise SurfaceError("no boundary")
    mu, mu_dir = tri.directed(tri.meridian)
    lam = defaultdict(int)
    for r in tri.longitude:
        cid, d = tri.directed(r)
        lam[cid] += d
    ml = -tri.lambda_dot_mu  # mu.lambda
    classes = []
    for curve in curves:
        c_mu = sum(sg for cid, sg in curve if cid == mu) * mu_dir
        c_lam = sum(sg * lam[cid] for cid, sg in curve)
        a, b = c_lam * ml, -c_mu * ml  # ml = +-1, so division is multiplication
        g = gcd(a, b)
        if g:
            a, b = a // g, b // g
            if b < 0 or (b == 0 and a < 0):
                a, b = -a, -b
        classes.append((a, b))
    meridian_cid = tri.edge_class(tri.meridian.tet, tri.meridian.edge)
    sheets = edge_weight(s, *tri.edge_members(meridian_cid)[0])
    nontrivial = sorted({c for c in classes if c != (0, 0)})
    slope = Slope(*nontrivial[0]) if nontrivial else None
    return BoundaryData(slope, len(curves), sheets, tuple(sorted(classes)))


def boundary_slopes(tri: Triangulation, surfaces: Sequence[NormalSurface]) -> set[Slope]:
    """Slopes of the admissible surfaces with essential boundary."""
    out = set()
    for s in surfaces:
        if not s.admissible:
            continue
        try:
            bd = boundary_data(tri, s)
        except SurfaceError:
            continue
        if bd.slope is not None and not bd.slope.is_meridian:
            out.add(bd.slope)
    return out


def vertex_link(tri: Triangulation, vertex: int) -> NormalSurface:
    """Triangle-only surface linking one vertex class."""
    c = [0] * (7 * tri.size)
    for t, row in enumerate(tri.vertex_classes):
        for v, cls in enumerate(row):
            if cls == vertex:
                c[7 * t + v] = 1
    return NormalSurface(c)


def all_gluings(k_from: int, k_to: int):
    """Permutations gluing face ``k_from`` onto face ``k_to``."""
    for p in permutations(range(4)):
        if p[k_from] == k_to:
            yield p


def coords_array(surfaces: Sequence[NormalSurface]) -> np.ndarray:
    return np.array([s.coords for s in surfaces], dtype=np.int64)
