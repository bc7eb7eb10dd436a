"""Weighted graphs, substituents, orientations, and cycle structure.

Vertices are dense integer indices 0..n-1; labels are metadata only.
Conductances are exact Fractions.  Parallel edges are allowed, loops are not.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (
    CyclesNotOdd,
    EmptyInterior,
    GammaDoesNotSwapAB,
    GammaNotAutomorphism,
    GraphInvariantError,
    VMinusBDisconnected,
)


@dataclass(frozen=True)
class WeightedGraph:
    """Connected undirected graph with positive rational conductances."""

    vertices: tuple
    edges: tuple[tuple[int, int, Fraction], ...]

    def __init__(self, vertices: Sequence, edges: Sequence):
        vs = tuple(vertices)
        es = []
        for x, y, c in edges:
            c = c if isinstance(c, Fraction) else Fraction(c)
            if not (0 <= x < len(vs) and 0 <= y < len(vs)):
                raise GraphInvariantError(f"edge ({x},{y}) out of range")
            if x == y:
                raise GraphInvariantError(f"loop at vertex {x}")
            if c <= 0:
                raise GraphInvariantError(f"non-positive conductance on ({x},{y})")
            es.append((x, y, c))
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", tuple(es))
        if not vs:
            raise GraphInvariantError("empty vertex set")
        if not self.connected_on(range(len(vs))):
            raise GraphInvariantError("graph is not connected")

    # -- structure ----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def incident(self, x: int) -> list[int]:
        """Edge indices incident to x, in edge order."""
        return [k for k, (u, v, _) in enumerate(self.edges) if x in (u, v)]

    def degree(self, x: int) -> int:
        return len(self.incident(x))

    def neighbors(self, x: int) -> list[int]:
        """Distinct neighbor indices, ascending."""
        out = set()
        for u, v, _ in self.edges:
            if u == x:
                out.add(v)
            elif v == x:
                out.add(u)
        return sorted(out)

    def conductance(self, x: int, y: int) -> Fraction:
        """Total conductance between x and y (parallel edges summed)."""
        return sum(
            (c for u, v, c in self.edges if (u, v) in ((x, y), (y, x))),
            Fraction(0),
        )

    def m(self, x: int) -> Fraction:
        """Total conductance at x."""
        return sum((c for u, v, c in self.edges if x in (u, v)), Fraction(0))

    def connected_on(self, subset) -> bool:
        """True iff the induced subgraph on `subset` is connected (or empty)."""
        sub = set(subset)
        if not sub:
            return True
        start = next(iter(sub))
        seen = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for u, v, _ in self.edges:
                if u == x and v in sub and v not in seen:
                    seen.add(v)
                    queue.append(v)
                elif v == x and u in sub and u not in seen:
                    seen.add(u)
                    queue.append(u)
        return seen == sub

    def bipartition(self) -> Optional[tuple[frozenset, frozenset]]:
        """Two color classes if bipartite, else None."""
        color = {0: 0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for y in self.neighbors(x):
                if y not in color:
                    color[y] = 1 - color[x]
                    queue.append(y)
                elif color[y] == color[x]:
                    return None
        return (
            frozenset(v for v, c in color.items() if c == 0),
            frozenset(v for v, c in color.items() if c == 1),
        )

    @property
    def delta_b(self) -> int:
        return 1 if self.bipartition() is not None else 0


@dataclass(frozen=True)
class Orientation:
    """Per-edge choice of initial endpoint e^a; the other endpoint is e^b."""

    graph: WeightedGraph
    heads: tuple[int, ...]  # heads[k] = e^a for edge k

    def ea(self, k: int) -> int:
        return self.heads[k]

    def eb(self, k: int) -> int:
        u, v, _ = self.graph.edges[k]
        return v if self.heads[k] == u else u

    @staticmethod
    def default(g: WeightedGraph) -> "Orientation":
        """e^a = endpoint with the smaller index."""
        return Orientation(g, tuple(min(u, v) for u, v, _ in g.edges))

    @staticmethod
    def random(g: WeightedGraph, rng: random.Random) -> "Orientation":
        heads = tuple(
            (u if rng.random() < 0.5 else v) for u, v, _ in g.edges
        )
        return Orientation(g, heads)


# ---------------------------------------------------------------------------
# Substituent
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Substituent:
    """A graph with marked vertices a, b and an automorphism swapping them."""

    graph: WeightedGraph
    a: int
    b: int
    gamma: tuple[int, ...]

    def __init__(self, graph, a, b, gamma):
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "gamma", tuple(gamma))

    @property
    def interior(self) -> list[int]:
        return [v for v in range(self.graph.n) if v not in (self.a, self.b)]

    def gamma_order(self) -> int:
        order = 1
        perm = list(self.gamma)
        cur = perm[:]
        ident = list(range(len(perm)))
        while cur != ident:
            cur = [perm[i] for i in cur]
            order += 1
        return order


@dataclass
class ValidationReport:
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = ""):
        self.checks.append((name, ok, detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def __str__(self) -> str:
        lines = []
        for name, ok, detail in self.checks:
            mark = "pass" if ok else "FAIL"
            lines.append(f"  [{mark}] {name}" + (f": {detail}" if detail else ""))
        return "\n".join(lines)


def _is_automorphism(g: WeightedGraph, perm: Sequence[int]) -> bool:
    if sorted(perm) != list(range(g.n)):
        return False
    pairs: dict[tuple[int, int], Fraction] = {}
    for u, v, c in g.edges:
        key = (min(u, v), max(u, v))
        pairs[key] = pairs.get(key, Fraction(0)) + c
    for (u, v), c in pairs.items():
        gu, gv = perm[u], perm[v]
        if pairs.get((min(gu, gv), max(gu, gv))) != c:
            return False
    return True


def validate_substituent(s: Substituent, raise_on_failure: bool = True) -> ValidationReport:
    """Check all substituent invariants; raise the first violation by default."""
    g = s.graph
    report = ValidationReport()
    errors: list[Exception] = []

    swaps = (
        0 <= s.a < g.n
        and 0 <= s.b < g.n
        and s.a != s.b
        and len(s.gamma) == g.n
        and sorted(s.gamma) == list(range(g.n))
        and s.gamma[s.a] == s.b
        and s.gamma[s.b] == s.a
    )
    report.add("gamma swaps a and b", swaps)
    if not swaps:
        errors.append(GammaDoesNotSwapAB(f"a={s.a}, b={s.b}, gamma={s.gamma}"))

    auto = swaps and _is_automorphism(g, s.gamma)
    report.add("gamma is a conductance-preserving automorphism", auto)
    if swaps and not auto:
        errors.append(GammaNotAutomorphism(f"gamma={s.gamma}"))

    # order even is automatic when gamma contains the transposition (a b)
    if swaps:
        report.add("gamma has even order", s.gamma_order() % 2 == 0)

    conn = g.connected_on(v for v in range(g.n) if v != s.b)
    report.add("V minus b is connected", conn)
    if not conn:
        errors.append(VMinusBDisconnected())

    nonempty = g.n > 2
    report.add("interior is nonempty", nonempty)
    if not nonempty:
        errors.append(EmptyInterior())

    if errors and raise_on_failure:
        raise errors[0]
    return report


def find_gamma(g: WeightedGraph, a: int, b: int) -> Optional[tuple[int, ...]]:
    """Exhaustive search for a valid gamma on small graphs (n <= 10)."""
    if g.n > 10:
        raise GraphInvariantError("gamma search is limited to n <= 10")
    rest = [v for v in range(g.n) if v not in (a, b)]
    for images in itertools.permutations(rest):
        perm = [0] * g.n
        perm[a], perm[b] = b, a
        for v, w in zip(rest, images):
            perm[v] = w
        if _is_automorphism(g, perm):
            return tuple(perm)
    return None


# ---------------------------------------------------------------------------
# Cycle structure
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Cycle:
    """Closed walk: vertex sequence v_0..v_k = v_0 with edge indices e_0..e_{k-1}."""

    vertices: tuple[int, ...]
    edge_indices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.edge_indices)

    @property
    def is_even(self) -> bool:
        return self.length % 2 == 0


@dataclass(frozen=True)
class CycleBase:
    graph: WeightedGraph
    tree_edges: frozenset[int]
    cycles: tuple[Cycle, ...]


@dataclass(frozen=True)
class NonBacktrackingPath:
    """Even closed non-backtracking walk with per-edge defect values.

    The defect of edge e is sum over positions j with e_j = e of (-1)^j.
    """

    graph: WeightedGraph
    vertices: tuple[int, ...]
    edge_indices: tuple[int, ...]
    defects: dict[int, int]

    @staticmethod
    def from_walk(g: WeightedGraph, verts, eidx) -> "NonBacktrackingPath":
        verts = tuple(verts)
        eidx = tuple(eidx)
        k = len(eidx)
        if k % 2 != 0:
            raise GraphInvariantError("closed walk has odd length")
        if verts[0] != verts[-1] or len(verts) != k + 1:
            raise GraphInvariantError("walk is not closed or mislabeled")
        defects: dict[int, int] = {}
        for j, e in enumerate(eidx):
            defects[e] = defects.get(e, 0) + (1 if j % 2 == 0 else -1)
        return NonBacktrackingPath(g, verts, eidx, defects)

    def is_non_backtracking(self) -> bool:
        k = len(self.edge_indices)
        # consecutive edges must differ (handles parallel edges correctly)
        return all(self.edge_indices[j] != self.edge_indices[(j + 1) % k] for j in range(k))

    def defect(self, e: int) -> int:
        return self.defects.get(e, 0)


def bfs_spanning_tree(g: WeightedGraph, root: int = 0) -> tuple[frozenset[int], dict[int, tuple[int, int]]]:
    """Breadth-first spanning tree, neighbors visited in edge-index order.

    Returns (tree edge indices, parent map v -> (parent vertex, edge index)).
    """
    parent: dict[int, tuple[int, int]] = {}
    seen = {root}
    tree: set[int] = set()
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for k, (u, v, _) in enumerate(g.edges):
            if u == x or v == x:
                y = v if u == x else u
                if y not in seen:
                    seen.add(y)
                    parent[y] = (x, k)
                    tree.add(k)
                    queue.append(y)
    return frozenset(tree), parent


def _tree_path(parent: dict[int, tuple[int, int]], x: int, y: int) -> tuple[list[int], list[int]]:
    """Path x -> y through the tree: (vertex sequence, edge index sequence)."""
    def to_root(v):
        verts, eidx = [v], []
        while v in parent:
            p, k = parent[v]
            verts.append(p)
            eidx.append(k)
            v = p
        return verts, eidx

    vx, ex = to_root(x)
    vy, ey = to_root(y)
    sx, sy = set(vx), set(vy)
    # lowest common ancestor: first vertex on x's root path also on y's
    lca = next(v for v in vx if v in sy)
    ix, iy = vx.index(lca), vy.index(lca)
    verts = vx[: ix + 1] + list(reversed(vy[:iy]))
    eidx = ex[:ix] + list(reversed(ey[:iy]))
    return verts, eidx


def fundamental_cycle_base(g: WeightedGraph, root: int = 0) -> CycleBase:
    """Cycle per non-tree edge of the breadth-first spanning tree from `root`."""
    tree, parent = bfs_spanning_tree(g, root)
    cycles = []
    for k, (u, v, _) in enumerate(g.edges):
        if k in tree:
            continue
        verts, eidx = _tree_path(parent, v, u)
        cycles.append(Cycle(tuple(verts + [v]), tuple(eidx + [k])))
    return CycleBase(g, tree, tuple(cycles))


def cycle_path(g: WeightedGraph, c: Cycle) -> NonBacktrackingPath:
    """View an even cycle as a closed non-backtracking walk with defects."""
    if not c.is_even:
        raise CyclesNotOdd("expected an even cycle")
    return NonBacktrackingPath.from_walk(g, c.vertices, c.edge_indices)


def _rotations(c: Cycle):
    """All rotations and reflections of the cycle as (verts, eidx) closed walks."""
    k = c.length
    verts = list(c.vertices[:-1])
    eidx = list(c.edge_indices)
    for start in range(k):
        vs = verts[start:] + verts[: start + 1]
        es = eidx[start:] + eidx[:start]
        yield vs, es
        rv = list(reversed(vs))
        re = list(reversed(es))
        yield rv, re


def even_joined_path(base: CycleBase, i: int, j: int) -> NonBacktrackingPath:
    """Even closed walk around odd cycle C_i, along the tree to C_j, and back."""
    ci, cj = base.cycles[i], base.cycles[j]
    if ci.is_even or cj.is_even:
        raise CyclesNotOdd(f"cycles {i} and {j} must both be odd")
    g = base.graph
    _, parent = bfs_spanning_tree(g)

    vi = set(ci.vertices)
    vj = set(cj.vertices)
    # junction candidates (s on C_i, t on C_j), nearest in the tree first
    candidates = sorted(
        (
            (s, t, *_tree_path(parent, s, t))
            for s in sorted(vi)
            for t in sorted(vj)
        ),
        key=lambda c: len(c[3]),
    )
    for s, t, pv, pe in candidates:
        for wvi, wei in _rotations(ci):
            if wvi[0] != s:
                continue
            for wvj, wej in _rotations(cj):
                if wvj[0] != t:
                    continue
                verts = wvi + pv[1:] + wvj[1:] + list(reversed(pv))[1:]
                eidx = wei + pe + wej + list(reversed(pe))
                walk = NonBacktrackingPath.from_walk(g, verts, eidx)
                if walk.is_non_backtracking():
                    return walk
    raise GraphInvariantError(
        f"no non-backtracking joining of cycles {i} and {j} found"
    )
