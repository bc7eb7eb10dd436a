"""Explicit eigenfunctions of the substituted operator.

Two kinds of constructions:

* transfer extensions: a host eigenfunction f with eigenvalue phi(lambda*)
  extends to X[V] through the boundary kernels evaluated at lambda*;
* embeddings/nodal gluings: eigenfunctions of Q or of the interior
  restriction are copied onto substituted edge copies with weights chosen so
  the one-step averages balance at every host vertex.

Each emitted function carries a construction tag and is checkable against
the eigen-equation residual.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classify import TypedEigenvalue
from .errors import InvalidTypeCombination, KernelPole
from .graph import CycleBase, NonBacktrackingPath, cycle_path, even_joined_path
from .operators import ReversibleOperator
from .substitution import SubstitutedGraph
from .transfer import BoundaryKernels

TAG_TRANSFER = "Transfer"
TAG_PER_EDGE = "TypeI-PerEdge"
TAG_CONSTANT = "TypeII-Constant"
TAG_BIPARTITE = "TypeIII-Bipartite"
TAG_PER_VERTEX = "TypeIV-PerVertex"
TAG_ODD_CYCLE = "OddCycle"
TAG_DEFECT = "EvenDefectPath"
TAG_MIXED = "MixedPair"

NODAL_TAGS = {TAG_PER_EDGE, TAG_ODD_CYCLE, TAG_DEFECT, TAG_MIXED}


@dataclass(frozen=True)
class ExtensionFunction:
    values: np.ndarray  # indexed like the vertices of X[V]
    eigenvalue: float
    tag: str
    provenance: str

    @property
    def is_nodal(self) -> bool:
        return self.tag in NODAL_TAGS


def residual(sub: SubstitutedGraph, fn: ExtensionFunction) -> float:
    """Sup-norm of P_* f - lambda f, relative to the sup-norm of f."""
    P = ReversibleOperator.full(sub.graph).matrix_float()
    f = fn.values
    return float(
        np.max(np.abs(P @ f - fn.eigenvalue * f)) / np.max(np.abs(f))
    )


def balance(sub: SubstitutedGraph, f: np.ndarray, x: int) -> float:
    """Weighted sum of one-step interior averages into host vertex x."""
    s = sub.substituent
    V = s.graph
    X = sub.host
    q_a = {v: float(V.conductance(s.a, v) / V.m(s.a)) for v in s.interior}
    q_b = {v: float(V.conductance(s.b, v) / V.m(s.b)) for v in s.interior}
    total = 0.0
    for e in range(X.num_edges):
        ax = float(X.edges[e][2])
        if sub.orientation.ea(e) == x:
            total += ax * sum(q_a[v] * f[sub.pi(e, v)] for v in s.interior)
        if sub.orientation.eb(e) == x:
            total += ax * sum(q_b[v] * f[sub.pi(e, v)] for v in s.interior)
    return total


# ---------------------------------------------------------------------------
# Transfer extension
# ---------------------------------------------------------------------------


def transfer_extension(
    sub: SubstitutedGraph,
    kernels: BoundaryKernels,
    f_host: np.ndarray,
    lam_star: float,
    interior_spec,
) -> ExtensionFunction:
    """Extend a host eigenfunction to X[V] through the boundary kernels."""
    if any(abs(lam_star - mu) < 1e-9 for mu in interior_spec):
        raise KernelPole(f"lambda*={lam_star} is within 1e-9 of the interior spectrum")
    s = sub.substituent
    fa = {u: kernels.to_a[u].eval_float(lam_star) for u in s.interior}
    fb = {u: kernels.to_b[u].eval_float(lam_star) for u in s.interior}
    values = np.zeros(sub.graph.n)
    values[: sub.host.n] = f_host
    for e in range(sub.host.num_edges):
        va = f_host[sub.orientation.ea(e)]
        vb = f_host[sub.orientation.eb(e)]
        for u in s.interior:
            values[sub.pi(e, u)] = va * fa[u] + vb * fb[u]
    return ExtensionFunction(values, lam_star, TAG_TRANSFER, "host eigenfunction")


# ---------------------------------------------------------------------------
# Embeddings of the spectrum of Q
# ---------------------------------------------------------------------------


def _per_edge_functions(
    sub: SubstitutedGraph, t: TypedEigenvalue, interior_values
) -> list[ExtensionFunction]:
    """One nodal function per (zero-boundary eigenfunction, host edge)."""
    out = []
    for j, fvec in enumerate(interior_values):
        for e in range(sub.host.num_edges):
            values = np.zeros(sub.graph.n)
            for v, fv in fvec.items():
                values[sub.pi(e, v)] = fv
            out.append(
                ExtensionFunction(values, t.value, TAG_PER_EDGE, f"f_{j + 1} on edge {e}")
            )
    return out


def _interior_dicts(sub: SubstitutedGraph, t: TypedEigenvalue, columns) -> list[dict]:
    """Columns of the normal-form basis as {interior vertex: value} maps."""
    s = sub.substituent
    if t.source == "Q":
        support = list(range(s.graph.n))
    else:
        support = sorted(s.interior)
    out = []
    for j in range(columns.shape[1]):
        out.append(
            {v: float(columns[i, j]) for i, v in enumerate(support) if v in set(s.interior)}
        )
    return out


def embed_specQ(sub: SubstitutedGraph, t: TypedEigenvalue) -> list[ExtensionFunction]:
    """All extensions of a classified eigenvalue of Q to X[V]."""
    if t.source != "Q":
        raise InvalidTypeCombination("embed_specQ expects a Q-classified eigenvalue")
    s = sub.substituent
    X = sub.host
    support = list(range(s.graph.n))
    fns = _per_edge_functions(sub, t, _interior_dicts(sub, t, t.zero_block()))

    if t.type == "II":
        tail = t.tails()[:, 0]
        values = np.zeros(sub.graph.n)
        values[: X.n] = tail[support.index(s.a)]
        for e in range(X.num_edges):
            for v in s.interior:
                values[sub.pi(e, v)] = tail[v]
        fns.append(ExtensionFunction(values, t.value, TAG_CONSTANT, "symmetric tail"))
    elif t.type == "III":
        classes = X.bipartition()
        if classes is not None:
            part1, _ = classes
            tail = t.tails()[:, 0]
            values = np.zeros(sub.graph.n)
            for x in range(X.n):
                values[x] = 1.0 if x in part1 else -1.0
            for e in range(X.num_edges):
                sign = 1.0 if sub.orientation.ea(e) in part1 else -1.0
                for v in s.interior:
                    values[sub.pi(e, v)] = sign * tail[v]
            fns.append(
                ExtensionFunction(values, t.value, TAG_BIPARTITE, "antisymmetric tail")
            )
    elif t.type == "IV":
        f_prev, f_top = t.tails()[:, 0], t.tails()[:, 1]
        for x in range(X.n):
            values = np.zeros(sub.graph.n)
            values[x] = 1.0
            for e in range(X.num_edges):
                if sub.orientation.ea(e) == x:
                    copy = f_top
                elif sub.orientation.eb(e) == x:
                    copy = f_prev
                else:
                    continue
                for v in s.interior:
                    values[sub.pi(e, v)] = copy[v]
            fns.append(
                ExtensionFunction(values, t.value, TAG_PER_VERTEX, f"star of vertex {x}")
            )
    return fns


# ---------------------------------------------------------------------------
# Nodal constructions from the interior spectrum
# ---------------------------------------------------------------------------


def _signed_cycle_function(
    sub: SubstitutedGraph, t: TypedEigenvalue, tail: dict, cycle, label: str
) -> ExtensionFunction:
    X = sub.host
    values = np.zeros(sub.graph.n)
    for pos in range(cycle.length):
        e = cycle.edge_indices[pos]
        xj = cycle.vertices[pos]
        sign = 1.0 if sub.orientation.ea(e) == xj else -1.0
        w = sign / float(X.edges[e][2])
        for v, fv in tail.items():
            values[sub.pi(e, v)] += w * fv
    return ExtensionFunction(values, t.value, TAG_ODD_CYCLE, label)


def _defect_function(
    sub: SubstitutedGraph, t: TypedEigenvalue, tail: dict, walk: NonBacktrackingPath, label: str
) -> ExtensionFunction:
    X = sub.host
    values = np.zeros(sub.graph.n)
    for e, df in walk.defects.items():
        if df == 0:
            continue
        w = df / float(X.edges[e][2])
        for v, fv in tail.items():
            values[sub.pi(e, v)] = w * fv
    return ExtensionFunction(values, t.value, TAG_DEFECT, label)


def nodal_from_interior(
    sub: SubstitutedGraph, t: TypedEigenvalue, base: CycleBase
) -> list[ExtensionFunction]:
    """All nodal eigenfunctions produced by a classified interior eigenvalue."""
    if t.source != "Qo":
        raise InvalidTypeCombination("nodal_from_interior expects an interior eigenvalue")
    X = sub.host
    fns = _per_edge_functions(sub, t, _interior_dicts(sub, t, t.zero_block()))

    if t.type == "I":
        return fns

    if t.type == "III":
        tail = _interior_dicts(sub, t, t.tails())[0]
        for i, c in enumerate(base.cycles):
            fns.append(_signed_cycle_function(sub, t, tail, c, f"cycle {i}"))
        return fns

    if t.type == "II":
        tail = _interior_dicts(sub, t, t.tails())[0]
        even = [i for i, c in enumerate(base.cycles) if c.is_even]
        odd = [i for i, c in enumerate(base.cycles) if not c.is_even]
        for i in even:
            walk = cycle_path(X, base.cycles[i])
            fns.append(_defect_function(sub, t, tail, walk, f"even cycle {i}"))
        if odd:
            last = odd[-1]
            for i in odd[:-1]:
                walk = even_joined_path(base, i, last)
                fns.append(
                    _defect_function(sub, t, tail, walk, f"joined cycles {i},{last}")
                )
        return fns

    # type IV: mixed pairs over each vertex star
    tails = _interior_dicts(sub, t, t.tails())
    f_prev, f_top = tails[0], tails[1]
    for x in range(X.n):
        star = X.incident(x)
        if len(star) < 2:
            continue
        e_last = star[-1]
        for e in star[:-1]:
            values = np.zeros(sub.graph.n)
            for e_k, sign in ((e, 1.0), (e_last, -1.0)):
                copy = f_top if sub.orientation.ea(e_k) == x else f_prev
                w = sign / float(X.edges[e_k][2])
                for v, fv in copy.items():
                    values[sub.pi(e_k, v)] = w * fv
            fns.append(
                ExtensionFunction(
                    values, t.value, TAG_MIXED, f"edges {e},{e_last} at vertex {x}"
                )
            )
    return fns


def independence_rank(fns: list[ExtensionFunction], tol: float = 1e-8) -> int:
    if not fns:
        return 0
    mat = np.stack([f.values for f in fns])
    sing = np.linalg.svd(mat, compute_uv=False)
    return int(np.sum(sing > tol * sing[0]))
