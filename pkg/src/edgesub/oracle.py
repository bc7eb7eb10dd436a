"""Ground truth by brute force, independent of the compositional pipeline."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import NoSuchCluster, TooLarge
from .graph import WeightedGraph
from .operators import (
    CLUSTER_TOL,
    EigenDecomposition,
    ReversibleOperator,
    eigen,
    local_spectrum,
)
from .substitution import SubstitutedGraph

SIZE_CAP = 4000


def direct_spectrum(
    sub: SubstitutedGraph, cluster_tol: float = CLUSTER_TOL, cap: int = SIZE_CAP
) -> EigenDecomposition:
    if sub.graph.n > cap:
        raise TooLarge(f"{sub.graph.n} vertices exceeds the cap {cap}")
    return eigen(ReversibleOperator.full(sub.graph), cluster_tol)


def nodal_dimension(
    decomp: EigenDecomposition, lam_star: float, host_count: int, tol: float = 1e-7
) -> int:
    """Dimension of the lambda*-eigenspace part vanishing on the host vertices."""
    k = decomp.cluster_near(lam_star, tol)
    if k is None:
        raise NoSuchCluster(f"no eigenvalue cluster near {lam_star}")
    basis = decomp.bases[k]
    host_rows = basis[:host_count, :]
    sing = np.linalg.svd(host_rows, compute_uv=False)
    rank = int(np.sum(sing > 1e-8 * max(1.0, sing[0] if len(sing) else 0.0)))
    return basis.shape[1] - rank


def dominance_report(g: WeightedGraph, tol: float = 1e-9) -> list[dict]:
    """Per-vertex local spectra with a flag for spectrally dominant vertices."""
    op = ReversibleOperator.full(g)
    full = eigen(op)
    out = []
    for x in range(g.n):
        local = local_spectrum(op, x, tol)
        out.append(
            {
                "vertex": x,
                "label": g.vertices[x],
                "local_spectrum": local,
                "dominant": len(local) == len(full.values),
            }
        )
    return out


def fixture_circle(a: Fraction, N: int) -> WeightedGraph:
    """2N-circle with unit conductances and one edge of conductance a.

    With a = 0 the weighted edge disappears and the graph degenerates to
    the path on 2N vertices.
    """
    a = Fraction(a)
    if N < 2:
        raise ValueError("need N >= 2")
    if not 0 <= a <= 1:
        raise ValueError("need 0 <= a <= 1")
    n = 2 * N
    labels = [f"v{k}" for k in range(n)]
    edges = [(k, k + 1, Fraction(1)) for k in range(n - 1)]
    if a > 0:
        edges.append((n - 1, 0, a))
    return WeightedGraph(labels, edges)
