"""Transfer functions of a substituent and the resolvent identity.

All generating functions are exact rational functions built from the
resolvent of the interior restriction Q_{V°}:

    psi(z)   = sum_{u,v interior} q(a,u) G(u,v|z) q(v,b) + q(a,b)
    theta(z) = sum_{u,v interior} q(a,u) G(u,v|z) q(v,a)
    phi(z)   = (z - theta(z)) / psi(z), reduced

phi transfers eigenvalues: lambda* is in the non-interior spectrum of the
substituted operator iff phi(lambda*) is an eigenvalue of the host operator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    Polynomial,
    RationalFunction,
    resolvent_matrix,
    solve_fraction_system,
)
from .errors import TooCloseToInteriorSpectrum
from .graph import Substituent, WeightedGraph
from .operators import ReversibleOperator, eigen, spectral_radius
from .substitution import SubstitutedGraph


@dataclass(frozen=True)
class TransferFunctions:
    phi: RationalFunction            # reduced quotient
    psi: RationalFunction
    theta: RationalFunction
    z_minus_theta: RationalFunction  # kept unreduced against psi for S2 logic
    lambda0_V_minus_b: float
    lambda0_interior: float


def _q_matrix(V: WeightedGraph) -> list[list[Fraction]]:
    return [
        [V.conductance(x, y) / V.m(x) for y in range(V.n)] for x in range(V.n)
    ]


def compute_transfer(s: Substituent) -> TransferFunctions:
    V = s.graph
    q = _q_matrix(V)
    interior = s.interior
    M = [[q[u][v] for v in interior] for u in interior]
    G = resolvent_matrix(M)

    psi = RationalFunction.const(q[s.a][s.b])
    theta = RationalFunction.const(0)
    for iu, u in enumerate(interior):
        qa = q[s.a][u]
        if qa == 0:
            continue
        for iv, v in enumerate(interior):
            psi = psi + qa * G[iu][iv] * q[v][s.b]
            theta = theta + qa * G[iu][iv] * q[v][s.a]

    z_minus_theta = RationalFunction.z() - theta
    phi = z_minus_theta / psi

    lam_vmb = spectral_radius(
        ReversibleOperator.restricted(V, [x for x in range(V.n) if x != s.b])
    )
    lam_int = spectral_radius(ReversibleOperator.restricted(V, interior))
    return TransferFunctions(phi, psi, theta, z_minus_theta, lam_vmb, lam_int)


@dataclass(frozen=True)
class BoundaryKernels:
    """Harmonic-extension kernels toward each marked vertex.

    to_a[u] = F_{V-b}(u, a | z) and to_b[u] = F_{V-a}(u, b | z), defined for
    every vertex u of V with the conventions to_a[a] = 1, to_a[b] = 0 and
    symmetrically for to_b.
    """

    substituent: Substituent
    to_a: dict[int, RationalFunction]
    to_b: dict[int, RationalFunction]


def boundary_kernels(s: Substituent) -> BoundaryKernels:
    V = s.graph
    q = _q_matrix(V)
    interior = s.interior
    M = [[q[u][v] for v in interior] for u in interior]
    G = resolvent_matrix(M)

    one = RationalFunction.const(1)
    zero = RationalFunction.const(0)
    to_a = {s.a: one, s.b: zero}
    to_b = {s.b: one, s.a: zero}
    for iu, u in enumerate(interior):
        fa = zero
        fb = zero
        for iv, v in enumerate(interior):
            fa = fa + G[iu][iv] * q[v][s.a]
            fb = fb + G[iu][iv] * q[v][s.b]
        to_a[u] = fa
        to_b[u] = fb
    return BoundaryKernels(s, to_a, to_b)


def solve_boundary(
    s: Substituent,
    alpha: float,
    beta: float,
    z: float,
    kernels: BoundaryKernels | None = None,
) -> dict[int, float]:
    """The unique f with Qf = z f on the interior, f(a) = alpha, f(b) = beta."""
    interior_spec = eigen(
        ReversibleOperator.restricted(s.graph, s.interior)
    ).values
    if any(abs(z - mu) <= 1e-9 for mu in interior_spec):
        raise TooCloseToInteriorSpectrum(f"z={z} is within 1e-9 of an interior eigenvalue")
    k = kernels if kernels is not None else boundary_kernels(s)
    return {
        u: alpha * k.to_a[u].eval_float(z) + beta * k.to_b[u].eval_float(z)
        for u in range(s.graph.n)
    }


def _resolvent_column(P: list[list[Fraction]], z: Fraction, y: int) -> list[Fraction]:
    """Column y of (zI - P)^{-1}, solved exactly."""
    n = len(P)
    A = [[(z if i == j else Fraction(0)) - P[i][j] for j in range(n)] for i in range(n)]
    rhs = [Fraction(1) if i == y else Fraction(0) for i in range(n)]
    return solve_fraction_system(A, rhs)


def verify_resolvent_identity(
    sub: SubstitutedGraph, tf: TransferFunctions, z: Fraction, pairs
) -> list[tuple[int, int, bool]]:
    """Check G_sub(x,y|z) * psi(z) = G_host(x,y|phi(z)) exactly at rational z.

    `pairs` are host-vertex index pairs (x, y); host vertices keep their
    indices inside the substituted graph.
    """
    z = Fraction(z)
    phi_z = tf.phi.eval_exact(z)
    psi_z = tf.psi.eval_exact(z)

    P_host = ReversibleOperator.full(sub.host).matrix_exact()
    P_star = ReversibleOperator.full(sub.graph).matrix_exact()

    host_cols: dict[int, list[Fraction]] = {}
    star_cols: dict[int, list[Fraction]] = {}
    results = []
    for x, y in pairs:
        if y not in host_cols:
            host_cols[y] = _resolvent_column(P_host, phi_z, y)
        if y not in star_cols:
            star_cols[y] = _resolvent_column(P_star, z, y)
        lhs = star_cols[y][x] * psi_z
        rhs = host_cols[y][x]
        results.append((x, y, lhs == rhs))
    return results
