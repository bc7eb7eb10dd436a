"""Assembly of the full spectrum of the substituted operator.

The spectrum decomposes into three parts:

* S1 — solutions of phi(lambda*) = lambda for host eigenvalues lambda,
  away from the interior spectrum, with multiplicity nu_P(lambda);
* S2 — eigenvalues of Q of multiplicity two outside the interior spectrum
  (equivalently psi(lambda*) = 0 and theta(lambda*) = lambda*), with
  multiplicity |X|;
* interior — eigenvalues of the interior restriction, with multiplicity
  given by a table over the (Q-type, interior-type) pair; tree and
  odd-unicyclic hosts can drop some candidates (the exceptional set).

The final report is checked against the dimension of X[V].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .algebra import real_roots_in_interval
from .classify import TypedEigenvalue, classify_Q, classify_Qinterior
from .errors import (
    InvalidTypeCombination,
    PreconditionNotMet,
    S2ConsistencyFailure,
    TotalMismatch,
)
from .extensions import ExtensionFunction, nodal_from_interior
from .graph import (
    CycleBase,
    Orientation,
    Substituent,
    WeightedGraph,
    fundamental_cycle_base,
    validate_substituent,
)
from .operators import (
    CLUSTER_TOL,
    EigenDecomposition,
    ReversibleOperator,
    eigen,
)
from .substitution import SubstitutedGraph, substitute
from .transfer import TransferFunctions, compute_transfer

S2_EQ_TOL = 1e-7


@dataclass(frozen=True)
class SpectrumEntry:
    value: float
    nu: int
    provenance: tuple[str, ...]

    def describe(self) -> str:
        return f"{self.value:+.12f}  nu={self.nu}  [{'; '.join(self.provenance)}]"


@dataclass
class SpectrumReport:
    entries: list[SpectrumEntry]
    exc: list[tuple[float, str]]
    gap: Optional[tuple[float, float]]
    total: int
    expected_total: int
    delta_b: int
    host_is_tree: bool
    host_is_odd_unicyclic: bool
    settings: dict = field(default_factory=dict)

    def values(self) -> list[float]:
        return [e.value for e in self.entries]

    def multiset(self) -> list[tuple[float, int]]:
        return [(e.value, e.nu) for e in self.entries]

    def to_text(self) -> str:
        lines = ["spectrum-report"]
        for key, val in self.settings.items():
            lines.append(f"  setting {key} = {val}")
        lines.append(f"  delta_b = {self.delta_b}")
        lines.append(f"  host_is_tree = {self.host_is_tree}")
        lines.append(f"  host_is_odd_unicyclic = {self.host_is_odd_unicyclic}")
        lines.append(f"  total = {self.total} / {self.expected_total}")
        if self.gap is not None:
            lines.append(f"  gap lambda1 = {self.gap[0]:.12f} lambda1* = {self.gap[1]:.12f}")
        for fval, rule in self.exc:
            lines.append(f"  excluded {fval:+.12f} (rule {rule})")
        lines.append("  entries:")
        for e in self.entries:
            lines.append("    " + e.describe())
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# S1
# ---------------------------------------------------------------------------


def _psi_zeros(tf: TransferFunctions, grid: int) -> list[float]:
    if tf.psi.num.degree < 1:
        return []
    return [r for r, _ in real_roots_in_interval(tf.psi.num.float_coeffs(), -1.0, 1.0, grid=grid)]


def solve_S1(
    tf: TransferFunctions,
    spec_P: EigenDecomposition,
    interior_spec: list[float],
    grid: int = 4096,
    exclusion_tol: float = 1e-8,
) -> list[tuple[float, float, int]]:
    """All (lambda*, lambda, nu_P(lambda)) with phi(lambda*) = lambda."""
    psi_zeros = _psi_zeros(tf, grid)
    num = tf.phi.num
    den = tf.phi.den
    out = []
    width = max(len(num.coeffs), len(den.coeffs))
    coeffs = [float(c) for c in num.coeffs] + [0.0] * (width - len(num.coeffs))
    dcoeffs = [float(c) for c in den.coeffs] + [0.0] * (width - len(den.coeffs))
    for lam, nu in zip(spec_P.values, spec_P.multiplicities):
        poly = [c - lam * d for c, d in zip(coeffs, dcoeffs)]
        for root, _ in real_roots_in_interval(poly, -1.0, 1.0, grid=grid):
            if any(abs(root - mu) <= exclusion_tol for mu in interior_spec):
                continue
            if any(abs(root - z) <= exclusion_tol for z in psi_zeros):
                continue
            out.append((root, lam, nu))
    return out


# ---------------------------------------------------------------------------
# S2
# ---------------------------------------------------------------------------


def solve_S2(
    classified_Q: list[TypedEigenvalue],
    interior_spec: list[float],
    tf: TransferFunctions,
    tol: float = CLUSTER_TOL,
) -> list[float]:
    """Eigenvalues of Q outside the interior spectrum with multiplicity two.

    Membership is cross-checked against the defining equations
    psi(lambda*) = 0 and theta(lambda*) = lambda* on the unreduced pair.
    """
    members = []
    for t in classified_Q:
        interior_hit = any(abs(t.value - mu) <= tol for mu in interior_spec)
        is_member = (not interior_hit) and t.nu == 2 and t.type == "IV"

        psi_small = _vanishes_at(tf.psi, t.value)
        theta_fixed = _vanishes_at(tf.z_minus_theta, t.value)
        eq_member = (not interior_hit) and psi_small and theta_fixed

        if is_member != eq_member:
            raise S2ConsistencyFailure(
                f"lambda*={t.value}: type test {is_member} vs equation test {eq_member}"
            )
        if is_member:
            members.append(t.value)
    return members


def _vanishes_at(rf, z: float) -> bool:
    num = rf.num.eval_float(z)
    den = rf.den.eval_float(z)
    if abs(den) < 1e-12:
        # pole of the representation; decide by the numerator alone
        return abs(num) <= S2_EQ_TOL
    return abs(num / den) <= S2_EQ_TOL


# ---------------------------------------------------------------------------
# Exceptional set
# ---------------------------------------------------------------------------


def exceptional_set(
    base: CycleBase,
    classified_interior: list[TypedEigenvalue],
    classified_Q: list[TypedEigenvalue],
    tol: float = CLUSTER_TOL,
) -> list[tuple[float, str]]:
    is_tree = len(base.cycles) == 0
    is_odd_unicyclic = len(base.cycles) == 1 and not base.cycles[0].is_even
    if not (is_tree or is_odd_unicyclic):
        return []

    def q_match(value):
        return next((t for t in classified_Q if abs(t.value - value) <= tol), None)

    out = []
    for t in classified_interior:
        if t.nu != 1:
            continue
        qt = q_match(t.value)
        if is_tree:
            if t.type in ("II", "III") and qt is None:
                out.append((t.value, "A"))
        else:
            if t.type == "II" and qt is None:
                out.append((t.value, "B"))
            elif t.type == "II" and qt is not None and qt.type == "III" and qt.nu == 1:
                out.append((t.value, "B"))
    return out


# ---------------------------------------------------------------------------
# Interior multiplicity table
# ---------------------------------------------------------------------------


def interior_multiplicity(
    row: str, col: str, nu_o: int, n_X: int, n_E: int, delta_b: int
) -> int:
    """nu_* of an interior eigenvalue by (Q-type row, interior-type column).

    Row "0" means the value is not an eigenvalue of Q.
    """
    E, X, d = n_E, n_X, delta_b
    table = {
        ("0", "I"): None,
        ("0", "II"): E - X + d,
        ("0", "III"): E - X + 1,
        ("0", "IV"): 2 * E - X,
        ("I", "I"): nu_o * E,
        ("I", "II"): nu_o * E - X + d,
        ("I", "III"): nu_o * E - X + 1,
        ("I", "IV"): nu_o * E - X,
        ("II", "I"): nu_o * E + 1,
        ("II", "II"): nu_o * E - X + 1 + d,
        ("II", "III"): nu_o * E - X + 2,
        ("II", "IV"): nu_o * E - X + 1,
        ("III", "I"): nu_o * E + d,
        ("III", "II"): nu_o * E - X + 2 * d,
        ("III", "III"): nu_o * E - X + 1 + d,
        ("III", "IV"): nu_o * E - X + d,
        ("IV", "I"): nu_o * E + X,
        ("IV", "II"): nu_o * E + d,
        ("IV", "III"): nu_o * E + 1,
        ("IV", "IV"): nu_o * E,
    }
    if (row, col) not in table:
        raise InvalidTypeCombination(f"({row}, {col})")
    value = table[(row, col)]
    if value is None:
        raise InvalidTypeCombination(f"({row}, {col}°) cannot occur")
    return value


# ---------------------------------------------------------------------------
# Full assembly
# ---------------------------------------------------------------------------


@dataclass
class PipelineResult:
    report: SpectrumReport
    substituted: SubstitutedGraph
    transfer: TransferFunctions
    spec_P: EigenDecomposition
    spec_Q: EigenDecomposition
    spec_interior: EigenDecomposition
    classified_Q: list[TypedEigenvalue]
    classified_interior: list[TypedEigenvalue]
    cycle_base: CycleBase
    nodal_families: dict[float, list[ExtensionFunction]]


def _merge(entries: list[SpectrumEntry], tol: float) -> list[SpectrumEntry]:
    merged: list[SpectrumEntry] = []
    for e in sorted(entries, key=lambda x: -x.value):
        if merged and abs(merged[-1].value - e.value) <= tol:
            prev = merged[-1]
            merged[-1] = SpectrumEntry(
                prev.value,
                prev.nu + e.nu,
                prev.provenance + e.provenance + ("MergedProvenance",),
            )
        else:
            merged.append(e)
    return merged


def assemble(
    X: WeightedGraph,
    orient: Orientation,
    s: Substituent,
    cluster_tol: float = CLUSTER_TOL,
    grid: int = 4096,
    build_families: bool = True,
) -> PipelineResult:
    validate_substituent(s)
    sub = substitute(X, orient, s)
    tf = compute_transfer(s)
    base = fundamental_cycle_base(X)

    spec_P = eigen(ReversibleOperator.full(X), cluster_tol)
    spec_Q = eigen(ReversibleOperator.full(s.graph), cluster_tol)
    spec_int = eigen(ReversibleOperator.restricted(s.graph, s.interior), cluster_tol)
    cQ = classify_Q(s, spec_Q)
    cI = classify_Qinterior(s, spec_int)
    interior_spec = list(spec_int.values)

    n_X, n_E = X.n, X.num_edges
    delta_b = X.delta_b

    entries: list[SpectrumEntry] = []
    for root, lam, nu in solve_S1(tf, spec_P, interior_spec, grid=grid):
        entries.append(
            SpectrumEntry(root, nu, (f"S1: phi({root:.6f}) = {lam:.6f}, nu_P={nu}",))
        )
    for lam_star in solve_S2(cQ, interior_spec, tf, tol=cluster_tol):
        entries.append(SpectrumEntry(lam_star, n_X, ("S2",)))

    exc = exceptional_set(base, cI, cQ, tol=cluster_tol)
    families: dict[float, list[ExtensionFunction]] = {}
    for t in cI:
        qt = next((q for q in cQ if abs(q.value - t.value) <= cluster_tol), None)
        row = qt.type if qt is not None else "0"
        nu_star = interior_multiplicity(row, t.type, t.nu, n_X, n_E, delta_b)
        assert nu_star >= 0, "table produced a negative multiplicity"
        if build_families:
            families[t.value] = nodal_from_interior(sub, t, base)
        if nu_star > 0:
            entries.append(
                SpectrumEntry(t.value, nu_star, (f"Interior: ({row}, {t.type}°)",))
            )

    entries = _merge(entries, cluster_tol)
    total = sum(e.nu for e in entries)
    expected = n_X + n_E * (s.graph.n - 2)
    report = SpectrumReport(
        entries=entries,
        exc=exc,
        gap=None,
        total=total,
        expected_total=expected,
        delta_b=delta_b,
        host_is_tree=len(base.cycles) == 0,
        host_is_odd_unicyclic=len(base.cycles) == 1 and not base.cycles[0].is_even,
        settings={"cluster_tol": cluster_tol, "grid": grid},
    )
    if total != expected:
        raise TotalMismatch(f"sum of multiplicities {total} != |X[V]| = {expected}\n" + report.to_text())

    try:
        report.gap = spectral_gap(report, tf, spec_P, X, s, grid=grid)
    except PreconditionNotMet:
        report.gap = None

    return PipelineResult(
        report, sub, tf, spec_P, spec_Q, spec_int, cQ, cI, base, families
    )


def spectral_gap(
    report: SpectrumReport,
    tf: TransferFunctions,
    spec_P: EigenDecomposition,
    X: WeightedGraph,
    s: Substituent,
    grid: int = 4096,
) -> tuple[float, float]:
    """(lambda1, lambda1*): the host gap and the substituted gap."""
    if X.n < 3:
        raise PreconditionNotMet("need |X| >= 3")
    lam1 = spec_P.values[1]
    interior_connected = s.graph.connected_on(s.interior)
    if not interior_connected and lam1 < 0:
        raise PreconditionNotMet("need connected interior or lambda1 >= 0")

    coeffs = [float(c) for c in tf.phi.num.coeffs]
    dcoeffs = [float(c) for c in tf.phi.den.coeffs]
    n = max(len(coeffs), len(dcoeffs))
    coeffs += [0.0] * (n - len(coeffs))
    dcoeffs += [0.0] * (n - len(dcoeffs))
    poly = [c - lam1 * d for c, d in zip(coeffs, dcoeffs)]
    roots = real_roots_in_interval(poly, -1.0, 1.0, grid=grid)
    lam1_star = max(r for r, _ in roots)

    second = sorted(report.values(), reverse=True)[1]
    if abs(second - lam1_star) > 1e-9:
        raise PreconditionNotMet(
            f"largest phi-root {lam1_star} is not the report's second entry {second}"
        )
    return lam1, lam1_star
