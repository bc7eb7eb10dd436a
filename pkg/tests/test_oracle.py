import math
from fractions import Fraction

import numpy as np
import pytest

from edgesub.errors import NoSuchCluster, TooLarge
from edgesub.fixtures import (
    chorded_square_substituent,
    cycle_host,
    path_host,
    path_substituent,
)
from edgesub.graph import Orientation
from edgesub.operators import ReversibleOperator, eigen, spectral_radius
from edgesub.oracle import (
    direct_spectrum,
    dominance_report,
    fixture_circle,
    nodal_dimension,
)
from edgesub.substitution import substitute


def _sub(X, s):
    return substitute(X, Orientation.default(X), s)


class TestDirectSpectrum:
    def test_size_cap(self):
        sub = _sub(cycle_host(3), chorded_square_substituent())
        with pytest.raises(TooLarge):
            direct_spectrum(sub, cap=5)

    def test_total_dimension(self):
        sub = _sub(cycle_host(4), path_substituent(3))
        dec = direct_spectrum(sub)
        assert dec.dim == sub.graph.n


class TestNodalDimension:
    def test_chorded_square_on_square(self):
        sub = _sub(cycle_host(4), chorded_square_substituent())
        dec = direct_spectrum(sub)
        # -1/3 has a 4-dimensional per-edge family vanishing on the host
        assert nodal_dimension(dec, -1 / 3, sub.host.n) == 4
        # 1/3 survives only through the even cycle: dimension 1
        assert nodal_dimension(dec, 1 / 3, sub.host.n) == 1

    def test_missing_cluster_raises(self):
        sub = _sub(cycle_host(4), chorded_square_substituent())
        dec = direct_spectrum(sub)
        with pytest.raises(NoSuchCluster):
            nodal_dimension(dec, 0.123456, sub.host.n)

    def test_values_with_full_host_support_have_no_nodal_part(self):
        sub = _sub(cycle_host(4), chorded_square_substituent())
        dec = direct_spectrum(sub)
        top = dec.values[0]
        assert nodal_dimension(dec, top, sub.host.n) == 0


class TestDominance:
    def test_path_endpoints_dominate(self):
        rep = dominance_report(path_host(3))
        assert rep[0]["dominant"] and rep[2]["dominant"]
        assert not rep[1]["dominant"]

    def test_host_vertices_not_dominant_in_substituted_graph(self):
        sub = _sub(cycle_host(4), chorded_square_substituent())
        rep = dominance_report(sub.graph)
        for x in range(sub.host.n):
            assert not rep[x]["dominant"]

    def test_local_spectra_are_subsets(self):
        g = cycle_host(5)
        full = set(round(v, 9) for v in eigen(ReversibleOperator.full(g)).values)
        for entry in dominance_report(g):
            assert set(round(v, 9) for v in entry["local_spectrum"]) <= full


class TestFixtureCircle:
    def test_validation(self):
        with pytest.raises(ValueError):
            fixture_circle(Fraction(1), 1)
        with pytest.raises(ValueError):
            fixture_circle(Fraction(3, 2), 2)

    def test_uniform_circle_top_gap(self):
        for N in (2, 3, 4):
            g = fixture_circle(Fraction(1), N)
            dec = eigen(ReversibleOperator.full(g))
            assert abs(dec.values[0] - 1.0) < 1e-12
            assert abs(dec.values[1] - math.cos(math.pi / N)) < 1e-10

    def test_degenerate_path_top_gap(self):
        for N in (2, 3, 4):
            g = fixture_circle(Fraction(0), N)
            assert g.num_edges == 2 * N - 1
            dec = eigen(ReversibleOperator.full(g))
            assert abs(dec.values[1] - math.cos(math.pi / (2 * N - 1))) < 1e-10

    def test_gap_monotone_in_weight(self):
        # strengthening the extra edge widens the gap: lambda1 decreases in a
        N = 3
        prev = None
        for k in range(11):
            a = Fraction(k, 10)
            g = fixture_circle(a, N)
            dec = eigen(ReversibleOperator.full(g))
            lam1 = dec.values[1]
            if prev is not None:
                assert lam1 <= prev + 1e-12
            prev = lam1

    def test_bipartite_symmetry(self):
        # even circles are bipartite: the spectrum is symmetric about zero
        for N in (2, 3):
            g = fixture_circle(Fraction(1), N)
            vals = sorted(eigen(ReversibleOperator.full(g)).all_values())
            for lo, hi in zip(vals, reversed(vals)):
                assert abs(lo + hi) < 1e-10
