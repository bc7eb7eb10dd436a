import math
import random

import pytest

from edgesub.assemble import assemble, interior_multiplicity
from edgesub.errors import InvalidTypeCombination
from edgesub.fixtures import (
    chorded_square_substituent,
    circle_substituent,
    cycle_host,
    path_host,
    path_substituent,
    star_host,
)
from edgesub.graph import Orientation, WeightedGraph
from edgesub.oracle import direct_spectrum

from randinst import random_host, random_substituent


def _run(X, s, **kw):
    return assemble(X, Orientation.default(X), s, **kw)


def _oracle_agrees(result, tol=1e-7):
    dec = direct_spectrum(result.substituted)
    a = sorted(result.report.multiset())
    d = sorted(dec.value_multiset())
    if len(a) != len(d):
        return False
    return all(abs(x - y) <= tol and m == n for (x, m), (y, n) in zip(a, d))


class TestChordedSquareOnPentagon:
    """The worked five-cycle example with closed-form eigenvalues."""

    def setup_method(self):
        self.result = _run(cycle_host(5), chorded_square_substituent())

    def test_closed_forms(self):
        r5 = math.sqrt(5)
        expected = sorted(
            [
                (1.0, 1),
                ((1 + math.sqrt(10 + 3 * r5)) / 6, 2),
                ((1 + math.sqrt(10 - 3 * r5)) / 6, 2),
                (-1 / 3, 5),
                ((1 - math.sqrt(10 - 3 * r5)) / 6, 2),
                ((1 - math.sqrt(10 + 3 * r5)) / 6, 2),
                (-2 / 3, 1),
            ]
        )
        got = sorted(self.result.report.multiset())
        assert len(got) == len(expected)
        for (gv, gn), (ev, en) in zip(got, expected):
            assert abs(gv - ev) < 1e-9
            assert gn == en

    def test_totals(self):
        rep = self.result.report
        assert rep.total == rep.expected_total == 15

    def test_exceptional_set(self):
        # the pentagon is odd-unicyclic; 1/3 is dropped by the unicyclic rule
        rep = self.result.report
        assert rep.host_is_odd_unicyclic and not rep.host_is_tree
        assert len(rep.exc) == 1
        value, rule = rep.exc[0]
        assert abs(value - 1 / 3) < 1e-9 and rule == "B"

    def test_no_S2(self):
        assert not any(
            "S2" in p for e in self.result.report.entries for p in e.provenance
        )

    def test_gap(self):
        lam1, lam1_star = self.result.report.gap
        assert abs(lam1 - math.cos(2 * math.pi / 5)) < 1e-12
        assert abs(lam1_star - (1 + math.sqrt(10 + 3 * math.sqrt(5))) / 6) < 1e-9
        second = sorted(self.result.report.values(), reverse=True)[1]
        assert abs(lam1_star - second) < 1e-9

    def test_oracle(self):
        assert _oracle_agrees(self.result)

    def test_interior_provenance(self):
        interior = [
            e
            for e in self.result.report.entries
            if any(p.startswith("Interior") for p in e.provenance)
        ]
        assert len(interior) == 1
        assert abs(interior[0].value + 1 / 3) < 1e-9
        assert interior[0].nu == 5
        assert "(I, I°)" in interior[0].provenance[0]


class TestMultiplicityTable:
    def test_row_zero(self):
        assert interior_multiplicity("0", "II", 1, 4, 6, 1) == 3
        assert interior_multiplicity("0", "III", 1, 4, 6, 0) == 3
        assert interior_multiplicity("0", "IV", 1, 4, 6, 0) == 8

    def test_row_zero_type_I_is_impossible(self):
        with pytest.raises(InvalidTypeCombination):
            interior_multiplicity("0", "I", 1, 4, 6, 0)

    def test_unknown_pair(self):
        with pytest.raises(InvalidTypeCombination):
            interior_multiplicity("V", "I", 1, 4, 6, 0)

    def test_nu_o_scaling(self):
        # doubling the interior multiplicity adds E per unit in every cell
        for row in ("I", "II", "III", "IV"):
            for col in ("I", "II", "III", "IV"):
                one = interior_multiplicity(row, col, 1, 5, 7, 0)
                two = interior_multiplicity(row, col, 2, 5, 7, 0)
                assert two - one == 7

    def test_row_IV_dominates(self):
        # a swapped Q-pair never loses dimension to the host
        for col, extra in (("I", 4), ("II", 1), ("III", 1), ("IV", 0)):
            assert interior_multiplicity("IV", col, 1, 4, 6, 1) >= 6


class TestExceptionalRules:
    def test_tree_host_rule_A(self):
        result = _run(star_host(4), chorded_square_substituent())
        rep = result.report
        assert rep.host_is_tree
        assert [(round(v, 9), r) for v, r in rep.exc] == [(round(1 / 3, 9), "A")]
        assert _oracle_agrees(result)

    def test_odd_unicyclic_rule_B_coincident(self):
        # adjacent circle on a triangle: two interior values coincide with
        # simple type-III eigenvalues of Q and drop out
        result = _run(cycle_host(3), circle_substituent(3, "adjacent"))
        rep = result.report
        assert rep.host_is_odd_unicyclic
        rules = {r for _, r in rep.exc}
        assert rules == {"B"}
        assert _oracle_agrees(result)

    def test_even_cycle_host_has_no_exceptions(self):
        result = _run(cycle_host(4), chorded_square_substituent())
        assert result.report.exc == []
        assert _oracle_agrees(result)


class TestS2:
    def test_adjacent_circle_on_square(self):
        result = _run(cycle_host(4), circle_substituent(2, "adjacent"))
        s2 = [
            e
            for e in result.report.entries
            if any(p == "S2" or "S2" in p for p in e.provenance)
        ]
        assert len(s2) == 1
        assert abs(s2[0].value - math.cos(math.pi / 2)) < 1e-9
        assert s2[0].nu == 4  # multiplicity |X|
        assert _oracle_agrees(result)

    def test_adjacent_circle_L3(self):
        result = _run(cycle_host(3), circle_substituent(3, "adjacent"))
        s2 = sorted(
            e.value
            for e in result.report.entries
            if any("S2" in p for p in e.provenance)
        )
        expect = sorted(math.cos(k * math.pi / 3) for k in (1, 2))
        assert len(s2) == 2
        for got, want in zip(s2, expect):
            assert abs(got - want) < 1e-9
        # psi vanishes and theta is fixed there, so the transfer quotient
        # cannot produce these points
        tf = result.transfer
        for v in s2:
            assert abs(tf.psi.num.eval_float(v) / tf.psi.den.eval_float(v)) < 1e-9

    def test_path_substituent_has_no_S2(self):
        result = _run(cycle_host(4), path_substituent(4))
        assert not any(
            "S2" in p for e in result.report.entries for p in e.provenance
        )


class TestPathSubstituents:
    @pytest.mark.parametrize("L", [2, 3, 4, 5])
    def test_paths_on_cycle(self, L):
        result = _run(cycle_host(4), path_substituent(L))
        rep = result.report
        assert rep.total == rep.expected_total == 4 + 4 * (L - 1)
        assert _oracle_agrees(result)

    @pytest.mark.parametrize("L", [2, 4, 6])
    def test_even_length_counts(self, L):
        # even-length path pieces on a bipartite host: S1 contributes
        # 2 + (|X| - 1 - delta_b) L points and the interior the rest
        X = cycle_host(4)
        result = _run(X, path_substituent(L))
        s1 = [
            e
            for e in result.report.entries
            if any(p.startswith("S1") for p in e.provenance)
        ]
        interior = [
            e
            for e in result.report.entries
            if any(p.startswith("Interior") for p in e.provenance)
        ]
        n_X, n_E, d = X.n, X.num_edges, X.delta_b
        assert sum(e.nu for e in s1) == 2 + (n_X - 1 - d) * L
        expect_interior = (n_E - n_X + 2 * d) * L // 2 + (n_E - n_X + 2) * (L - 2) // 2
        assert sum(e.nu for e in interior) == expect_interior


class TestEdgeCases:
    def test_single_edge_host_gives_substituent_spectrum(self):
        from fractions import Fraction

        X = WeightedGraph(["x0", "x1"], [(0, 1, Fraction(1))])
        s = chorded_square_substituent()
        result = _run(X, s)
        got = sorted(result.report.multiset())
        want = sorted(result.spec_Q.value_multiset())
        assert len(got) == len(want)
        for (gv, gn), (wv, wn) in zip(got, want):
            assert abs(gv - wv) < 1e-9 and gn == wn
        assert result.report.gap is None  # too small a host for the gap bound

    def test_disconnected_interior_negative_lambda1_skips_gap(self):
        # antipodal circle of length 2: the interior splits into two points
        result = _run(path_host(4), circle_substituent(2, "antipodal"))
        s = result.substituted.substituent
        assert not s.graph.connected_on(s.interior)
        lam1 = result.spec_P.values[1]
        if lam1 < 0:
            assert result.report.gap is None

    def test_random_instances_match_oracle(self):
        rng = random.Random(101)
        done = 0
        while done < 6:
            X = random_host(rng, max_n=5)
            s = random_substituent(rng, max_v=6)
            result = _run(X, s)
            assert result.report.total == result.report.expected_total
            assert _oracle_agrees(result)
            done += 1

    def test_gap_second_entry_consistency(self):
        for X, s in (
            (cycle_host(5), chorded_square_substituent()),
            (cycle_host(4), path_substituent(3)),
            (star_host(4), path_substituent(2)),
        ):
            result = _run(X, s)
            if result.report.gap is None:
                continue
            lam1, lam1_star = result.report.gap
            assert abs(lam1 - result.spec_P.values[1]) < 1e-12
            second = sorted(result.report.values(), reverse=True)[1]
            assert abs(lam1_star - second) < 1e-9
            assert abs(result.transfer.phi.eval_float(lam1_star) - lam1) < 1e-8
