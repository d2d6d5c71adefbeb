"""
Tests for cochains, their validation and the differential
"""

import random

import pytest

from src.algebra.freemod import Element, ModuleMap, element_parse
from src.algebra.lcsa import ConformalAlgebra
from src.algebra.polyring import Poly
from src.algebra.rep import adjoint, rep_shift
from src.cohomology.cochain import (
    Cochain,
    bracket_cochain,
    cochain_validate,
    default_shift_target,
    differential,
    differential_s,
    random_cochain,
    zero_cochain,
)
from src.core.constants import Parity


PAIR = ("l1", "l2")


def two_cochain(A, values, parity=Parity.EVEN):
    parsed = {key: element_parse(text, A.module, PAIR) for key, text in values.items()}
    return Cochain(A, adjoint(A), 2, parity, parsed, name="sample")


class TestLookup:

    def test_unsorted_tuple_follows_sign_rule(self, ns):
        gamma = two_cochain(ns, {("L", "E"): "l1 E"})
        assert gamma.value(("E", "L")) == element_parse("-l2 E", ns.module, PAIR)

    def test_odd_pair_is_symmetric(self, ns):
        gamma = two_cochain(ns, {("E", "E"): "L"})
        assert gamma.value(("E", "E")) == element_parse("L", ns.module, PAIR)

    def test_missing_tuples_are_zero(self, ns):
        gamma = two_cochain(ns, {})
        assert gamma.value(("L", "E")).is_zero()
        assert gamma.is_zero()

    def test_evaluate_is_conformally_antilinear(self, ns):
        gamma = two_cochain(ns, {("L", "E"): "E"})
        ctx = ("l", "m")
        dL = ns.generator("L", ctx).times_partial()
        value = gamma.evaluate([dL, ns.generator("E", ctx)], [Poly.variable("l", ctx), Poly.variable("m", ctx)])
        assert value == element_parse("-l E", ns.module, ctx)


class TestValidation:

    def test_consistent_cochain(self, ns):
        gamma = two_cochain(ns, {("L", "L"): "(l1 - l2) L", ("L", "E"): "E"})
        assert cochain_validate(gamma).passed

    def test_sign_violation(self, ns):
        gamma = two_cochain(ns, {("L", "E"): "E", ("E", "L"): "E"})
        report = cochain_validate(gamma)
        assert not report.passed
        assert [r.label for r in report.residuals] == ["sign"]

    def test_symmetry_violation(self, ns):
        report = cochain_validate(two_cochain(ns, {("L", "L"): "l1 L"}))
        assert [r.label for r in report.residuals] == ["symmetry"]

    def test_parity_violation(self, ns):
        report = cochain_validate(two_cochain(ns, {("L", "L"): "E"}))
        assert "parity" in [r.label for r in report.residuals]

    def test_alpha_commutation(self, cur_twisted):
        fixed = Cochain(cur_twisted, adjoint(cur_twisted), 0, Parity.EVEN,
                        {(): element_parse("x", cur_twisted.module)})
        moved = Cochain(cur_twisted, adjoint(cur_twisted), 0, Parity.EVEN,
                        {(): element_parse("y", cur_twisted.module)})
        assert cochain_validate(fixed).passed
        assert [r.label for r in cochain_validate(moved).residuals] == ["commutativity"]

    @pytest.mark.parametrize("arity", [0, 1, 2])
    def test_random_cochains_validate(self, ns, arity):
        gamma = random_cochain(ns, adjoint(ns), arity, Parity.EVEN, random.Random(arity), 1, 1)
        assert cochain_validate(gamma).passed

    @pytest.mark.parametrize("seed", [1, 3, 4])
    @pytest.mark.parametrize("arity", [0, 1, 2])
    def test_random_cochains_commute_with_a_diagonal_twist(self, cur_twisted, seed, arity):
        for target in (adjoint(cur_twisted), rep_shift(cur_twisted, -1)):
            gamma = random_cochain(cur_twisted, target, arity, Parity.EVEN, random.Random(seed))
            assert cochain_validate(gamma).passed

    def test_diagonal_twist_keeps_matching_components_only(self, cur_twisted):
        gamma = random_cochain(cur_twisted, adjoint(cur_twisted), 1, Parity.EVEN, random.Random(2),
                               coeff_range=5, max_terms=6)
        assert set(gamma.value(("x",)).coeffs) <= {"x"}
        assert set(gamma.value(("y",)).coeffs) <= {"y"}


class TestDifferential:

    def test_base_case_values(self, ns_document):
        gamma = ns_document.cochain("gamma")
        d_gamma = differential(gamma)
        assert d_gamma.arity == 1
        assert str(d_gamma.value(("L",))) == "(2*l1 + d) L"
        assert str(d_gamma.value(("E",))) == "((3/2)*l1 + (1/2)*d) E"

    @pytest.mark.parametrize("seed", [1, 2, 3])
    @pytest.mark.parametrize("arity,parity", [(0, Parity.EVEN), (1, Parity.EVEN), (0, Parity.ODD), (1, Parity.ODD)])
    def test_square_vanishes_on_random_cochains(self, ns, seed, arity, parity):
        gamma = random_cochain(ns, adjoint(ns), arity, parity, random.Random(seed), 1, 1)
        assert differential(differential(gamma)).is_zero()

    @pytest.mark.parametrize("seed", [4, 5])
    def test_square_vanishes_with_shifted_target(self, ns, seed):
        target = rep_shift(ns, -1)
        gamma = random_cochain(ns, target, 1, Parity.EVEN, random.Random(seed), 1, 1)
        assert differential(differential(gamma)).is_zero()

    @pytest.mark.parametrize("algebra", ["cur_lie", "cur_twisted"])
    @pytest.mark.parametrize("shift", [None, 1, -1])
    @pytest.mark.parametrize("seed", [1, 3, 4])
    def test_square_vanishes_on_random_current_cochains(self, request, algebra, shift, seed):
        A = request.getfixturevalue(algebra)
        target = adjoint(A) if shift is None else rep_shift(A, shift)
        rng = random.Random(seed)
        for arity in (0, 1):
            gamma = random_cochain(A, target, arity, Parity.EVEN, rng, 1, 1)
            assert cochain_validate(gamma).passed
            assert differential(differential(gamma)).is_zero()

    def test_square_vanishes_on_twisted_current(self, cur_twisted):
        gamma = Cochain(cur_twisted, adjoint(cur_twisted), 0, Parity.EVEN,
                        {(): element_parse("x", cur_twisted.module)})
        d_gamma = differential(gamma)
        assert d_gamma.value(("y",)) == element_parse("-y", cur_twisted.module, ("l1",))
        assert differential(d_gamma).is_zero()

    def test_differential_s_uses_shifted_target(self, ns_document):
        gamma = ns_document.cochain("gamma")
        d_gamma = differential_s(gamma, -1)
        assert d_gamma.target.name == "shift:-1"
        assert d_gamma.value(("L",)) == differential(gamma).value(("L",))

    def test_zero_cochain(self, ns):
        assert differential(zero_cochain(ns, adjoint(ns), 2)).is_zero()


class TestConstructors:

    def test_bracket_cochain_is_reduced(self, ns):
        psi = bracket_cochain(ns)
        assert psi.target.name == "shift:-1"
        assert psi.value(("L", "L")) == element_parse("(l1 - l2) L", ns.module, PAIR)

    def test_default_target_without_regular_alpha(self, abelian):
        twist = ModuleMap.from_entries(abelian.module, abelian.module,
                                       {("a", "a"): Poly.partial(), ("b", "b"): Poly.one()})
        singular = ConformalAlgebra(abelian.module, {}, twist)
        target, warning = default_shift_target(singular, -1)
        assert target.name == "adjoint"
        assert "not regular" in warning

    def test_random_cochain_is_reproducible(self, ns):
        first = random_cochain(ns, adjoint(ns), 2, Parity.EVEN, random.Random(9))
        second = random_cochain(ns, adjoint(ns), 2, Parity.EVEN, random.Random(9))
        assert all(first.value(args) == second.value(args) for args in first.sorted_tuples())
        assert isinstance(first.value(("L", "E")), Element)
