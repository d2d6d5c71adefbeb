"""
Tests for one-parameter deformations, the reduced 2-cocycle condition and Nijenhuis operators
"""

from fractions import Fraction

import pytest

from src.algebra.freemod import ModuleMap, element_parse
from src.algebra.lcsa import check_all
from src.algebra.polyring import Poly
from src.algebra.rep import adjoint
from src.cohomology.cochain import Cochain, bracket_cochain
from src.cohomology.deformation import (
    build_family,
    cocycle2_check,
    deform,
    deformation_operator,
    nijenhuis_bracket_table,
    nijenhuis_check,
    nijenhuis_deformation,
)
from src.core.constants import Parity
from src.core.exceptions import AlphaCommutationFailure, ModuleMismatchError, ParityError
from src.core.models import CheckStatus


class TestDeformation:

    def test_zero_cochain_deforms_trivially(self, ns_document):
        family, reports = deform(ns_document.algebra, ns_document.cochain("zero2"))
        assert [r.name for r in reports] == ["deformation linear condition", "deformation quadratic condition"]
        assert all(r.passed for r in reports)
        assert family.parameter == "t"

    def test_scaled_bracket_family(self, ns):
        family, reports = deform(ns, bracket_cochain(ns))
        assert all(r.passed for r in reports)
        ctx = ("t", "l")
        assert family.algebra.bracket("L", "L") == element_parse("(t*d + 2*t*l + d + 2*l) L", ns.module, ctx)
        assert all(r.passed for r in check_all(family.algebra))

    def test_family_at_zero_is_the_base(self, ns):
        family = build_family(ns, bracket_cochain(ns))
        base = family.at_zero()
        for a in ns.names:
            for b in ns.names:
                assert base.bracket(a, b) == ns.bracket(a, b)

    def test_odd_cochain_is_rejected(self, ns):
        odd = Cochain(ns, bracket_cochain(ns).target, 2, Parity.ODD, {})
        with pytest.raises(ParityError):
            build_family(ns, odd)

    def test_wrong_arity_is_rejected(self, ns_document):
        with pytest.raises(ValueError):
            build_family(ns_document.algebra, ns_document.cochain("gamma"))

    def test_cochain_must_take_values_in_the_shifted_module(self, ns):
        on_adjoint = bracket_cochain(ns, adjoint(ns))
        with pytest.raises(ModuleMismatchError, match="shift:-1"):
            deform(ns, on_adjoint)


class TestCocycle:

    def test_zero_is_a_cocycle(self, ns_document):
        report = cocycle2_check(ns_document.algebra, ns_document.cochain("zero2"))
        assert report.passed
        assert report.notes[-1] == "unreduced d_-1 zero2: 0 nonzero sorted triples"

    def test_invalid_cochain_fails_before_differentiating(self, ns):
        bad = Cochain(ns, bracket_cochain(ns).target, 2, Parity.EVEN,
                      {("L", "L"): element_parse("l1 L", ns.module, ("l1", "l2"))}, name="bad")
        report = cocycle2_check(ns, bad)
        assert report.status == CheckStatus.FAIL
        assert report.notes == ["cochain bad failed validation"]


class TestNijenhuis:

    @pytest.mark.parametrize("factor", [2, Fraction(1, 2), -3])
    def test_scalar_operators(self, ns, factor):
        result = nijenhuis_deformation(ns, ModuleMap.scalar(ns.module, factor))
        assert result.check.passed
        assert result.closure.passed
        assert all(r.passed for r in result.conditions)
        assert result.certificate.passed
        assert result.family.parameter == "t"

    def test_bracket_of_a_scalar_operator(self, ns):
        table = nijenhuis_bracket_table(ns, ModuleMap.scalar(ns.module, 2))
        assert table[("L", "L")] == ns.bracket("L", "L").scale(2)

    def test_operator_from_file(self, ns_document):
        f = ns_document.map_spec("twice").module_map()
        assert nijenhuis_check(ns_document.algebra, f).passed

    def test_projection_onto_subalgebra(self, ns_document):
        f = ns_document.map_spec("proj").module_map()
        assert nijenhuis_check(ns_document.algebra, f).passed

    def test_partial_is_not_nijenhuis(self, ns):
        f = ModuleMap.scalar(ns.module, Poly.partial())
        result = nijenhuis_deformation(ns, f)
        assert result.check.status == CheckStatus.FAIL
        assert ("L", "L") in result.check.witnesses()
        assert result.family is None
        assert result.reports() == [result.check]

    def test_operator_must_commute_with_alpha(self, cur_twisted):
        swap = ModuleMap(cur_twisted.module, cur_twisted.module, {
            "x": element_parse("y", cur_twisted.module),
            "y": element_parse("x", cur_twisted.module),
        })
        with pytest.raises(AlphaCommutationFailure):
            nijenhuis_check(cur_twisted, swap)

    def test_deformation_operator(self, ns):
        T = deformation_operator(ns, ModuleMap.scalar(ns.module, 2), "t")
        assert T(ns.generator("L")) == element_parse("(2*t + 1) L", ns.module, ("t",))
