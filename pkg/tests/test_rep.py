"""
Tests for conformal maps, gc(M) brackets, representations and semidirect sums
"""

import random
from fractions import Fraction

import pytest

from src.algebra.freemod import Element, GradedModule, ModuleMap, element_parse
from src.algebra.lcsa import check_all
from src.algebra.polyring import Poly, poly_parse, random_poly
from src.algebra.rep import (
    ConformalMap,
    Representation,
    adjoint,
    chom_compose,
    dual_rep_condition_check,
    gc_bracket,
    rep_check,
    rep_shift,
    semidirect,
)
from src.core.exceptions import ModuleMismatchError, ParityError, SlotCollisionError


CTX = ("l",)


def density_module(ns, weight):
    """ns acting on C[∂]v by L_λ v = (∂ + weight·λ) v"""
    V = GradedModule([("v", "even")])
    rho_L = ConformalMap.from_entries(V, V, {("v", "v"): poly_parse(f"d + ({weight})*l", CTX)})
    return Representation(ns, V, {"L": rho_L}, name="density")


class TestConformalMap:

    def test_apply_shifts_partial(self, ns):
        ad_L = adjoint(ns).rho["L"]
        x = ns.generator("L").times_partial()
        assert ad_L.apply(x, "l") == element_parse("(2*l^2 + 3*l*d + d^2) L", ns.module, CTX)

    def test_parity_is_enforced(self, ns):
        with pytest.raises(ParityError):
            ConformalMap(ns.module, ns.module, {"L": Element.generator(ns.module, "E", CTX)})

    def test_rename_slot_keeps_equality(self, ns):
        ad_L = adjoint(ns).rho["L"]
        renamed = ad_L.rename_slot("m")
        assert renamed.slot == "m"
        assert renamed == ad_L
        with pytest.raises(SlotCollisionError):
            ad_L.lift(("l", "m")).rename_slot("m")

    def test_partial_of_a_map(self, ns):
        ad_L = adjoint(ns).rho["L"]
        assert ad_L.partial().images["L"] == element_parse("(-2*l^2 - l*d) L", ns.module, CTX)

    def test_from_module_map_is_lambda_free(self, ns):
        f = ConformalMap.from_module_map(ModuleMap.scalar(ns.module, 3))
        assert f.max_degree("l") == 0
        assert f.apply(ns.generator("L").times_partial(), "l") == element_parse("(3*d + 3*l) L", ns.module, CTX)

    def test_compose_across_modules(self, ns):
        V = GradedModule([("v", "even")])
        with pytest.raises(ModuleMismatchError):
            chom_compose(ConformalMap.zero(V), adjoint(ns).rho["L"])


class TestGcBracket:

    def test_adjoint_bracket_is_adjoint_of_bracket(self, ns):
        rep = adjoint(ns)
        ctx = ("l", "m")
        mu = Poly.variable("m", ctx)
        for a, b in [("L", "L"), ("L", "E"), ("E", "L")]:
            commutator = gc_bracket(rep.rho[a], rep.rho[b])
            assert commutator.slot == "m"
            for c in ns.names:
                expected = rep.act(ns.bracket(a, b).lift(ctx), Element.generator(ns.module, c, ctx), mu)
                assert commutator.images[c] == expected

    def test_composition_is_the_forward_term(self, ns):
        rep = adjoint(ns)
        composed = chom_compose(rep.rho["L"], rep.rho["L"])
        bracket = gc_bracket(rep.rho["L"], rep.rho["L"])
        assert composed.slot == bracket.slot == "m"
        assert not composed.is_zero()

    def test_slot_collision_with_parameters(self, ns):
        f = adjoint(ns).rho["L"].lift(("t", "l"))
        with pytest.raises(SlotCollisionError):
            gc_bracket(f, f, at="l", out="t")


class TestRepresentation:

    def test_adjoint_of_ns(self, ns):
        assert rep_check(adjoint(ns)).passed

    def test_adjoint_of_mutant_fails(self, ns_mutant):
        report = rep_check(adjoint(ns_mutant))
        assert not report.passed
        assert ("L", "L", "L") in report.witnesses()

    @pytest.mark.parametrize("weight", ["0", "1/2", "1"])
    def test_density_modules(self, ns, weight):
        assert rep_check(density_module(ns, weight)).passed

    def test_rho_needs_matching_parity(self, ns):
        V = GradedModule([("v", "even"), ("w", "odd")])
        odd_map = ConformalMap.from_entries(V, V, {("w", "v"): Poly.one(CTX)}, parity=1)
        with pytest.raises(ParityError):
            Representation(ns, V, {"L": odd_map})

    @pytest.mark.parametrize("shift", [1, -1])
    def test_shifted_adjoint_of_twisted_current(self, cur_twisted, shift):
        rep = rep_shift(cur_twisted, shift)
        assert rep.name == f"shift:{shift}"
        assert rep_check(rep).passed

    def test_shift_acts_through_power_of_alpha(self, cur_twisted):
        rep = rep_shift(cur_twisted, -1)
        v = Element.generator(cur_twisted.module, "x", CTX)
        acted = rep.act(cur_twisted.generator("y", CTX), v, "m")
        assert acted == element_parse("-(1/2) y", cur_twisted.module, ("l", "m"))
        assert acted.coefficient("y").constant_value() == Fraction(-1, 2)

    def test_dual_condition_on_untwisted_current(self, cur_lie):
        assert dual_rep_condition_check(cur_lie, adjoint(cur_lie)).passed

    def test_rho_of_element(self, ns):
        rep = adjoint(ns)
        dL = ns.generator("L").times_partial()
        assert rep.rho_of(dL) == rep.rho["L"].partial()


class TestSemidirect:

    def test_semidirect_with_adjoint(self, ns):
        total, renames = semidirect(ns, adjoint(ns))
        assert renames == {"L": "L_M", "E": "E_M"}
        assert total.module.rank == 4
        assert all(r.passed for r in check_all(total))
        assert total.bracket("L", "E_M") == element_parse("(d + (3/2)*l) E_M", total.module, CTX)

    def test_semidirect_with_density_module(self, ns):
        total, _ = semidirect(ns, density_module(ns, "1/2"))
        assert all(r.passed for r in check_all(total))
        assert total.bracket("v", "L") == element_parse("((1/2)*l - (1/2)*d) v", total.module, CTX)

    def test_semidirect_with_shifted_rep(self, cur_twisted):
        total, _ = semidirect(cur_twisted, rep_shift(cur_twisted, 1))
        assert all(r.passed for r in check_all(total))


EVEN_ENTRIES = (("L", "L"), ("E", "E"))
ODD_ENTRIES = (("E", "L"), ("L", "E"))


def random_map(rng, ns, parity, constant=False):
    """Random parity-θ conformal endomorphism of the ns module"""
    cells = ODD_ENTRIES if parity else EVEN_ENTRIES
    if constant:
        entries = {cell: Poly.constant(rng.randint(-3, 3), CTX) for cell in cells}
    else:
        entries = {cell: random_poly(rng, CTX, 2, 2) for cell in cells}
    return ConformalMap.from_entries(ns.module, ns.module, entries, parity=parity)


class TestRandomMaps:

    @pytest.mark.parametrize("seed", range(4))
    @pytest.mark.parametrize("parity", [0, 1])
    def test_partial_shifts_to_partial_plus_lambda(self, ns, seed, parity):
        rng = random.Random(seed)
        f = random_map(rng, ns, parity)
        x = Element(ns.module, (), {g: random_poly(rng, (), 0, 3) for g in ns.names})
        shift = Poly.partial(CTX) + Poly.variable("l", CTX)
        assert f.apply(x.times_partial(), "l") == f.apply(x, "l").scale(shift)

    @pytest.mark.parametrize("seed", range(4))
    @pytest.mark.parametrize("parities", [(0, 0), (0, 1), (1, 0), (1, 1)])
    def test_bracket_of_constant_maps_is_skew(self, ns, seed, parities):
        rng = random.Random(seed)
        f = random_map(rng, ns, parities[0], constant=True)
        g = random_map(rng, ns, parities[1], constant=True)
        sign = -1 if parities == (1, 1) else 1
        assert gc_bracket(f, g) == gc_bracket(g, f).scale(-sign)
