"""
Tests for the derivation classes, the truncated solver and the structure audit
"""

import random

import pytest

from src.algebra.freemod import ModuleMap
from src.algebra.lcsa import ConformalAlgebra
from src.algebra.polyring import Poly
from src.algebra.rep import ConformalMap
from src.core.constants import ClassTag, Parity
from src.core.exceptions import (
    BoundMismatchError,
    ClassCheckFailure,
    MissingCompanionsError,
    NotAlphaFixedError,
    NotRegularError,
    ParityError,
)
from src.core.models import CheckStatus
from src.derivations.audit import audit_all, gder_decompose, inclusion_audit, membership
from src.derivations.classes import (
    DerivationCandidate,
    candidate_from_map,
    class_check,
    der_commutator,
    der_hom_jacobi_check,
    derivation_extension,
    extension_check,
    inner_derivation,
)
from src.derivations.solver import find_companion, in_map_span, solve_class


def random_derivation(rng, algebra, k, name):
    """Combination of a solved derivation basis with nonzero integer coefficients"""
    combo = ConformalMap.zero(algebra.module)
    for rmap in solve_class(algebra, ClassTag.DER, k, (1, 1)).basis:
        combo = combo + rmap.scale(rng.choice([-2, -1, 1, 2]))
    return DerivationCandidate(combo, k, ClassTag.DER, (), name=name)


@pytest.fixture
def ad_L(ns_document):
    spec = ns_document.map_spec("adL")
    return ns_document.candidate(spec)


@pytest.fixture
def proj(ns_document):
    return ns_document.candidate(ns_document.map_spec("proj"))


def identity_map(A):
    return ConformalMap.from_module_map(ModuleMap.identity(A.module))


class TestClassCheck:

    def test_adjoint_map_is_a_derivation(self, ns, ad_L):
        report = class_check(ns, ad_L)
        assert report.passed
        assert report.name == "der adL"
        assert report.notes == ["k = 0"]

    def test_projection_is_not_a_derivation(self, ns, proj):
        report = class_check(ns, proj)
        assert report.status == CheckStatus.FAIL
        assert ("L", "L") in report.witnesses()

    def test_identity_is_a_centroid_of_a_current_algebra(self, cur_lie):
        assert class_check(cur_lie, candidate_from_map(identity_map(cur_lie), tag=ClassTag.C)).passed
        assert class_check(cur_lie, candidate_from_map(identity_map(cur_lie), tag=ClassTag.QC)).passed

    def test_generalized_derivation_needs_companions(self, ns, ad_L):
        with pytest.raises(MissingCompanionsError):
            class_check(ns, DerivationCandidate(ad_L.map, 0, ClassTag.GDER))

    def test_companion_parity(self, ns, ad_L):
        odd = inner_derivation(ns, ns.generator("E")).map
        with pytest.raises(ParityError):
            class_check(ns, DerivationCandidate(ad_L.map, 0, ClassTag.QDER, (odd,)))

    def test_generalized_derivation_with_itself(self, ns, ad_L):
        cand = DerivationCandidate(ad_L.map, 0, ClassTag.GDER, (ad_L.map, ad_L.map))
        assert class_check(ns, cand).passed

    def test_alpha_commutation_failure(self, cur_twisted):
        swap = ConformalMap.from_module_map(ModuleMap(cur_twisted.module, cur_twisted.module, {
            "x": cur_twisted.generator("y"), "y": cur_twisted.generator("x"),
        }))
        report = class_check(cur_twisted, candidate_from_map(swap, k=1))
        assert "alpha D" in [r.label for r in report.residuals]


class TestInnerDerivations:

    def test_inner_derivation_raises_the_power(self, ns):
        cand = inner_derivation(ns, ns.generator("L"))
        assert cand.k == 1
        assert cand.name == "ad(L)"
        assert class_check(ns, cand).passed

    def test_odd_inner_derivation(self, ns):
        cand = inner_derivation(ns, ns.generator("E"))
        assert cand.parity == Parity.ODD
        assert class_check(ns, cand).passed

    def test_twisted_inner_derivation(self, cur_twisted):
        cand = inner_derivation(cur_twisted, cur_twisted.generator("x"))
        assert class_check(cur_twisted, cand).passed
        with pytest.raises(NotAlphaFixedError):
            inner_derivation(cur_twisted, cur_twisted.generator("y"))

    def test_commutator_of_derivations(self, ns, ad_L):
        comm = der_commutator(ad_L, ad_L)
        assert comm.map.slot == "m"
        assert "l" in comm.map.params
        assert comm.k == 0
        assert class_check(ns, comm).passed

    @pytest.mark.parametrize("seed", [0, 1, 2])
    @pytest.mark.parametrize("k, s", [(0, 1), (1, 1), (1, 2)])
    def test_commutators_of_random_twisted_derivations(self, cur_twisted, seed, k, s):
        rng = random.Random(seed)
        first = random_derivation(rng, cur_twisted, k, "D1")
        second = random_derivation(rng, cur_twisted, s, "D2")
        comm = der_commutator(first, second)
        assert comm.k == k + s
        assert class_check(cur_twisted, comm).passed

    def test_der_hom_jacobi_for_untwisted_algebra(self, ns, ad_L, proj):
        assert der_hom_jacobi_check(ns, ad_L, ad_L, proj).passed
        assert der_hom_jacobi_check(ns, ad_L, proj, inner_derivation(ns, ns.generator("E"))).passed


class TestExtension:

    def test_extension_by_a_derivation(self, ns, ad_L):
        extended, gen = derivation_extension(ns, ad_L.map)
        assert gen == "D"
        assert extended.module.rank == 3
        assert extended.bracket("D", "L") == ns.bracket("L", "L").relabel(extended.module, {})
        reports = extension_check(extended, gen)
        assert [r.name for r in reports] == ["grading", "skew-symmetry", "hom-jacobi", "multiplicative",
                                             "hom-jacobi (D, D, .)"]
        assert all(r.passed for r in reports if not r.informational)
        assert reports[-1].informational
        assert reports[-1].status == CheckStatus.FAIL

    def test_extension_by_a_constant_derivation(self, cur_lie):
        scaling = ModuleMap.from_entries(cur_lie.module, cur_lie.module, {("y", "y"): Poly.one()})
        derivation = ConformalMap.from_module_map(scaling)
        assert class_check(cur_lie, candidate_from_map(derivation)).passed
        extended, gen = derivation_extension(cur_lie, derivation)
        assert all(r.passed for r in extension_check(extended, gen))

    def test_scaling_the_odd_generator_is_not_a_derivation_of_ns(self, ns):
        scaling = ModuleMap.from_entries(ns.module, ns.module, {("E", "E"): Poly.one()})
        report = class_check(ns, candidate_from_map(ConformalMap.from_module_map(scaling)))
        assert report.status == CheckStatus.FAIL
        assert ("L", "E") in report.witnesses()

    def test_extension_by_a_non_derivation(self, ns, proj):
        extended, gen = derivation_extension(ns, proj.map)
        reports = {r.name: r for r in extension_check(extended, gen)}
        assert reports["hom-jacobi"].status == CheckStatus.FAIL

    def test_generator_name_clash(self, ns, ad_L):
        _, gen = derivation_extension(ns, ad_L.map, name="L")
        assert gen == "L1"

    def test_extension_needs_regular_alpha(self, abelian):
        twist = ModuleMap.from_entries(abelian.module, abelian.module,
                                       {("a", "a"): Poly.partial(), ("b", "b"): Poly.one()})
        singular = ConformalAlgebra(abelian.module, {}, twist)
        with pytest.raises(NotRegularError):
            derivation_extension(singular, ConformalMap.zero(abelian.module))


class TestSolver:

    def test_derivations_of_ns_contain_the_adjoint_map(self, ns, ad_L):
        basis = solve_class(ns, ClassTag.DER, 0, (1, 1))
        assert len(basis) >= 1
        assert basis.bounds == (1, 1)
        assert in_map_span(ad_L.map, basis.basis)
        assert all(class_check(ns, cand).passed for cand in basis.candidates())

    def test_every_map_of_an_abelian_algebra(self, abelian):
        for tag in (ClassTag.DER, ClassTag.C):
            assert len(solve_class(abelian, tag, 0, (0, 0))) == 4

    def test_centroid_of_a_current_algebra(self, cur_lie):
        basis = solve_class(cur_lie, ClassTag.C, 0, (0, 0))
        assert len(basis) == 1
        assert in_map_span(identity_map(cur_lie), basis.basis)

    def test_derivations_of_a_current_algebra(self, cur_lie):
        basis = solve_class(cur_lie, ClassTag.DER, 0, (0, 0))
        assert len(basis) == 2
        inner = inner_derivation(cur_lie, cur_lie.generator("y"))
        assert in_map_span(inner.map, basis.basis)

    def test_negative_bounds(self, ns):
        with pytest.raises(ValueError):
            solve_class(ns, ClassTag.DER, 0, (-1, 0))

    def test_companion_search(self, ns, ad_L):
        found = find_companion(ns, ad_L.map, ClassTag.QDER, 0, (1, 1))
        assert found is not None
        assert class_check(ns, DerivationCandidate(ad_L.map, 0, ClassTag.QDER, found)).passed
        assert find_companion(ns, ad_L.map, ClassTag.DER, 0, (1, 1)) == ()


class TestAudit:

    def test_decomposition(self, ns, ad_L):
        cand = DerivationCandidate(ad_L.map, 0, ClassTag.GDER, (ad_L.map, ad_L.map), name="g")
        quasi, central = gder_decompose(ns, cand)
        assert quasi.tag == ClassTag.QDER and central.tag == ClassTag.QC
        assert quasi.map == ad_L.map
        assert central.map.is_zero()
        assert class_check(ns, quasi).passed
        assert class_check(ns, central).passed

    def test_decomposition_rejects_non_members(self, ns, proj):
        zero = ConformalMap.zero(ns.module)
        with pytest.raises(ClassCheckFailure):
            gder_decompose(ns, DerivationCandidate(proj.map, 0, ClassTag.GDER, (zero, zero)))

    def test_membership_of_a_commutator(self, ns, ad_L):
        comm = der_commutator(ad_L, ad_L)
        as_quasi = DerivationCandidate(comm.map, comm.k, ClassTag.QDER, (comm.map,), name=comm.name)
        status, report = membership(ns, as_quasi, (1, 1))
        assert status == CheckStatus.PASS
        assert report.passed

    def test_a_derivation_is_not_quasi_with_a_zero_companion(self, ns, ad_L):
        comm = der_commutator(ad_L, ad_L)
        zero = DerivationCandidate(comm.map, comm.k, ClassTag.QDER, (comm.map.scale(0),))
        assert class_check(ns, zero).status == CheckStatus.FAIL

    def test_full_audit_of_a_current_algebra(self, cur_lie):
        bases = {tag: solve_class(cur_lie, tag, 0, (0, 0)) for tag in ClassTag}
        reports = audit_all(cur_lie, bases)
        assert [r.name for r in reports] == ["inclusion audit", "center interaction", "qc commutators"]
        assert reports[0].status == CheckStatus.PASS
        assert reports[1].status == CheckStatus.PASS
        for cand in bases[ClassTag.GDER].candidates():
            quasi, central = gder_decompose(cur_lie, cand)
            assert class_check(cur_lie, quasi).passed
            assert class_check(cur_lie, central).passed

    def test_mixed_bounds_are_rejected(self, cur_lie):
        bases = {ClassTag.DER: solve_class(cur_lie, ClassTag.DER, 0, (0, 0)),
                 ClassTag.C: solve_class(cur_lie, ClassTag.C, 0, (0, 1))}
        with pytest.raises(BoundMismatchError):
            inclusion_audit(cur_lie, bases)
