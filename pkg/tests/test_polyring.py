"""
Tests for the polynomial ring: grammar, arithmetic, contexts and substitution
"""

import random
from fractions import Fraction

import pytest
import sympy as sp
from sympy import QQ

from src.algebra.polyring import Poly, fresh_slot, merge_contexts, poly_parse, poly_print, random_poly
from src.core.exceptions import ContextMismatchError, PolynomialSyntaxError, UnknownSlotError


CTX = ("l",)


class TestParsing:

    def test_parse_and_print_are_canonical(self):
        p = poly_parse("(1/2)*d + (3/2)*l", CTX)
        assert poly_print(p) == "(3/2)*l + (1/2)*d"
        assert poly_parse(poly_print(p), CTX) == p

    def test_implicit_order_does_not_matter(self):
        assert poly_parse("d + 2*l", CTX) == poly_parse("2*l + d", CTX)

    def test_powers_and_parentheses(self):
        p = poly_parse("(l + d)^2", CTX)
        q = poly_parse("l^2 + 2*l*d + d^2", CTX)
        assert p == q

    def test_unary_minus(self):
        assert poly_parse("-l", CTX) == Poly.variable("l", CTX).scale(-1)
        assert poly_parse("-(1/2)", ()) == Poly.constant(Fraction(-1, 2))

    def test_unknown_slot(self):
        with pytest.raises(UnknownSlotError):
            poly_parse("m + 1", CTX)

    def test_syntax_error_position(self):
        with pytest.raises(PolynomialSyntaxError) as info:
            poly_parse("l + $", CTX)
        assert info.value.position == 4

    def test_zero_denominator(self):
        with pytest.raises(PolynomialSyntaxError):
            poly_parse("1/0", CTX)

    def test_empty_text(self):
        with pytest.raises(PolynomialSyntaxError):
            poly_parse("   ", CTX)


class TestArithmetic:

    def test_ring_operations(self):
        l, d = Poly.variable("l", CTX), Poly.partial(CTX)
        assert (l + d) * (l - d) == l ** 2 - d ** 2
        assert (l * 2 - l).scale(Fraction(1, 2)) == l.scale(Fraction(1, 2))
        assert (l - l).is_zero()

    def test_context_mismatch(self):
        with pytest.raises(ContextMismatchError):
            Poly.variable("l", ("l",)) + Poly.variable("m", ("m",))

    def test_equality_ignores_context(self):
        p = poly_parse("l*d", ("l",))
        assert p == p.lift(("k", "l"))
        assert hash(p) == hash(p.lift(("k", "l")))

    def test_degrees(self):
        p = poly_parse("l^2*d + d^3", CTX)
        assert p.degree("l") == 2
        assert p.degree("d") == 3
        assert p.total_degree() == 3
        assert Poly.zero(CTX).degree("l") == -1

    def test_coefficients_reject_stray_variables(self):
        p = poly_parse("l*d + 1", CTX)
        assert p.coefficients(("l", "d")) == {(1, 1): 1, (0, 0): 1}
        with pytest.raises(UnknownSlotError):
            p.coefficients(("d",))


class TestSubstitution:

    def test_simultaneous_substitution(self):
        ctx = ("l", "m")
        p = poly_parse("l - m", ctx)
        swapped = p.compose({"l": Poly.variable("m", ctx), "m": Poly.variable("l", ctx)})
        assert swapped == poly_parse("m - l", ctx)

    def test_substitute_minus_lambda_minus_partial(self):
        ctx = ("l", "m")
        p = poly_parse("d + 2*m", ctx)
        image = Poly.affine({"l": -1, "d": -1}, CTX)
        assert p.substitute("m", image) == poly_parse("-2*l - d", CTX)

    def test_partial_substitution(self):
        p = poly_parse("d^2", CTX)
        shifted = p.compose({"d": poly_parse("d + l", CTX)})
        assert shifted == poly_parse("d^2 + 2*l*d + l^2", CTX)

    def test_lift_drops_unused_slots_only(self):
        p = poly_parse("d", ("l",))
        assert p.lift(()) == Poly.partial(())
        with pytest.raises(UnknownSlotError):
            poly_parse("l", ("l",)).lift(())

    def test_split_by(self):
        p = poly_parse("t*l + l + 3", ("t", "l"))
        parts = p.split_by("t")
        assert parts[1] == poly_parse("l", ("t", "l"))
        assert parts[0] == poly_parse("l + 3", ("t", "l"))


class TestContexts:

    def test_merge_keeps_order(self):
        assert merge_contexts(("l",), ("m", "l"), ("t",)) == ("l", "m", "t")

    def test_fresh_slot(self):
        assert fresh_slot(("l",), "m") == "m"
        assert fresh_slot(("l", "l1"), "l") == "l2"
        assert fresh_slot((), "d") == "d1"


def test_random_poly_is_reproducible():
    first = random_poly(random.Random(11), CTX, 2, 2)
    second = random_poly(random.Random(11), CTX, 2, 2)
    assert first == second
    assert first.degree("l") <= 2


class TestStorageAndHashing:

    def test_terms_live_in_a_rational_sympy_poly(self):
        p = poly_parse("(1/2)*l^2*d - 3", CTX)
        assert isinstance(p.rep, sp.Poly)
        assert p.rep.domain == QQ
        assert p.terms == {(2, 1): Fraction(1, 2), (0, 0): Fraction(-3)}

    def test_constants_hash_like_numbers(self):
        assert Poly.constant(2) == 2
        assert hash(Poly.constant(2)) == hash(2)
        assert hash(Poly.constant(Fraction(1, 2), CTX)) == hash(Fraction(1, 2))
        assert {Poly.constant(2): "two"}[2] == "two"
        assert len({Poly.constant(3, CTX), 3, Fraction(3)}) == 1

    def test_zero_hashes_like_zero(self):
        assert hash(Poly.zero(CTX)) == hash(0)
        assert Poly.zero(CTX) in {0}


SLOTS = ("l", "m")


def _random_triple(seed):
    rng = random.Random(seed)
    return tuple(random_poly(rng, SLOTS, 2, 2, coeff_range=4, max_terms=4) for _ in range(3))


@pytest.mark.parametrize("seed", range(12))
def test_ring_laws_on_random_polys(seed):
    a, b, c = _random_triple(seed)
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()
    assert a * Poly.one(SLOTS) == a


@pytest.mark.parametrize("seed", range(12))
def test_canonical_form_on_random_polys(seed):
    a, b, _ = _random_triple(seed)
    assert poly_parse(poly_print(a), SLOTS) == a
    assert poly_print(a + b) == poly_print(b + a)
    lifted = a.lift(("t",) + SLOTS)
    assert lifted == a
    assert hash(lifted) == hash(a)
    assert poly_print(lifted) == poly_print(a)


@pytest.mark.parametrize("seed", range(8))
def test_substitution_is_a_ring_map(seed):
    a, b, c = _random_triple(seed)
    image = c.lift(SLOTS)
    assert (a * b).substitute("m", image) == a.substitute("m", image) * b.substitute("m", image)
    assert (a + b).substitute("m", image) == a.substitute("m", image) + b.substitute("m", image)
