"""
Tests for graded free modules, elements and C[∂]-linear maps
"""

import random

import pytest

from src.algebra.freemod import (
    Element,
    GradedModule,
    ModuleMap,
    element_parse,
    map_apply,
    map_power,
    regularity_check,
)
from src.algebra.polyring import Poly, poly_parse, random_poly
from src.core.constants import Parity
from src.core.exceptions import (
    ModuleMismatchError,
    NotInvertibleError,
    ParityError,
    PolynomialSyntaxError,
    UnknownGeneratorError,
)


CTX = ("l",)


@pytest.fixture
def module():
    return GradedModule([("L", "even"), ("E", "odd")])


class TestGradedModule:

    def test_rank_and_parity(self, module):
        assert module.rank == 2
        assert module.parity("E") == Parity.ODD
        with pytest.raises(UnknownGeneratorError):
            module.index("X")

    def test_duplicate_generators(self):
        with pytest.raises(ValueError):
            GradedModule([("a", "even"), ("a", "odd")])

    def test_direct_sum_renames_clashes(self, module):
        other = GradedModule([("L", "even"), ("v", "odd")])
        total, renames = module.direct_sum(other)
        assert total.names == ("L", "E", "L_M", "v")
        assert renames == {"L": "L_M", "v": "v"}


class TestElement:

    def test_parse_and_print(self, module):
        x = element_parse("(d + 2*l) L - (1/2) E", module, CTX)
        assert str(x) == "(2*l + d) L - (1/2) E"
        assert element_parse(str(x), module, CTX) == x

    def test_parse_signs(self, module):
        assert str(element_parse("-E", module)) == "-E"
        assert element_parse("0", module).is_zero()

    def test_parse_error_is_positioned(self, module):
        with pytest.raises(PolynomialSyntaxError):
            element_parse("L E", module)
        with pytest.raises(PolynomialSyntaxError):
            element_parse("2*l +", module, CTX)

    def test_parity_of_mixed_element(self, module):
        x = element_parse("L + E", module)
        assert not x.is_homogeneous()
        with pytest.raises(ParityError):
            x.parity()
        parts = x.homogeneous_parts()
        assert str(parts[Parity.EVEN]) == "L"
        assert str(parts[Parity.ODD]) == "E"

    def test_equality_ignores_context(self, module):
        x = element_parse("d L", module)
        assert x == x.lift(("l", "m"))

    def test_substitution(self, module):
        x = element_parse("(d + 2*m) L", module, ("l", "m"))
        image = Poly.affine({"l": -1, "d": -1}, CTX)
        assert x.substitute("m", image) == element_parse("(-2*l - d) L", module, CTX)

    def test_split_by_slot(self, module):
        x = element_parse("(l^2 + d) L + l E", module, CTX)
        parts = x.split_by("l")
        assert parts[0] == element_parse("d L", module, CTX)
        assert str(parts[1]) == "E"
        assert str(parts[2]) == "L"


class TestModuleMap:

    def test_parity_violation(self, module):
        with pytest.raises(ParityError):
            ModuleMap(module, module, {"L": Element.generator(module, "E")})

    def test_apply_is_partial_linear(self, module):
        f = ModuleMap(module, module, {"L": element_parse("2 L", module)})
        x = element_parse("(d + l) L + E", module, CTX)
        assert f.apply(x) == element_parse("(2*d + 2*l) L", module, CTX)

    def test_compose_and_power(self, module):
        f = ModuleMap.scalar(module, 2)
        assert f.power(3) == ModuleMap.scalar(module, 8)
        assert f.compose(f.power(-1)) == ModuleMap.identity(module)

    def test_determinant_and_regularity(self, module):
        shear = ModuleMap.from_entries(module, module, {("L", "L"): Poly.one(), ("E", "E"): Poly.constant(3)})
        assert shear.determinant() == 3
        assert shear.is_regular()
        singular = ModuleMap.from_entries(module, module, {("L", "L"): Poly.partial(), ("E", "E"): Poly.one()})
        assert not singular.is_regular()
        with pytest.raises(NotInvertibleError):
            singular.inverse()

    def test_inverse_over_partial(self):
        even = GradedModule([("a", "even"), ("b", "even")])
        unipotent = ModuleMap.from_entries(even, even, {
            ("a", "a"): Poly.one(), ("b", "b"): Poly.one(), ("a", "b"): poly_parse("d^2"),
        })
        assert unipotent.is_regular()
        assert unipotent.compose(unipotent.inverse()) == ModuleMap.identity(even)
        assert unipotent.inverse().entry("a", "b") == poly_parse("-d^2")

    def test_sum_of_maps_between_different_modules(self, module):
        other = GradedModule([("x", "even")])
        with pytest.raises(ModuleMismatchError):
            ModuleMap.identity(module) + ModuleMap.identity(other)

    def test_parameter_context(self, module):
        t = Poly.variable("t", ("t",))
        deformed = ModuleMap.identity(module) + ModuleMap.scalar(module, t)
        x = element_parse("d L", module, CTX)
        assert deformed.apply(x) == element_parse("(t*d + d) L", module, ("l", "t"))


MIXED = GradedModule([("a", "even"), ("b", "even"), ("c", "odd")])


def random_element(rng, context=CTX):
    return Element(MIXED, context, {n: random_poly(rng, context, 2, 3) for n in MIXED.names})


def random_even_map(rng, regular=False):
    """Parity-preserving map; with regular=True the determinant is a nonzero constant"""
    entries = {("a", "b"): random_poly(rng, (), 0, 2)}
    if regular:
        for n in MIXED.names:
            entries[(n, n)] = Poly.constant(rng.choice([-3, -2, -1, 1, 2, 3]))
    else:
        entries.update({(row, col): random_poly(rng, (), 0, 2)
                        for row, col in [("a", "a"), ("b", "a"), ("b", "b"), ("c", "c")]})
    return ModuleMap.from_entries(MIXED, MIXED, entries)


@pytest.mark.parametrize("seed", range(10))
def test_maps_are_partial_linear_on_random_elements(seed):
    rng = random.Random(seed)
    f = random_even_map(rng)
    x, y = random_element(rng), random_element(rng)
    assert map_apply(f, x.times_partial()) == map_apply(f, x).times_partial()
    assert map_apply(f, x + y) == map_apply(f, x) + map_apply(f, y)


@pytest.mark.parametrize("seed", range(6))
def test_inverse_of_random_regular_maps(seed):
    f = random_even_map(random.Random(seed), regular=True)
    assert regularity_check(f)
    identity = ModuleMap.identity(MIXED)
    assert f.compose(map_power(f, -1)) == identity
    assert map_power(f, -1).compose(f) == identity
