#!/usr/bin/env python3
"""
Cochains - n-cochains with values in a representation and the differentials d, d_s
Values are stored on generator tuples; every other tuple follows from the sign rule
"""

import random
from fractions import Fraction
from itertools import combinations_with_replacement, permutations, product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from loguru import logger

from src.algebra.freemod import Element, ModuleMap
from src.algebra.lcsa import ConformalAlgebra, bracket_eval
from src.algebra.polyring import Poly, merge_contexts, random_poly
from src.algebra.rep import Representation, adjoint, rep_shift
from src.core.constants import Parity, Symbols, koszul
from src.core.exceptions import ModuleMismatchError
from src.core.models import CheckReport, Residual


L = Symbols.LAMBDA
D = Symbols.DERIVATION

GeneratorTuple = Tuple[str, ...]


# ============================================================================
# COCHAIN
# ============================================================================

class Cochain:
    """
    n-cochain γ: R^n → M[λ1, …, λn] of parity |γ|

    Values are Elements over the target module in the context
    params + (l1, …, ln). Tuples that are not stored are obtained from the
    index-sorted tuple by the Koszul-signed skew-symmetry, with each slot
    moving together with its argument; tuples with no stored data are zero.
    """

    def __init__(self, algebra: ConformalAlgebra, target: Representation, arity: int,
                 parity: Parity = Parity.EVEN, values: Optional[Mapping[GeneratorTuple, Element]] = None,
                 name: str = "gamma"):
        if arity < 0:
            raise ValueError("Cochain arity must be non-negative")
        if target.algebra is not algebra and target.algebra.module != algebra.module:
            raise ModuleMismatchError("Target representation belongs to another algebra")
        self.algebra = algebra
        self.target = target
        self.arity = arity
        self.parity = Parity(int(parity))
        self.name = name
        self.slots: Tuple[str, ...] = Symbols.nary(arity)
        self.context: Tuple[str, ...] = algebra.params + self.slots
        self.values: Dict[GeneratorTuple, Element] = {}
        for key, value in (values or {}).items():
            key = tuple(key)
            if len(key) != arity:
                raise ValueError(f"Tuple {key} does not have arity {arity}")
            for gen in key:
                algebra.module.index(gen)
            if value.module != target.module:
                raise ModuleMismatchError(f"Value on {key} is not in the target module")
            value = value.lift(self.context)
            if not value.is_zero():
                self.values[key] = value
        # a tuple given only in unsorted form also defines its sorted tuple
        for key in list(self.values):
            sorted_key, order, sign = self.canonical(key)
            if sorted_key != key and sorted_key not in self.values:
                images = {self.slots[order[j]]: Poly.variable(self.slots[j], self.context) for j in range(arity)}
                self.values[sorted_key] = self.values[key].compose(images, self.context).scale(sign)

    # ------------------------------------------------------------------
    # Lookup
    # ------------------------------------------------------------------

    def canonical(self, args: GeneratorTuple) -> Tuple[GeneratorTuple, List[int], int]:
        """
        Index-sorted form of a tuple

        Returns:
            (sorted tuple, order, sign) where sorted position j holds args[order[j]]
            and sign is the Koszul-signed transposition sign
        """
        index = self.algebra.module.index
        order = sorted(range(len(args)), key=lambda k: index(args[k]))
        sign = 1
        for k in range(len(args)):
            for m in range(k + 1, len(args)):
                if index(args[k]) > index(args[m]):
                    sign *= -koszul((self.algebra.parity(args[k]), self.algebra.parity(args[m])))
        return tuple(args[k] for k in order), order, sign

    def _from_canonical(self, args: GeneratorTuple) -> Element:
        sorted_args, order, sign = self.canonical(args)
        stored = self.values.get(sorted_args)
        if stored is None:
            return Element.zero(self.target.module, self.context)
        if list(order) == list(range(len(args))):
            return stored
        images = {self.slots[j]: Poly.variable(self.slots[order[j]], self.context) for j in range(len(args))}
        return stored.compose(images, self.context).scale(sign)

    def value(self, args: Sequence[str]) -> Element:
        """γ_{l1,…,ln}(g_1, …, g_n) on generators"""
        args = tuple(args)
        if args in self.values:
            return self.values[args]
        return self._from_canonical(args)

    def evaluate(self, args: Sequence[Element], points: Sequence[Poly],
                 context: Optional[Sequence[str]] = None) -> Element:
        """
        γ_{P1,…,Pn}(x1, …, xn) by conformal antilinearity

        A coefficient p(∂) of x_k contributes p(−P_k); the stored value is
        evaluated at l_k = P_k.
        """
        if len(args) != self.arity or len(points) != self.arity:
            raise ValueError(f"{self.name} takes {self.arity} arguments")
        target = merge_contexts(context or (), self.algebra.params,
                               *(x.context for x in args), *(p.context for p in points))
        points = [p.lift(target) for p in points]
        images = {slot: point for slot, point in zip(self.slots, points)}
        result = Element.zero(self.target.module, target)
        choices = [list(x.lift(target).coeffs.items()) for x in args]
        for combination in product(*choices):
            gens = tuple(g for g, _ in combination)
            value = self.value(gens)
            if value.is_zero():
                continue
            factor = Poly.one(target)
            for (_, coeff), point in zip(combination, points):
                factor = factor * coeff.compose({D: -point}, target)
            result = result + value.compose(images, target).scale(factor)
        return result

    # ------------------------------------------------------------------
    # Helpers
    # ------------------------------------------------------------------

    def is_zero(self) -> bool:
        return all(self.value(args).is_zero() for args in self.sorted_tuples())

    def sorted_tuples(self) -> List[GeneratorTuple]:
        return list(combinations_with_replacement(self.algebra.names, self.arity))

    def with_target(self, target: Representation) -> 'Cochain':
        return Cochain(self.algebra, target, self.arity, self.parity, self.values, self.name)

    def __repr__(self) -> str:
        return f"Cochain({self.name}, arity={self.arity}, parity={self.parity.label()}, target={self.target.name})"


# ============================================================================
# VALIDATION
# ============================================================================

def _swap(element: Element, first: str, second: str) -> Element:
    context = element.context
    return element.compose({first: Poly.variable(second, context), second: Poly.variable(first, context)}, context)


def cochain_validate(gamma: Cochain) -> CheckReport:
    """Sign consistency, duplicate-argument symmetry, value parity and γ∘α = β∘γ"""
    A = gamma.algebra
    residuals = []

    for args, stored in gamma.values.items():
        expected_parity = gamma.parity + sum(int(A.parity(g)) for g in args) % 2
        for gen in stored.coeffs:
            if gamma.target.module.parity(gen) != expected_parity:
                residuals.append(Residual(args, str(stored), label="parity", element=stored))
                break
        sorted_args, _, _ = gamma.canonical(args)
        if args != sorted_args:
            residual = stored - gamma._from_canonical(args)
            if not residual.is_zero():
                residuals.append(Residual(args, str(residual), label="sign", element=residual))
            continue
        for i in range(len(args) - 1):
            if args[i] != args[i + 1]:
                continue
            q = A.parity(args[i])
            swapped = _swap(stored, gamma.slots[i], gamma.slots[i + 1])
            residual = swapped + stored.scale(koszul((q, q)))
            if not residual.is_zero():
                residuals.append(Residual(args, str(residual), label="symmetry", element=residual))

    points = [Poly.variable(s, gamma.context) for s in gamma.slots]
    for args in gamma.sorted_tuples():
        twisted = [A.alpha(A.generator(g, gamma.context)) for g in args]
        lhs = gamma.evaluate(twisted, points, gamma.context)
        rhs = gamma.target.beta(gamma.value(args)).lift(lhs.context)
        residual = lhs - rhs
        if not residual.is_zero():
            residuals.append(Residual(args, str(residual), label="commutativity", element=residual))

    return CheckReport.from_residuals(f"cochain {gamma.name}", residuals)


# ============================================================================
# DIFFERENTIAL
# ============================================================================

def differential(gamma: Cochain) -> Cochain:
    """
    (dγ)(a_1, …, a_{n+1}) =
        Σ_i (−1)^{i+1} (−1)^{(|γ|+|a_1|+…+|a_{i−1}|)|a_i|} ρ(α^n(a_i))_{λ_i} γ(…â_i…)
      + Σ_{i<j} (−1)^{i+j} ε_ij γ_{λ_i+λ_j, …}([a_i λ_i a_j], α(a_1), …, â_i, â_j, …)

    with ε_ij the Koszul sign of moving a_i then a_j to the front. Values are
    computed on every ordered tuple.

    Raises:
        NotInvertibleError: the target needs α^s with s < 0 and α is not regular
    """
    A = gamma.algebra
    rep = gamma.target
    n = gamma.arity
    slots = Symbols.nary(n + 1)
    context = A.params + slots
    variables = [Poly.variable(s, context) for s in slots]
    twist_n = A.alpha_power(n)
    gens = {g: A.generator(g, context) for g in A.names}
    shifted = {g: twist_n(gens[g]) for g in A.names}
    twisted = {g: A.alpha(gens[g]) for g in A.names}

    values: Dict[GeneratorTuple, Element] = {}
    for args in product(A.names, repeat=n + 1):
        parities = [int(A.parity(g)) for g in args]
        total = Element.zero(rep.module, context)

        for i in range(n + 1):
            rest = [k for k in range(n + 1) if k != i]
            inner = gamma.evaluate([gens[args[k]] for k in rest], [variables[k] for k in rest], context)
            sign = (-1) ** i * koszul((int(gamma.parity) + sum(parities[:i]), parities[i]))
            term = rep.act(shifted[args[i]], inner, variables[i]).lift(context)
            total = total + term.scale(sign)

        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                rest = [k for k in range(n + 1) if k not in (i, j)]
                before_j = sum(parities[:j]) - parities[i]
                sign = (-1) ** (i + j) * koszul((sum(parities[:i]), parities[i]), (before_j, parities[j]))
                inner = bracket_eval(A, gens[args[i]], gens[args[j]], variables[i])
                arguments = [inner] + [twisted[args[k]] for k in rest]
                points = [variables[i] + variables[j]] + [variables[k] for k in rest]
                term = gamma.evaluate(arguments, points, context).lift(context)
                total = total + term.scale(sign)

        if not total.is_zero():
            values[args] = total

    logger.debug(f"d({gamma.name}): {len(values)} nonzero tuples of arity {n + 1}")
    return Cochain(A, rep, n + 1, gamma.parity, values, name=f"d({gamma.name})")


def differential_s(gamma: Cochain, s: int) -> Cochain:
    """d_s: the differential with values in R_s"""
    return differential(gamma.with_target(rep_shift(gamma.algebra, s)))


def default_shift_target(A: ConformalAlgebra, s: int = -1) -> Tuple[Representation, Optional[str]]:
    """R_s when reachable, otherwise the adjoint module together with a warning"""
    if s >= 0 or A.is_regular():
        return rep_shift(A, s), None
    warning = f"alpha is not regular; R_{s} replaced by the adjoint module"
    logger.warning(warning)
    return adjoint(A), warning


# ============================================================================
# CONSTRUCTORS
# ============================================================================

def _permutation_sign(perm: Sequence[int]) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def _symmetrize(A: ConformalAlgebra, args: GeneratorTuple, value: Element, slots: Sequence[str]) -> Element:
    """Project a value onto the symmetry forced by repeated generators"""
    context = value.context
    start = 0
    while start < len(args):
        end = start
        while end + 1 < len(args) and args[end + 1] == args[start]:
            end += 1
        block = list(range(start, end + 1))
        if len(block) > 1:
            even = A.parity(args[start]) == Parity.EVEN
            total = Element.zero(value.module, context)
            for perm in permutations(block):
                images = {slots[b]: Poly.variable(slots[p], context) for b, p in zip(block, perm)}
                sign = _permutation_sign(perm) if even else 1
                total = total + value.compose(images, context).scale(sign)
            value = total
        start = end + 1
    return value


def _diagonal_scalars(f: ModuleMap) -> Optional[Dict[str, Fraction]]:
    """Eigenvalues of a constant diagonal endomorphism, or None"""
    scalars = {}
    for col in f.domain.names:
        for row in f.codomain.names:
            entry = f.entry(row, col)
            if row == col:
                if not entry.is_constant():
                    return None
                scalars[row] = entry.constant_value()
            elif not entry.is_zero():
                return None
    return scalars


def random_cochain(A: ConformalAlgebra, target: Representation, arity: int, parity: Parity,
                   rng: random.Random, max_deg_slots: int = 2, max_deg_partial: int = 2,
                   coeff_range: int = 3, max_terms: int = 3, name: str = "random") -> Cochain:
    """
    Random cochain with integer coefficients on every sorted tuple

    Repeated generators are symmetrized so the skew-symmetry holds. When α and
    β are constant diagonal maps, components e of γ(a1, …, an) survive only if
    α(a1)⋯α(an) and β(e) have equal eigenvalues, which makes γ∘α = β∘γ hold.
    Other twists keep the raw draw and may fail cochain_validate.
    """
    context = A.params + Symbols.nary(arity)
    parity = Parity(int(parity))
    alpha_diag = _diagonal_scalars(A.alpha)
    beta_diag = _diagonal_scalars(target.beta)
    equivariant = alpha_diag is not None and beta_diag is not None
    values = {}
    for args in combinations_with_replacement(A.names, arity):
        expected = parity + sum(int(A.parity(g)) for g in args) % 2
        weight = Fraction(1)
        if equivariant:
            for g in args:
                weight *= alpha_diag[g]
        coeffs = {}
        for gen in target.module.names:
            if target.module.parity(gen) != expected:
                continue
            if equivariant and beta_diag[gen] != weight:
                continue
            coeffs[gen] = random_poly(rng, context, max_deg_slots if arity else 0,
                                      max_deg_partial, coeff_range, max_terms)
        value = _symmetrize(A, args, Element(target.module, context, coeffs), Symbols.nary(arity))
        if not value.is_zero():
            values[args] = value
    return Cochain(A, target, arity, parity, values, name)


def cochain_from_bracket(A: ConformalAlgebra, table: Mapping[Tuple[str, str], Element],
                         target: Optional[Representation] = None, name: str = "psi") -> Cochain:
    """
    Reduced 2-cochain of a λ-bracket: ψ_{λ1,λ2}(a,b) = [a_{λ1} b] with ∂ ↦ −λ1−λ2

    Conversely ψ_{λ,−∂−λ}(a,b) recovers the bracket.
    """
    if target is None:
        target, _ = default_shift_target(A, -1)
    slots = Symbols.nary(2)
    context = A.params + slots
    images = {L: Poly.variable(slots[0], context), D: Poly.affine({slots[0]: -1, slots[1]: -1}, context)}
    values = {}
    for (a, b), value in table.items():
        reduced = value.lift(A.table_context).compose(images, context)
        if not reduced.is_zero():
            values[(a, b)] = reduced
    return Cochain(A, target, 2, Parity.EVEN, values, name)


def bracket_cochain(A: ConformalAlgebra, target: Optional[Representation] = None) -> Cochain:
    return cochain_from_bracket(A, A.table, target, name="bracket")


def zero_cochain(A: ConformalAlgebra, target: Representation, arity: int,
                 parity: Parity = Parity.EVEN) -> Cochain:
    return Cochain(A, target, arity, parity, {}, name="zero")
