#!/usr/bin/env python3
"""
Hom-Lie Conformal Superalgebras - Structure tables, λ-bracket evaluation and axiom checks
Constructors for current algebras and Hom-associative commutators, plus the center solver
"""

from fractions import Fraction
from itertools import product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from loguru import logger

from src.core.constants import Parity, Symbols, koszul
from src.core.exceptions import ModuleMismatchError, ParityError, SlotCollisionError
from src.core.models import CheckReport, CheckStatus, Residual
from .freemod import Element, GradedModule, ModuleMap
from .linsolve import columns_to_matrix, nullspace
from .polyring import Poly, merge_contexts


L = Symbols.LAMBDA
M = Symbols.MU
D = Symbols.DERIVATION

Table = Dict[Tuple[str, str], Element]


# ============================================================================
# CONFORMAL ALGEBRA
# ============================================================================

class ConformalAlgebra:
    """
    Finite free Hom-Lie conformal superalgebra (R, α, [·λ·])

    Table entries [g_i λ g_j] are Elements in the context params + ("l",);
    missing pairs are zero. α is an even module map, identity if omitted.
    Parameter slots (e.g. a formal deformation parameter) are ordinary
    polynomial variables that every bracket value may carry.
    """

    def __init__(self, module: GradedModule, table: Optional[Mapping[Tuple[str, str], Element]] = None,
                 alpha: Optional[ModuleMap] = None, params: Sequence[str] = ()):
        self.module = module
        self.params: Tuple[str, ...] = tuple(params)
        self.alpha = alpha if alpha is not None else ModuleMap.identity(module)
        if self.alpha.domain != module or self.alpha.codomain != module:
            raise ModuleMismatchError("α must be an endomorphism of the algebra module")
        if self.alpha.parity != Parity.EVEN:
            raise ParityError("α must be even")
        self.table: Table = {}
        context = self.table_context
        for (a, b), value in (table or {}).items():
            module.index(a)
            module.index(b)
            if value.module != module:
                raise ModuleMismatchError(f"Bracket value of ({a}, {b}) lives in another module")
            self.table[(a, b)] = value.lift(context)

    @property
    def table_context(self) -> Tuple[str, ...]:
        return self.params + (L,)

    @property
    def names(self) -> Tuple[str, ...]:
        return self.module.names

    def parity(self, name: str) -> Parity:
        return self.module.parity(name)

    def bracket(self, a: str, b: str) -> Element:
        """Table entry [a λ b] in the table context"""
        return self.table.get((a, b), Element.zero(self.module, self.table_context))

    def generator(self, name: str, context: Optional[Sequence[str]] = None) -> Element:
        return Element.generator(self.module, name, self.params if context is None else context)

    def alpha_power(self, k: int) -> ModuleMap:
        return self.alpha.power(k)

    def is_regular(self) -> bool:
        return self.alpha.is_regular()

    def with_table(self, table: Mapping[Tuple[str, str], Element], params: Optional[Sequence[str]] = None) -> 'ConformalAlgebra':
        return ConformalAlgebra(self.module, table, self.alpha, self.params if params is None else params)

    def __repr__(self) -> str:
        return f"ConformalAlgebra({self.module!r}, params={self.params})"


# ============================================================================
# BRACKET EVALUATION
# ============================================================================

def bracket_eval(A: ConformalAlgebra, x: Element, y: Element, out: Union[str, Poly] = L) -> Element:
    """
    Sesquilinear extension of the structure table

    [p(∂)g_i  P  q(∂)g_j] = p(−P) q(∂+P) T_ij(P)

    Args:
        A: The algebra
        x, y: Elements over A.module, possibly carrying slots of a nested context
        out: Either a fresh slot name appended to the context, or a polynomial
            P (e.g. λ+µ) over the ambient context used as the bracket variable

    Returns:
        The bracket as an Element over the merged context

    Example:
        >>> bracket_eval(ns, ns.generator("L"), ns.generator("L"), "l")  # (d + 2*l) L
    """
    if x.module != A.module or y.module != A.module:
        raise ModuleMismatchError("Bracket arguments must lie in the algebra module")
    ambient = merge_contexts(x.context, y.context, A.params)
    if isinstance(out, str):
        if x.depends_on(out) or y.depends_on(out):
            raise SlotCollisionError(out)
        context = merge_contexts(ambient, (out,))
        point = Poly.variable(out, context)
    else:
        context = merge_contexts(ambient, out.context)
        point = out.lift(context)

    x = x.lift(context)
    y = y.lift(context)
    partial = Poly.partial(context)
    left_images = {D: -point}
    right_images = {D: partial + point}
    table_images = {L: point}

    result = Element.zero(A.module, context)
    for gi, p in x.coeffs.items():
        left = p.compose(left_images, context)
        for gj, q in y.coeffs.items():
            value = A.bracket(gi, gj)
            if value.is_zero():
                continue
            right = q.compose(right_images, context)
            result = result + value.compose(table_images, context).scale(left * right)
    return result


# ============================================================================
# AXIOM CHECKS
# ============================================================================

def check_grading(A: ConformalAlgebra) -> CheckReport:
    """[R_φ λ R_ψ] ⊆ R_{φ+ψ}[λ] on every generator pair"""
    residuals = []
    for a, b in product(A.names, repeat=2):
        value = A.bracket(a, b)
        expected = A.parity(a) + A.parity(b)
        wrong = {g: p for g, p in value.coeffs.items() if A.parity(g) != expected}
        if wrong:
            offending = Element(A.module, value.context, wrong)
            residuals.append(Residual((a, b), str(offending), element=offending))
    return CheckReport.from_residuals("grading", residuals)


def skew_transform(A: ConformalAlgebra, a: str, b: str) -> Element:
    """−(−1)^{|a||b|} [b_{−λ−∂} a] in the table context"""
    context = A.table_context
    point = Poly.affine({L: -1, D: -1}, context)
    swapped = bracket_eval(A, A.generator(b, context), A.generator(a, context), point)
    return swapped.scale(-koszul((A.parity(a), A.parity(b))))


def check_skew(A: ConformalAlgebra) -> CheckReport:
    """Skew-symmetry [a λ b] = −(−1)^{|a||b|}[b_{−λ−∂} a]"""
    residuals = []
    for a, b in product(A.names, repeat=2):
        residual = A.bracket(a, b) - skew_transform(A, a, b)
        if not residual.is_zero():
            residuals.append(Residual((a, b), str(residual), element=residual))
    return CheckReport.from_residuals("skew-symmetry", residuals)


def hom_jacobi_residual(A: ConformalAlgebra, a: str, b: str, c: str) -> Element:
    """
    [α(a)_λ [b_µ c]] − [[a_λ b]_{λ+µ} α(c)] − (−1)^{|a||b|} [α(b)_µ [a_λ c]]

    Evaluated in the context params + (l, m).
    """
    context = A.params + (L, M)
    lam = Poly.variable(L, context)
    mu = Poly.variable(M, context)
    gen = {name: A.generator(name, context) for name in (a, b, c)}
    alpha = A.alpha

    first = bracket_eval(A, alpha(gen[a]), bracket_eval(A, gen[b], gen[c], mu), lam)
    second = bracket_eval(A, bracket_eval(A, gen[a], gen[b], lam), alpha(gen[c]), lam + mu)
    third = bracket_eval(A, alpha(gen[b]), bracket_eval(A, gen[a], gen[c], lam), mu)
    sign = koszul((A.parity(a), A.parity(b)))
    return (first - second - third.scale(sign)).lift(context)


def check_hom_jacobi(A: ConformalAlgebra) -> CheckReport:
    residuals = []
    for a, b, c in product(A.names, repeat=3):
        residual = hom_jacobi_residual(A, a, b, c)
        if not residual.is_zero():
            residuals.append(Residual((a, b, c), str(residual), element=residual))
    logger.debug(f"Hom-Jacobi: {len(residuals)} failing triples out of {A.module.rank ** 3}")
    return CheckReport.from_residuals("hom-jacobi", residuals)


def check_multiplicative(A: ConformalAlgebra) -> CheckReport:
    """α([a λ b]) = [α(a) λ α(b)]"""
    residuals = []
    context = A.table_context
    for a, b in product(A.names, repeat=2):
        lhs = A.alpha(A.bracket(a, b)).lift(context)
        rhs = bracket_eval(A, A.alpha(A.generator(a)), A.alpha(A.generator(b)), L).lift(context)
        residual = lhs - rhs
        if not residual.is_zero():
            residuals.append(Residual((a, b), str(residual), element=residual))
    return CheckReport.from_residuals("multiplicative", residuals)


def check_regularity(A: ConformalAlgebra, informational: bool = False) -> CheckReport:
    det = A.alpha.determinant()
    report = CheckReport.from_residuals("regularity", [], informational=informational)
    report.notes.append(f"det(alpha) = {det}")
    if not A.alpha.is_regular():
        report.residuals.append(Residual(("alpha",), str(det), label="determinant"))
        report.status = CheckStatus.FAIL
    return report


def check_hom_associativity(A: ConformalAlgebra) -> CheckReport:
    """
    α(a)_λ(b_µ c) = (a_λ b)_{λ+µ} α(c), reading the table as a conformal product

    Used to validate input of from_hom_associative.
    """
    context = A.params + (L, M)
    lam = Poly.variable(L, context)
    mu = Poly.variable(M, context)
    residuals = []
    for a, b, c in product(A.names, repeat=3):
        gen = {name: A.generator(name, context) for name in (a, b, c)}
        lhs = bracket_eval(A, A.alpha(gen[a]), bracket_eval(A, gen[b], gen[c], mu), lam)
        rhs = bracket_eval(A, bracket_eval(A, gen[a], gen[b], lam), A.alpha(gen[c]), lam + mu)
        residual = (lhs - rhs).lift(context)
        if not residual.is_zero():
            residuals.append(Residual((a, b, c), str(residual), element=residual))
    return CheckReport.from_residuals("hom-associativity", residuals)


def check_all(A: ConformalAlgebra) -> List[CheckReport]:
    """Full axiom suite in a fixed order"""
    reports = [check_grading(A), check_skew(A), check_hom_jacobi(A), check_multiplicative(A)]
    for report in reports:
        logger.debug(f"{report.name}: {report.status.value}")
    return reports


# ============================================================================
# CONSTRUCTORS
# ============================================================================

def cur_algebra(generators: Sequence[Tuple[str, Union[Parity, str, int]]],
                structure: Mapping[Tuple[str, str], Mapping[str, Union[int, Fraction]]],
                alpha: Optional[Mapping[str, Mapping[str, Union[int, Fraction]]]] = None) -> ConformalAlgebra:
    """
    Current algebra C[∂] ⊗ g of a finite Hom-Lie superalgebra g

    Args:
        generators: Basis of g with parities
        structure: [a, b] = Σ c_k · k as {(a, b): {k: c_k}}
        alpha: Twist as {a: {k: coeff}} (identity when omitted)

    Returns:
        ConformalAlgebra with constant table entries [a λ b] = [a, b]
    """
    module = GradedModule(generators)
    context = (L,)
    table = {}
    for (a, b), combination in structure.items():
        coeffs = {k: Poly.constant(v, context) for k, v in combination.items()}
        table[(a, b)] = Element(module, context, coeffs)
    twist = None
    if alpha is not None:
        images = {}
        for a in module.names:
            combination = alpha.get(a, {a: 1})
            images[a] = Element(module, (), {k: Poly.constant(v) for k, v in combination.items()})
        twist = ModuleMap(module, module, images)
    return ConformalAlgebra(module, table, twist)


def from_hom_associative(module: GradedModule, product_table: Mapping[Tuple[str, str], Element],
                         alpha: Optional[ModuleMap] = None, params: Sequence[str] = ()) -> ConformalAlgebra:
    """Commutator algebra [a λ b] = a_λ b − (−1)^{|a||b|} b_{−λ−∂} a"""
    assoc = ConformalAlgebra(module, product_table, alpha, params)
    table = {}
    for a, b in product(module.names, repeat=2):
        value = assoc.bracket(a, b) + skew_transform(assoc, a, b)
        if not value.is_zero():
            table[(a, b)] = value
    return ConformalAlgebra(module, table, assoc.alpha, params)


# ============================================================================
# CENTER
# ============================================================================

def center_solve(A: ConformalAlgebra, bounds: Tuple[int, int]) -> List[Element]:
    """
    Basis of {z : [z λ g] = 0 for every generator g} with ∂-degree ≤ bounds[1]

    Central elements have ∂-polynomial coefficients, so only the ∂ bound
    matters; the basis is complete within it. Solved per parity block.
    """
    _, deg_partial = bounds
    names = A.params + (L, D)
    basis: List[Element] = []
    for parity in (Parity.EVEN, Parity.ODD):
        unknowns = [(g, q) for g in A.names if A.parity(g) == parity for q in range(deg_partial + 1)]
        if not unknowns:
            continue
        columns = []
        for g, q in unknowns:
            z = Element(A.module, A.params, {g: Poly.partial(A.params) ** q})
            column: Dict[Tuple, Fraction] = {}
            for h in A.names:
                column.update(bracket_eval(A, z, A.generator(h), L).flatten(names, (h,)))
            columns.append(column)
        matrix, _ = columns_to_matrix(columns)
        for vector in nullspace(matrix):
            coeffs: Dict[str, Poly] = {}
            for (g, q), value in zip(unknowns, vector):
                if value:
                    term = (Poly.partial(A.params) ** q).scale(value)
                    coeffs[g] = coeffs[g] + term if g in coeffs else term
            basis.append(Element(A.module, A.params, coeffs))
    logger.debug(f"Center within deg-d<={deg_partial}: dimension {len(basis)}")
    return basis
