#!/usr/bin/env python3
"""
Deformations - One-parameter deformations, 2-cocycle conditions and Nijenhuis operators
The parameter t is a formal polynomial slot, so every condition is checked identically in t
"""

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Tuple

from loguru import logger

from src.algebra.freemod import Element, ModuleMap
from src.algebra.lcsa import ConformalAlgebra, bracket_eval, check_skew, hom_jacobi_residual
from src.algebra.polyring import Poly, fresh_slot
from src.core.constants import Parity, Symbols, koszul
from src.core.exceptions import AlphaCommutationFailure, ModuleMismatchError, ParityError
from src.core.models import CheckReport, CheckStatus, Residual
from .cochain import Cochain, cochain_from_bracket, cochain_validate, default_shift_target, differential


L = Symbols.LAMBDA
M = Symbols.MU
D = Symbols.DERIVATION


# ============================================================================
# DATA MODELS
# ============================================================================

@dataclass
class DeformationFamily:
    """[a λ b]_t = [a λ b] + t ψ_{λ,−∂−λ}(a, b)"""
    base: ConformalAlgebra
    psi: Cochain
    parameter: str
    deformation: Dict[Tuple[str, str], Element]
    algebra: ConformalAlgebra

    def at_zero(self) -> ConformalAlgebra:
        """Table of the family with t = 0"""
        context = self.base.table_context
        zero = Poly.zero(context)
        table = {key: value.compose({self.parameter: zero}, context)
                 for key, value in self.algebra.table.items()}
        return self.base.with_table(table)


@dataclass
class NijenhuisResult:
    """Outcome of the Nijenhuis deformation: the operator check, the family and the triviality certificate"""
    check: CheckReport
    closure: Optional[CheckReport] = None
    family: Optional[DeformationFamily] = None
    conditions: List[CheckReport] = field(default_factory=list)
    certificate: Optional[CheckReport] = None

    def reports(self) -> List[CheckReport]:
        items = [self.check]
        if self.closure is not None:
            items.append(self.closure)
        items.extend(self.conditions)
        if self.certificate is not None:
            items.append(self.certificate)
        return items


# ============================================================================
# DEFORMATIONS
# ============================================================================

def deformation_table(A: ConformalAlgebra, psi: Cochain) -> Dict[Tuple[str, str], Element]:
    """ψ_{λ,−∂−λ}(a, b) for every generator pair, in the table context"""
    context = A.table_context
    images = {"l1": Poly.variable(L, context), "l2": Poly.affine({L: -1, D: -1}, context)}
    table = {}
    for a, b in product(A.names, repeat=2):
        value = psi.value((a, b)).compose(images, context)
        if not value.is_zero():
            table[(a, b)] = value
    return table


def build_family(A: ConformalAlgebra, psi: Cochain) -> DeformationFamily:
    if psi.arity != 2:
        raise ValueError(f"A deformation needs a 2-cochain, got arity {psi.arity}")
    if psi.parity != Parity.EVEN:
        raise ParityError("A deformation cochain must be even")
    expected, _ = default_shift_target(A, -1)
    if psi.target.name != expected.name:
        raise ModuleMismatchError(f"A deformation cochain must take values in {expected.name}, "
                                  f"not {psi.target.name}")
    t = fresh_slot(A.params + (L, M), Symbols.PARAMETER)
    params = A.params + (t,)
    deformation = deformation_table(A, psi)
    context = params + (L,)
    parameter = Poly.variable(t, context)
    table = {}
    for a, b in product(A.names, repeat=2):
        value = A.bracket(a, b).lift(context)
        if (a, b) in deformation:
            value = value + deformation[(a, b)].lift(context).scale(parameter)
        if not value.is_zero():
            table[(a, b)] = value
    deformed = ConformalAlgebra(A.module, table, A.alpha, params)
    return DeformationFamily(A, psi, t, deformation, deformed)


def _proof_form_residual(B: ConformalAlgebra, a: str, b: str, c: str) -> Element:
    """ψ(α(a), ψ(b,c)_µ)_λ − (−1)^{|a||b|} ψ(α(b), ψ(c,a)_{−λ−∂})_µ − ψ(α(c), ψ(a,b)_λ)_{−λ−µ−∂}"""
    context = B.params + (L, M)
    lam = Poly.variable(L, context)
    mu = Poly.variable(M, context)
    partial = Poly.partial(context)
    gen = {name: B.generator(name, context) for name in (a, b, c)}
    first = bracket_eval(B, B.alpha(gen[a]), bracket_eval(B, gen[b], gen[c], mu), lam)
    second = bracket_eval(B, B.alpha(gen[b]), bracket_eval(B, gen[c], gen[a], -lam - partial), mu)
    third = bracket_eval(B, B.alpha(gen[c]), bracket_eval(B, gen[a], gen[b], lam), -lam - mu - partial)
    return (first - second.scale(koszul((B.parity(a), B.parity(b)))) - third).lift(context)


def deform(A: ConformalAlgebra, psi: Cochain) -> Tuple[DeformationFamily, List[CheckReport]]:
    """
    Build the family and split its Hom-Jacobi residual by powers of t

    The t^1 part is the linear (cocycle) condition, the t^2 part the quadratic
    condition ψ(α(a), ψ(b,c)) = (−1)^{|a||b|} ψ(α(b), ψ(a,c)) + ψ(ψ(a,b), α(c)).

    Returns:
        (family, [linear condition, quadratic condition])
    """
    family = build_family(A, psi)
    linear, quadratic = [], []
    for a, b, c in product(A.names, repeat=3):
        parts = hom_jacobi_residual(family.algebra, a, b, c).split_by(family.parameter)
        if 1 in parts and not parts[1].is_zero():
            linear.append(Residual((a, b, c), str(parts[1]), element=parts[1]))
        if 2 in parts and not parts[2].is_zero():
            quadratic.append(Residual((a, b, c), str(parts[2]), element=parts[2]))

    linear_report = CheckReport.from_residuals("deformation linear condition", linear)
    quadratic_report = CheckReport.from_residuals("deformation quadratic condition", quadratic)

    B = A.with_table(family.deformation)
    variant = sum(1 for a, b, c in product(A.names, repeat=3) if not _proof_form_residual(B, a, b, c).is_zero())
    quadratic_report.notes.append(
        f"cyclic (c, a) form of the quadratic identity: {variant} of {A.module.rank ** 3} triples nonzero"
    )
    logger.info(f"Deformation by {psi.name}: linear {linear_report.status.value}, "
                f"quadratic {quadratic_report.status.value}")
    return family, [linear_report, quadratic_report]


def cocycle2_check(A: ConformalAlgebra, psi: Cochain) -> CheckReport:
    """
    d_{−1}ψ = 0 in the reduced form: the third slot replaced by −λ1−λ2−∂

    The unreduced value of d_{−1}ψ is summarized in a note.
    """
    name = "2-cocycle"
    validation = cochain_validate(psi)
    if not validation.passed:
        return CheckReport(name=name, status=CheckStatus.FAIL, residuals=validation.residuals,
                           notes=[f"cochain {psi.name} failed validation"])
    target, warning = default_shift_target(A, -1)
    d_psi = differential(psi.with_target(target))
    context = d_psi.context
    images = {"l3": Poly.affine({"l1": -1, "l2": -1, D: -1}, context)}
    residuals = []
    for args in product(A.names, repeat=3):
        reduced = d_psi.value(args).compose(images, context)
        if not reduced.is_zero():
            residuals.append(Residual(args, str(reduced), element=reduced))
    report = CheckReport.from_residuals(name, residuals)
    if warning:
        report.notes.append(warning)
    unreduced = sum(1 for args in d_psi.sorted_tuples() if not d_psi.value(args).is_zero())
    report.notes.append(f"unreduced d_-1 {psi.name}: {unreduced} nonzero sorted triples")
    return report


# ============================================================================
# NIJENHUIS OPERATORS
# ============================================================================

def _require_operator(A: ConformalAlgebra, f: ModuleMap) -> None:
    if f.parity != Parity.EVEN:
        raise ParityError("A Nijenhuis operator must be even")
    if f.domain != A.module or f.codomain != A.module:
        raise ModuleMismatchError("A Nijenhuis operator must be an endomorphism of the algebra module")
    if not f.commutes_with(A.alpha):
        raise AlphaCommutationFailure("f does not commute with alpha")


def nijenhuis_bracket_table(A: ConformalAlgebra, f: ModuleMap) -> Dict[Tuple[str, str], Element]:
    """[a λ b]_N = [f(a) λ b] + [a λ f(b)] − f([a λ b])"""
    context = A.table_context
    table = {}
    for a, b in product(A.names, repeat=2):
        ga, gb = A.generator(a), A.generator(b)
        value = (bracket_eval(A, f(ga), gb, L).lift(context)
                 + bracket_eval(A, ga, f(gb), L).lift(context)
                 - f(A.bracket(a, b)).lift(context))
        if not value.is_zero():
            table[(a, b)] = value
    return table


def nijenhuis_check(A: ConformalAlgebra, f: ModuleMap) -> CheckReport:
    """
    [f(a) λ f(b)] = f([a λ b]_N) on every generator pair

    Raises:
        ParityError: f is odd
        AlphaCommutationFailure: fα ≠ αf
    """
    _require_operator(A, f)
    context = A.table_context
    table = nijenhuis_bracket_table(A, f)
    residuals = []
    for a, b in product(A.names, repeat=2):
        lhs = bracket_eval(A, f(A.generator(a)), f(A.generator(b)), L).lift(context)
        rhs = f(table.get((a, b), Element.zero(A.module, context))).lift(context)
        residual = lhs - rhs
        if not residual.is_zero():
            residuals.append(Residual((a, b), str(residual), element=residual))
    return CheckReport.from_residuals("nijenhuis", residuals)


def deformation_operator(A: ConformalAlgebra, f: ModuleMap, parameter: str) -> ModuleMap:
    """T_t = id + t f"""
    context = (parameter,)
    return ModuleMap.identity(A.module, context) + f.scale(Poly.variable(parameter, context))


def triviality_certificate(family: DeformationFamily, f: ModuleMap) -> CheckReport:
    """
    T_t([a λ b]_t) = [T_t(a) λ T_t(b)] compared coefficient-wise in t

    Both expansions are recorded as notes.
    """
    A = family.base
    t = family.parameter
    T = deformation_operator(A, f, t)
    context = family.algebra.table_context
    residuals = []
    notes = []
    for a, b in product(A.names, repeat=2):
        lhs = T(family.algebra.bracket(a, b)).lift(context)
        rhs = bracket_eval(A, T(A.generator(a)), T(A.generator(b)), L).lift(context)
        left_parts, right_parts = lhs.split_by(t), rhs.split_by(t)
        for k in sorted(set(left_parts) | set(right_parts)):
            left = left_parts.get(k, Element.zero(A.module, context))
            right = right_parts.get(k, Element.zero(A.module, context))
            notes.append(f"({a}, {b}) t^{k}: {left} | {right}")
            if left != right:
                diff = left - right
                residuals.append(Residual((a, b), str(diff), label=f"t^{k}", element=diff))
    report = CheckReport.from_residuals("triviality", residuals)
    report.notes.extend(notes)
    return report


def nijenhuis_deformation(A: ConformalAlgebra, f: ModuleMap) -> NijenhuisResult:
    """
    ψ_{λ,−∂−λ}(a,b) = [a λ b]_N, the family it generates and the certificate for T_t = id + t f

    The family is only built when the operator check passes.
    """
    check = nijenhuis_check(A, f)
    result = NijenhuisResult(check=check)
    if not check.passed:
        logger.warning("Nijenhuis identity fails; no deformation built")
        return result
    table = nijenhuis_bracket_table(A, f)
    result.closure = check_skew(A.with_table(table))
    result.closure.name = "nijenhuis bracket skew-symmetry"
    psi = cochain_from_bracket(A, table, name="psi_N")
    result.family, result.conditions = deform(A, psi)
    result.certificate = triviality_certificate(result.family, f)
    return result
