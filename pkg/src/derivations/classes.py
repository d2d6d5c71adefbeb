#!/usr/bin/env python3
"""
Derivation Classes - α^k-derivations and their generalizations as executable identities
Class checks, inner derivations, commutators, the Der(R) Hom-Jacobi check and derivation extensions
"""

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from loguru import logger

from src.algebra.freemod import Element, GradedModule, ModuleMap
from src.algebra.lcsa import (
    ConformalAlgebra,
    bracket_eval,
    check_grading,
    check_multiplicative,
    check_skew,
    hom_jacobi_residual,
)
from src.algebra.polyring import Poly, fresh_slot, merge_contexts
from src.algebra.rep import ConformalMap, gc_bracket
from src.core.constants import ClassTag, Parity, Symbols, koszul
from src.core.exceptions import (
    ContextMismatchError,
    MissingCompanionsError,
    NotAlphaFixedError,
    NotRegularError,
    ParityError,
)
from src.core.models import CheckReport, Residual


L = Symbols.LAMBDA
M = Symbols.MU
N = Symbols.THETA
D = Symbols.DERIVATION

ROLES = ("D", "D'", "D''")

# Each class identity is a list of labelled linear combinations of the
# pieces left(X) = [X_µ(a) λ+µ α^k(b)], right(X) = (-1)^{|X||a|}[α^k(a) λ X_µ(b)]
# and image(X) = X_µ([a λ b]); entries are (role index, piece, coefficient).
IDENTITIES: Dict[ClassTag, Tuple[Tuple[str, Tuple[Tuple[int, str, int], ...]], ...]] = {
    ClassTag.DER: (("", ((0, "image", 1), (0, "left", -1), (0, "right", -1))),),
    ClassTag.GDER: (("", ((0, "left", 1), (1, "right", 1), (2, "image", -1))),),
    ClassTag.QDER: (("", ((0, "left", 1), (0, "right", 1), (1, "image", -1))),),
    ClassTag.C: (("left", ((0, "left", 1), (0, "image", -1))),
                 ("right", ((0, "right", 1), (0, "image", -1)))),
    ClassTag.QC: (("", ((0, "left", 1), (0, "right", -1))),),
    ClassTag.ZDER: (("left", ((0, "left", 1),)),
                    ("image", ((0, "image", 1),))),
}


# ============================================================================
# DATA MODELS
# ============================================================================

@dataclass
class DerivationCandidate:
    """A conformal map tagged with a class and a power k, plus companions for GDer/QDer"""
    map: ConformalMap
    k: int = 0
    tag: ClassTag = ClassTag.DER
    companions: Tuple[ConformalMap, ...] = field(default_factory=tuple)
    name: str = "D"

    def maps(self) -> List[ConformalMap]:
        return [self.map, *self.companions]

    @property
    def parity(self) -> Parity:
        return self.map.parity


@dataclass(frozen=True)
class Frame:
    """Two-slot evaluation context: µ is the map slot, λ the bracket slot"""
    context: Tuple[str, ...]
    mu: str
    lam: str


# ============================================================================
# IDENTITY PIECES
# ============================================================================

def make_frame(A: ConformalAlgebra, maps: Sequence[ConformalMap]) -> Frame:
    taken = merge_contexts(A.params, A.alpha.context, *(m.params for m in maps))
    mu = fresh_slot(taken, M)
    lam = fresh_slot(taken + (mu,), L)
    return Frame(taken + (mu, lam), mu, lam)


def identity_pieces(A: ConformalAlgebra, X: ConformalMap, twist: ModuleMap,
                    a: str, b: str, frame: Frame) -> Dict[str, Element]:
    """left, right and image of X on the pair (a, b); X must act in frame.mu"""
    context = frame.context
    lam = Poly.variable(frame.lam, context)
    mu = Poly.variable(frame.mu, context)
    ga, gb = A.generator(a, context), A.generator(b, context)
    sign = koszul((X.parity, A.parity(a)))
    left = bracket_eval(A, X.apply(ga, mu), twist(gb), lam + mu)
    right = bracket_eval(A, twist(ga), X.apply(gb, mu), lam).scale(sign)
    image = X.apply(bracket_eval(A, ga, gb, lam), mu)
    return {"left": left.lift(context), "right": right.lift(context), "image": image.lift(context)}


def combine_pieces(tag: ClassTag, pieces: Sequence[Dict[str, Element]],
                   zero: Element) -> List[Tuple[str, Element]]:
    """The labelled residuals of a class identity from per-role pieces"""
    results = []
    for label, terms in IDENTITIES[tag]:
        total = zero
        for role, piece, coeff in terms:
            total = total + pieces[role][piece].scale(coeff)
        results.append((label, total))
    return results


def alpha_commutator(A: ConformalAlgebra, X: ConformalMap) -> ConformalMap:
    """X_λ∘α − α∘X_λ"""
    return X.compose_module_map(A.alpha) - X.after_module_map(A.alpha)


# ============================================================================
# CLASS CHECK
# ============================================================================

def class_check(A: ConformalAlgebra, cand: DerivationCandidate) -> CheckReport:
    """
    Evaluate the defining identity of the candidate's class on every generator pair

    Args:
        A: The algebra
        cand: Map, power k, class tag and, for GDer/QDer, the companion maps

    Returns:
        CheckReport named "<tag> <name>"; α-commutation failures carry the label "alpha <role>"

    Raises:
        MissingCompanionsError: GDer or QDer without enough companions
        ParityError: a nonzero companion has a different parity from the map
    """
    required = 1 + cand.tag.companions()
    maps = cand.maps()
    if len(maps) < required:
        raise MissingCompanionsError(
            f"{cand.tag.value} needs {cand.tag.companions()} companion map(s), got {len(maps) - 1}"
        )
    maps = maps[:required]
    for companion in maps[1:]:
        if not companion.is_zero() and companion.parity != cand.parity:
            raise ParityError("Companion maps must share the parity of the candidate")

    frame = make_frame(A, maps)
    maps = [m.rename_slot(frame.mu) for m in maps]
    twist = A.alpha_power(cand.k)
    zero = Element.zero(A.module, frame.context)

    residuals = []
    for role, X in zip(ROLES, maps):
        diff = alpha_commutator(A, X)
        for gen in A.names:
            image = diff.images[gen]
            if not image.is_zero():
                residuals.append(Residual((gen,), str(image), label=f"alpha {role}", element=image))

    for a, b in product(A.names, repeat=2):
        pieces = [identity_pieces(A, X, twist, a, b, frame) for X in maps]
        for label, residual in combine_pieces(cand.tag, pieces, zero):
            if not residual.is_zero():
                residuals.append(Residual((a, b), str(residual), label=label, element=residual))

    report = CheckReport.from_residuals(f"{cand.tag.value} {cand.name}", residuals)
    report.notes.append(f"k = {cand.k}")
    logger.debug(f"Class check {cand.tag.value} on {cand.name}: {len(residuals)} residuals")
    return report


# ============================================================================
# INNER DERIVATIONS AND COMMUTATORS
# ============================================================================

def inner_derivation(A: ConformalAlgebra, a: Element, k: int = 0) -> DerivationCandidate:
    """
    ad_k(a)_λ(b) = [a λ α^k(b)] for α(a) = a, an α^{k+1}-derivation

    Raises:
        NotAlphaFixedError: α(a) ≠ a
        ParityError: a is not homogeneous
    """
    if A.alpha(a) != a:
        raise NotAlphaFixedError(str(a))
    parity = a.parity() or Parity.EVEN
    twist = A.alpha_power(k)
    context = A.table_context
    x = a.lift(merge_contexts(A.params, a.context))
    images = {g: bracket_eval(A, x, twist(A.generator(g)), L).lift(context) for g in A.names}
    rmap = ConformalMap(A.module, A.module, images, parity, L, context)
    return DerivationCandidate(rmap, k + 1, ClassTag.DER, name=f"ad({a})")


def der_commutator(first: DerivationCandidate, second: DerivationCandidate,
                   tag: ClassTag = ClassTag.DER,
                   companions: Tuple[ConformalMap, ...] = ()) -> DerivationCandidate:
    """
    [D λ D']_µ at power k+s; the result acts in µ and keeps λ as a parameter slot
    """
    params = merge_contexts(first.map.params, second.map.params)
    at = fresh_slot(params, L)
    out = fresh_slot(params + (at,), M)
    rmap = gc_bracket(first.map, second.map, at, out)
    return DerivationCandidate(rmap, first.k + second.k, tag, tuple(companions),
                               name=f"[{first.name},{second.name}]")


# ============================================================================
# Der(R) HOM-JACOBI
# ============================================================================

class Operator:
    """Nested gc(R) brackets evaluated pointwise: x ↦ op_P(x)"""

    def __init__(self, parity: Parity):
        self.parity = parity

    def apply(self, x: Element, point: Poly) -> Element:
        raise NotImplementedError


class MapOperator(Operator):
    def __init__(self, rmap: ConformalMap):
        super().__init__(rmap.parity)
        self.rmap = rmap

    def apply(self, x: Element, point: Poly) -> Element:
        return self.rmap.apply(x, point).lift(point.context)


class BracketOperator(Operator):
    """[f_at g]_P = f_at ∘ g_{P−at} − (−1)^{|f||g|} g_{P−at} ∘ f_at"""

    def __init__(self, f: Operator, g: Operator, at: Poly):
        super().__init__(f.parity + g.parity)
        self.f, self.g, self.at = f, g, at

    def apply(self, x: Element, point: Poly) -> Element:
        rest = point - self.at
        forward = self.f.apply(self.g.apply(x, rest), self.at)
        backward = self.g.apply(self.f.apply(x, self.at), rest)
        return forward - backward.scale(koszul((self.f.parity, self.g.parity)))


def der_hom_jacobi_check(A: ConformalAlgebra, first: DerivationCandidate, second: DerivationCandidate,
                         third: DerivationCandidate) -> CheckReport:
    """
    [α'(D) λ [D' µ D'']]_θ = (−1)^{|D||D'|}[α'(D') µ [D λ D'']]_θ + [[D λ D'] λ+µ α'(D'')]_θ
    on every generator, with α'(X) = X∘α
    """
    maps = [c.map for c in (first, second, third)]
    taken = merge_contexts(A.params, A.alpha.context, *(m.params for m in maps))
    lam_name = fresh_slot(taken, L)
    mu_name = fresh_slot(taken + (lam_name,), M)
    theta_name = fresh_slot(taken + (lam_name, mu_name), N)
    context = taken + (lam_name, mu_name, theta_name)
    lam, mu, theta = (Poly.variable(s, context) for s in (lam_name, mu_name, theta_name))

    d, d1, d2 = (MapOperator(m) for m in maps)
    ad, ad1, ad2 = (MapOperator(m.compose_module_map(A.alpha)) for m in maps)
    lhs_op = BracketOperator(ad, BracketOperator(d1, d2, mu), lam)
    swap_op = BracketOperator(ad1, BracketOperator(d, d2, lam), mu)
    nest_op = BracketOperator(BracketOperator(d, d1, lam), ad2, lam + mu)
    sign = koszul((d.parity, d1.parity))

    residuals = []
    for g in A.names:
        x = A.generator(g, context)
        residual = (lhs_op.apply(x, theta) - swap_op.apply(x, theta).scale(sign)
                    - nest_op.apply(x, theta)).lift(context)
        if not residual.is_zero():
            residuals.append(Residual((g,), str(residual), element=residual))
    name = f"der hom-jacobi ({first.name}, {second.name}, {third.name})"
    return CheckReport.from_residuals(name, residuals)


# ============================================================================
# DERIVATION EXTENSION
# ============================================================================

def derivation_extension(A: ConformalAlgebra, derivation: ConformalMap,
                         name: str = "D") -> Tuple[ConformalAlgebra, str]:
    """
    R ⊕ C[∂]D with [D λ b] = D_λ(b), [a λ D] = −(−1)^{|a||D|} D_{−λ−∂}(a),
    [D λ D] = 0 and α'(a + D) = α(a) + D

    The extension is a regular Hom-Lie conformal superalgebra exactly when
    D is an α-derivation; run extension_check on the result to test it.

    Returns:
        (algebra, name of the new generator)

    Raises:
        NotRegularError: α is not invertible over C[∂]
        ContextMismatchError: D carries parameter slots the algebra does not have
    """
    if not A.is_regular():
        raise NotRegularError("Derivation extensions need a regular algebra")
    extra = [s for s in derivation.params if s not in A.params]
    if extra:
        raise ContextMismatchError(derivation.context, A.table_context)

    gen = name
    while A.module.has(gen):
        gen = fresh_slot(A.names, name)
    module = GradedModule([(n, A.parity(n)) for n in A.names] + [(gen, derivation.parity)])
    context = A.table_context
    rmap = derivation.rename_slot(L).lift(context)
    point = Poly.affine({L: -1, D: -1}, context)

    table = {key: value.relabel(module, {}) for key, value in A.table.items()}
    for b in A.names:
        image = rmap.images[b]
        if not image.is_zero():
            table[(gen, b)] = image.relabel(module, {})
    for a in A.names:
        swapped = rmap.apply(A.generator(a, context), point).lift(context)
        if not swapped.is_zero():
            sign = -koszul((A.parity(a), derivation.parity))
            table[(a, gen)] = swapped.relabel(module, {}).scale(sign)

    images = {n: image.relabel(module, {}) for n, image in A.alpha.images.items()}
    images[gen] = Element.generator(module, gen, A.alpha.context)
    twist = ModuleMap(module, module, images, Parity.EVEN, A.alpha.context)
    logger.info(f"Derivation extension by {gen}: rank {module.rank}")
    return ConformalAlgebra(module, table, twist, A.params), gen


def extension_check(B: ConformalAlgebra, gen: str) -> List[CheckReport]:
    """
    Axiom suite of a derivation extension

    Hom-Jacobi is split by how often the new generator occurs in the triple.
    Triples with at most one copy hold exactly when D is an α-derivation;
    triples with two or more copies additionally need D_λ∘D_µ = D_µ∘D_λ
    and are reported as informational.
    """
    single, repeated = [], []
    for triple in product(B.names, repeat=3):
        residual = hom_jacobi_residual(B, *triple)
        if residual.is_zero():
            continue
        bucket = single if triple.count(gen) <= 1 else repeated
        bucket.append(Residual(triple, str(residual), element=residual))
    jacobi = CheckReport.from_residuals("hom-jacobi", single)
    jacobi.notes.append(f"triples with at most one {gen}")
    commuting = CheckReport.from_residuals(f"hom-jacobi ({gen}, {gen}, .)", repeated, informational=True)
    return [check_grading(B), check_skew(B), jacobi, check_multiplicative(B), commuting]


def candidate_from_map(rmap: ConformalMap, k: int = 0, tag: ClassTag = ClassTag.DER,
                       companions: Optional[Sequence[ConformalMap]] = None,
                       name: str = "D") -> DerivationCandidate:
    return DerivationCandidate(rmap, k, tag, tuple(companions or ()), name)
