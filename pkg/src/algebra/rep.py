#!/usr/bin/env python3
"""
Representations - Conformal linear maps, gc(M) brackets and representations
Adjoint and R_s modules, semidirect sums and the dual-representation criterion
"""

from itertools import product
from typing import Dict, Mapping, Optional, Sequence, Tuple, Union

from loguru import logger

from src.core.constants import Parity, Symbols, koszul
from src.core.exceptions import ModuleMismatchError, ParityError, SlotCollisionError
from src.core.models import CheckReport, Residual
from .freemod import Element, GradedModule, ModuleMap
from .lcsa import ConformalAlgebra, bracket_eval
from .polyring import Poly, merge_contexts


L = Symbols.LAMBDA
M = Symbols.MU
D = Symbols.DERIVATION


# ============================================================================
# CONFORMAL MAPS
# ============================================================================

class ConformalMap:
    """
    Conformal linear map f_λ: M → N[λ] of parity θ

    Stored by the images f_λ(g) of the domain generators as Elements over the
    codomain in `context`, which holds the action slot plus any parameter
    slots. The action rule is f_λ(p(∂)·g) = p(∂+λ)·f_λ(g).
    """

    __slots__ = ("domain", "codomain", "parity", "slot", "context", "images")

    def __init__(self, domain: GradedModule, codomain: GradedModule, images: Mapping[str, Element],
                 parity: Union[Parity, int] = Parity.EVEN, slot: str = L,
                 context: Optional[Sequence[str]] = None):
        self.domain = domain
        self.codomain = codomain
        self.parity = Parity(int(parity))
        self.slot = slot
        self.context: Tuple[str, ...] = tuple(context) if context is not None else (slot,)
        if slot not in self.context:
            self.context = self.context + (slot,)
        clean: Dict[str, Element] = {}
        for name in images:
            domain.index(name)
        for name in domain.names:
            image = images.get(name)
            if image is None:
                image = Element.zero(codomain, self.context)
            if image.module != codomain:
                raise ModuleMismatchError(f"Image of {name} is not in {codomain}")
            image = image.lift(self.context)
            expected = domain.parity(name) + self.parity
            for target in image.coeffs:
                if codomain.parity(target) != expected:
                    raise ParityError(f"Entry ({target}, {name}) has the wrong parity for a "
                                      f"{self.parity.label()} map")
            clean[name] = image
        self.images: Dict[str, Element] = clean

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, domain: GradedModule, codomain: Optional[GradedModule] = None,
             parity: Union[Parity, int] = Parity.EVEN, slot: str = L,
             context: Optional[Sequence[str]] = None) -> 'ConformalMap':
        return cls(domain, codomain or domain, {}, parity, slot, context)

    @classmethod
    def from_entries(cls, domain: GradedModule, codomain: GradedModule, entries: Mapping[Tuple[str, str], Poly],
                     parity: Union[Parity, int] = Parity.EVEN, slot: str = L,
                     context: Optional[Sequence[str]] = None) -> 'ConformalMap':
        """entries[(row, col)] is the coefficient of row in f_λ(col)"""
        context = tuple(context) if context is not None else (slot,)
        images: Dict[str, Dict[str, Poly]] = {}
        for (row, col), poly in entries.items():
            images.setdefault(col, {})[row] = poly
        return cls(domain, codomain, {c: Element(codomain, context, e) for c, e in images.items()},
                   parity, slot, context)

    @classmethod
    def from_module_map(cls, f: ModuleMap, slot: str = L) -> 'ConformalMap':
        """λ-independent conformal map with the same generator images as f"""
        context = merge_contexts(f.context, (slot,))
        return cls(f.domain, f.codomain, f.images, f.parity, slot, context)

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    @property
    def params(self) -> Tuple[str, ...]:
        """Slots of the context other than the action slot"""
        return tuple(s for s in self.context if s != self.slot)

    def entry(self, row: str, col: str) -> Poly:
        return self.images[col].coefficient(row)

    def is_zero(self) -> bool:
        return all(image.is_zero() for image in self.images.values())

    def max_degree(self, name: str) -> int:
        return max((image.max_degree(name) for image in self.images.values()), default=-1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConformalMap):
            return NotImplemented
        if (self.domain, self.codomain) != (other.domain, other.codomain):
            return False
        if self.is_zero() and other.is_zero():
            return True
        if self.slot != other.slot:
            other = other.rename_slot(self.slot)
        return all(self.images[n] == other.images[n] for n in self.domain.names)

    __hash__ = None

    def __repr__(self) -> str:
        body = ", ".join(f"{n} -> {self.images[n]}" for n in self.domain.names)
        return f"ConformalMap[{self.slot}]({body})"

    # ------------------------------------------------------------------
    # Linear structure
    # ------------------------------------------------------------------

    def _aligned(self, other: 'ConformalMap') -> Tuple['ConformalMap', Tuple[str, ...]]:
        if (self.domain, self.codomain) != (other.domain, other.codomain):
            raise ModuleMismatchError("Conformal maps act between different modules")
        if other.slot != self.slot:
            other = other.rename_slot(self.slot)
        return other, merge_contexts(self.context, other.context)

    def __add__(self, other: 'ConformalMap') -> 'ConformalMap':
        other, context = self._aligned(other)
        parity = self.parity if not self.is_zero() else other.parity
        images = {n: self.images[n].lift(context) + other.images[n].lift(context) for n in self.domain.names}
        return ConformalMap(self.domain, self.codomain, images, parity, self.slot, context)

    def __neg__(self) -> 'ConformalMap':
        return self.scale(-1)

    def __sub__(self, other: 'ConformalMap') -> 'ConformalMap':
        return self + (-other)

    def scale(self, factor) -> 'ConformalMap':
        """Multiply by a rational or a Poly over the map's context"""
        if isinstance(factor, Poly):
            context = merge_contexts(self.context, factor.context)
            images = {n: e.lift(context).scale(factor.lift(context)) for n, e in self.images.items()}
        else:
            context = self.context
            images = {n: e.scale(factor) for n, e in self.images.items()}
        return ConformalMap(self.domain, self.codomain, images, self.parity, self.slot, context)

    def partial(self) -> 'ConformalMap':
        """(∂f)_λ = −λ f_λ"""
        return self.scale(-Poly.variable(self.slot, self.context))

    # ------------------------------------------------------------------
    # Slots
    # ------------------------------------------------------------------

    def rename_slot(self, new: str) -> 'ConformalMap':
        if new == self.slot:
            return self
        if new in self.context:
            raise SlotCollisionError(new)
        mapping = {self.slot: new}
        context = tuple(mapping.get(s, s) for s in self.context)
        images = {n: e.rename(mapping, context) for n, e in self.images.items()}
        return ConformalMap(self.domain, self.codomain, images, self.parity, new, context)

    def lift(self, context: Sequence[str]) -> 'ConformalMap':
        context = merge_contexts(context, (self.slot,))
        images = {n: e.lift(context) for n, e in self.images.items()}
        return ConformalMap(self.domain, self.codomain, images, self.parity, self.slot, context)

    def split_by(self, name: str) -> Dict[int, 'ConformalMap']:
        """Coefficients of a parameter slot, e.g. the t-expansion of a family"""
        parts: Dict[int, Dict[str, Element]] = {}
        for gen, image in self.images.items():
            for k, piece in image.split_by(name).items():
                parts.setdefault(k, {})[gen] = piece
        return {k: ConformalMap(self.domain, self.codomain, imgs, self.parity, self.slot, self.context)
                for k, imgs in sorted(parts.items())}

    # ------------------------------------------------------------------
    # Action
    # ------------------------------------------------------------------

    def apply(self, x: Element, at: Union[str, Poly]) -> Element:
        """
        f_at(x) with ∂-coefficients of x shifted to ∂+at

        Args:
            x: Element over the domain
            at: Fresh slot name or a polynomial such as µ−λ or −λ−∂

        Returns:
            Element over the codomain; parameter slots of the map are kept
        """
        if x.module != self.domain:
            raise ModuleMismatchError(f"{x.module} is not the domain {self.domain}")
        if isinstance(at, str):
            if x.depends_on(at):
                raise SlotCollisionError(at)
            context = merge_contexts(x.context, self.params, (at,))
            point = Poly.variable(at, context)
        else:
            context = merge_contexts(x.context, at.context, self.params)
            point = at.lift(context)
        shift = {D: Poly.partial(context) + point}
        images = {self.slot: point}
        result = Element.zero(self.codomain, context)
        for name, coeff in x.coeffs.items():
            image = self.images[name]
            if image.is_zero():
                continue
            result = result + image.compose(images, context).scale(coeff.lift(context).compose(shift, context))
        return result

    def compose_module_map(self, f: ModuleMap) -> 'ConformalMap':
        """(self ∘ f)_λ = self_λ ∘ f"""
        context = merge_contexts(self.context, f.context)
        images = {n: self.apply(f.images[n].lift(context), Poly.variable(self.slot, context))
                  for n in f.domain.names}
        return ConformalMap(f.domain, self.codomain, images, self.parity + f.parity, self.slot, context)

    def after_module_map(self, f: ModuleMap) -> 'ConformalMap':
        """(f ∘ self)_λ = f ∘ self_λ"""
        context = merge_contexts(self.context, f.context)
        images = {n: f.apply(e.lift(context)) for n, e in self.images.items()}
        return ConformalMap(self.domain, f.codomain, images, self.parity + f.parity, self.slot, context)

    def flatten(self, names: Sequence[str], tag: Tuple = ()) -> Dict[Tuple, object]:
        """Coefficients keyed by (tag..., column, row, exponents of names)"""
        flat = {}
        for col, image in self.images.items():
            flat.update(image.flatten(names, tag + (col,)))
        return flat


def chom_compose(f: ConformalMap, g: ConformalMap, at: str = L, out: str = M) -> ConformalMap:
    """
    (f_at g)_out = f_at ∘ g_{out−at}

    The result acts in the slot `out` and keeps `at` as a parameter slot.
    """
    if g.codomain != f.domain:
        raise ModuleMismatchError("Conformal maps are not composable")
    context = merge_contexts(f.params, g.params, (at, out))
    lam = Poly.variable(at, context)
    mu = Poly.variable(out, context)
    images = {}
    for name in g.domain.names:
        e = Element.generator(g.domain, name, context)
        images[name] = f.apply(g.apply(e, mu - lam), lam)
    return ConformalMap(g.domain, f.codomain, images, f.parity + g.parity, out, context)


def gc_bracket(f: ConformalMap, g: ConformalMap, at: str = L, out: str = M) -> ConformalMap:
    """
    gc(M) λ-bracket [f_at g]_out = f_at g_{out−at} − (−1)^{|f||g|} g_{out−at} f_at

    Slot names `at` and `out` must not be parameter slots of f or g.
    """
    for name in (at, out):
        if name in f.params or name in g.params:
            raise SlotCollisionError(name)
    if not (f.domain == f.codomain == g.domain == g.codomain):
        raise ModuleMismatchError("gc(M) bracket needs endomorphisms of one module")
    context = merge_contexts(f.params, g.params, (at, out))
    lam = Poly.variable(at, context)
    mu = Poly.variable(out, context)
    sign = koszul((f.parity, g.parity))
    images = {}
    for name in f.domain.names:
        e = Element.generator(f.domain, name, context)
        forward = f.apply(g.apply(e, mu - lam), lam)
        backward = g.apply(f.apply(e, lam), mu - lam)
        images[name] = forward - backward.scale(sign)
    return ConformalMap(f.domain, f.domain, images, f.parity + g.parity, out, context)


def chom_commutator(f: ConformalMap, g: ConformalMap, at: str = L, out: str = M) -> ConformalMap:
    return gc_bracket(f, g, at, out)


# ============================================================================
# REPRESENTATIONS
# ============================================================================

class Representation:
    """
    Representation (ρ, M, β) of a Hom-Lie conformal superalgebra

    ρ(g) for each algebra generator g is a ConformalMap on M of parity |g|
    acting in the slot "l" (plus the algebra's parameter slots).
    """

    def __init__(self, algebra: ConformalAlgebra, module: GradedModule,
                 rho: Mapping[str, ConformalMap], beta: Optional[ModuleMap] = None, name: str = "rep"):
        self.algebra = algebra
        self.module = module
        self.name = name
        self.beta = beta if beta is not None else ModuleMap.identity(module)
        if self.beta.domain != module or self.beta.codomain != module:
            raise ModuleMismatchError("β must be an endomorphism of the representation module")
        if self.beta.parity != Parity.EVEN:
            raise ParityError("β must be even")
        context = algebra.table_context
        self.rho: Dict[str, ConformalMap] = {}
        for gen in rho:
            algebra.module.index(gen)
        for gen in algebra.names:
            rmap = rho.get(gen)
            if rmap is None:
                rmap = ConformalMap.zero(module, module, algebra.parity(gen), L, context)
            if rmap.domain != module or rmap.codomain != module:
                raise ModuleMismatchError(f"ρ({gen}) does not act on {module}")
            if not rmap.is_zero() and rmap.parity != algebra.parity(gen):
                raise ParityError(f"ρ({gen}) must have the parity of {gen}")
            self.rho[gen] = rmap.rename_slot(L).lift(context)

    def act(self, x: Element, v: Element, at: Union[str, Poly]) -> Element:
        """ρ(x)_at v, extended to x = Σ p_i(∂) g_i by ρ(p(∂)g)_P = p(−P) ρ(g)_P"""
        if x.module != self.algebra.module:
            raise ModuleMismatchError("ρ is only defined on algebra elements")
        if isinstance(at, str):
            if x.depends_on(at) or v.depends_on(at):
                raise SlotCollisionError(at)
            context = merge_contexts(x.context, v.context, self.algebra.params, (at,))
            point = Poly.variable(at, context)
        else:
            context = merge_contexts(x.context, v.context, at.context, self.algebra.params)
            point = at.lift(context)
        v = v.lift(context)
        negate = {D: -point}
        result = Element.zero(self.module, context)
        for gen, coeff in x.coeffs.items():
            if self.rho[gen].is_zero():
                continue
            factor = coeff.lift(context).compose(negate, context)
            result = result + self.rho[gen].apply(v, point).lift(context).scale(factor)
        return result

    def rho_of(self, x: Element) -> ConformalMap:
        """ρ(x) as a conformal map in the slot "l" for an element x without slots"""
        context = merge_contexts(x.context, self.algebra.table_context)
        lam = Poly.variable(L, context)
        images = {}
        for name in self.module.names:
            images[name] = self.act(x, Element.generator(self.module, name, context), lam)
        parity = x.parity() or Parity.EVEN
        return ConformalMap(self.module, self.module, images, parity, L, context)

    def __repr__(self) -> str:
        return f"Representation({self.name}, module={self.module!r})"


def adjoint(A: ConformalAlgebra) -> Representation:
    """ad(g_i)_λ(g_j) = [g_i λ g_j], β = α"""
    rho = {}
    for gi in A.names:
        images = {gj: A.bracket(gi, gj) for gj in A.names}
        rho[gi] = ConformalMap(A.module, A.module, images, A.parity(gi), L, A.table_context)
    return Representation(A, A.module, rho, A.alpha, name="adjoint")


def rep_shift(A: ConformalAlgebra, s: int) -> Representation:
    """
    R_s: ρ(a)_λ b = [α^s(a)_λ b], β = α

    Raises:
        NotInvertibleError: s < 0 and α is not regular
    """
    if s == 0:
        return adjoint(A)
    twist = A.alpha_power(s)
    rho = {}
    for gi in A.names:
        shifted = twist(A.generator(gi))
        images = {gj: bracket_eval(A, shifted, A.generator(gj), L) for gj in A.names}
        rho[gi] = ConformalMap(A.module, A.module, images, A.parity(gi), L, A.table_context)
    return Representation(A, A.module, rho, A.alpha, name=f"shift:{s}")


# ============================================================================
# CHECKS
# ============================================================================

def _pair_context(A: ConformalAlgebra) -> Tuple[Tuple[str, ...], Poly, Poly]:
    context = A.params + (L, M)
    return context, Poly.variable(L, context), Poly.variable(M, context)


def rep_check(rep: Representation) -> CheckReport:
    """
    ρ(∂a)_λ = −λρ(a)_λ and
    ρ([a_λ b])_{λ+µ} β(c) = ρ(α(a))_λ ρ(b)_µ c − (−1)^{|a||b|} ρ(α(b))_µ ρ(a)_λ c
    """
    A = rep.algebra
    context, lam, mu = _pair_context(A)
    residuals = []
    for a in A.names:
        x = A.generator(a, context)
        for c in rep.module.names:
            v = Element.generator(rep.module, c, context)
            residual = rep.act(x.times_partial(), v, lam) + rep.act(x, v, lam).scale(lam)
            if not residual.is_zero():
                residuals.append(Residual((a, c), str(residual), label="partial", element=residual))

    for a, b, c in product(A.names, A.names, rep.module.names):
        xa, xb = A.generator(a, context), A.generator(b, context)
        v = Element.generator(rep.module, c, context)
        inner = A.bracket(a, b).lift(context)
        lhs = rep.act(inner, rep.beta(v), lam + mu)
        first = rep.act(A.alpha(xa), rep.act(xb, v, mu), lam)
        second = rep.act(A.alpha(xb), rep.act(xa, v, lam), mu)
        residual = (lhs - first + second.scale(koszul((A.parity(a), A.parity(b))))).lift(context)
        if not residual.is_zero():
            residuals.append(Residual((a, b, c), str(residual), label="bracket", element=residual))
    logger.debug(f"Representation {rep.name}: {len(residuals)} residuals")
    return CheckReport.from_residuals(f"representation {rep.name}", residuals)


def dual_rep_condition_check(A: ConformalAlgebra, rep: Representation) -> CheckReport:
    """
    Criterion for ρ̃ = −ρ on M* with β̃ = β to be a representation:
    βρ([a_λ b])_{λ+µ} = (−1)^{|a||b|} ρ(a)_λ ρ(α(b))_µ − ρ(b)_µ ρ(α(a))_λ
    """
    context, lam, mu = _pair_context(A)
    residuals = []
    for a, b, c in product(A.names, A.names, rep.module.names):
        xa, xb = A.generator(a, context), A.generator(b, context)
        v = Element.generator(rep.module, c, context)
        lhs = rep.beta(rep.act(A.bracket(a, b).lift(context), v, lam + mu))
        first = rep.act(xa, rep.act(A.alpha(xb), v, mu), lam)
        second = rep.act(xb, rep.act(A.alpha(xa), v, lam), mu)
        residual = (lhs - first.scale(koszul((A.parity(a), A.parity(b)))) + second).lift(context)
        if not residual.is_zero():
            residuals.append(Residual((a, b, c), str(residual), element=residual))
    return CheckReport.from_residuals(f"dual representation {rep.name}", residuals)


# ============================================================================
# SEMIDIRECT SUM
# ============================================================================

def semidirect(A: ConformalAlgebra, rep: Representation) -> Tuple[ConformalAlgebra, Dict[str, str]]:
    """
    R ⊕ M with [a_λ v] = ρ(a)_λ v, [u_λ b] = −(−1)^{|u||b|} ρ(b)_{−λ−∂} u,
    [u_λ v] = 0 and twist α ⊕ β

    Returns:
        The algebra and the rename map of M's generators (clashes get "_M")
    """
    total, renames = A.module.direct_sum(rep.module)
    context = A.table_context
    point = Poly.affine({L: -1, D: -1}, context)

    table = {}
    for (a, b), value in A.table.items():
        table[(a, b)] = value.relabel(total, {})
    for a in A.names:
        for v in rep.module.names:
            image = rep.rho[a].images[v].lift(context)
            if not image.is_zero():
                table[(a, renames[v])] = image.relabel(total, renames)
            u = Element.generator(rep.module, v, context)
            swapped = rep.act(A.generator(a, context), u, point).lift(context)
            if not swapped.is_zero():
                sign = -koszul((rep.module.parity(v), A.parity(a)))
                table[(renames[v], a)] = swapped.relabel(total, renames).scale(sign)

    images = {name: image.relabel(total, {}) for name, image in A.alpha.images.items()}
    images.update({renames[n]: image.relabel(total, renames) for n, image in rep.beta.images.items()})
    twist = ModuleMap(total, total, images, Parity.EVEN, merge_contexts(A.alpha.context, rep.beta.context))
    return ConformalAlgebra(total, table, twist, A.params), renames
