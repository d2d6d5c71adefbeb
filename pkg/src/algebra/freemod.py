#!/usr/bin/env python3
"""
Free Modules - Finite free Z2-graded C[∂]-modules, their elements and module maps
Elements carry polynomial coefficients in a λ-slot context; maps are C[∂]-linear
"""

from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from src.core.constants import Parity, Symbols
from src.core.exceptions import (
    ContextMismatchError,
    ModuleMismatchError,
    NotInvertibleError,
    ParityError,
    PolynomialSyntaxError,
    UnknownGeneratorError,
)
from .polyring import LambdaContext, Poly, Scalar, merge_contexts, poly_parse, tokenize


# ============================================================================
# GRADED MODULE
# ============================================================================

class GradedModule:
    """Ordered list of (generator name, parity)"""

    __slots__ = ("generators", "_index")

    def __init__(self, generators: Iterable[Tuple[str, Union[Parity, int, str]]]):
        pairs = []
        for name, parity in generators:
            if isinstance(parity, str):
                parity = Parity.parse(parity)
            pairs.append((name, Parity(int(parity))))
        names = [name for name, _ in pairs]
        if len(set(names)) != len(names):
            raise ValueError(f"Duplicate generator names: {names}")
        self.generators: Tuple[Tuple[str, Parity], ...] = tuple(pairs)
        self._index = {name: i for i, name in enumerate(names)}

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.generators)

    @property
    def rank(self) -> int:
        return len(self.generators)

    def has(self, name: str) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        if name not in self._index:
            raise UnknownGeneratorError(name)
        return self._index[name]

    def parity(self, name: str) -> Parity:
        return self.generators[self.index(name)][1]

    def direct_sum(self, other: 'GradedModule', suffix: str = "_M") -> Tuple['GradedModule', Dict[str, str]]:
        """self ⊕ other; clashing names of `other` get a suffix. Returns the rename map."""
        taken = set(self.names)
        renames: Dict[str, str] = {}
        for name, _ in other.generators:
            new = name
            while new in taken:
                new = new + suffix
            taken.add(new)
            renames[name] = new
        pairs = list(self.generators) + [(renames[n], p) for n, p in other.generators]
        return GradedModule(pairs), renames

    def __eq__(self, other) -> bool:
        return isinstance(other, GradedModule) and self.generators == other.generators

    def __hash__(self) -> int:
        return hash(self.generators)

    def __repr__(self) -> str:
        return "GradedModule(" + ", ".join(f"{n}:{p.label()}" for n, p in self.generators) + ")"


# ============================================================================
# ELEMENT
# ============================================================================

class Element:
    """
    Finite combination Σ p_g(λ-slots, ∂) · g over a graded module

    Omitted generators have zero coefficient. Coefficients are lifted into the
    element's context on construction.
    """

    __slots__ = ("module", "context", "coeffs")

    def __init__(self, module: GradedModule, context: Sequence[str] = (),
                 coeffs: Optional[Mapping[str, Poly]] = None):
        self.module = module
        self.context: LambdaContext = tuple(context)
        clean: Dict[str, Poly] = {}
        for name, poly in (coeffs or {}).items():
            module.index(name)
            poly = poly.lift(self.context)
            if not poly.is_zero():
                clean[name] = poly
        self.coeffs: Dict[str, Poly] = {n: clean[n] for n in module.names if n in clean}

    @classmethod
    def zero(cls, module: GradedModule, context: Sequence[str] = ()) -> 'Element':
        return cls(module, context)

    @classmethod
    def generator(cls, module: GradedModule, name: str, context: Sequence[str] = ()) -> 'Element':
        return cls(module, context, {name: Poly.one(context)})

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    def coefficient(self, name: str) -> Poly:
        self.module.index(name)
        return self.coeffs.get(name, Poly.zero(self.context))

    def is_zero(self) -> bool:
        return not self.coeffs

    def parity(self) -> Optional[Parity]:
        """Common parity of the nonzero components; None for zero"""
        parities = {self.module.parity(n) for n in self.coeffs}
        if not parities:
            return None
        if len(parities) > 1:
            raise ParityError(f"Element {self} is not parity-homogeneous")
        return parities.pop()

    def is_homogeneous(self) -> bool:
        return len({self.module.parity(n) for n in self.coeffs}) <= 1

    def homogeneous_parts(self) -> Dict[Parity, 'Element']:
        parts: Dict[Parity, Dict[str, Poly]] = {}
        for name, poly in self.coeffs.items():
            parts.setdefault(self.module.parity(name), {})[name] = poly
        return {p: Element(self.module, self.context, c) for p, c in sorted(parts.items())}

    def depends_on(self, slot: str) -> bool:
        return any(p.depends_on(slot) for p in self.coeffs.values())

    def max_degree(self, name: str) -> int:
        return max((p.degree(name) for p in self.coeffs.values()), default=-1)

    # ------------------------------------------------------------------
    # Linear structure
    # ------------------------------------------------------------------

    def _check(self, other: 'Element') -> None:
        if not isinstance(other, Element):
            raise TypeError(f"Expected Element, got {type(other).__name__}")
        if other.module != self.module:
            raise ModuleMismatchError(f"{self.module} vs {other.module}")
        if other.context != self.context:
            raise ContextMismatchError(self.context, other.context)

    def __add__(self, other: 'Element') -> 'Element':
        self._check(other)
        coeffs = dict(self.coeffs)
        for name, poly in other.coeffs.items():
            coeffs[name] = coeffs[name] + poly if name in coeffs else poly
        return Element(self.module, self.context, coeffs)

    def __neg__(self) -> 'Element':
        return Element(self.module, self.context, {n: -p for n, p in self.coeffs.items()})

    def __sub__(self, other: 'Element') -> 'Element':
        return self + (-other)

    def scale(self, factor: Union[Scalar, Poly]) -> 'Element':
        """Multiply every coefficient by a rational or by a Poly of the same context"""
        return Element(self.module, self.context, {n: p * factor for n, p in self.coeffs.items()})

    __mul__ = scale
    __rmul__ = scale

    def times_partial(self, power: int = 1) -> 'Element':
        return self.scale(Poly.partial(self.context) ** power)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, Element) or other.module != self.module:
            return False
        if set(self.coeffs) != set(other.coeffs):
            return False
        return all(self.coeffs[n] == other.coeffs[n] for n in self.coeffs)

    __hash__ = None

    # ------------------------------------------------------------------
    # Context changes
    # ------------------------------------------------------------------

    def lift(self, context: Sequence[str]) -> 'Element':
        context = tuple(context)
        if context == self.context:
            return self
        return Element(self.module, context, {n: p.lift(context) for n, p in self.coeffs.items()})

    def compose(self, images: Mapping[str, Poly], context: Optional[Sequence[str]] = None) -> 'Element':
        """Apply the same simultaneous substitution to every coefficient"""
        context = self.context if context is None else tuple(context)
        return Element(self.module, context, {n: p.compose(images, context) for n, p in self.coeffs.items()})

    def substitute(self, slot: str, image: Poly) -> 'Element':
        return Element(self.module, image.context,
                       {n: p.substitute(slot, image) for n, p in self.coeffs.items()})

    def rename(self, mapping: Mapping[str, str], context: Optional[Sequence[str]] = None) -> 'Element':
        if context is None:
            context = tuple(mapping.get(n, n) for n in self.context)
        return Element(self.module, context, {n: p.rename(mapping, context) for n, p in self.coeffs.items()})

    def relabel(self, module: GradedModule, renames: Mapping[str, str]) -> 'Element':
        """Move into another module under a generator rename"""
        return Element(module, self.context, {renames.get(n, n): p for n, p in self.coeffs.items()})

    def split_by(self, slot: str) -> Dict[int, 'Element']:
        """Coefficients of slot^k as elements of the same context"""
        parts: Dict[int, Dict[str, Poly]] = {}
        for name, poly in self.coeffs.items():
            for k, piece in poly.split_by(slot).items():
                parts.setdefault(k, {})[name] = piece
        return {k: Element(self.module, self.context, c) for k, c in sorted(parts.items())}

    def flatten(self, names: Sequence[str], tag: Tuple = ()) -> Dict[Tuple, Fraction]:
        """Coefficient map keyed by (tag..., generator, exponents of names)"""
        flat: Dict[Tuple, Fraction] = {}
        for gen, poly in self.coeffs.items():
            for exps, coeff in poly.coefficients(names).items():
                flat[tag + (gen, exps)] = coeff
        return flat

    # ------------------------------------------------------------------
    # Printing
    # ------------------------------------------------------------------

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        pieces = []
        for index, (name, poly) in enumerate(self.coeffs.items()):
            negative = poly.is_constant() and poly.constant_value() < 0
            magnitude = -poly if negative else poly
            if magnitude == 1:
                body = name
            elif magnitude.is_constant():
                body = f"{magnitude} {name}"
            else:
                body = f"({magnitude}) {name}"
            if index == 0:
                pieces.append(("-" if negative else "") + body)
            else:
                pieces.append((" - " if negative else " + ") + body)
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"Element({str(self)!r}, context={self.context})"


def element_parse(text: str, module: GradedModule, context: Sequence[str] = ()) -> Element:
    """
    Parse "[coeff] GEN (+|- [coeff] GEN)*"; a coefficient is any polynomial
    written before its generator name, e.g. "(d + 2*l) L - (1/2)*l E"
    """
    context = tuple(context)
    if text.strip() == "0":
        return Element.zero(module, context)

    result = Element.zero(module, context)
    depth = 0
    term_start = 0
    after_generator = False
    for kind, value, position in tokenize(text):
        if after_generator:
            if kind == "op" and value in "+-":
                after_generator = False
                term_start = position
                continue
            raise PolynomialSyntaxError("Expected '+' or '-' after generator", text, position)
        if kind == "op" and value == "(":
            depth += 1
        elif kind == "op" and value == ")":
            depth -= 1
        elif kind == "name" and depth == 0 and module.has(value):
            coeff_text = text[term_start:position].strip()
            if coeff_text.endswith("*"):
                coeff_text = coeff_text[:-1].rstrip()
            coeff = _parse_coefficient(coeff_text, context, text, term_start)
            result = result + Element.generator(module, value, context).scale(coeff)
            after_generator = True
    if not after_generator:
        raise PolynomialSyntaxError("Expected a generator name", text, len(text))
    return result


def _parse_coefficient(coeff_text: str, context: LambdaContext, text: str, offset: int) -> Poly:
    if coeff_text in ("", "+"):
        return Poly.one(context)
    if coeff_text == "-":
        return -Poly.one(context)
    try:
        return poly_parse(coeff_text, context)
    except PolynomialSyntaxError as e:
        lead = len(text[offset:]) - len(text[offset:].lstrip())
        raise PolynomialSyntaxError(e.message, text, offset + lead + e.position) from e


# ============================================================================
# MODULE MAP
# ============================================================================

class ModuleMap:
    """
    C[∂]-linear map given by the images of the domain generators

    Images are λ-free Elements of the codomain; their context holds only
    parameter slots (e.g. a formal deformation parameter t).
    """

    __slots__ = ("domain", "codomain", "parity", "context", "images")

    def __init__(self, domain: GradedModule, codomain: GradedModule, images: Mapping[str, Element],
                 parity: Parity = Parity.EVEN, context: Sequence[str] = ()):
        self.domain = domain
        self.codomain = codomain
        self.parity = Parity(int(parity))
        self.context: LambdaContext = tuple(context)
        clean: Dict[str, Element] = {}
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
                    raise ParityError(
                        f"Entry ({target}, {name}) violates parity {self.parity.label()} of the map"
                    )
            clean[name] = image
        for name in images:
            domain.index(name)
        self.images: Dict[str, Element] = clean

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def identity(cls, module: GradedModule, context: Sequence[str] = ()) -> 'ModuleMap':
        return cls(module, module, {n: Element.generator(module, n, context) for n in module.names},
                   context=context)

    @classmethod
    def zero(cls, domain: GradedModule, codomain: Optional[GradedModule] = None,
             parity: Parity = Parity.EVEN, context: Sequence[str] = ()) -> 'ModuleMap':
        return cls(domain, codomain or domain, {}, parity, context)

    @classmethod
    def scalar(cls, module: GradedModule, value: Union[Scalar, Poly]) -> 'ModuleMap':
        context = value.context if isinstance(value, Poly) else ()
        return cls(module, module,
                   {n: Element.generator(module, n, context).scale(value) for n in module.names},
                   context=context)

    @classmethod
    def from_entries(cls, domain: GradedModule, codomain: GradedModule,
                     entries: Mapping[Tuple[str, str], Poly], parity: Parity = Parity.EVEN,
                     context: Sequence[str] = ()) -> 'ModuleMap':
        """Matrix form: entries[(row, col)] is the coefficient of row in the image of col"""
        images: Dict[str, Dict[str, Poly]] = {}
        for (row, col), poly in entries.items():
            images.setdefault(col, {})[row] = poly
        return cls(domain, codomain,
                   {col: Element(codomain, context, c) for col, c in images.items()},
                   parity, context)

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    def entry(self, row: str, col: str) -> Poly:
        return self.images[col].coefficient(row)

    def is_square(self) -> bool:
        return self.domain == self.codomain

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModuleMap):
            return NotImplemented
        if (self.domain, self.codomain) != (other.domain, other.codomain):
            return False
        return all(self.images[n] == other.images[n] for n in self.domain.names)

    __hash__ = None

    def __repr__(self) -> str:
        body = ", ".join(f"{n} -> {self.images[n]}" for n in self.domain.names)
        return f"ModuleMap({body})"

    # ------------------------------------------------------------------
    # Application and algebra
    # ------------------------------------------------------------------

    def apply(self, x: Element) -> Element:
        """f(p(∂)·g) = p(∂)·f(g); the result context adds the map's parameter slots"""
        if x.module != self.domain:
            raise ModuleMismatchError(f"{x.module} is not the domain {self.domain}")
        context = merge_contexts(x.context, self.context)
        result = Element.zero(self.codomain, context)
        for name, coeff in x.coeffs.items():
            result = result + self.images[name].lift(context).scale(coeff.lift(context))
        return result

    __call__ = apply

    def compose(self, other: 'ModuleMap') -> 'ModuleMap':
        """self ∘ other"""
        if other.codomain != self.domain:
            raise ModuleMismatchError("Maps are not composable")
        context = merge_contexts(other.context, self.context)
        images = {n: self.apply(other.images[n].lift(context)) for n in other.domain.names}
        return ModuleMap(other.domain, self.codomain, images, self.parity + other.parity, context)

    def __add__(self, other: 'ModuleMap') -> 'ModuleMap':
        if (self.domain, self.codomain) != (other.domain, other.codomain):
            raise ModuleMismatchError("Cannot add maps between different modules")
        context = merge_contexts(self.context, other.context)
        images = {n: self.images[n].lift(context) + other.images[n].lift(context) for n in self.domain.names}
        return ModuleMap(self.domain, self.codomain, images, self.parity, context)

    def __sub__(self, other: 'ModuleMap') -> 'ModuleMap':
        return self + other.scale(-1)

    def scale(self, factor: Union[Scalar, Poly]) -> 'ModuleMap':
        context = merge_contexts(self.context, factor.context) if isinstance(factor, Poly) else self.context
        images = {}
        for n in self.domain.names:
            value = factor.lift(context) if isinstance(factor, Poly) else factor
            images[n] = self.images[n].lift(context).scale(value)
        return ModuleMap(self.domain, self.codomain, images, self.parity, context)

    def power(self, k: int) -> 'ModuleMap':
        """k-th power; negative k requires invertibility over C[∂]"""
        if not self.is_square():
            raise ModuleMismatchError("Only endomorphisms have powers")
        base = self if k >= 0 else self.inverse()
        result = ModuleMap.identity(self.domain, self.context)
        for _ in range(abs(k)):
            result = base.compose(result)
        return result

    def commutes_with(self, other: 'ModuleMap') -> bool:
        return self.compose(other) == other.compose(self)

    # ------------------------------------------------------------------
    # Determinant and inverse
    # ------------------------------------------------------------------

    def _matrix(self) -> List[List[Poly]]:
        names = self.domain.names
        return [[self.entry(row, col).lift(self.context) for col in names] for row in names]

    def determinant(self) -> Poly:
        """Determinant over ℚ[∂] by cofactor expansion"""
        if not self.is_square():
            raise ModuleMismatchError("Determinant needs a square map")
        return _determinant(self._matrix(), self.context)

    def is_regular(self) -> bool:
        """True iff the determinant is a nonzero rational constant"""
        if not self.is_square():
            return False
        det = self.determinant()
        return det.is_constant() and not det.is_zero()

    def inverse(self) -> 'ModuleMap':
        """Adjugate divided by a constant determinant"""
        det = self.determinant()
        if not det.is_constant() or det.is_zero():
            raise NotInvertibleError(f"Determinant {det} is not a nonzero constant")
        scale = 1 / det.constant_value()
        matrix = self._matrix()
        names = self.domain.names
        n = len(names)
        entries: Dict[Tuple[str, str], Poly] = {}
        for i in range(n):
            for j in range(n):
                minor = [[matrix[r][c] for c in range(n) if c != i] for r in range(n) if r != j]
                cofactor = _determinant(minor, self.context)
                if (i + j) % 2:
                    cofactor = -cofactor
                entries[(names[i], names[j])] = cofactor.scale(scale)
        return ModuleMap.from_entries(self.domain, self.domain, entries, self.parity, self.context)


def _determinant(matrix: List[List[Poly]], context: LambdaContext) -> Poly:
    n = len(matrix)
    if n == 0:
        return Poly.one(context)
    if n == 1:
        return matrix[0][0]
    total = Poly.zero(context)
    for col in range(n):
        entry = matrix[0][col]
        if entry.is_zero():
            continue
        minor = [row[:col] + row[col + 1:] for row in matrix[1:]]
        term = entry * _determinant(minor, context)
        total = total - term if col % 2 else total + term
    return total


# ============================================================================
# OPERATIONS
# ============================================================================

def map_apply(f: ModuleMap, x: Element) -> Element:
    return f.apply(x)


def map_power(f: ModuleMap, k: int) -> ModuleMap:
    return f.power(k)


def map_compose(f: ModuleMap, g: ModuleMap) -> ModuleMap:
    return f.compose(g)


def regularity_check(f: ModuleMap) -> bool:
    return f.is_regular()


def identity_map(module: GradedModule) -> ModuleMap:
    return ModuleMap.identity(module)


def zero_map(domain: GradedModule, codomain: Optional[GradedModule] = None) -> ModuleMap:
    return ModuleMap.zero(domain, codomain)
