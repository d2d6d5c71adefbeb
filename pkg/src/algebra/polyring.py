#!/usr/bin/env python3
"""
Polynomial Ring - Exact rational polynomials in ∂ and named λ-slots
sympy-backed arithmetic, simultaneous substitution and the text grammar

A context is an ordered tuple of slot names. Each Poly wraps a sympy Poly over
QQ whose generators are the context slots followed by ∂. Exponent vectors
carry one entry per slot followed by the ∂ exponent.
"""

import random
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import regex
import sympy as sp
from sympy import QQ

from src.core.constants import Symbols
from src.core.exceptions import ContextMismatchError, PolynomialSyntaxError, UnknownSlotError


LambdaContext = Tuple[str, ...]
Exponents = Tuple[int, ...]
Scalar = Union[int, Fraction]

PARTIAL = Symbols.DERIVATION


# ============================================================================
# CONTEXTS
# ============================================================================

def make_context(slots: Iterable[str]) -> LambdaContext:
    """Validate and freeze an ordered slot list"""
    ctx = tuple(slots)
    if len(set(ctx)) != len(ctx):
        raise ValueError(f"Duplicate slot names in context {ctx}")
    if PARTIAL in ctx:
        raise ValueError(f"'{PARTIAL}' is reserved for ∂ and cannot be a slot")
    return ctx


def merge_contexts(*contexts: Sequence[str]) -> LambdaContext:
    """Order-preserving union of contexts"""
    merged: List[str] = []
    for ctx in contexts:
        for name in ctx:
            if name not in merged:
                merged.append(name)
    return tuple(merged)


def fresh_slot(ctx: Sequence[str], base: str) -> str:
    """First of base, base1, base2, ... not already in ctx"""
    if base not in ctx and base != PARTIAL:
        return base
    i = 1
    while f"{base}{i}" in ctx:
        i += 1
    return f"{base}{i}"


# ============================================================================
# POLY
# ============================================================================

@lru_cache(maxsize=None)
def _generators(context: LambdaContext) -> Tuple[sp.Symbol, ...]:
    return tuple(sp.Symbol(name) for name in context) + (sp.Symbol(PARTIAL),)


def _qq(value: Scalar):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _fraction(value) -> Fraction:
    """sympy Rational -> Fraction"""
    return Fraction(int(value.p), int(value.q))


class Poly:
    """
    Immutable polynomial over ℚ in the slots of a context and ∂

    Arithmetic requires identical contexts; equality compares the represented
    polynomial (by variable name), so the same polynomial lifted into two
    contexts compares equal.
    """

    __slots__ = ("context", "rep", "_terms", "_key")

    def __init__(self, context: Sequence[str], terms: Optional[Mapping[Exponents, Scalar]] = None):
        self.context: LambdaContext = tuple(context)
        width = len(self.context) + 1
        coefficients = {}
        for exps, coeff in (terms or {}).items():
            if len(exps) != width:
                raise ValueError(f"Exponent vector {exps} does not fit context {self.context}")
            if coeff:
                coefficients[tuple(exps)] = _qq(coeff)
        self.rep: sp.Poly = sp.Poly.from_dict(coefficients, *_generators(self.context), domain=QQ)
        self._terms: Optional[Dict[Exponents, Fraction]] = None
        self._key = None

    @classmethod
    def _wrap(cls, context: LambdaContext, rep: sp.Poly) -> 'Poly':
        poly = cls.__new__(cls)
        poly.context = context
        poly.rep = rep
        poly._terms = None
        poly._key = None
        return poly

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, context: Sequence[str] = ()) -> 'Poly':
        return cls(context)

    @classmethod
    def constant(cls, value: Scalar, context: Sequence[str] = ()) -> 'Poly':
        context = tuple(context)
        return cls(context, {(0,) * (len(context) + 1): value})

    @classmethod
    def one(cls, context: Sequence[str] = ()) -> 'Poly':
        return cls.constant(1, context)

    @classmethod
    def variable(cls, name: str, context: Sequence[str] = ()) -> 'Poly':
        """The slot `name` (or ∂ for 'd') as a polynomial in context"""
        context = tuple(context)
        exps = [0] * (len(context) + 1)
        if name == PARTIAL:
            exps[-1] = 1
        elif name in context:
            exps[context.index(name)] = 1
        else:
            raise UnknownSlotError(name, context)
        return cls(context, {tuple(exps): 1})

    @classmethod
    def partial(cls, context: Sequence[str] = ()) -> 'Poly':
        return cls.variable(PARTIAL, context)

    @classmethod
    def affine(cls, combination: Mapping[str, Scalar], context: Sequence[str], constant: Scalar = 0) -> 'Poly':
        """Σ c_name · name + constant, e.g. {'l': -1, 'd': -1} for −λ−∂"""
        result = cls.constant(constant, context)
        for name, coeff in combination.items():
            result = result + cls.variable(name, context).scale(coeff)
        return result

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    @property
    def terms(self) -> Dict[Exponents, Fraction]:
        """Nonzero coefficients keyed by exponent vector (read-only)"""
        if self._terms is None:
            self._terms = {tuple(monom): _fraction(coeff) for monom, coeff in self.rep.terms() if coeff}
        return self._terms

    def names(self) -> LambdaContext:
        return self.context + (PARTIAL,)

    def is_zero(self) -> bool:
        return self.rep.is_zero

    def is_constant(self) -> bool:
        return all(not any(exps) for exps in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * (len(self.context) + 1), Fraction(0))

    def degree(self, name: str) -> int:
        """Degree in one variable; -1 for the zero polynomial"""
        if self.is_zero():
            return -1
        pos = self._position(name)
        if pos is None:
            return 0
        return int(self.rep.degree(_generators(self.context)[pos]))

    def total_degree(self) -> int:
        if self.is_zero():
            return -1
        return int(self.rep.total_degree())

    def depends_on(self, name: str) -> bool:
        pos = self._position(name)
        return pos is not None and self.degree(name) > 0

    def variables(self) -> LambdaContext:
        """Names that occur with positive exponent, in context order"""
        return tuple(n for n in self.names() if self.depends_on(n))

    def _position(self, name: str) -> Optional[int]:
        if name == PARTIAL:
            return len(self.context)
        if name in self.context:
            return self.context.index(name)
        return None

    def canonical(self) -> frozenset:
        """Context-free normal form: {((name, exp), ...), coeff}"""
        if self._key is None:
            names = self.names()
            self._key = frozenset(
                (tuple((names[i], e) for i, e in enumerate(exps) if e), coeff)
                for exps, coeff in self.terms.items()
            )
        return self._key

    def coefficients(self, names: Sequence[str]) -> Dict[Tuple[int, ...], Fraction]:
        """Coefficients keyed by exponents of `names` (all other variables must be absent)"""
        positions = [self._position(name) for name in names]
        result: Dict[Tuple[int, ...], Fraction] = {}
        for exps, coeff in self.terms.items():
            key = tuple(exps[p] if p is not None else 0 for p in positions)
            if sum(key) != sum(exps):
                stray = [n for n in self.variables() if n not in names]
                raise UnknownSlotError(stray[0] if stray else "?", tuple(names))
            result[key] = result.get(key, Fraction(0)) + coeff
        return result

    # ------------------------------------------------------------------
    # Ring operations
    # ------------------------------------------------------------------

    def _coerce(self, other) -> 'Poly':
        if isinstance(other, Poly):
            if other.context != self.context:
                raise ContextMismatchError(self.context, other.context)
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(other, self.context)
        return NotImplemented

    def __add__(self, other) -> 'Poly':
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Poly._wrap(self.context, self.rep + other.rep)

    __radd__ = __add__

    def __neg__(self) -> 'Poly':
        return Poly._wrap(self.context, -self.rep)

    def __sub__(self, other) -> 'Poly':
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Poly._wrap(self.context, self.rep - other.rep)

    def __rsub__(self, other) -> 'Poly':
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other) -> 'Poly':
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Poly._wrap(self.context, self.rep * other.rep)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> 'Poly':
        if not isinstance(k, int) or k < 0:
            raise ValueError("Poly powers must be non-negative integers")
        return Poly._wrap(self.context, self.rep ** k)

    def scale(self, factor: Scalar) -> 'Poly':
        factor = Fraction(factor)
        if not factor:
            return Poly.zero(self.context)
        return Poly._wrap(self.context, self.rep.mul_ground(sp.Rational(factor.numerator, factor.denominator)))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(other, self.context)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self) -> int:
        # constants hash as their value so that Poly.constant(2) and 2 share a dict slot
        if self.is_constant():
            return hash(self.constant_value())
        return hash(self.canonical())

    def __bool__(self) -> bool:
        return not self.is_zero()

    # ------------------------------------------------------------------
    # Context changes and substitution
    # ------------------------------------------------------------------

    def lift(self, context: Sequence[str]) -> 'Poly':
        """Embed into another context by slot name"""
        context = tuple(context)
        if context == self.context:
            return self
        mapping = []
        for name in self.context:
            if name in context:
                mapping.append(context.index(name))
            elif self.depends_on(name):
                raise UnknownSlotError(name, context)
            else:
                mapping.append(None)
        width = len(context) + 1
        terms: Dict[Exponents, Fraction] = {}
        for exps, coeff in self.terms.items():
            new = [0] * width
            for pos, target in enumerate(mapping):
                if target is not None:
                    new[target] = exps[pos]
            new[-1] = exps[-1]
            terms[tuple(new)] = coeff
        return Poly(context, terms)

    def compose(self, images: Mapping[str, 'Poly'], context: Optional[Sequence[str]] = None) -> 'Poly':
        """
        Simultaneous substitution of variables by polynomials

        Args:
            images: Variable name ('d' for ∂) -> image polynomial over `context`
            context: Target context (defaults to own context); unmapped
                variables map to the same-named variable there

        Returns:
            Substituted polynomial in the target context
        """
        context = self.context if context is None else tuple(context)
        resolved: List[Optional[Poly]] = []
        for name in self.names():
            if not self.depends_on(name):
                resolved.append(None)
            elif name in images:
                resolved.append(images[name].lift(context))
            elif name == PARTIAL or name in context:
                resolved.append(Poly.variable(name, context))
            else:
                raise UnknownSlotError(name, context)

        powers: Dict[Tuple[int, int], Poly] = {}

        def power(pos: int, e: int) -> Poly:
            key = (pos, e)
            if key not in powers:
                powers[key] = resolved[pos] ** e
            return powers[key]

        result = Poly.zero(context)
        for exps, coeff in self.terms.items():
            term = Poly.constant(coeff, context)
            for pos, e in enumerate(exps):
                if e:
                    term = term * power(pos, e)
            result = result + term
        return result

    def substitute(self, slot: str, image: 'Poly') -> 'Poly':
        """
        Replace one slot by an affine (or any) polynomial image

        The result lives in the image's context; ∂ inside the image multiplies
        the coefficient polynomial, which is the free-module meaning of −λ−∂.

        Example:
            >>> ctx = ("l", "m")
            >>> m = Poly.variable("m", ctx)
            >>> m.substitute("m", Poly.affine({"l": -1, "d": -1}, ("l",)))  # -l - d
        """
        if slot not in self.context:
            raise UnknownSlotError(slot, self.context)
        return self.compose({slot: image}, image.context)

    def rename(self, mapping: Mapping[str, str], context: Optional[Sequence[str]] = None) -> 'Poly':
        """Rename slots; the target context defaults to the renamed own context"""
        if context is None:
            context = tuple(mapping.get(n, n) for n in self.context)
        images = {old: Poly.variable(new, context) for old, new in mapping.items() if old in self.context}
        return self.compose(images, context)

    def split_by(self, name: str) -> Dict[int, 'Poly']:
        """Coefficients of name^k, each still in this context"""
        pos = self._position(name)
        if pos is None:
            return {0: self} if not self.is_zero() else {}
        parts: Dict[int, Dict[Exponents, Fraction]] = {}
        for exps, coeff in self.terms.items():
            k = exps[pos]
            reduced = exps[:pos] + (0,) + exps[pos + 1:]
            parts.setdefault(k, {})[reduced] = coeff
        return {k: Poly(self.context, t) for k, t in sorted(parts.items())}

    # ------------------------------------------------------------------
    # Printing
    # ------------------------------------------------------------------

    def sorted_terms(self) -> List[Tuple[Exponents, Fraction]]:
        """Graded-lex order: total degree descending, then exponents descending (∂ last)"""
        return sorted(self.terms.items(), key=lambda item: (-sum(item[0]), tuple(-e for e in item[0])))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        names = self.names()
        pieces = []
        for index, (exps, coeff) in enumerate(self.sorted_terms()):
            factors = []
            for name, e in zip(names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            magnitude = abs(coeff)
            if not factors:
                body = _format_rational(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = _format_rational(magnitude) + "*" + "*".join(factors)
            if index == 0:
                pieces.append(("-" if coeff < 0 else "") + body)
            else:
                pieces.append((" - " if coeff < 0 else " + ") + body)
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"Poly({str(self)!r}, context={self.context})"


def _format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"({value.numerator}/{value.denominator})"


# ============================================================================
# PARSER
# ============================================================================

_TOKEN = regex.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")


def tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN.match(text, pos)
        if match is None:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise PolynomialSyntaxError("Unexpected character", text, start)
        kind = match.lastgroup
        tokens.append((kind, match.group(kind), match.start(kind)))
        pos = match.end()
    return tokens


class _PolyParser:
    """Recursive-descent parser for the polynomial grammar"""

    def __init__(self, text: str, context: LambdaContext):
        self.text = text
        self.context = context
        self.tokens = tokenize(text)
        self.index = 0

    def peek(self) -> Optional[Tuple[str, str, int]]:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def take(self) -> Tuple[str, str, int]:
        token = self.peek()
        if token is None:
            raise PolynomialSyntaxError("Unexpected end of input", self.text, len(self.text))
        self.index += 1
        return token

    def expect_op(self, op: str) -> None:
        token = self.take()
        if token[0] != "op" or token[1] != op:
            raise PolynomialSyntaxError(f"Expected '{op}'", self.text, token[2])

    def parse(self) -> Poly:
        if not self.tokens:
            raise PolynomialSyntaxError("Empty polynomial", self.text, 0)
        result = self.expression()
        token = self.peek()
        if token is not None:
            raise PolynomialSyntaxError(f"Unexpected token '{token[1]}'", self.text, token[2])
        return result

    def expression(self) -> Poly:
        result = self.term()
        while True:
            token = self.peek()
            if token is None or token[0] != "op" or token[1] not in "+-":
                return result
            self.take()
            rhs = self.term()
            result = result + rhs if token[1] == "+" else result - rhs

    def term(self) -> Poly:
        result = self.unary()
        while True:
            token = self.peek()
            if token is None or token[0] != "op" or token[1] != "*":
                return result
            self.take()
            result = result * self.unary()

    def unary(self) -> Poly:
        token = self.peek()
        if token is not None and token[0] == "op" and token[1] in "+-":
            self.take()
            inner = self.unary()
            return -inner if token[1] == "-" else inner
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        token = self.peek()
        if token is not None and token[0] == "op" and token[1] == "^":
            self.take()
            exponent = self.take()
            if exponent[0] != "num":
                raise PolynomialSyntaxError("Exponent must be a non-negative integer", self.text, exponent[2])
            return base ** int(exponent[1])
        return base

    def atom(self) -> Poly:
        token = self.take()
        kind, value, position = token
        if kind == "num":
            numerator = int(value)
            nxt = self.peek()
            if nxt is not None and nxt[0] == "op" and nxt[1] == "/":
                self.take()
                denominator = self.take()
                if denominator[0] != "num":
                    raise PolynomialSyntaxError("Expected integer denominator", self.text, denominator[2])
                if int(denominator[1]) == 0:
                    raise PolynomialSyntaxError("Zero denominator", self.text, denominator[2])
                return Poly.constant(Fraction(numerator, int(denominator[1])), self.context)
            return Poly.constant(numerator, self.context)
        if kind == "name":
            if value == PARTIAL or value in self.context:
                return Poly.variable(value, self.context)
            raise UnknownSlotError(value, self.context)
        if value == "(":
            inner = self.expression()
            self.expect_op(")")
            return inner
        raise PolynomialSyntaxError(f"Unexpected token '{value}'", self.text, position)


def poly_parse(text: str, context: Sequence[str] = ()) -> Poly:
    """
    Parse a polynomial string in ∂ ('d') and the slots of context

    Example:
        >>> poly_parse("(1/2)*d + (3/2)*l", ("l",))
    """
    return _PolyParser(text, tuple(context)).parse()


def poly_print(p: Poly) -> str:
    return str(p)


# ============================================================================
# RANDOM POLYNOMIALS
# ============================================================================

def random_poly(rng: random.Random, context: Sequence[str], max_deg_slots: int, max_deg_partial: int,
                coeff_range: int = 3, max_terms: int = 3) -> Poly:
    """Small random polynomial with integer coefficients in [-coeff_range, coeff_range]"""
    context = tuple(context)
    terms: Dict[Exponents, Fraction] = {}
    for _ in range(rng.randint(0, max_terms)):
        budget = max_deg_slots
        exps = []
        for _slot in context:
            e = rng.randint(0, budget)
            budget -= e
            exps.append(e)
        exps.append(rng.randint(0, max_deg_partial))
        coeff = rng.randint(-coeff_range, coeff_range)
        terms[tuple(exps)] = terms.get(tuple(exps), Fraction(0)) + coeff
    return Poly(context, terms)
