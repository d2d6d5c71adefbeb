#!/usr/bin/env python3
"""
Algebra Files - Parser and writer for the sectioned algebra file format

    # Neveu-Schwarz type example
    [generators]
    L:even, E:odd

    [alpha]
    L = "L"

    [bracket]
    L L = "(d + 2*l) L"
    L E = "(d + (3/2)*l) E"

    [rep NAME]          generators = V:even / beta V = "..." / rho L V = "..."
    [cochain NAME]      target = adjoint|shift:s|rep:NAME / arity / parity / value A B = "..."
    [map NAME]          parity / k / class / companions = N1, N2 / image L = "..."

Missing alpha entries mean identity, missing bracket entries mean zero.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Set, Tuple, Union

import regex
from loguru import logger

from src.algebra.freemod import Element, GradedModule, ModuleMap, element_parse
from src.algebra.lcsa import ConformalAlgebra
from src.algebra.rep import ConformalMap, Representation, adjoint, rep_shift
from src.cohomology.cochain import Cochain
from src.derivations.classes import DerivationCandidate
from src.core.constants import ClassTag, Parity, Symbols
from src.core.exceptions import AlgebraFileError, InputException, ParityError, PolynomialSyntaxError


L = Symbols.LAMBDA

SECTIONS = ("generators", "alpha", "bracket", "rep", "cochain", "map")
NAMED_SECTIONS = ("rep", "cochain", "map")

_HEADER = regex.compile(r"^\[\s*(?P<kind>[A-Za-z]+)(?:\s+(?P<name>[A-Za-z_][A-Za-z0-9_]*))?\s*\]$")
_ENTRY = regex.compile(r"^(?P<key>[^=]+?)\s*=\s*(?P<value>.*)$")
_NAME = regex.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


# ============================================================================
# DATA MODELS
# ============================================================================

@dataclass
class Entry:
    """One `key = value` line with its position in the file"""
    key: Tuple[str, ...]
    value: str
    line: int
    column: int
    quoted: bool = False


@dataclass
class Section:
    kind: str
    name: Optional[str]
    line: int
    entries: List[Entry] = field(default_factory=list)


@dataclass
class MapSpec:
    """A declared conformal map with its power, class tag and companion names"""
    name: str
    map: ConformalMap
    k: int = 0
    tag: Optional[ClassTag] = None
    companions: Tuple[str, ...] = ()

    def module_map(self) -> ModuleMap:
        """The map as a λ-independent module map (Nijenhuis operators)"""
        rmap = self.map
        if rmap.max_degree(rmap.slot) > 0:
            raise InputException(f"Map {self.name} depends on {rmap.slot}; a module map is required")
        context = rmap.params
        images = {n: e.lift(context) for n, e in rmap.images.items()}
        return ModuleMap(rmap.domain, rmap.codomain, images, rmap.parity, context)


@dataclass
class AlgebraDocument:
    """Everything declared by one algebra file and its extra files"""
    algebra: ConformalAlgebra
    representations: Dict[str, Representation] = field(default_factory=dict)
    cochains: Dict[str, Cochain] = field(default_factory=dict)
    maps: Dict[str, MapSpec] = field(default_factory=dict)
    sources: List[str] = field(default_factory=list)

    def cochain(self, name: Optional[str] = None) -> Cochain:
        return _select(self.cochains, name, "cochain")

    def map_spec(self, name: Optional[str] = None) -> MapSpec:
        """The named map; without a name, the only map no other map lists as a companion"""
        if name is None:
            used = {c for spec in self.maps.values() for c in spec.companions}
            primary = {n: s for n, s in self.maps.items() if n not in used}
            return _select(primary, None, "map")
        return _select(self.maps, name, "map")

    def representation(self, name: Optional[str] = None) -> Representation:
        if name == "adjoint" or (name is None and not self.representations):
            return adjoint(self.algebra)
        return _select(self.representations, name, "rep")

    def companions(self, spec: MapSpec) -> List[ConformalMap]:
        maps = []
        for companion in spec.companions:
            if companion not in self.maps:
                raise InputException(f"Map {spec.name} names unknown companion {companion}")
            maps.append(self.maps[companion].map)
        return maps

    def candidate(self, spec: MapSpec, tag: Optional[ClassTag] = None,
                  k: Optional[int] = None) -> DerivationCandidate:
        """Candidate for a class check; explicit tag and k override the file"""
        return DerivationCandidate(spec.map, spec.k if k is None else k, tag or spec.tag or ClassTag.DER,
                                   tuple(self.companions(spec)), spec.name)


def _select(items: Dict, name: Optional[str], kind: str):
    if name is None:
        if len(items) != 1:
            raise InputException(f"Expected exactly one {kind} section, found {len(items)}; name one explicitly")
        return next(iter(items.values()))
    if name not in items:
        raise InputException(f"Unknown {kind}: {name}")
    return items[name]


# ============================================================================
# LEXING
# ============================================================================

def _strip_comment(line: str) -> str:
    in_quotes = False
    for i, ch in enumerate(line):
        if ch == '"':
            in_quotes = not in_quotes
        elif ch == "#" and not in_quotes:
            return line[:i]
    return line


def split_sections(text: str) -> List[Section]:
    """Group the lines of a file into sections; raises AlgebraFileError with positions"""
    sections: List[Section] = []
    current: Optional[Section] = None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).rstrip()
        stripped = line.strip()
        if not stripped:
            continue
        indent = len(line) - len(line.lstrip())
        header = _HEADER.match(stripped)
        if header:
            kind, name = header.group("kind").lower(), header.group("name")
            if kind not in SECTIONS:
                raise AlgebraFileError(f"Unknown section [{kind}]", number, indent + 1)
            if (kind in NAMED_SECTIONS) != (name is not None):
                raise AlgebraFileError(f"Section [{kind}] {'needs' if kind in NAMED_SECTIONS else 'takes no'} name",
                                       number, indent + 1)
            current = Section(kind, name, number)
            sections.append(current)
            continue
        if stripped.startswith("["):
            raise AlgebraFileError("Malformed section header", number, indent + 1)
        if current is None:
            raise AlgebraFileError("Entry outside of any section", number, indent + 1)
        if current.kind == "generators":
            current.entries.append(Entry((), stripped, number, indent + 1))
            continue
        match = _ENTRY.match(stripped)
        if not match:
            raise AlgebraFileError("Expected 'key = value'", number, indent + 1)
        value = match.group("value").strip()
        column = indent + match.start("value") + 1
        quoted = value.startswith('"')
        if quoted:
            if len(value) < 2 or not value.endswith('"'):
                raise AlgebraFileError("Unterminated string", number, column)
            value = value[1:-1]
            column += 1
        current.entries.append(Entry(tuple(match.group("key").split()), value, number, column, quoted))
    return sections


# ============================================================================
# PARSING
# ============================================================================

def _fail(entry: Entry, message: str) -> AlgebraFileError:
    return AlgebraFileError(message, entry.line, entry.column)


def _element(entry: Entry, module: GradedModule, context: Sequence[str]) -> Element:
    if not entry.quoted:
        raise _fail(entry, "Element values must be quoted")
    try:
        return element_parse(entry.value, module, context)
    except PolynomialSyntaxError as e:
        raise AlgebraFileError(e.message, entry.line, entry.column + e.position) from e
    except InputException as e:
        raise _fail(entry, str(e)) from e


def _generator_list(entry: Entry, text: str, seen: Set[str]) -> List[Tuple[str, Parity]]:
    """NAME:parity pieces of one entry; `seen` collects names across the entries of a section"""
    generators = []
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        name, sep, parity = (p.strip() for p in piece.partition(":"))
        if not sep or not _NAME.match(name):
            raise _fail(entry, f"Expected NAME:even|odd, got {piece!r}")
        if Symbols.is_reserved(name):
            raise _fail(entry, f"Generator name {name!r} is reserved")
        if name in seen:
            raise _fail(entry, f"Duplicate generator name {name!r}")
        seen.add(name)
        try:
            generators.append((name, Parity.parse(parity)))
        except ValueError as e:
            raise _fail(entry, str(e)) from e
    return generators


def _module(sections: List[Section]) -> GradedModule:
    declared = [s for s in sections if s.kind == "generators"]
    if len(declared) != 1:
        raise AlgebraFileError("Exactly one [generators] section is required",
                               declared[1].line if len(declared) > 1 else 1, 1)
    generators, seen = [], set()
    for entry in declared[0].entries:
        generators.extend(_generator_list(entry, entry.value, seen))
    if not generators:
        raise AlgebraFileError("No generators declared", declared[0].line, 1)
    return GradedModule(generators)


def _key_names(entry: Entry, module: GradedModule, count: int, what: str) -> Tuple[str, ...]:
    names = entry.key[1:] if entry.key and entry.key[0] == what else entry.key
    if len(names) != count:
        raise _fail(entry, f"Expected {count} generator name(s) in key {' '.join(entry.key)!r}")
    for name in names:
        if not module.has(name):
            raise _fail(entry, f"Unknown generator: {name}")
    return tuple(names)


def _single(sections: List[Section], kind: str) -> Optional[Section]:
    found = [s for s in sections if s.kind == kind]
    if len(found) > 1:
        raise AlgebraFileError(f"Duplicate [{kind}] section", found[1].line, 1)
    return found[0] if found else None


def _algebra(sections: List[Section]) -> ConformalAlgebra:
    module = _module(sections)
    images = {}
    alpha_section = _single(sections, "alpha")
    for entry in (alpha_section.entries if alpha_section else []):
        (name,) = _key_names(entry, module, 1, "")
        images[name] = _element(entry, module, ())
    for name in module.names:
        images.setdefault(name, Element.generator(module, name))
    alpha = ModuleMap(module, module, images)

    table = {}
    bracket_section = _single(sections, "bracket")
    for entry in (bracket_section.entries if bracket_section else []):
        a, b = _key_names(entry, module, 2, "")
        if (a, b) in table:
            raise _fail(entry, f"Duplicate bracket entry {a} {b}")
        table[(a, b)] = _element(entry, module, (L,))
    return ConformalAlgebra(module, table, alpha)


def _representation(section: Section, A: ConformalAlgebra) -> Representation:
    generators: List[Tuple[str, Parity]] = []
    seen: Set[str] = set()
    for entry in section.entries:
        if entry.key == ("generators",):
            generators.extend(_generator_list(entry, entry.value, seen))
    if not generators:
        raise AlgebraFileError(f"Representation {section.name} declares no generators", section.line, 1)
    module = GradedModule(generators)
    beta_images, rho_entries = {}, {}
    for entry in section.entries:
        head = entry.key[0]
        if head == "generators":
            continue
        if head == "beta":
            (name,) = _key_names(entry, module, 1, "beta")
            beta_images[name] = _element(entry, module, ())
        elif head == "rho":
            if len(entry.key) != 3 or not A.module.has(entry.key[1]) or not module.has(entry.key[2]):
                raise _fail(entry, "Expected 'rho ALGEBRA_GEN MODULE_GEN'")
            rho_entries.setdefault(entry.key[1], {})[entry.key[2]] = _element(entry, module, (L,))
        else:
            raise _fail(entry, f"Unknown key {head!r} in [rep]")
    beta = None
    if beta_images:
        for name in module.names:
            beta_images.setdefault(name, Element.generator(module, name))
        beta = ModuleMap(module, module, beta_images)
    rho = {g: ConformalMap(module, module, images, A.parity(g), L, (L,)) for g, images in rho_entries.items()}
    return Representation(A, module, rho, beta, name=section.name)


def _scalar(entry: Entry, kind) -> object:
    try:
        return kind(entry.value)
    except ValueError as e:
        raise _fail(entry, f"Invalid value {entry.value!r} for {entry.key[0]}") from e


def _target(entry: Entry, A: ConformalAlgebra, reps: Dict[str, Representation]) -> Representation:
    value = entry.value.strip()
    if value == "adjoint":
        return adjoint(A)
    if value.startswith("shift:"):
        try:
            s = int(value.split(":", 1)[1])
        except ValueError as e:
            raise _fail(entry, f"Invalid shift {value!r}") from e
        return rep_shift(A, s)
    if value.startswith("rep:"):
        name = value.split(":", 1)[1]
        if name not in reps:
            raise _fail(entry, f"Unknown representation {name!r}")
        return reps[name]
    raise _fail(entry, f"Unknown target {value!r}; expected adjoint, shift:s or rep:NAME")


def _cochain(section: Section, A: ConformalAlgebra, reps: Dict[str, Representation]) -> Cochain:
    settings = {e.key[0]: e for e in section.entries if len(e.key) == 1 and e.key[0] in ("target", "arity", "parity")}
    if "arity" not in settings:
        raise AlgebraFileError(f"Cochain {section.name} needs an arity", section.line, 1)
    arity = _scalar(settings["arity"], int)
    if arity < 0:
        raise _fail(settings["arity"], "Arity must be non-negative")
    parity = Parity.EVEN
    if "parity" in settings:
        parity = _scalar(settings["parity"], Parity.parse)
    target = _target(settings["target"], A, reps) if "target" in settings else adjoint(A)
    values = {}
    for entry in section.entries:
        if entry.key[0] in settings and len(entry.key) == 1:
            continue
        if entry.key[0] != "value":
            raise _fail(entry, f"Unknown key {entry.key[0]!r} in [cochain]")
        args = _key_names(entry, A.module, arity, "value")
        values[args] = _element(entry, target.module, Symbols.nary(arity))
    return Cochain(A, target, arity, parity, values, name=section.name)


def _map(section: Section, A: ConformalAlgebra) -> MapSpec:
    parity, k, tag, companions = Parity.EVEN, 0, None, ()
    images = {}
    for entry in section.entries:
        head = entry.key[0]
        if entry.key == ("parity",):
            parity = _scalar(entry, Parity.parse)
        elif entry.key == ("k",):
            k = _scalar(entry, int)
            if k < 0:
                raise _fail(entry, "k must be non-negative")
        elif entry.key == ("class",):
            tag = _scalar(entry, ClassTag)
        elif entry.key == ("companions",):
            companions = tuple(n.strip() for n in entry.value.split(",") if n.strip())
        elif head == "image":
            (name,) = _key_names(entry, A.module, 1, "image")
            images[name] = _element(entry, A.module, (L,))
        else:
            raise _fail(entry, f"Unknown key {head!r} in [map]")
    rmap = ConformalMap(A.module, A.module, images, parity, L, (L,))
    return MapSpec(section.name, rmap, k, tag, companions)


def parse_document(text: str, source: str = "<string>",
                   base: Optional[AlgebraDocument] = None) -> AlgebraDocument:
    """
    Parse an algebra file, or an extra file adding sections to `base`

    Raises:
        AlgebraFileError: malformed input, with line and column
    """
    sections = split_sections(text)
    defines_algebra = any(s.kind in ("generators", "alpha", "bracket") for s in sections)
    if base is None:
        try:
            document = AlgebraDocument(_algebra(sections))
        except ParityError as e:
            raise AlgebraFileError(str(e), 1, 1) from e
    else:
        if defines_algebra:
            first = next(s for s in sections if s.kind in ("generators", "alpha", "bracket"))
            raise AlgebraFileError("Extra files cannot redefine the algebra", first.line, 1)
        document = AlgebraDocument(base.algebra, dict(base.representations), dict(base.cochains),
                                   dict(base.maps), list(base.sources))
    A = document.algebra

    for kind, store, build in (
        ("rep", document.representations, lambda s: _representation(s, A)),
        ("cochain", document.cochains, lambda s: _cochain(s, A, document.representations)),
        ("map", document.maps, lambda s: _map(s, A)),
    ):
        for section in (s for s in sections if s.kind == kind):
            if section.name in store or (kind == "rep" and section.name == "adjoint"):
                raise AlgebraFileError(f"Duplicate {kind} name {section.name}", section.line, 1)
            try:
                store[section.name] = build(section)
            except ParityError as e:
                raise AlgebraFileError(str(e), section.line, 1) from e

    document.sources.append(source)
    logger.debug(f"Parsed {source}: {len(A.names)} generators, {len(document.representations)} reps, "
                 f"{len(document.cochains)} cochains, {len(document.maps)} maps")
    return document


def load_document(paths: Sequence[Union[str, Path]]) -> AlgebraDocument:
    """The first path defines the algebra; the others add sections"""
    if not paths:
        raise InputException("No algebra file given")
    document = None
    for path in paths:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise InputException(f"Cannot read {path}: {e}") from e
        document = parse_document(text, str(path), document)
    return document


# ============================================================================
# WRITING
# ============================================================================

def _quote(element: Element) -> str:
    return f'"{element}"'


def format_algebra(A: ConformalAlgebra, header: Optional[str] = None) -> str:
    """Algebra file text; re-parses to an equal algebra"""
    lines = [f"# {header}"] if header else []
    lines.append("[generators]")
    lines.append(", ".join(f"{n}:{A.parity(n).label()}" for n in A.names))
    lines.append("")
    lines.append("[alpha]")
    for n in A.names:
        lines.append(f"{n} = {_quote(A.alpha.images[n])}")
    lines.append("")
    lines.append("[bracket]")
    for a in A.names:
        for b in A.names:
            value = A.bracket(a, b)
            if not value.is_zero():
                lines.append(f"{a} {b} = {_quote(value)}")
    return "\n".join(lines) + "\n"


def format_map(name: str, rmap: ConformalMap, k: int = 0, tag: Optional[ClassTag] = None,
               companions: Sequence[str] = ()) -> str:
    """One [map] section with the action slot written as l"""
    rmap = rmap.rename_slot(L)
    lines = [f"[map {name}]", f"parity = {rmap.parity.label()}", f"k = {k}"]
    if tag is not None:
        lines.append(f"class = {tag.value}")
    if companions:
        lines.append(f"companions = {', '.join(companions)}")
    for gen in rmap.domain.names:
        image = rmap.images[gen]
        if not image.is_zero():
            lines.append(f"image {gen} = {_quote(image)}")
    return "\n".join(lines) + "\n"


def format_basis(prefix: str, maps: Sequence[ConformalMap], k: int, tag: Optional[ClassTag],
                 companions: Sequence[Sequence[ConformalMap]] = (), header: Optional[str] = None) -> str:
    """Map file for a solver basis; companions become their own sections"""
    blocks = [f"# {header}\n"] if header else []
    for i, rmap in enumerate(maps):
        name = f"{prefix}_{i}"
        extra = companions[i] if i < len(companions) else ()
        names = [f"{name}_c{j + 1}" for j in range(len(extra))]
        blocks.append(format_map(name, rmap, k, tag, names))
        for cname, cmap in zip(names, extra):
            blocks.append(format_map(cname, cmap, k))
    return "\n".join(blocks)
