"""
Shared fixtures: the bundled algebra files and the algebras built from them
"""

from pathlib import Path

import pytest

from src.algebra.lcsa import ConformalAlgebra, cur_algebra
from src.fileformat.algebra_file import AlgebraDocument, load_document


FIXTURES = Path(__file__).parent / "fixtures"


def fixture_path(name: str) -> str:
    return str(FIXTURES / name)


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def ns_document() -> AlgebraDocument:
    return load_document([fixture_path("ns.alg"), fixture_path("ns_cochains.alg"), fixture_path("ns_maps.alg")])


@pytest.fixture
def ns(ns_document) -> ConformalAlgebra:
    return ns_document.algebra


@pytest.fixture
def ns_mutant() -> ConformalAlgebra:
    return load_document([fixture_path("ns_mutant.alg")]).algebra


@pytest.fixture
def abelian() -> ConformalAlgebra:
    return load_document([fixture_path("abelian.alg")]).algebra


@pytest.fixture
def cur_lie() -> ConformalAlgebra:
    """Current algebra of [x, y] = y with α = id"""
    return cur_algebra([("x", "even"), ("y", "even")], {("x", "y"): {"y": 1}, ("y", "x"): {"y": -1}})


@pytest.fixture
def cur_abelian_super() -> ConformalAlgebra:
    """Current algebra of an abelian superalgebra with a nontrivial even twist"""
    return cur_algebra([("u", "even"), ("v", "even"), ("w", "odd")], {}, alpha={"u": {"v": 1}, "v": {"u": 1}})


@pytest.fixture
def cur_twisted() -> ConformalAlgebra:
    """Current algebra of [x, y] = y twisted by α(y) = 2y"""
    return cur_algebra([("x", "even"), ("y", "even")], {("x", "y"): {"y": 1}, ("y", "x"): {"y": -1}},
                       alpha={"y": {"y": 2}})
