"""Separable elements of finite Weyl groups."""

from .rootsys import CartanType, RootSystem, build, classify
from .weyl import WeylElement, WeylGroup, enumerate_group, from_inversions, from_oneline, from_word
from .separable import certificate, generate_separable, is_separable
from .patterns import avoids_forbidden, contains, forbidden_set, minimal_nonseparable
from .qpoly import QPolynomial, rank_gen

__all__ = [
    "CartanType", "RootSystem", "build", "classify",
    "WeylElement", "WeylGroup", "enumerate_group", "from_inversions", "from_oneline", "from_word",
    "certificate", "generate_separable", "is_separable",
    "avoids_forbidden", "contains", "forbidden_set", "minimal_nonseparable",
    "QPolynomial", "rank_gen",
]
__version__ = "0.1.0"
