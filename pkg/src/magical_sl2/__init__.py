"""Exact computations with magical sl2-triples in semisimple Lie algebras."""

from .exactla import Q
from .liealg import LieAlgebra, make_chevalley, make_classical
from .magical import analyze, cayley_data, classify_magical, factorize, magical_report
from .rootsys import DomainError, build_root_system
from .sl2jm import Sl2Triple, jm_decompose, triple_from_partition, triple_from_weighted_diagram

__all__ = [
    "Q",
    "DomainError",
    "LieAlgebra",
    "Sl2Triple",
    "analyze",
    "build_root_system",
    "cayley_data",
    "classify_magical",
    "factorize",
    "jm_decompose",
    "magical_report",
    "make_chevalley",
    "make_classical",
    "triple_from_partition",
    "triple_from_weighted_diagram",
]
