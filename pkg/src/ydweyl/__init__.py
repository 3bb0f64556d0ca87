"""Cartan graphs, Weyl groupoids, skeletons and Nichols algebra dimensions
for tuples of Yetter-Drinfeld modules over finite groups."""

from __future__ import annotations

from .cartan import (
    GCMType,
    GeneralizedCartanMatrix,
    classify_gcm,
    explore,
    finite_type_witness,
    weyl_orbits,
)
from .groups import FiniteGroup, LinearCharacter, build_group, linear_characters
from .nichols import HilbertSeries, hilbert_oracle_crosscheck, hilbert_series
from .scalars import RootOfUnity, parse_scalar, zeta
from .skeleton import classify_skeleton, classify_tuple, extract_skeleton, realize_skeleton
from .ydmod import InducedModule, YDTuple, cartan_matrix, classify_pair, reflect

__version__ = "0.1.0"

__all__ = [
    "FiniteGroup",
    "GCMType",
    "GeneralizedCartanMatrix",
    "HilbertSeries",
    "InducedModule",
    "LinearCharacter",
    "RootOfUnity",
    "YDTuple",
    "build_group",
    "cartan_matrix",
    "classify_gcm",
    "classify_pair",
    "classify_skeleton",
    "classify_tuple",
    "explore",
    "extract_skeleton",
    "finite_type_witness",
    "hilbert_oracle_crosscheck",
    "hilbert_series",
    "linear_characters",
    "parse_scalar",
    "realize_skeleton",
    "reflect",
    "weyl_orbits",
    "zeta",
]
