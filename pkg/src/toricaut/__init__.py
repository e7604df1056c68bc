"""Automorphism-group orbits on affine toric and horospherical varieties.

The input is the weight monoid P; faces of its cone index the orbits of the
acting group, and the pipeline decides which orbit closures are stable under
all additive group actions.
"""

__version__ = "0.1.0"

from .lattice import Reembedding, reembed_full_rank, smith_normal_form
from .monoid import MonoidSpec, SaturationData, prepare_monoid
from .orbits import ClassificationReport, LndOracle, classify
from .polyhedra import ConePair, FaceLattice, RationalPolyhedron, cone_from_generators, face_lattice
from .roots import DemazureRoot, RootVerdict, exists_admissible_tau_root, exists_tau_root, is_admissible

__all__ = [
    "ClassificationReport",
    "ConePair",
    "DemazureRoot",
    "FaceLattice",
    "LndOracle",
    "MonoidSpec",
    "RationalPolyhedron",
    "Reembedding",
    "RootVerdict",
    "SaturationData",
    "classify",
    "cone_from_generators",
    "exists_admissible_tau_root",
    "exists_tau_root",
    "face_lattice",
    "is_admissible",
    "prepare_monoid",
    "reembed_full_rank",
    "smith_normal_form",
]
