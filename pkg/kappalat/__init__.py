"""
KappaLat 패키지
유한 격자의 좌모듈러 원소, κ 사상, 극값성, 라벨링 퀴버와 Nakayama 꼬임류 격자 분석
"""

__version__ = "1.0.0"

from .algebra_generators import (
    AlgebraModel,
    Interval,
    LatticeFamily,
    TorsLattice,
    generate_family,
    nakayama_algebra,
    torsion_classes,
)
from .exceptions import BudgetExceeded, InputError, KappaLatError, KappaUndefined
from .irreducibles_kappa import compute_kappa_data, is_semidistributive, join_irreducibles, kappa, meet_irreducibles
from .labelling_quiver import build_labelling_quiver, phi, psi, successor_closed_sets
from .lattice_core import FiniteLattice, LatticeDocument, build_lattice, parse_document, parse_lattice, serialize_lattice
from .modularity_extremality import is_extremal_classical, is_extremal_generalized, is_left_modular_def, left_modular_set

__all__ = [
    # Lattice core
    "FiniteLattice",
    "LatticeDocument",
    "build_lattice",
    "parse_document",
    "parse_lattice",
    "serialize_lattice",

    # Irreducibles and kappa
    "join_irreducibles",
    "meet_irreducibles",
    "kappa",
    "compute_kappa_data",
    "is_semidistributive",

    # Left modularity and extremality
    "is_left_modular_def",
    "left_modular_set",
    "is_extremal_classical",
    "is_extremal_generalized",

    # Labelling quiver
    "build_labelling_quiver",
    "successor_closed_sets",
    "phi",
    "psi",

    # Generators and torsion lattices
    "LatticeFamily",
    "generate_family",
    "Interval",
    "AlgebraModel",
    "TorsLattice",
    "nakayama_algebra",
    "torsion_classes",

    # Errors
    "KappaLatError",
    "InputError",
    "KappaUndefined",
    "BudgetExceeded",
]
