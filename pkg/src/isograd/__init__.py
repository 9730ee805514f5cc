"""Harmonic structure and Walpole algebra of isotropic strain-gradient elasticity."""

from .errors import (
    ClassificationFailure,
    FormatError,
    InvariantViolation,
    OrderBoundError,
    SymmetryViolation,
)
from .harmonic_parts import (
    ClassicalModuli,
    HarmonicPartsT3,
    SchurSplit,
    classical_isotropic,
    decompose_t3,
    reconstruct_t3,
    schur_split,
    split_sym2,
)
from .harmonic_structure import (
    HarmonicStructure,
    SpaceSpec,
    clebsch_gordan,
    decompositions_coincide,
    dimension,
    full_tensor,
    grad_strain,
    harmonic_single,
    is_unique,
    isotropic_endomorphism_dim,
    structure,
    sym_power,
    sym_square,
)
from .tensor_algebra import Grad6, Rotation, Tensor3, random_rotation, rotate_g6, rotate_t3
from .walpole import (
    IsotropicModuli,
    apply_law,
    assemble,
    basis_matrix,
    extract_moduli,
    is_isotropic,
    kelvin_spectrum,
    multiplication_table,
    operators,
    rotation_stretch_ratio,
    singularity_flags,
    to_harmonic_basis,
)

__version__ = "0.1.0"
