"""
Walpole representation of isotropic second-order (strain-gradient)
elasticity tensors.

The harmonic basis of the 18-dimensional strain-gradient space is fixed by
the matrix ``P`` whose columns are, in order, 7 septor directions, 3
stretch-gradient vectors, 5 deviator directions and 3 rotation-gradient
vectors.  In that basis an isotropic tensor reads::

    | ms3 I7                       |
    |        ms1 I3         mc1 I3 |
    |               mr2 I5         |
    |        mc1 I3         mr1 I3 |

so it is a combination of four projectors and the symmetric pair of coupling
operators between the two vector spaces.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .errors import ClassificationFailure
from .harmonic_structure import grad_strain, isotropic_endomorphism_dim, structure
from .tensor_algebra import Grad6, Tensor3, random_rotation, rotate_g6

H3 = slice(0, 7)
V_STR = slice(7, 10)
H2 = slice(10, 15)
V_ROT = slice(15, 18)
BLOCKS = {"h3": H3, "v_str": V_STR, "h2": H2, "v_rot": V_ROT}


def _r(x):
    return np.sqrt(x)


# Printed blocks, one list per row (rows follow the 18-vector ordering).
_a, _b, _c = _r(2 / 5), 1 / _r(10), 1 / _r(5)
_d, _e = 1 / _r(6), 1 / _r(3)
_P_H3 = np.array([
    [_a, 0, 0, 0, 0, 0, 0],
    [-_b, _d, 0, 0, 0, 0, 0],
    [-_c, _e, 0, 0, 0, 0, 0],
    [-_b, -_d, 0, 0, 0, 0, 0],
    [-_c, -_e, 0, 0, 0, 0, 0],
    [0, 0, _a, 0, 0, 0, 0],
    [0, 0, -_b, _d, 0, 0, 0],
    [0, 0, -_c, _e, 0, 0, 0],
    [0, 0, -_b, -_d, 0, 0, 0],
    [0, 0, -_c, -_e, 0, 0, 0],
    [0, 0, 0, 0, _a, 0, 0],
    [0, 0, 0, 0, -_b, _d, 0],
    [0, 0, 0, 0, -_c, _e, 0],
    [0, 0, 0, 0, -_b, -_d, 0],
    [0, 0, 0, 0, -_c, -_e, 0],
    [0, 0, 0, 0, 0, 0, _e],
    [0, 0, 0, 0, 0, 0, _e],
    [0, 0, 0, 0, 0, 0, _e],
])

_f, _g, _h = _r(3 / 5), 1 / _r(15), _r(2 / 15)
_P_STR = np.array([
    [_f, 0, 0],
    [_g, 0, 0],
    [_h, 0, 0],
    [_g, 0, 0],
    [_h, 0, 0],
    [0, _f, 0],
    [0, _g, 0],
    [0, _h, 0],
    [0, _g, 0],
    [0, _h, 0],
    [0, 0, _f],
    [0, 0, _g],
    [0, 0, _h],
    [0, 0, _g],
    [0, 0, _h],
    [0, 0, 0],
    [0, 0, 0],
    [0, 0, 0],
])

_s2, _s23 = 1 / _r(2), _r(2 / 3)
_P_H2 = np.array([
    [0, 0, 0, 0, 0],
    [-_e, 0, 0, 0, 0],
    [_d, 0, 0, 0, 0],
    [_e, 0, 0, 0, 0],
    [-_d, 0, 0, 0, 0],
    [0, 0, 0, 0, 0],
    [0, _e, 0, 0, 0],
    [0, -_d, 0, 0, 0],
    [0, -_e, 0, 0, 0],
    [0, _d, 0, 0, 0],
    [0, 0, 0, 0, 0],
    [0, 0, -_e, 0, 0],
    [0, 0, _d, 0, 0],
    [0, 0, _e, 0, 0],
    [0, 0, -_d, 0, 0],
    [0, 0, 0, _s2, -_d],
    [0, 0, 0, 0, _s23],
    [0, 0, 0, -_s2, -_d],
])

_P_ROT = np.array([
    [0, 0, 0],
    [-_e, 0, 0],
    [_d, 0, 0],
    [-_e, 0, 0],
    [_d, 0, 0],
    [0, 0, 0],
    [0, -_e, 0],
    [0, _d, 0],
    [0, -_e, 0],
    [0, _d, 0],
    [0, 0, 0],
    [0, 0, -_e],
    [0, 0, _d],
    [0, 0, -_e],
    [0, 0, _d],
    [0, 0, 0],
    [0, 0, 0],
    [0, 0, 0],
])

BASIS_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class WalpoleBasis:
    """Orthogonal 18x18 matrix ``[P_H3 | P_str | P_H2 | P_rot]``."""

    p_matrix: np.ndarray

    def block(self, name: str) -> np.ndarray:
        return self.p_matrix[:, BLOCKS[name]]

    def orthogonality_error(self) -> float:
        return float(np.abs(self.p_matrix.T @ self.p_matrix - np.eye(18)).max())


@functools.lru_cache(maxsize=None)
def basis_matrix() -> WalpoleBasis:
    p = np.hstack([_P_H3, _P_STR, _P_H2, _P_ROT]).astype(float)
    p.setflags(write=False)
    basis = WalpoleBasis(p)
    err = basis.orthogonality_error()
    if err > BASIS_TOL:
        raise RuntimeError(f"harmonic basis matrix is not orthogonal (error {err:.3e})")
    return basis


@dataclass(frozen=True, eq=False)
class WalpoleOperators:
    p_h3: np.ndarray
    p_h2: np.ndarray
    p_str: np.ndarray
    q_sr: np.ndarray
    q_rs: np.ndarray
    p_rot: np.ndarray

    def generators(self) -> dict[str, np.ndarray]:
        """The six generators in multiplication-table order."""
        return {label: getattr(self, attr) for label, attr in zip(GENERATOR_LABELS, _ATTRS)}


GENERATOR_LABELS = ("P_H3", "P_H2", "P_str", "Q_sr", "Q_rs", "P_rot")
_ATTRS = ("p_h3", "p_h2", "p_str", "q_sr", "q_rs", "p_rot")
ZERO = "0"


@functools.lru_cache(maxsize=None)
def operators() -> WalpoleOperators:
    p = basis_matrix().p_matrix

    def outer(rows, cols):
        m = p[:, rows] @ p[:, cols].T
        m.setflags(write=False)
        return m

    return WalpoleOperators(
        p_h3=outer(H3, H3),
        p_h2=outer(H2, H2),
        p_str=outer(V_STR, V_STR),
        q_sr=outer(V_STR, V_ROT),
        q_rs=outer(V_ROT, V_STR),
        p_rot=outer(V_ROT, V_ROT),
    )


#: Products forced by composing the elementary tensors (row times column).
EXPECTED_TABLE = (
    ("P_H3", "0", "0", "0", "0", "0"),
    ("0", "P_H2", "0", "0", "0", "0"),
    ("0", "0", "P_str", "Q_sr", "0", "0"),
    ("0", "0", "0", "0", "P_str", "Q_sr"),
    ("0", "0", "Q_rs", "P_rot", "0", "0"),
    ("0", "0", "0", "0", "Q_rs", "P_rot"),
)


def classify(m: np.ndarray, tol: float = 1e-12) -> str:
    """Label of the generator (or zero) nearest to ``m`` in Frobenius norm."""
    candidates = {ZERO: np.zeros((18, 18)), **operators().generators()}
    dist = {k: float(np.linalg.norm(m - g)) for k, g in candidates.items()}
    best = min(dist, key=dist.get)
    if dist[best] > tol:
        raise ClassificationFailure(
            f"product matches no generator (nearest {best} at distance {dist[best]:.3e})"
        )
    return best


def multiplication_table(tol: float = 1e-12) -> list[list[str]]:
    gens = list(operators().generators().values())
    return [[classify(x @ y, tol) for y in gens] for x in gens]


@dataclass(frozen=True)
class IsotropicModuli:
    """The five moduli of an isotropic strain-gradient elasticity tensor:
    septor, stretch vector, rotation deviator, rotation vector, coupling."""

    ms3: float
    ms1: float
    mr2: float
    mr1: float
    mc1: float

    FIELDS = ("ms3", "ms1", "mr2", "mr1", "mc1")

    def as_array(self) -> np.ndarray:
        return np.array([getattr(self, f) for f in self.FIELDS])

    @classmethod
    def from_array(cls, x) -> IsotropicModuli:
        return cls(*(float(v) for v in x))

    def to_json(self) -> dict:
        return {f: float(getattr(self, f)) for f in self.FIELDS}

    @classmethod
    def from_json(cls, obj: dict) -> IsotropicModuli:
        return cls(*(float(obj[f]) for f in cls.FIELDS))


def extract_moduli(a: Grad6) -> IsotropicModuli:
    """Read the five moduli off five components of ``a``.

    The expressions are exact for isotropic tensors; for anisotropic input
    they are still evaluated, but the result is only meaningful if
    ``is_isotropic(a)`` holds.
    """
    a1 = a.component("111111")
    a2 = a.component("111221")
    a3 = a.component("122133")
    a4 = a.component("122331")
    a5 = a.component("221221")
    return IsotropicModuli(
        ms3=a1 - a2 - 4 * a3 - 2 * a4,
        ms1=a1 + (2 / 3) * (a2 + 4 * a3 + 2 * a4),
        mr2=-a1 / 2 - a2 + 2 * a3 + 4 * a4 + 1.5 * a5,
        mr1=(-3 * a1 + 2 * a2 + 20 * a3 - 8 * a4 + 9 * a5) / 6,
        mc1=float(np.sqrt(5) / 3 * (-2 * a2 + 4 * a3 + 2 * a4)),
    )


def assemble(m: IsotropicModuli) -> Grad6:
    """``ms3 P_H3 + ms1 P_str + mr2 P_H2 + mr1 P_rot + mc1 (Q_sr + Q_rs)``.

    P_rot is eliminated through the partition of identity, so equal diagonal
    moduli give an exact multiple of the identity.
    """
    ops = operators()
    mat = (
        m.mr1 * np.eye(18)
        + (m.ms3 - m.mr1) * ops.p_h3
        + (m.ms1 - m.mr1) * ops.p_str
        + (m.mr2 - m.mr1) * ops.p_h2
        + m.mc1 * (ops.q_sr + ops.q_rs)
    )
    return Grad6(mat)


def harmonic_matrix(m: IsotropicModuli) -> np.ndarray:
    """Expected block matrix of ``assemble(m)`` in the harmonic basis."""
    d = np.zeros((18, 18))
    d[H3, H3] = m.ms3 * np.eye(7)
    d[V_STR, V_STR] = m.ms1 * np.eye(3)
    d[H2, H2] = m.mr2 * np.eye(5)
    d[V_ROT, V_ROT] = m.mr1 * np.eye(3)
    d[V_STR, V_ROT] = d[V_ROT, V_STR] = m.mc1 * np.eye(3)
    return d


def to_harmonic_basis(a: Grad6) -> np.ndarray:
    p = basis_matrix().p_matrix
    return p.T @ a.mat18 @ p


def offdiagonal_norm(m: np.ndarray) -> float:
    m = np.asarray(m)
    return float(np.linalg.norm(m - np.diag(np.diag(m))))


def schur_block_deviation(a: Grad6) -> dict[str, float]:
    """Max deviation of the H3 and H2 diagonal blocks from a multiple of the identity."""
    ah = to_harmonic_basis(a)
    out = {}
    for name, sl in (("h3", H3), ("h2", H2)):
        block = ah[sl, sl]
        lam = np.trace(block) / block.shape[0]
        out[name] = float(np.abs(block - lam * np.eye(block.shape[0])).max())
    return out


def cluster_eigenvalues(values, tol: float = 1e-9) -> list[tuple[float, int]]:
    """Group eigenvalues closer than ``tol`` (relative to the spectral radius)
    into ``(mean value, multiplicity)`` pairs, sorted descending."""
    vals = np.sort(np.asarray(values, dtype=float))[::-1]
    if vals.size == 0:
        return []
    scale = max(float(np.abs(vals).max()), np.finfo(float).tiny)
    groups = [[vals[0]]]
    for v in vals[1:]:
        if (groups[-1][-1] - v) / scale <= tol:
            groups[-1].append(v)
        else:
            groups.append([v])
    return [(float(np.mean(g)), len(g)) for g in groups]


def kelvin_spectrum(a, tol: float = 1e-9) -> list[tuple[float, int]]:
    """Eigenvalues of the operator with their multiplicities, descending.

    ``a`` is a Grad6 or any symmetric square matrix (e.g. a 6x6 classical
    stiffness in orthonormal coordinates).
    """
    m = a.mat18 if isinstance(a, Grad6) else np.asarray(a, dtype=float)
    return cluster_eigenvalues(np.linalg.eigvalsh(m), tol)


def kelvin_modes(a: Grad6) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and orthonormal eigenvectors as columns."""
    w, v = np.linalg.eigh(a.mat18)
    order = np.argsort(w)[::-1]
    return w[order], v[:, order]


def vector_block_eigenvalues(m: IsotropicModuli) -> tuple[float, float]:
    """Eigenvalues of the 2x2 stretch/rotation vector block, larger first."""
    mean = 0.5 * (m.ms1 + m.mr1)
    rad = float(np.hypot(0.5 * (m.ms1 - m.mr1), m.mc1))
    return mean + rad, mean - rad


def is_isotropic(a: Grad6, trials: int = 20, tol: float = 1e-9, seed: int = 0) -> bool:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    bound = tol * max(1.0, a.norm())
    for i in range(trials):
        q = random_rotation(seed + i)
        if np.linalg.norm(rotate_g6(q, a).mat18 - a.mat18) > bound:
            return False
    return True


MS3_ZERO = "ms3_zero"
MR2_ZERO = "mr2_zero"
VECTOR_BLOCK_SINGULAR = "vector_block_singular"
NOT_POSITIVE_DEFINITE = "not_positive_definite"


def singularity_flags(m: IsotropicModuli, tol: float = 1e-12) -> frozenset[str]:
    """Degeneracy flags; an empty set means nonsingular and positive definite."""
    if tol < 0:
        raise ValueError("tol must be non-negative")
    flags = set()
    if abs(m.ms3) <= tol:
        flags.add(MS3_ZERO)
    if abs(m.mr2) <= tol:
        flags.add(MR2_ZERO)
    if abs(m.ms1 * m.mr1 - m.mc1 ** 2) <= tol:
        flags.add(VECTOR_BLOCK_SINGULAR)
    lam_plus, lam_minus = vector_block_eigenvalues(m)
    if min(m.ms3, m.mr2, lam_plus, lam_minus) <= tol:
        flags.add(NOT_POSITIVE_DEFINITE)
    return frozenset(flags)


def rotation_stretch_ratio(m: IsotropicModuli) -> float:
    """Relative weight of rotation-gradient against stretch-gradient moduli."""
    stretch = np.hypot(m.ms3, m.ms1)
    if stretch == 0.0:
        raise ZeroDivisionError("stretch-gradient moduli ms3 and ms1 are both zero")
    return float(np.hypot(m.mr2, m.mr1) / stretch)


def apply_law(a: Grad6, eta: Tensor3) -> Tensor3:
    """Hyperstress ``tau = A ∴ eta``."""
    return a @ eta


def harmonic_coordinates(t: Tensor3) -> dict[str, np.ndarray]:
    """Coordinates of ``t`` along each block of harmonic basis columns."""
    c = basis_matrix().p_matrix.T @ t.vec18
    return {name: c[sl] for name, sl in BLOCKS.items()}


def project(t: Tensor3, part: str) -> Tensor3:
    """Projection of ``t`` onto one harmonic subspace via the projector matrices."""
    ops = operators()
    proj = {"h3": ops.p_h3, "v_str": ops.p_str, "h2": ops.p_h2, "v_rot": ops.p_rot}[part]
    return Tensor3(proj @ t.vec18)


def isotropic_span_dimension(tol: float = 1e-10) -> int:
    """Rank of {P_H3, P_str, P_H2, P_rot, Q_sr + Q_rs} as vectors in R^(18x18)."""
    ops = operators()
    stack = np.array([
        ops.p_h3.ravel(), ops.p_str.ravel(), ops.p_h2.ravel(), ops.p_rot.ravel(),
        (ops.q_sr + ops.q_rs).ravel(),
    ])
    return int(np.linalg.matrix_rank(stack, tol=tol))


def expected_isotropic_dimension() -> int:
    return isotropic_endomorphism_dim(structure(grad_strain(2)))


@dataclass(frozen=True)
class Comparison:
    offdiagonal_norm: float
    tolerance: float
    coincide: bool
    coupling_norm: float
    spectrum: list

    def to_json(self) -> dict:
        return {
            "offdiagonal_norm": self.offdiagonal_norm,
            "tolerance": self.tolerance,
            "walpole_equals_kelvin": self.coincide,
            "coupling_block_norm": self.coupling_norm,
            "spectrum": [{"value": v, "multiplicity": n} for v, n in self.spectrum],
        }


def compare(a: Grad6, tol: float = 1e-9) -> Comparison:
    """Whether the harmonic-basis matrix of ``a`` is already diagonal, i.e.
    the Walpole and Kelvin representations coincide."""
    ah = to_harmonic_basis(a)
    off = offdiagonal_norm(ah)
    coupling = float(np.linalg.norm(ah[V_STR, V_ROT]))
    return Comparison(
        offdiagonal_norm=off,
        tolerance=tol,
        coincide=off <= tol * max(1.0, a.norm()),
        coupling_norm=coupling,
        spectrum=kelvin_spectrum(a),
    )
