"""
Harmonic decomposition of strain-gradient tensors and of symmetric
second-order tensors.

A strain-gradient tensor ``T_(ij)k`` is first split into its fully
symmetric part ``S`` (stretch gradient, 10 dims) and a traceless second-order
carrier ``R_ij = eps_ipq T_jpq`` (rotation gradient, 8 dims)::

    T_ijk = S_ijk + (eps_jkl R_li + eps_ikl R_lj) / 3

Removing traces then gives four mutually orthogonal parts: a septor
``H_(ijk)`` and a vector ``v_str`` from ``S``; a deviator ``H_(ij)`` (the
symmetric part of ``R``) and a vector ``v_rot`` (its axial part) from ``R``.

Compact component orderings
---------------------------
``h3`` holds 7 independent entries of the septor, grouped by privileged
direction like the basis matrix columns::

    [H111, H122, H222, H211, H333, H311, H123]

``h2`` holds 5 independent entries of the deviator::

    [H23, H13, H12, H11, H22]

The remaining entries follow from symmetry and tracelessness.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvariantViolation
from .tensor_algebra import KRONECKER as _D
from .tensor_algebra import LEVI_CIVITA as _EPS
from .tensor_algebra import SQRT2, Tensor3

PART_NAMES = ("h3", "v_str", "h2", "v_rot")

_INVARIANT_TOL = 1e-10


def _sym3(t):
    """Average of a 3rd-order array over all index permutations."""
    return (
        t + t.transpose(0, 2, 1) + t.transpose(1, 0, 2)
        + t.transpose(1, 2, 0) + t.transpose(2, 0, 1) + t.transpose(2, 1, 0)
    ) / 6.0


def _vector_delta(v):
    """``v_i d_jk + v_j d_ik + v_k d_ij``."""
    return (
        np.einsum("i,jk->ijk", v, _D)
        + np.einsum("j,ik->ijk", v, _D)
        + np.einsum("k,ij->ijk", v, _D)
    )


def h3_from_components(c) -> np.ndarray:
    """Totally symmetric traceless 3x3x3 array from its 7 components."""
    h111, h122, h222, h211, h333, h311, h123 = np.asarray(c, dtype=float)
    vals = {
        (0, 0, 0): h111, (0, 1, 1): h122, (0, 2, 2): -h111 - h122,
        (1, 1, 1): h222, (1, 0, 0): h211, (1, 2, 2): -h222 - h211,
        (2, 2, 2): h333, (2, 0, 0): h311, (2, 1, 1): -h333 - h311,
        (0, 1, 2): h123,
    }
    h = np.zeros((3, 3, 3))
    for (i, j, k), x in vals.items():
        for p in {(i, j, k), (i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)}:
            h[p] = x
    return h


def h3_components(h) -> np.ndarray:
    h = np.asarray(h, dtype=float)
    return np.array([h[0, 0, 0], h[0, 1, 1], h[1, 1, 1], h[1, 0, 0], h[2, 2, 2], h[2, 0, 0], h[0, 1, 2]])


def h2_from_components(c) -> np.ndarray:
    h23, h13, h12, h11, h22 = np.asarray(c, dtype=float)
    return np.array([
        [h11, h12, h13],
        [h12, h22, h23],
        [h13, h23, -h11 - h22],
    ])


def h2_components(h) -> np.ndarray:
    h = np.asarray(h, dtype=float)
    return np.array([h[1, 2], h[0, 2], h[0, 1], h[0, 0], h[1, 1]])


def _check_h3(h, tol):
    h = np.asarray(h, dtype=float)
    if h.shape != (3, 3, 3):
        raise InvariantViolation(f"h3 must be 3x3x3, got shape {h.shape}")
    scale = max(1.0, float(np.linalg.norm(h)))
    asym = float(np.abs(h - _sym3(h)).max())
    if asym > tol * scale:
        raise InvariantViolation(f"h3 is not totally symmetric (deviation {asym:.3e})")
    trace = float(np.abs(np.einsum("ppk->k", h)).max())
    if trace > tol * scale:
        raise InvariantViolation(f"h3 is not traceless (trace {trace:.3e})")


def _check_h2(h, tol):
    h = np.asarray(h, dtype=float)
    if h.shape != (3, 3):
        raise InvariantViolation(f"h2 must be 3x3, got shape {h.shape}")
    scale = max(1.0, float(np.linalg.norm(h)))
    asym = float(np.abs(h - h.T).max())
    if asym > tol * scale:
        raise InvariantViolation(f"h2 is not symmetric (deviation {asym:.3e})")
    if abs(np.trace(h)) > tol * scale:
        raise InvariantViolation(f"h2 is not traceless (trace {np.trace(h):.3e})")


# -- embeddings of each part back into the strain-gradient space ------------

def embed_h3(h) -> Tensor3:
    return Tensor3.from_full(h)


def embed_v_str(v) -> Tensor3:
    return Tensor3.from_full(_vector_delta(np.asarray(v, dtype=float)) / 5.0)


def embed_rot_carrier(r) -> Tensor3:
    """``(eps_jkl R_li + eps_ikl R_lj) / 3`` for any 3x3 ``R``."""
    r = np.asarray(r, dtype=float)
    t = (np.einsum("jkl,li->ijk", _EPS, r) + np.einsum("ikl,lj->ijk", _EPS, r)) / 3.0
    return Tensor3.from_full(t)


def embed_h2(h) -> Tensor3:
    return embed_rot_carrier(h)


def embed_v_rot(v) -> Tensor3:
    """``(2 v_k d_ij - v_i d_jk - v_j d_ik) / 3``."""
    v = np.asarray(v, dtype=float)
    t = (
        2.0 * np.einsum("k,ij->ijk", v, _D)
        - np.einsum("i,jk->ijk", v, _D)
        - np.einsum("j,ik->ijk", v, _D)
    ) / 3.0
    return Tensor3.from_full(t)


@dataclass(frozen=True, eq=False)
class SchurSplit:
    """Fully symmetric part ``sym`` and rotation-gradient carrier ``rot``."""

    sym: np.ndarray
    rot: np.ndarray

    def embed(self) -> Tensor3:
        return Tensor3.from_full(self.sym) + embed_rot_carrier(self.rot)


def schur_split(t: Tensor3) -> SchurSplit:
    full = t.full()
    s = (full + full.transpose(2, 0, 1) + full.transpose(1, 2, 0)) / 3.0
    r = np.einsum("ipq,jpq->ij", _EPS, full)
    return SchurSplit(sym=s, rot=r)


@dataclass(frozen=True, eq=False)
class HarmonicPartsT3:
    """The four harmonic parts of a strain-gradient tensor.

    ``h3`` and ``h2`` are the compact component arrays described in the
    module docstring; ``v_str`` and ``v_rot`` are plain 3-vectors.
    """

    h3: np.ndarray = field(default_factory=lambda: np.zeros(7))
    h2: np.ndarray = field(default_factory=lambda: np.zeros(5))
    v_str: np.ndarray = field(default_factory=lambda: np.zeros(3))
    v_rot: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        for name, size in (("h3", 7), ("h2", 5), ("v_str", 3), ("v_rot", 3)):
            x = np.array(getattr(self, name), dtype=float)
            if x.shape != (size,):
                raise InvariantViolation(f"{name} must have {size} components, got shape {x.shape}")
            x.setflags(write=False)
            object.__setattr__(self, name, x)

    @classmethod
    def from_tensors(cls, h3, h2, v_str, v_rot, tol: float = _INVARIANT_TOL) -> HarmonicPartsT3:
        """Build from a full septor and deviator, validating their invariants."""
        _check_h3(h3, tol)
        _check_h2(h2, tol)
        return cls(h3_components(h3), h2_components(h2), v_str, v_rot)

    def h3_tensor(self) -> np.ndarray:
        return h3_from_components(self.h3)

    def h2_tensor(self) -> np.ndarray:
        return h2_from_components(self.h2)

    def embedded(self) -> dict[str, Tensor3]:
        """Each part mapped back into the strain-gradient space."""
        return {
            "h3": embed_h3(self.h3_tensor()),
            "v_str": embed_v_str(self.v_str),
            "h2": embed_h2(self.h2_tensor()),
            "v_rot": embed_v_rot(self.v_rot),
        }

    def norms(self) -> dict[str, float]:
        """Frobenius norms of the embedded parts."""
        return {k: t.norm() for k, t in self.embedded().items()}

    def allclose(self, other: HarmonicPartsT3, atol: float = 1e-12) -> bool:
        return all(np.allclose(getattr(self, n), getattr(other, n), rtol=0, atol=atol) for n in PART_NAMES)

    def to_json(self) -> dict:
        return {n: [float(x) for x in getattr(self, n)] for n in ("h3", "h2", "v_str", "v_rot")}

    @classmethod
    def from_json(cls, obj: dict) -> HarmonicPartsT3:
        return cls(**{n: obj[n] for n in ("h3", "h2", "v_str", "v_rot")})


def decompose_t3(t: Tensor3) -> HarmonicPartsT3:
    full = t.full()
    trace_first = np.einsum("ppi->i", full)
    trace_last = np.einsum("ipp->i", full)
    v_str = (trace_first + 2.0 * trace_last) / 3.0
    v_rot = (trace_first - trace_last) / 2.0
    split = schur_split(t)
    h3 = split.sym - _vector_delta(v_str) / 5.0
    h2 = 0.5 * (split.rot + split.rot.T)
    return HarmonicPartsT3(h3_components(h3), h2_components(h2), v_str, v_rot)


def reconstruct_t3(p: HarmonicPartsT3) -> Tensor3:
    if not isinstance(p, HarmonicPartsT3):
        raise TypeError("expected HarmonicPartsT3")
    total = Tensor3.zeros()
    for part in p.embedded().values():
        total = total + part
    return total


# -- classical (first-order) elasticity ---------------------------------------

@dataclass(frozen=True)
class ClassicalModuli:
    k_bulk: float
    g_shear: float


def _as_sym2(e, tol=_INVARIANT_TOL) -> np.ndarray:
    e = np.asarray(e, dtype=float)
    if e.shape != (3, 3):
        raise ValueError(f"expected a 3x3 array, got shape {e.shape}")
    if np.abs(e - e.T).max() > tol * max(1.0, float(np.linalg.norm(e))):
        raise InvariantViolation("second-order tensor is not symmetric")
    return 0.5 * (e + e.T)


def split_sym2(e) -> tuple[np.ndarray, np.ndarray]:
    """Deviatoric and spherical parts of a symmetric 3x3 tensor."""
    e = _as_sym2(e)
    sph = np.trace(e) / 3.0 * np.eye(3)
    return e - sph, sph


_MANDEL_PAIRS = ((0, 0), (1, 1), (2, 2), (1, 2), (0, 2), (0, 1))
_MANDEL_FACTOR = np.array([1.0, 1.0, 1.0, SQRT2, SQRT2, SQRT2])


def mandel6(e) -> np.ndarray:
    """Orthonormal 6-vector of a symmetric tensor (11, 22, 33, 23, 13, 12)."""
    e = _as_sym2(e)
    return np.array([e[i, j] for i, j in _MANDEL_PAIRS]) * _MANDEL_FACTOR


def unmandel6(v) -> np.ndarray:
    v = np.asarray(v, dtype=float) / _MANDEL_FACTOR
    e = np.zeros((3, 3))
    for x, (i, j) in zip(v, _MANDEL_PAIRS):
        e[i, j] = e[j, i] = x
    return e


def classical_projectors() -> tuple[np.ndarray, np.ndarray]:
    """Spherical and deviatoric projectors as 6x6 matrices."""
    iso = mandel6(np.eye(3)) / np.sqrt(3.0)
    p0 = np.outer(iso, iso)
    return p0, np.eye(6) - p0


def classical_harmonic_basis() -> np.ndarray:
    """Orthonormal 6x6 basis: the spherical direction, then five deviators."""
    s = 1.0 / np.sqrt(2.0)
    cols = [
        mandel6(np.eye(3)) / np.sqrt(3.0),
        mandel6(np.diag([2.0, -1.0, -1.0]) / np.sqrt(6.0)),
        mandel6(np.diag([0.0, 1.0, -1.0]) * s),
    ]
    for i, j in ((1, 2), (0, 2), (0, 1)):
        e = np.zeros((3, 3))
        e[i, j] = e[j, i] = s
        cols.append(mandel6(e))
    return np.column_stack(cols)


def classical_isotropic(m: ClassicalModuli) -> np.ndarray:
    """Isotropic stiffness ``3K P0 + 2G P2`` as a 6x6 matrix."""
    p0, p2 = classical_projectors()
    return 3.0 * m.k_bulk * p0 + 2.0 * m.g_shear * p2


def classical_apply(c: np.ndarray, e) -> np.ndarray:
    return unmandel6(c @ mandel6(e))
