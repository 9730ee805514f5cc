"""
Tensor value types and orthonormal coordinates for strain-gradient tensors.

Third-order tensors ``T_ijk`` symmetric in their first two indices (the
strain gradient and the hyperstress) are stored as 18-vectors in the
orthonormal basis

    e_a = c_ij (e_i ⊗ e_j + e_j ⊗ e_i) ⊗ e_k,   c_ii = 1/2,  c_ij = 1/√2,

with the subscript correspondence ``INDEX_LABELS``.  Sixth-order tensors with
the ``(ij)k|(lm)n`` minor symmetries and major symmetry are stored as
symmetric 18x18 matrices in the same basis.  Indices are 0-based in code;
``INDEX_LABELS`` keeps the 1-based labels for display.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import InvariantViolation, SymmetryViolation

#: alpha (1..18) -> ijk, grouped by privileged direction 1, 2, 3, none.
INDEX_LABELS = (
    "111", "221", "122", "331", "133",
    "222", "112", "121", "332", "233",
    "333", "113", "131", "223", "232",
    "123", "132", "231",
)
IJK = tuple(tuple(int(c) - 1 for c in label) for label in INDEX_LABELS)

KRONECKER = np.eye(3)
LEVI_CIVITA = np.zeros((3, 3, 3))
for _i, _j, _k in itertools.permutations(range(3)):
    LEVI_CIVITA[_i, _j, _k] = 1.0 if (_i, _j, _k) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)) else -1.0

SQRT2 = np.sqrt(2.0)

# Coordinate factor of each alpha: 1 if i == j else sqrt(2).
FACTOR18 = np.array([1.0 if i == j else SQRT2 for i, j, _ in IJK])

# Rows are the basis tensors e_a flattened to 27 entries.
BASIS18 = np.zeros((18, 3, 3, 3))
for _a, (_i, _j, _k) in enumerate(IJK):
    _c = 0.5 if _i == _j else 1.0 / SQRT2
    BASIS18[_a, _i, _j, _k] += _c
    BASIS18[_a, _j, _i, _k] += _c
BASIS18.setflags(write=False)
_B = BASIS18.reshape(18, 27)

DEFAULT_SYMMETRY_TOL = 1e-10


def _label(a: int) -> str:
    return f"alpha={a + 1} ({INDEX_LABELS[a]})"


def tensor3_to_vec18(t: np.ndarray) -> np.ndarray:
    """Coordinates of a minor-symmetric 3x3x3 array: ``T_ijk`` if i == j,
    ``sqrt(2) T_ijk`` otherwise."""
    t = np.asarray(t, dtype=float)
    return np.array([t[i, j, k] for i, j, k in IJK]) * FACTOR18


def vec18_to_tensor3(v: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.shape != (18,):
        raise ValueError(f"expected 18 coordinates, got shape {v.shape}")
    t = np.zeros((3, 3, 3))
    for a, (i, j, k) in enumerate(IJK):
        t[i, j, k] = t[j, i, k] = v[a] / FACTOR18[a]
    return t


def grad6_to_mat18(a: np.ndarray) -> np.ndarray:
    """Matrix of a sixth-order array with factors 1, sqrt(2) or 2 depending on
    how many of the pairs (i, j), (l, m) are off-diagonal."""
    a = np.asarray(a, dtype=float)
    idx = np.array(IJK)
    i, j, k = idx[:, 0], idx[:, 1], idx[:, 2]
    m = a[i[:, None], j[:, None], k[:, None], i[None, :], j[None, :], k[None, :]]
    return m * np.outer(FACTOR18, FACTOR18)


def mat18_to_grad6(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    raw = m / np.outer(FACTOR18, FACTOR18)
    a = np.zeros((3,) * 6)
    for p, (i, j, k) in enumerate(IJK):
        for q, (l, mm, n) in enumerate(IJK):
            x = raw[p, q]
            for ii, jj in {(i, j), (j, i)}:
                for ll, kk in {(l, mm), (mm, l)}:
                    a[ii, jj, k, ll, kk, n] = x
    return a


def _worst(diff: np.ndarray):
    flat = int(np.argmax(np.abs(diff)))
    return np.unravel_index(flat, diff.shape), float(np.abs(diff).ravel()[flat])


def check_tensor3_symmetry(t: np.ndarray, tol: float = DEFAULT_SYMMETRY_TOL) -> None:
    t = np.asarray(t, dtype=float)
    if t.shape != (3, 3, 3):
        raise ValueError(f"expected a 3x3x3 array, got shape {t.shape}")
    scale = max(1.0, float(np.linalg.norm(t)))
    diff = t - t.transpose(1, 0, 2)
    (i, j, k), err = _worst(diff)
    if err > tol * scale:
        raise SymmetryViolation(
            f"T[{i+1}{j+1}{k+1}] != T[{j+1}{i+1}{k+1}] (difference {err:.3e})"
        )


def check_grad6_symmetry(a: np.ndarray, tol: float = DEFAULT_SYMMETRY_TOL) -> None:
    """Raise SymmetryViolation naming the worst offending index pair."""
    a = np.asarray(a, dtype=float)
    if a.shape != (3,) * 6:
        raise ValueError(f"expected a 3^6 array, got shape {a.shape}")
    scale = max(1.0, float(np.linalg.norm(a)))
    checks = (
        ("(ij) minor", (1, 0, 2, 3, 4, 5)),
        ("(lm) minor", (0, 1, 2, 4, 3, 5)),
        ("major", (3, 4, 5, 0, 1, 2)),
    )
    for name, perm in checks:
        diff = a - a.transpose(perm)
        idx, err = _worst(diff)
        if err > tol * scale:
            other = tuple(idx[p] for p in perm)
            fmt = lambda ix: "".join(str(x + 1) for x in ix)
            raise SymmetryViolation(
                f"{name} symmetry broken: A[{fmt(idx)}] != A[{fmt(other)}] "
                f"(difference {err:.3e})"
            )


def check_mat18_symmetry(m: np.ndarray, tol: float = 1e-12) -> None:
    m = np.asarray(m, dtype=float)
    if m.shape != (18, 18):
        raise ValueError(f"expected an 18x18 matrix, got shape {m.shape}")
    scale = max(1.0, float(np.linalg.norm(m)))
    (p, q), err = _worst(m - m.T)
    if err > tol * scale:
        raise SymmetryViolation(
            f"matrix not symmetric: entry [{_label(p)}, {_label(q)}] differs from "
            f"its transpose by {err:.3e}"
        )


def _frozen(x: np.ndarray) -> np.ndarray:
    x = np.array(x, dtype=float)
    x.setflags(write=False)
    return x


class Tensor3:
    """Third-order tensor with ``T_ijk = T_jik``, stored as its 18 coordinates."""

    __slots__ = ("vec18",)

    def __init__(self, vec18):
        v = np.asarray(vec18, dtype=float)
        if v.shape != (18,):
            raise ValueError(f"expected 18 coordinates, got shape {v.shape}")
        object.__setattr__(self, "vec18", _frozen(v))

    def __setattr__(self, name, value):
        raise AttributeError("Tensor3 is immutable")

    @classmethod
    def from_full(cls, t, tol: float = DEFAULT_SYMMETRY_TOL) -> Tensor3:
        t = np.asarray(t, dtype=float)
        check_tensor3_symmetry(t, tol)
        return cls(tensor3_to_vec18(0.5 * (t + t.transpose(1, 0, 2))))

    @classmethod
    def zeros(cls) -> Tensor3:
        return cls(np.zeros(18))

    def full(self) -> np.ndarray:
        return vec18_to_tensor3(self.vec18)

    def __getitem__(self, ijk):
        return self.full()[ijk]

    def norm(self) -> float:
        return float(np.linalg.norm(self.vec18))

    def dot(self, other: Tensor3) -> float:
        return float(self.vec18 @ other.vec18)

    def __add__(self, other):
        return Tensor3(self.vec18 + other.vec18)

    def __sub__(self, other):
        return Tensor3(self.vec18 - other.vec18)

    def __neg__(self):
        return Tensor3(-self.vec18)

    def __mul__(self, c):
        return Tensor3(float(c) * self.vec18)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Tensor3) and np.array_equal(self.vec18, other.vec18)

    __hash__ = None

    def __repr__(self):
        return f"Tensor3({np.array2string(self.vec18, precision=6)})"


class Grad6:
    """Sixth-order tensor with ``(ij)k|(lm)n`` minor and major symmetries,
    stored as its symmetric 18x18 matrix."""

    __slots__ = ("mat18",)

    def __init__(self, mat18, tol: float = 1e-12):
        m = np.asarray(mat18, dtype=float)
        check_mat18_symmetry(m, tol)
        object.__setattr__(self, "mat18", _frozen(0.5 * (m + m.T)))

    def __setattr__(self, name, value):
        raise AttributeError("Grad6 is immutable")

    @classmethod
    def from_full(cls, a, tol: float = DEFAULT_SYMMETRY_TOL) -> Grad6:
        a = np.asarray(a, dtype=float)
        check_grad6_symmetry(a, tol)
        # average over the symmetry group generated by the three swaps
        perms = [(0, 1, 2, 3, 4, 5), (1, 0, 2, 3, 4, 5), (0, 1, 2, 4, 3, 5), (1, 0, 2, 4, 3, 5)]
        s = sum(a.transpose(p) for p in perms) / 4.0
        s = 0.5 * (s + s.transpose(3, 4, 5, 0, 1, 2))
        return cls(grad6_to_mat18(s))

    @classmethod
    def identity(cls) -> Grad6:
        return cls(np.eye(18))

    @classmethod
    def zeros(cls) -> Grad6:
        return cls(np.zeros((18, 18)))

    def full(self) -> np.ndarray:
        return mat18_to_grad6(self.mat18)

    def component(self, indices: str) -> float:
        """Entry addressed by a 1-based label such as ``"111221"``."""
        i, j, k, l, m, n = (int(c) - 1 for c in indices)
        p = _alpha(i, j, k)
        q = _alpha(l, m, n)
        return float(self.mat18[p, q] / (FACTOR18[p] * FACTOR18[q]))

    def __getitem__(self, ijklmn):
        i, j, k, l, m, n = ijklmn
        p, q = _alpha(i, j, k), _alpha(l, m, n)
        return float(self.mat18[p, q] / (FACTOR18[p] * FACTOR18[q]))

    def norm(self) -> float:
        return float(np.linalg.norm(self.mat18))

    def __matmul__(self, eta: Tensor3) -> Tensor3:
        return Tensor3(self.mat18 @ eta.vec18)

    def __add__(self, other):
        return Grad6(self.mat18 + other.mat18)

    def __sub__(self, other):
        return Grad6(self.mat18 - other.mat18)

    def __mul__(self, c):
        return Grad6(float(c) * self.mat18)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Grad6) and np.array_equal(self.mat18, other.mat18)

    __hash__ = None

    def __repr__(self):
        return f"Grad6(norm={self.norm():.6g})"


_ALPHA = {}
for _a, (_i, _j, _k) in enumerate(IJK):
    _ALPHA[(_i, _j, _k)] = _ALPHA[(_j, _i, _k)] = _a


def _alpha(i, j, k) -> int:
    return _ALPHA[(i, j, k)]


@dataclass(frozen=True, eq=False)
class Rotation:
    """Proper rotation of R^3."""

    matrix: np.ndarray

    def __post_init__(self):
        q = np.asarray(self.matrix, dtype=float)
        if q.shape != (3, 3):
            raise InvariantViolation(f"rotation must be 3x3, got shape {q.shape}")
        if np.abs(q.T @ q - np.eye(3)).max() > 1e-12:
            raise InvariantViolation("rotation matrix is not orthogonal")
        if abs(np.linalg.det(q) - 1.0) > 1e-12:
            raise InvariantViolation("rotation matrix must have determinant +1")
        object.__setattr__(self, "matrix", _frozen(q))

    @classmethod
    def identity(cls) -> Rotation:
        return cls(np.eye(3))

    @classmethod
    def about_axis(cls, axis, angle: float) -> Rotation:
        u = np.asarray(axis, dtype=float)
        u = u / np.linalg.norm(u)
        k = np.array([[0, -u[2], u[1]], [u[2], 0, -u[0]], [-u[1], u[0], 0]])
        q = np.eye(3) + np.sin(angle) * k + (1 - np.cos(angle)) * (k @ k)
        return cls(q)

    @classmethod
    def from_quaternion(cls, w, x, y, z) -> Rotation:
        n = np.sqrt(w * w + x * x + y * y + z * z)
        w, x, y, z = w / n, x / n, y / n, z / n
        q = np.array([
            [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
            [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
            [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
        ])
        # re-orthonormalize away the rounding of the quaternion formula
        u, _, vt = np.linalg.svd(q)
        return cls(u @ vt)

    def rep18(self) -> np.ndarray:
        """Orthogonal 18x18 matrix R with ``vec18(Q.T) = R vec18(T)``."""
        k = _kron3(self.matrix)
        return _B @ k @ _B.T


def _kron3(q):
    return np.einsum("ia,jb,kc->ijkabc", q, q, q).reshape(27, 27)


def random_rotation(seed: int) -> Rotation:
    """Haar-uniform rotation from a normalized Gaussian quaternion.

    The quaternion is drawn with numpy's PCG64 generator seeded by ``seed``.
    """
    w, x, y, z = np.random.default_rng(seed).standard_normal(4)
    return Rotation.from_quaternion(w, x, y, z)


def rotate_t3(q: Rotation, t: Tensor3) -> Tensor3:
    """``T'_ijk = Q_ia Q_jb Q_kc T_abc``."""
    qm = q.matrix
    return Tensor3(tensor3_to_vec18(np.einsum("ia,jb,kc,abc->ijk", qm, qm, qm, t.full())))


def rotate_g6(q: Rotation, a: Grad6, method: str = "matrix") -> Grad6:
    """Rotate a sixth-order tensor.

    ``method="index"`` contracts the full 3^6 array with Q on every index;
    ``method="matrix"`` conjugates the 18x18 matrix by ``q.rep18()``.
    """
    if method == "matrix":
        r = q.rep18()
        return Grad6(r @ a.mat18 @ r.T)
    if method == "index":
        k = _kron3(q.matrix)
        full = a.full().reshape(27, 27)
        rotated = (k @ full @ k.T).reshape((3,) * 6)
        return Grad6(grad6_to_mat18(rotated))
    raise ValueError(f"unknown method {method!r}")
