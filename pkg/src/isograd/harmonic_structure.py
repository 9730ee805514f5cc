"""
Harmonic structure of tensor spaces under SO(3).

A tensor space decomposes into copies of the harmonic spaces ``H^k``
(completely symmetric traceless tensors of order k, dimension 2k+1).
Only the *structure* of that decomposition is handled here: which orders
occur and with what multiplicity.  Everything is exact integer arithmetic.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from typing import Mapping

from .errors import OrderBoundError

#: Largest n accepted by ``structure(full_tensor(n))``.
MAX_FULL_TENSOR_ORDER = 12


def _check_order(k, name="order"):
    if isinstance(k, bool) or not isinstance(k, int):
        raise TypeError(f"{name} must be an int, got {type(k).__name__}")
    if k < 0:
        raise ValueError(f"{name} must be non-negative, got {k}")


@dataclass(frozen=True)
class HarmonicStructure:
    """Multiset of harmonic orders, ``{k: alpha_k}``.

    Zero multiplicities are dropped so that equal structures compare equal.
    Iteration and printing go by descending order.
    """

    multiplicities: Mapping[int, int]

    def __post_init__(self):
        clean = {}
        for k, a in dict(self.multiplicities).items():
            _check_order(k)
            _check_order(a, "multiplicity")
            if a:
                clean[k] = a
        object.__setattr__(
            self, "multiplicities", dict(sorted(clean.items(), reverse=True))
        )

    def __hash__(self):
        return hash(tuple(self.multiplicities.items()))

    def __getitem__(self, k: int) -> int:
        return self.multiplicities.get(k, 0)

    def __iter__(self):
        return iter(self.multiplicities.items())

    def __len__(self):
        return len(self.multiplicities)

    def __add__(self, other: HarmonicStructure) -> HarmonicStructure:
        return direct_sum(self, other)

    def __mul__(self, other: HarmonicStructure) -> HarmonicStructure:
        return tensor_product(self, other)

    @property
    def orders(self) -> list[int]:
        return list(self.multiplicities)

    @property
    def dimension(self) -> int:
        return dimension(self)

    @property
    def components(self) -> int:
        """Number of irreducible components, counted with multiplicity."""
        return sum(self.multiplicities.values())

    def __str__(self):
        if not self.multiplicities:
            return "0"
        terms = []
        for k, a in self.multiplicities.items():
            terms.append(f"H{k}" if a == 1 else f"{a}·H{k}")
        return " + ".join(terms)

    def to_json(self) -> dict:
        return {str(k): a for k, a in self.multiplicities.items()}

    @classmethod
    def from_json(cls, obj: Mapping[str, int]) -> HarmonicStructure:
        return cls({int(k): int(a) for k, a in obj.items()})


def direct_sum(*parts: HarmonicStructure) -> HarmonicStructure:
    total: Counter = Counter()
    for p in parts:
        total.update(p.multiplicities)
    return HarmonicStructure(total)


def clebsch_gordan(i: int, j: int) -> HarmonicStructure:
    """Structure of ``H^i ⊗ H^j``: one copy of each ``H^k``, |i-j| <= k <= i+j."""
    _check_order(i)
    _check_order(j)
    return HarmonicStructure({k: 1 for k in range(abs(i - j), i + j + 1)})


def sym_square(k: int) -> HarmonicStructure:
    """Structure of the symmetric square of ``H^k``: H^0 + H^2 + ... + H^2k."""
    _check_order(k)
    return HarmonicStructure({2 * i: 1 for i in range(k + 1)})


def tensor_product(a: HarmonicStructure, b: HarmonicStructure) -> HarmonicStructure:
    """Clebsch-Gordan product distributed over both direct sums."""
    total: Counter = Counter()
    for i, ai in a:
        for j, bj in b:
            for k in range(abs(i - j), i + j + 1):
                total[k] += ai * bj
    return HarmonicStructure(total)


def symmetric_square(s: HarmonicStructure) -> HarmonicStructure:
    """Structure of ``S^2(V)`` for V with structure ``s``.

    For ``V = ⊕ a_k H^k`` this is
    ``⊕_k [a_k S^2(H^k) ⊕ C(a_k, 2) H^k⊗H^k] ⊕ ⊕_{k<l} a_k a_l H^k⊗H^l``.
    """
    total: Counter = Counter()
    items = sorted(s.multiplicities.items())
    for idx, (k, a) in enumerate(items):
        for order, m in sym_square(k):
            total[order] += a * m
        pairs = a * (a - 1) // 2
        for order, m in clebsch_gordan(k, k):
            total[order] += pairs * m
        for l, b in items[idx + 1:]:
            for order, m in clebsch_gordan(k, l):
                total[order] += a * b * m
    return HarmonicStructure(total)


class SpaceKind(enum.Enum):
    GRAD_STRAIN = "GradStrain"
    SYM_POWER = "SymPower"
    FULL_TENSOR = "FullTensor"
    HARMONIC_SINGLE = "HarmonicSingle"


@dataclass(frozen=True)
class SpaceSpec:
    """A tensor space identified by kind and order.

    ``GradStrain(n)`` is the space of n-th strain gradients,
    ``S^2(R^3) x S^(n-1)(R^3)``; ``SymPower(n)`` is ``S^n(R^3)``;
    ``FullTensor(n)`` is ``⊗^n R^3``; ``HarmonicSingle(k)`` is ``H^k``.
    """

    kind: SpaceKind
    n: int

    def __post_init__(self):
        object.__setattr__(self, "kind", SpaceKind(self.kind))
        _check_order(self.n)
        if self.kind is SpaceKind.GRAD_STRAIN and self.n < 1:
            raise ValueError("GradStrain requires n >= 1")

    def __str__(self):
        return f"{self.kind.value}({self.n})"


def grad_strain(n: int) -> SpaceSpec:
    return SpaceSpec(SpaceKind.GRAD_STRAIN, n)


def sym_power(n: int) -> SpaceSpec:
    return SpaceSpec(SpaceKind.SYM_POWER, n)


def full_tensor(n: int) -> SpaceSpec:
    return SpaceSpec(SpaceKind.FULL_TENSOR, n)


def harmonic_single(k: int) -> SpaceSpec:
    return SpaceSpec(SpaceKind.HARMONIC_SINGLE, k)


def _sym_power_structure(n):
    return HarmonicStructure({k: 1 for k in range(n % 2, n + 1, 2)})


def structure(spec: SpaceSpec) -> HarmonicStructure:
    """Harmonic structure of a tensor space.

    >>> str(structure(grad_strain(2)))
    'H3 + H2 + 2·H1'
    """
    kind, n = spec.kind, spec.n
    if kind is SpaceKind.SYM_POWER:
        return _sym_power_structure(n)
    if kind is SpaceKind.HARMONIC_SINGLE:
        return HarmonicStructure({n: 1})
    if kind is SpaceKind.GRAD_STRAIN:
        return tensor_product(_sym_power_structure(2), _sym_power_structure(n - 1))
    if n > MAX_FULL_TENSOR_ORDER:
        raise OrderBoundError(
            f"FullTensor({n}) exceeds the supported bound n <= {MAX_FULL_TENSOR_ORDER}"
        )
    s = HarmonicStructure({0: 1})
    vector = HarmonicStructure({1: 1})
    for _ in range(n):
        s = tensor_product(s, vector)
    return s


def dimension(s: HarmonicStructure) -> int:
    return sum(a * (2 * k + 1) for k, a in s)


def is_unique(s: HarmonicStructure) -> bool:
    """True iff the decomposition isomorphism is unique (all multiplicities <= 1)."""
    return all(a <= 1 for _, a in s)


def isotropic_endomorphism_dim(s: HarmonicStructure) -> int:
    """Dimension of the SO(3)-invariant symmetric endomorphisms of the space.

    Each order k with multiplicity a contributes a scalar per copy plus one
    coupling scalar per pair of copies, i.e. a(a+1)/2.
    """
    return sum(a * (a + 1) // 2 for _, a in s)


def decompositions_coincide(s: HarmonicStructure) -> bool:
    """Whether the Walpole and Kelvin representations of every isotropic
    symmetric endomorphism agree, i.e. the invariant dimension equals the
    number of harmonic components."""
    return isotropic_endomorphism_dim(s) == s.components


def describe(spec: SpaceSpec) -> dict:
    s = structure(spec)
    return {
        "space": str(spec),
        "structure": str(s),
        "orders": s.to_json(),
        "dimension": dimension(s),
        "unique": is_unique(s),
        "components": s.components,
        "isotropic_coefficients": isotropic_endomorphism_dim(s),
        "walpole_kelvin_coincide": decompositions_coincide(s),
    }


def summary_line(spec: SpaceSpec) -> str:
    d = describe(spec)
    return (
        f"{d['space']}: {d['structure']}, dim {d['dimension']}, "
        f"unique: {'yes' if d['unique'] else 'no'}, "
        f"isotropic coefficients: {d['isotropic_coefficients']}"
    )

