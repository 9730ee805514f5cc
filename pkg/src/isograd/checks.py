"""Self-checks of the library invariants, run by ``isograd verify``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import harmonic_parts as hp
from . import harmonic_structure as hs
from . import walpole as wp
from .tensor_algebra import Grad6, Tensor3, mat18_to_grad6, random_rotation, rotate_g6


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def __post_init__(self):
        object.__setattr__(self, "passed", bool(self.passed))

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}: {self.detail}"


def _err(name, value, tol):
    return CheckResult(name, bool(value < tol), f"max error {value:.2e} (tol {tol:.0e})")


def check_basis():
    return _err("basis orthogonality", wp.basis_matrix().orthogonality_error(), 1e-14)


def check_partition():
    ops = wp.operators()
    total = ops.p_h3 + ops.p_str + ops.p_h2 + ops.p_rot
    return _err("partition of identity", float(np.abs(total - np.eye(18)).max()), 1e-14)


def check_projectors():
    ops = wp.operators()
    err = 0.0
    for p in (ops.p_h3, ops.p_str, ops.p_h2, ops.p_rot):
        err = max(err, np.abs(p @ p - p).max(), np.abs(p - p.T).max())
    err = max(err, np.abs(ops.q_rs - ops.q_sr.T).max())
    return _err("projector idempotence and symmetry", float(err), 1e-12)


def check_table():
    try:
        table = wp.multiplication_table()
    except Exception as exc:  # classification failure is a check failure here
        return CheckResult("multiplication table", False, str(exc))
    bad = [
        (wp.GENERATOR_LABELS[i], wp.GENERATOR_LABELS[j])
        for i in range(6) for j in range(6)
        if table[i][j] != wp.EXPECTED_TABLE[i][j]
    ]
    detail = "36 products classified" if not bad else f"mismatched cells {bad}"
    return CheckResult("multiplication table", not bad, detail)


def check_span():
    got, want = wp.isotropic_span_dimension(), wp.expected_isotropic_dimension()
    return CheckResult("isotropic span dimension", got == want == 5, f"{got} (expected {want})")


def check_structures():
    expected = {
        1: ({2: 1, 0: 1}, 6, True),
        2: ({3: 1, 2: 1, 1: 2}, 18, False),
        3: ({4: 1, 3: 1, 2: 3, 1: 1, 0: 2}, 36, False),
    }
    ok = True
    for n, (mult, dim, uniq) in expected.items():
        s = hs.structure(hs.grad_strain(n))
        ok &= s == hs.HarmonicStructure(mult) and hs.dimension(s) == dim and hs.is_unique(s) == uniq
    return CheckResult("strain-gradient structures n=1..3", ok, "exact match" if ok else "mismatch")


def check_moduli_round_trip(rng):
    err = 0.0
    for _ in range(100):
        m = wp.IsotropicModuli.from_array(rng.uniform(-10, 10, 5))
        err = max(err, np.abs(wp.extract_moduli(wp.assemble(m)).as_array() - m.as_array()).max())
    return _err("moduli round trip", float(err), 1e-12)


def check_decomposition(rng):
    err = agree = 0.0
    for _ in range(100):
        t = Tensor3(rng.standard_normal(18))
        parts = hp.decompose_t3(t)
        err = max(err, np.abs(hp.reconstruct_t3(parts).vec18 - t.vec18).max() / t.norm())
        for name, emb in parts.embedded().items():
            agree = max(agree, np.abs(wp.project(t, name).vec18 - emb.vec18).max())
    ok = err < 1e-13 and agree < 1e-12
    return CheckResult(
        "decomposition round trip and projector agreement", ok,
        f"round trip {err:.2e}, projector agreement {agree:.2e}",
    )


def check_isotropy(rng, seed):
    m = wp.IsotropicModuli.from_array(rng.uniform(-10, 10, 5))
    a = wp.assemble(m)
    err = max(
        np.linalg.norm(rotate_g6(random_rotation(seed + i), a).mat18 - a.mat18) / a.norm()
        for i in range(10)
    )
    return _err("isotropy of assembled tensors", float(err), 1e-10)


def check_codecs(rng):
    t = Tensor3(rng.standard_normal(18))
    e1 = np.abs(Tensor3.from_full(t.full()).vec18 - t.vec18).max()
    x = rng.standard_normal((18, 18))
    a = Grad6(x + x.T)
    e2 = np.abs(Grad6.from_full(mat18_to_grad6(a.mat18)).mat18 - a.mat18).max()
    e3 = abs(np.linalg.norm(a.full()) - a.norm())
    return _err("codec round trips", float(max(e1, e2, e3)), 1e-12)


def check_rotation_routes(rng, seed):
    x = rng.standard_normal((18, 18))
    a = Grad6(x + x.T)
    q = random_rotation(seed)
    err = np.abs(rotate_g6(q, a, "index").mat18 - rotate_g6(q, a, "matrix").mat18).max()
    return _err("rotation routes agree", float(err), 1e-12)


def run_checks(seed: int = 0) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    return [
        check_basis(),
        check_partition(),
        check_projectors(),
        check_table(),
        check_span(),
        check_structures(),
        check_moduli_round_trip(rng),
        check_decomposition(rng),
        check_isotropy(rng, seed),
        check_codecs(rng),
        check_rotation_routes(rng, seed),
    ]
