import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isograd import harmonic_parts as hp
from isograd import walpole as wp
from isograd.errors import ClassificationFailure
from isograd.harmonic_parts import ClassicalModuli, classical_isotropic
from isograd.tensor_algebra import Grad6, Rotation, Tensor3, random_rotation, rotate_g6

from oracles import commutant_symmetric_dim, jacobi_eigenvalues

M = wp.IsotropicModuli
moduli = st.tuples(*[st.floats(min_value=-10, max_value=10, allow_nan=False)] * 5).map(
    lambda x: M(*x)
)
r = np.sqrt


def random_moduli(rng):
    return M.from_array(rng.uniform(-10, 10, 5))


# -- basis and operators --------------------------------------------------------

def test_basis_column_examples():
    p = wp.basis_matrix().p_matrix
    col1 = [r(2 / 5), -1 / r(10), -1 / r(5), -1 / r(10), -1 / r(5)]
    col8 = [r(3 / 5), 1 / r(15), r(2 / 15), 1 / r(15), r(2 / 15)]
    assert np.allclose(p[:5, 0], col1, atol=1e-16)
    assert np.allclose(p[:5, 7], col8, atol=1e-16)


def test_basis_orthogonal():
    basis = wp.basis_matrix()
    assert basis.orthogonality_error() < 1e-15
    p = basis.p_matrix
    assert np.abs(p @ p.T - np.eye(18)).max() < 1e-15
    assert basis.block("h2").shape == (18, 5)
    assert wp.basis_matrix() is basis and wp.operators() is wp.operators()


def test_basis_columns_are_harmonic():
    # each block spans exactly the image of the matching decomposition part
    p = wp.basis_matrix().p_matrix
    for name, sl in wp.BLOCKS.items():
        for col in p[:, sl].T:
            parts = hp.decompose_t3(Tensor3(col)).embedded()
            assert np.allclose(parts[name].vec18, col, atol=1e-14)


def test_operator_traces():
    ops = wp.operators()
    assert np.trace(ops.p_h3) == pytest.approx(7, abs=1e-14)
    assert np.trace(ops.p_h2) == pytest.approx(5, abs=1e-14)
    assert np.trace(ops.p_str) == pytest.approx(3, abs=1e-14)
    assert np.trace(ops.p_rot) == pytest.approx(3, abs=1e-14)
    assert abs(np.trace(ops.q_sr)) < 1e-14


def test_partition_of_identity():
    ops = wp.operators()
    total = ops.p_h3 + ops.p_str + ops.p_h2 + ops.p_rot
    assert np.abs(total - np.eye(18)).max() < 1e-14


def test_operator_examples():
    ops = wp.operators()
    assert np.abs(ops.q_sr @ ops.q_sr).max() < 1e-15
    assert np.abs(ops.p_h2 @ ops.p_h2 - ops.p_h2).max() < 1e-15
    assert np.abs(ops.q_sr @ ops.q_rs - ops.p_str).max() < 1e-15
    assert np.abs(ops.q_rs @ ops.q_sr - ops.p_rot).max() < 1e-15
    assert np.abs(ops.p_h3 @ ops.p_h2).max() < 1e-15


def test_multiplication_table():
    table = wp.multiplication_table()
    assert [tuple(row) for row in table] == list(wp.EXPECTED_TABLE)
    labels = dict(zip(wp.GENERATOR_LABELS, range(6)))

    def cell(a, b):
        return table[labels[a]][labels[b]]

    assert cell("P_str", "Q_sr") == "Q_sr"
    assert cell("Q_sr", "P_rot") == "Q_sr"
    assert cell("Q_rs", "P_str") == "Q_rs"
    assert cell("P_rot", "Q_rs") == "Q_rs"
    assert cell("Q_rs", "Q_rs") == "0"
    for g in wp.GENERATOR_LABELS:
        if g not in ("P_H3",):
            assert cell("P_H3", g) == "0" and cell(g, "P_H3") == "0"


def test_classify_rejects_unknown():
    with pytest.raises(ClassificationFailure, match="nearest"):
        wp.classify(2.0 * wp.operators().p_h3)
    with pytest.raises(ClassificationFailure):
        wp.classify(np.eye(18))
    assert wp.classify(np.zeros((18, 18))) == wp.ZERO


def test_isotropic_span_dimension():
    assert wp.isotropic_span_dimension() == 5 == wp.expected_isotropic_dimension()


# -- moduli ---------------------------------------------------------------------

def test_extract_identity():
    m = wp.extract_moduli(Grad6.identity())
    assert np.abs(m.as_array() - [1, 1, 1, 1, 0]).max() < 1e-14


def test_extract_scaled_identity():
    m = wp.extract_moduli(3.0 * wp.assemble(M(1, 1, 1, 1, 0)))
    assert np.abs(m.as_array() - [3, 3, 3, 3, 0]).max() < 1e-13


def test_moduli_round_trip(rng):
    err = 0.0
    for _ in range(1000):
        m = random_moduli(rng)
        err = max(err, np.abs(wp.extract_moduli(wp.assemble(m)).as_array() - m.as_array()).max())
    assert err < 1e-12


@settings(max_examples=50)
@given(moduli)
def test_assemble_extract_is_projection(m):
    a = wp.assemble(m)
    again = wp.assemble(wp.extract_moduli(a))
    assert np.abs(again.mat18 - a.mat18).max() < 1e-12 * max(1.0, a.norm())


def test_assemble_examples():
    assert np.array_equal(wp.assemble(M(1, 1, 1, 1, 0)).mat18, np.eye(18))
    assert not wp.assemble(M(0, 0, 0, 0, 0)).mat18.any()


def test_assemble_isotropic(rng):
    for _ in range(5):
        a = wp.assemble(random_moduli(rng))
        for seed in range(20):
            rotated = rotate_g6(random_rotation(seed), a)
            assert np.linalg.norm(rotated.mat18 - a.mat18) / a.norm() < 1e-10


def test_moduli_json():
    m = M(1.5, -2.0, 0.0, 3.25, 1e-300)
    assert M.from_json(m.to_json()) == m
    assert list(m.to_json()) == ["ms3", "ms1", "mr2", "mr1", "mc1"]


# -- harmonic-basis matrix ------------------------------------------------------

def test_to_harmonic_basis_diagonal_example():
    ah = wp.to_harmonic_basis(wp.assemble(M(2, 3, 5, 7, 0)))
    want = [2] * 7 + [3] * 3 + [5] * 5 + [7] * 3
    assert np.abs(ah - np.diag(want)).max() < 1e-14


def test_to_harmonic_basis_coupling_blocks(rng):
    m = M(1.0, 2.0, 3.0, 4.0, -0.6)
    ah = wp.to_harmonic_basis(wp.assemble(m))
    assert np.abs(ah - wp.harmonic_matrix(m)).max() < 1e-14
    assert np.abs(ah[wp.V_STR, wp.V_ROT] + 0.6 * np.eye(3)).max() < 1e-14
    assert np.abs(ah[wp.V_ROT, wp.V_STR] + 0.6 * np.eye(3)).max() < 1e-14
    assert np.abs(wp.to_harmonic_basis(Grad6.identity()) - np.eye(18)).max() < 1e-15


def test_schur_blocks_of_isotropic(rng):
    for _ in range(20):
        dev = wp.schur_block_deviation(wp.assemble(random_moduli(rng)))
        assert max(dev.values()) < 1e-11
    x = rng.standard_normal((18, 18))
    assert max(wp.schur_block_deviation(Grad6(x + x.T)).values()) > 1e-3


def test_commutant_dimension():
    # independent count of isotropic self-adjoint operators on each space
    gens = [Rotation.about_axis([0, 0, 1], 0.9), Rotation.about_axis([1, 0.3, 0], 1.7)]
    assert commutant_symmetric_dim([q.rep18() for q in gens]) == 5
    reps6 = []
    for q in gens:
        qm = q.matrix
        cols = [hp.mandel6(qm @ hp.unmandel6(c) @ qm.T) for c in np.eye(6)]
        reps6.append(np.column_stack(cols))
    assert commutant_symmetric_dim(reps6) == 2


def test_commutant_is_walpole_span():
    ops = wp.operators()
    span = np.array([
        ops.p_h3.ravel(), ops.p_str.ravel(), ops.p_h2.ravel(), ops.p_rot.ravel(),
        (ops.q_sr + ops.q_rs).ravel(),
    ])
    q = Rotation.about_axis([1, 2, 3], 1.1).rep18()
    for row in span:
        x = row.reshape(18, 18)
        assert np.abs(q @ x @ q.T - x).max() < 1e-13


# -- spectrum -------------------------------------------------------------------

def expected_spectrum(m):
    lp, lm = wp.vector_block_eigenvalues(m)
    return np.sort([m.ms3] * 7 + [m.mr2] * 5 + [lp] * 3 + [lm] * 3)[::-1]


def test_kelvin_spectrum_identity():
    assert wp.kelvin_spectrum(Grad6.identity()) == [(1.0, 18)]


def test_kelvin_spectrum_closed_form(rng):
    for _ in range(20):
        m = random_moduli(rng)
        a = wp.assemble(m)
        got = jacobi_eigenvalues(a.mat18)
        assert np.abs(got - expected_spectrum(m)).max() < 1e-9 * max(1.0, np.abs(got).max())
        counts = sorted(n for _, n in wp.kelvin_spectrum(a))
        assert counts == [3, 3, 5, 7]


def test_kelvin_spectrum_example():
    m = M(4.0, 1.0, 2.0, 1.0, 0.5)
    spec = wp.kelvin_spectrum(wp.assemble(m))
    values = dict((round(v, 12), n) for v, n in spec)
    assert values == {4.0: 7, 2.0: 5, 1.5: 3, 0.5: 3}


def test_kelvin_modes(rng):
    a = wp.assemble(random_moduli(rng))
    w, v = wp.kelvin_modes(a)
    assert np.all(np.diff(w) <= 0)
    assert np.abs(v @ np.diag(w) @ v.T - a.mat18).max() < 1e-12


def test_cluster_eigenvalues():
    assert wp.cluster_eigenvalues([]) == []
    assert wp.cluster_eigenvalues([1.0, 1.0 + 1e-12, 3.0]) == [(3.0, 1), (pytest.approx(1.0), 2)]
    assert len(wp.cluster_eigenvalues([1.0, 1.0 + 1e-6])) == 2
    assert wp.cluster_eigenvalues([0.0, 0.0]) == [(0.0, 2)]


def test_kelvin_spectrum_classical():
    c = classical_isotropic(ClassicalModuli(2.0, 0.5))
    assert wp.kelvin_spectrum(c) == [(pytest.approx(6.0), 1), (pytest.approx(1.0), 5)]


# -- isotropy detection ---------------------------------------------------------

def test_is_isotropic_examples(rng):
    assert wp.is_isotropic(wp.assemble(random_moduli(rng)), trials=50, tol=1e-9)
    assert wp.is_isotropic(Grad6.zeros())
    e = np.zeros(18)
    e[0] = 1.0
    assert not wp.is_isotropic(Grad6(np.eye(18) + 0.1 * np.outer(e, e)))


def test_is_isotropic_detects_small_perturbation(rng):
    a = wp.assemble(random_moduli(rng))
    u = rng.standard_normal(18)
    u /= np.linalg.norm(u)
    pert = Grad6(a.mat18 + 1e-3 * a.norm() * np.outer(u, u))
    assert not wp.is_isotropic(pert)


def test_is_isotropic_validates():
    with pytest.raises(ValueError):
        wp.is_isotropic(Grad6.identity(), trials=0)
    with pytest.raises(ValueError):
        wp.is_isotropic(Grad6.identity(), tol=0.0)


# -- flags, ratio ---------------------------------------------------------------

@pytest.mark.parametrize(
    "m, flags",
    [
        (M(1, 1, 1, 1, 1), {wp.VECTOR_BLOCK_SINGULAR, wp.NOT_POSITIVE_DEFINITE}),
        (M(1, 1, 1, 1, 0), set()),
        (M(0, 1, 1, 1, 0), {wp.MS3_ZERO, wp.NOT_POSITIVE_DEFINITE}),
        (M(1, 1, 0, 1, 0), {wp.MR2_ZERO, wp.NOT_POSITIVE_DEFINITE}),
        (M(1, 1, 1, 1, 2), {wp.NOT_POSITIVE_DEFINITE}),
        (M(-1, 1, 1, 1, 0), {wp.NOT_POSITIVE_DEFINITE}),
    ],
)
def test_singularity_flags(m, flags):
    assert wp.singularity_flags(m) == flags


@settings(max_examples=100)
@given(moduli)
def test_positive_definite_flag_matches_spectrum(m):
    pd = wp.NOT_POSITIVE_DEFINITE not in wp.singularity_flags(m, tol=0.0)
    assert pd == bool(expected_spectrum(m).min() > 0)


@pytest.mark.parametrize(
    "m, ratio",
    [(M(1, 1, 1, 1, 0.3), 1.0), (M(1, 0, 0, 0, 0), 0.0), (M(3, 4, 6, 8, 0), 2.0)],
)
def test_rotation_stretch_ratio(m, ratio):
    assert wp.rotation_stretch_ratio(m) == pytest.approx(ratio, abs=1e-15)


def test_rotation_stretch_ratio_undefined():
    with pytest.raises(ZeroDivisionError):
        wp.rotation_stretch_ratio(M(0, 0, 1, 1, 0))


# -- constitutive law -----------------------------------------------------------

def test_apply_identity(rng):
    eta = Tensor3(rng.standard_normal(18))
    assert np.allclose(wp.apply_law(Grad6.identity(), eta).vec18, eta.vec18, atol=1e-15)


def test_apply_pure_h3(rng):
    m = random_moduli(rng)
    eta = wp.project(Tensor3(rng.standard_normal(18)), "h3")
    tau = wp.apply_law(wp.assemble(m), eta)
    assert np.abs(tau.vec18 - m.ms3 * eta.vec18).max() < 1e-12


def test_apply_law_harmonic_relations(rng):
    for _ in range(50):
        m = random_moduli(rng)
        eta = Tensor3(rng.standard_normal(18))
        c_eta = wp.harmonic_coordinates(eta)
        c_tau = wp.harmonic_coordinates(wp.apply_law(wp.assemble(m), eta))
        assert np.abs(c_tau["h3"] - m.ms3 * c_eta["h3"]).max() < 1e-11
        assert np.abs(c_tau["h2"] - m.mr2 * c_eta["h2"]).max() < 1e-11
        assert np.abs(c_tau["v_str"] - m.ms1 * c_eta["v_str"] - m.mc1 * c_eta["v_rot"]).max() < 1e-11
        assert np.abs(c_tau["v_rot"] - m.mc1 * c_eta["v_str"] - m.mr1 * c_eta["v_rot"]).max() < 1e-11


def test_stretch_gradient_generates_rotation_response():
    m = M(1.3, 2.1, 0.7, 1.9, 0.45)
    v = np.array([0.3, -1.2, 0.8])
    eta = hp.embed_v_str(v)
    tau = wp.apply_law(wp.assemble(m), eta)
    parts = hp.decompose_t3(tau)
    # hand-derived: coordinates are sqrt(3/5) v for v_str and -(2/sqrt 3) v for v_rot
    assert np.allclose(parts.v_rot, -1.5 / np.sqrt(5) * m.mc1 * v, atol=1e-14)
    assert np.allclose(parts.v_str, m.ms1 * v, atol=1e-14)
    assert np.abs(parts.h3).max() < 1e-14 and np.abs(parts.h2).max() < 1e-14


# -- projections and comparison -------------------------------------------------

def test_project_matches_decomposition(rng):
    t = Tensor3(rng.standard_normal(18))
    total = sum((wp.project(t, n).vec18 for n in wp.BLOCKS), np.zeros(18))
    assert np.abs(total - t.vec18).max() < 1e-14
    for name, part in hp.decompose_t3(t).embedded().items():
        assert np.abs(wp.project(t, name).vec18 - part.vec18).max() < 1e-12


def test_compare_boundary(rng):
    m = random_moduli(rng)
    uncoupled = wp.compare(wp.assemble(M(m.ms3, m.ms1, m.mr2, m.mr1, 0.0)))
    assert uncoupled.coincide and uncoupled.offdiagonal_norm < 1e-13
    coupled = wp.compare(wp.assemble(M(m.ms3, m.ms1, m.mr2, m.mr1, 0.25)))
    assert not coupled.coincide
    assert coupled.coupling_norm == pytest.approx(0.25 * np.sqrt(3), abs=1e-13)
    assert coupled.offdiagonal_norm == pytest.approx(0.25 * np.sqrt(6), abs=1e-13)
    js = coupled.to_json()
    assert set(js) == {"offdiagonal_norm", "tolerance", "walpole_equals_kelvin",
                       "coupling_block_norm", "spectrum"}
    assert sum(s["multiplicity"] for s in js["spectrum"]) == 18
