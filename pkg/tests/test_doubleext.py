import numpy as np
import pytest

from mlie.catalog import make_metric
from mlie.curvature import MetricLieAlgebra, Verdict
from mlie.doubleext import (
    ExtensionData,
    check_admissible,
    decompose,
    extend,
    guediri_2step,
    kd_generate,
    killing_ebar,
    model_residual,
    random_admissible,
    ricci_ebar,
)
from mlie.errors import ConstraintViolation, InvalidInput, NotApplicable, NotLie, SingularK0
from mlie.pseudolin import SubspaceTag, classify_subspace


ROT = np.array([[0.0, -1.0], [1.0, 0.0]])


def test_extension_data_antisymmetrizes_k():
    data = ExtensionData(2, np.array([[0.0, 1.0], [0.5, 0.0]]), np.zeros((2, 2)))
    assert np.array_equal(data.K, -data.K.T)
    assert data.K[0, 1] == 1.0  # upper triangle wins


def test_extension_data_shape_validation():
    with pytest.raises(InvalidInput):
        ExtensionData(2, np.zeros((2, 3)), np.zeros((2, 2)))
    with pytest.raises(InvalidInput):
        ExtensionData(2, np.zeros((2, 2)), np.zeros((2, 2)), b=np.zeros(3))


def test_rotation_block_is_admissible():
    data = ExtensionData(2, ROT, np.zeros((2, 2)))
    adm = check_admissible(data)
    assert adm.is_lie
    assert adm.is_nilpotent
    assert not adm.is_einstein  # tr(K²) = −2 ≠ 0 with D = 0


def test_ricci_ebar_oracle_half():
    # D = 0, K the 2x2 rotation: ric(ē,ē) = −¼ tr(K²) = ½
    data = ExtensionData(2, ROT, np.zeros((2, 2)))
    assert ricci_ebar(data) == pytest.approx(0.5)


def test_killing_ebar_formula():
    d = np.diag([2.0, -1.0])
    data = ExtensionData(2, ROT, d, mu=3.0)
    assert killing_ebar(data) == pytest.approx(9.0 + 5.0)  # μ² + tr(D²)


def test_extend_rejects_non_lie_data():
    data = ExtensionData(2, ROT, np.diag([1.0, 2.0]))  # KD + DᵀK ≠ μK
    with pytest.raises(NotLie):
        extend(data)


def test_extend_zero_data_is_abelian_flat():
    data = ExtensionData(3, np.zeros((3, 3)), np.zeros((3, 3)))
    m = extend(data)
    assert m.n == 5
    assert np.abs(m.algebra.c).max() == 0.0
    report = m.einstein_classify()
    assert report.verdict is Verdict.FLAT
    sig = m.signature()
    assert (sig.minus, sig.plus, sig.null) == (1, 4, 0)


def test_extend_einstein_family_is_ricci_flat():
    # K a scaled rotation paired with a nilpotent D balancing the trace term
    for a in (0.5, 1.0, 2.0):
        k = a * ROT
        d = np.array([[0.0, a], [0.0, 0.0]])
        data = ExtensionData(2, k, d)
        adm = check_admissible(data)
        assert adm.is_lie and adm.is_nilpotent and adm.is_einstein
        m = extend(data)
        assert m.algebra.is_nilpotent()
        report = m.einstein_classify()
        assert report.verdict is Verdict.RICCI_FLAT
        assert ricci_ebar(data) == pytest.approx(0.0, abs=1e-12)


def test_extend_bracket_table():
    # [ē, f_i] = D f_i + b_i e and [f_i, f_j] = ⟨K f_i, f_j⟩ e
    k = ROT
    d = np.array([[0.0, 1.0], [0.0, 0.0]])
    b = np.array([0.25, -0.5])
    m = extend(ExtensionData(2, k, d, b=b))
    e = np.eye(4)  # basis (e, f1, f2, ē)
    assert m.algebra.bracket(e[3], e[1]) == pytest.approx([0.25, 0.0, 0.0, 0.0])
    assert m.algebra.bracket(e[3], e[2]) == pytest.approx([-0.5, 1.0, 0.0, 0.0])
    assert m.algebra.bracket(e[1], e[2]) == pytest.approx([1.0, 0.0, 0.0, 0.0])
    assert m.algebra.bracket(e[0], e[3]) == pytest.approx([0.0, 0.0, 0.0, 0.0])
    assert m.gram.inner(e[0], e[3]) == 1.0
    assert m.gram.inner(e[0], e[0]) == 0.0


def test_extend_mu_nonzero_not_nilpotent():
    rng = np.random.default_rng(2)
    data = random_admissible(rng, f_dim=2, blocks=1, nilpotent=False)
    assert data.mu != 0.0
    m = extend(data)
    assert not m.algebra.is_nilpotent()
    obs = m.ricci_via_definition()[m.n - 1, m.n - 1]
    assert ricci_ebar(data) == pytest.approx(obs, abs=1e-9 * max(1.0, abs(obs)))


def test_decompose_roundtrip_seeded():
    rng = np.random.default_rng(7)
    for _ in range(20):
        data = random_admissible(
            rng, f_dim=int(rng.integers(1, 4)), blocks=int(rng.integers(1, 3))
        )
        m = extend(data)
        dec = decompose(m)
        assert dec is not None
        assert dec.data.mu == 0.0
        assert model_residual(m, dec) < 1e-8


def test_decompose_flat_l32():
    m = make_metric("L3_2", "m32", {"alpha": 1.0})
    dec = decompose(m)
    assert dec is not None
    assert dec.data.v_dim == 1
    assert np.abs(dec.data.K).max() == 0.0
    assert np.abs(dec.data.D).max() == 0.0
    assert model_residual(m, dec) < 1e-12


def test_decompose_none_for_definite_center():
    assert decompose(make_metric("EX6")) is None


def test_decompose_rejects_non_ricci_flat():
    from mlie.liealg import LieAlgebra
    from mlie.pseudolin import Gram

    hei = MetricLieAlgebra(
        LieAlgebra.from_brackets(3, {(0, 1): {2: 1.0}}), Gram.minkowski(3)
    )
    with pytest.raises(NotApplicable):
        decompose(hei)


def test_decompose_rejects_non_lorentzian():
    m = make_metric("L3_2", "m32", {"alpha": 1.0})
    euclid = MetricLieAlgebra(m.algebra, np.eye(3))
    with pytest.raises(NotApplicable):
        decompose(euclid)


def test_kd_generate_block_form():
    k0 = ROT
    s = np.diag([1.0, -1.0])
    d1 = np.array([[0.0]])
    d2 = np.array([[1.0, 2.0]])
    data = kd_generate(1, 2, d1, d2, k0, s)
    assert data.v_dim == 3
    adm = check_admissible(data)
    assert adm.is_lie
    # D3 = K0^{-1} S
    assert data.D[1:, 1:] == pytest.approx(np.linalg.solve(k0, s))


def test_kd_generate_validation():
    with pytest.raises(SingularK0):
        kd_generate(1, 2, np.zeros((1, 1)), np.zeros((1, 2)), np.zeros((2, 2)), np.eye(2))
    with pytest.raises(InvalidInput):
        kd_generate(1, 2, np.zeros((1, 1)), np.zeros((1, 2)), np.eye(2), np.eye(2))


def test_random_admissible_nilpotent_properties():
    rng = np.random.default_rng(13)
    for _ in range(10):
        data = random_admissible(rng, f_dim=2, blocks=2)
        adm = check_admissible(data)
        assert adm.is_lie and adm.is_nilpotent and adm.is_einstein


def test_guediri_ricci_flat_and_degenerate_center():
    a = np.array([[0.0, 1.0], [-1.0, 0.0]])
    c = np.array([[1.0], [0.0]])  # Σa² = 2 = 2Σc²
    m = guediri_2step(1, 2, np.array([0.3, -0.7]), c, a, abelian_dim=1)
    assert m.n == 6
    assert m.algebra.is_nilpotent()
    report = m.einstein_classify()
    assert report.verdict is Verdict.RICCI_FLAT
    cls = classify_subspace(m.gram, m.algebra.center())
    assert cls.tag is SubspaceTag.DEGENERATE


def test_guediri_two_step_structure():
    a = np.array([[0.0, 1.0], [-1.0, 0.0]])
    c = np.array([[1.0], [0.0]])
    m = guediri_2step(1, 2, np.zeros(2), c, a)
    derived = m.algebra.derived_ideal()
    center = m.algebra.center()
    for row in derived.basis:
        assert center.contains(row, tol=1e-9)


def test_guediri_constraint_violation():
    a = np.array([[0.0, 1.0], [-1.0, 0.0]])
    c = np.sqrt(0.5) * np.array([[1.0], [1.0]])  # Σa²=2 but 2Σc²=2 ⟹ ok; scale breaks it
    guediri_2step(1, 2, np.zeros(2), c, a)
    with pytest.raises(ConstraintViolation):
        guediri_2step(1, 2, np.zeros(2), np.sqrt(2.0) * c, a)
