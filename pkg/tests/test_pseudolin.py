import numpy as np
import pytest

from mlie.errors import InvalidInput
from mlie.pseudolin import (
    Gram,
    Signature,
    Subspace,
    SubspaceTag,
    classify_subspace,
    find_isotropic_in,
    nullspace,
    numerical_rank,
    orthogonal_complement,
    orthonormal_basis,
    restricted_gram,
    signature,
)


def test_gram_symmetrized_bit_exact():
    g = Gram(np.array([[1.0, 0.3], [0.7, 2.0]]))
    assert np.array_equal(g.mat, g.mat.T)
    assert g.mat[0, 1] == 0.5


def test_gram_factories():
    assert np.array_equal(Gram.euclidean(3).mat, np.eye(3))
    mink = Gram.minkowski(4)
    assert mink.mat[0, 0] == -1.0
    assert np.array_equal(np.diag(mink.mat), [-1.0, 1.0, 1.0, 1.0])
    assert Gram.from_diagonal([2.0, -3.0]).inner([1, 0], [1, 0]) == 2.0


def test_gram_rejects_nonsquare():
    with pytest.raises(InvalidInput):
        Gram(np.zeros((2, 3)))


def test_signature_minkowski():
    assert signature(Gram.minkowski(4)) == Signature(minus=1, plus=3, null=0)


def test_signature_with_null_direction():
    g = Gram.from_diagonal([1.0, 0.0, -2.0])
    assert signature(g) == Signature(minus=1, plus=1, null=1)


def test_signature_boundary_counts_null():
    # eigenvalues straddling the tolerance cut: exactly-at-cut goes to null
    g = Gram.from_diagonal([1.0, 1e-12])
    assert signature(g) == Signature(minus=0, plus=1, null=1)


def test_numerical_rank_and_nullspace():
    m = np.array([[1.0, 2.0], [2.0, 4.0]])
    assert numerical_rank(m) == 1
    ns = nullspace(m)
    assert ns.shape == (1, 2)
    assert np.allclose(m @ ns[0], 0.0)


def test_subspace_validation():
    with pytest.raises(InvalidInput):
        Subspace(2, np.array([[1.0, 0.0], [2.0, 0.0]]))  # dependent rows
    s = Subspace(3, np.array([[1.0, 0.0, 0.0]]))
    assert s.dim == 1
    assert s.contains([2.0, 0.0, 0.0])
    assert not s.contains([0.0, 1.0, 0.0])


def test_classify_trichotomy():
    g = Gram.minkowski(3)
    spacelike = Subspace(3, np.array([[0.0, 1.0, 0.0]]))
    assert classify_subspace(g, spacelike).tag is SubspaceTag.EUCLIDEAN
    timelike_plane = Subspace(3, np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]))
    assert classify_subspace(g, timelike_plane).tag is SubspaceTag.LORENTZIAN
    lightlike = Subspace(3, np.array([[1.0, 1.0, 0.0]]))
    cls = classify_subspace(g, lightlike)
    assert cls.tag is SubspaceTag.DEGENERATE
    assert cls.null_dim == 1


def test_classify_rejects_higher_index():
    g = Gram.from_diagonal([-1.0, -1.0, 1.0])
    f = Subspace(3, np.eye(3)[:2])
    with pytest.raises(InvalidInput):
        classify_subspace(g, f)


def test_restricted_gram():
    g = Gram.minkowski(3)
    f = Subspace(3, np.array([[1.0, 1.0, 0.0], [0.0, 0.0, 1.0]]))
    r = restricted_gram(g, f)
    assert r.mat == pytest.approx(np.array([[0.0, 0.0], [0.0, 1.0]]))


def test_orthogonal_complement():
    g = Gram.minkowski(3)
    f = Subspace(3, np.array([[1.0, 1.0, 0.0]]))
    comp = orthogonal_complement(g, f)
    assert comp.dim == 2
    # the isotropic line lies in its own complement
    assert comp.contains([1.0, 1.0, 0.0])


def test_find_isotropic_none_in_definite():
    g = Gram.minkowski(3)
    f = Subspace(3, np.array([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]))
    assert find_isotropic_in(g, f) is None


def test_find_isotropic_in_degenerate_and_lorentzian():
    g = Gram.minkowski(3)
    lightlike = Subspace(3, np.array([[1.0, 1.0, 0.0]]))
    v = find_isotropic_in(g, lightlike)
    assert v is not None
    assert g.inner(v, v) == pytest.approx(0.0, abs=1e-12)
    assert np.linalg.norm(v) == pytest.approx(1.0)

    plane = Subspace(3, np.eye(3)[:2])
    w = find_isotropic_in(g, plane)
    assert w is not None
    assert g.inner(w, w) == pytest.approx(0.0, abs=1e-12)
    assert plane.contains(w)


def test_find_isotropic_random_lorentzian_planes():
    rng = np.random.default_rng(5)
    g = Gram.minkowski(4)
    for _ in range(25):
        while True:
            rows = rng.normal(size=(2, 4))
            f = Subspace(4, rows, tol=1e-6) if numerical_rank(rows) == 2 else None
            if f is not None and classify_subspace(g, f).tag is SubspaceTag.LORENTZIAN:
                break
        v = find_isotropic_in(g, f)
        assert v is not None
        assert abs(g.inner(v, v)) < 1e-10
        assert f.contains(v, tol=1e-8)


def test_orthonormal_basis_minkowski():
    g = Gram.minkowski(3)
    b, eps = orthonormal_basis(g)
    prod = b.T @ g.mat @ b
    assert prod == pytest.approx(np.diag(eps), abs=1e-12)
    assert sorted(eps) == [-1.0, 1.0, 1.0]


def test_orthonormal_basis_random_nondegenerate():
    rng = np.random.default_rng(11)
    for _ in range(20):
        n = int(rng.integers(2, 7))
        a = np.eye(n) + 0.3 * rng.normal(size=(n, n))
        eta = rng.choice([-1.0, 1.0], size=n)
        g = Gram(a.T @ np.diag(eta) @ a)
        b, eps = orthonormal_basis(g)
        assert b.T @ g.mat @ b == pytest.approx(np.diag(eps), abs=1e-9)


def test_orthonormal_basis_rejects_degenerate():
    with pytest.raises(InvalidInput):
        orthonormal_basis(Gram.from_diagonal([1.0, 0.0]))
