import math

import numpy as np
import pytest

import orthokit as ok

HILL = np.array(
    [[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, 1, 0], [-1, 0, 1], [0, -1, 1]], dtype=float
)
HILL_RHS = np.array([1237, 1941, 2417, 711, 1177, 475], dtype=float)


@pytest.mark.parametrize("method", ["auto", "normal", "qr", "qr-pivoted", "svd"])
def test_lstsq_hill(method):
    sol = ok.lstsq(HILL, HILL_RHS, method=method)
    np.testing.assert_allclose(sol["x"], [1236, 1943, 2416], atol=1e-9)
    assert sol["residual_norm"] == pytest.approx(math.sqrt(35))


@pytest.mark.parametrize("method", ["householder", "givens"])
def test_qr_reconstructs(method):
    rng = np.random.default_rng(1)
    a = rng.standard_normal((7, 4))
    q, r = ok.qr(a, method=method)
    np.testing.assert_allclose(q @ r, a, atol=1e-12)
    np.testing.assert_allclose(q.T @ q, np.eye(7), atol=1e-12)
    assert np.allclose(np.tril(r, -1), 0)


def test_pivoted_qr_rank():
    a = HILL.copy()
    a[:, 2] = a[:, 0] + a[:, 1]
    q, r, perm, rank = ok.qr(a, method="pivoted")
    assert rank == 2
    np.testing.assert_allclose(q @ r, a[:, perm], atol=1e-12)


def test_svd_matches_numpy():
    rng = np.random.default_rng(2)
    a = rng.standard_normal((6, 4))
    u, s, vt = ok.svd(a)
    np.testing.assert_allclose(s, np.linalg.svd(a, compute_uv=False), rtol=1e-12)
    np.testing.assert_allclose(u @ np.diag(s) @ vt, a, atol=1e-12)
    u, s, vt = ok.svd(a, full=True)
    assert u.shape == (6, 6) and vt.shape == (4, 4)


def test_pinv_low_rank_and_norms():
    rng = np.random.default_rng(3)
    a = rng.standard_normal((5, 3))
    np.testing.assert_allclose(ok.pinv(a), np.linalg.pinv(a), atol=1e-12)
    s = np.linalg.svd(a, compute_uv=False)
    assert ok.norm2(a) == pytest.approx(s[0])
    assert ok.cond2(a) == pytest.approx(s[0] / s[-1])
    assert np.linalg.norm(a - ok.low_rank(a, 1), 2) == pytest.approx(s[1])
    assert ok.numerical_rank(a) == 3


def test_projector_golden():
    four_p = np.array(
        [
            [2, 1, 1, -1, -1, 0],
            [1, 2, 1, 1, 0, -1],
            [1, 1, 2, 0, 1, 1],
            [-1, 1, 0, 2, 1, -1],
            [-1, 0, 1, 1, 2, 1],
            [0, -1, 1, -1, 1, 2],
        ]
    )
    np.testing.assert_allclose(ok.projector(HILL), four_p / 4, atol=1e-14)


def test_jacobi_and_pca():
    values, vectors = ok.jacobi_eig(np.array([[17.0, 8.0], [8.0, 17.0]]))
    np.testing.assert_allclose(values, [25, 9], atol=1e-12)
    t = np.arange(7.0) - 3
    x = np.column_stack([3 * t, 4 * t])
    model = ok.pca(x, 1)
    assert abs(model["components"][:, 0] @ [0.6, 0.8]) == pytest.approx(1.0)
    np.testing.assert_allclose(model["reduced"], x, atol=1e-12)


def test_errors_map_to_exception_types():
    with pytest.raises(ok.DimensionError):
        ok.lstsq(HILL, np.ones(4))
    eps = 1e-9
    with pytest.raises(ok.RankDeficientError):
        ok.lstsq(np.array([[1, 1], [eps, 0], [0, eps]]), np.array([2, eps, eps]), method="normal")
    with pytest.raises(ok.InvalidArgument):
        ok.lstsq(HILL, HILL_RHS, method="magic")
    with pytest.raises(ok.Error):
        ok.cond2(np.zeros((2, 2)))
    with pytest.raises(ok.DimensionError):
        ok.svd(np.ones(3))


def test_specific_exception_types_are_distinct():
    with pytest.raises(ok.InvalidArgument) as info:
        ok.qr(HILL, method="magic")
    assert not isinstance(info.value, ok.DimensionError)
    assert issubclass(ok.RankDeficientError, ok.Error)
    assert issubclass(ok.Error, RuntimeError)
