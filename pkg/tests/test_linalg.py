"""Substrate checks: constructors, norms, logs, exponentials, polar, spectra."""

import json

import numpy as np
import pytest

import schatten_geo as sg
from schatten_geo.linalg import as_hermitian, as_skew_hermitian, as_square, as_unitary
from schatten_geo.rng import complex_gaussian, haar_unitary, random_skew, substream


def test_square_validation():
    with pytest.raises(ValueError):
        as_square(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        as_square(np.zeros(3))


def test_constrained_constructors():
    rng = substream(0, "linalg/constructors")
    g = complex_gaussian(rng, 4)
    h = as_hermitian(g + g.conj().T)
    assert np.linalg.norm(h - h.conj().T) == 0.0
    s = as_skew_hermitian(g - g.conj().T)
    assert np.linalg.norm(s + s.conj().T) == 0.0
    u = as_unitary(haar_unitary(rng, 4) + 1e-10 * g)
    assert np.linalg.norm(u.conj().T @ u - np.eye(4)) < 1e-13
    with pytest.raises(ValueError):
        as_hermitian(g + g.conj().T + 1e-3 * 1j * np.eye(4))
    with pytest.raises(ValueError):
        as_unitary(2 * np.eye(4))


def test_schatten_norm_examples():
    assert sg.schatten_norm(np.eye(4), 2) == pytest.approx(2.0)
    # singular values of diag(i, -i) are both 1, so (1 + 1)^(1/4)
    assert sg.schatten_norm(np.diag([1j, -1j]), 4) == pytest.approx(2 ** 0.25)
    assert sg.schatten_norm(np.diag([3j, 1j]), np.inf) == pytest.approx(3.0)


@pytest.mark.parametrize("bad_p", [3, 1, 0, -2, 2.5])
def test_schatten_norm_rejects_bad_index(bad_p):
    with pytest.raises(ValueError):
        sg.schatten_norm(np.eye(2), bad_p)


def test_unitary_invariance_of_norms():
    rng = substream(0, "linalg/invariance")
    for t in range(50):
        m = complex_gaussian(rng, 5)
        u, v = haar_unitary(rng, 5), haar_unitary(rng, 5)
        for p in (2, 4, 6, np.inf):
            ref = sg.schatten_norm(m, p)
            assert abs(sg.schatten_norm(u @ m @ v, p) - ref) <= 1e-10 * ref


def test_norm_ordering():
    rng = substream(0, "linalg/ordering")
    for t in range(50):
        m = complex_gaussian(rng, 5)
        n_inf = sg.schatten_norm(m, np.inf)
        n_2 = sg.schatten_norm(m, 2)
        for p in (4, 6):
            n_p = sg.schatten_norm(m, p)
            assert n_inf <= n_p + 1e-12 and n_p <= n_2 + 1e-12


def test_unitary_log_examples():
    np.testing.assert_allclose(sg.unitary_log(np.eye(3)), np.zeros((3, 3)))
    u = np.diag([np.exp(1j * np.pi / 2), 1.0])
    np.testing.assert_allclose(sg.unitary_log(u), np.diag([1j * np.pi / 2, 0]),
                               atol=1e-14)


def test_unitary_log_branch_at_half_turn():
    # eigenvalue -1 maps to +pi, never -pi
    z = sg.unitary_log(np.diag([-1.0, 1.0]))
    np.testing.assert_allclose(z, np.diag([1j * np.pi, 0]), atol=1e-14)


def test_log_exp_roundtrip():
    rng = substream(0, "linalg/roundtrip")
    for t in range(50):
        u = haar_unitary(rng, 5)
        z = sg.unitary_log(u)
        assert sg.schatten_norm(z, np.inf) <= np.pi + 1e-12
        assert np.linalg.norm(sg.exp_skew(z) - u) <= 1e-10
        w = random_skew(rng, 5, norm=rng.uniform(0.1, np.pi - 0.05), p=np.inf)
        assert np.linalg.norm(sg.unitary_log(sg.exp_skew(w)) - w) <= 1e-9


def test_exp_skew_examples():
    np.testing.assert_allclose(sg.exp_skew(np.zeros((2, 2))), np.eye(2))
    np.testing.assert_allclose(sg.exp_skew(np.diag([1j * np.pi, 0])),
                               np.diag([-1.0, 1.0]), atol=1e-14)
    rng = substream(0, "linalg/exp-unitarity")
    for t in range(50):
        u = sg.exp_skew(random_skew(rng, 6, norm=rng.uniform(0.1, 5.0), p=2))
        assert np.linalg.norm(u.conj().T @ u - np.eye(6)) <= 1e-12


def test_eigenphase_estimate():
    # |t|^p (1 - t^2/12)^(p/2) <= |e^{it} - 1|^p for every eigenphase
    rng = substream(0, "linalg/eigenphase")
    for t in range(100):
        phases, lam, _ = sg.linalg.unitary_eigenphases(haar_unitary(rng, 5))
        for p in (2, 4, 6):
            lhs = np.abs(phases) ** p * (1 - phases**2 / 12) ** (p / 2)
            rhs = np.abs(lam - 1) ** p
            assert np.all(lhs <= rhs + 1e-12)


def test_polar_unitary_part():
    rng = substream(0, "linalg/polar")
    u = haar_unitary(rng, 4)
    np.testing.assert_allclose(sg.polar_unitary_part(u), u, atol=1e-13)
    np.testing.assert_allclose(sg.polar_unitary_part(np.diag([2.0, 3.0])),
                               np.eye(2), atol=1e-14)
    for t in range(20):
        g = complex_gaussian(rng, 4) + 2 * np.eye(4)
        om = sg.polar_unitary_part(g)
        h = om.conj().T @ g
        # reconstruction g = Omega (g*g)^(1/2)
        w = np.linalg.eigvalsh(g.conj().T @ g)
        assert np.linalg.norm(h @ h - g.conj().T @ g) <= 1e-8
        assert np.linalg.norm(om @ h - g) <= 1e-10
    with pytest.raises(ValueError, match="singular"):
        sg.polar_unitary_part(np.diag([1.0, 0.0]))


def test_polar_of_exponential_is_identity_map():
    rng = substream(0, "linalg/polar-exp")
    for t in range(20):
        u = sg.exp_skew(random_skew(rng, 4, norm=rng.uniform(0.1, 3.0), p=2))
        assert np.linalg.norm(sg.polar_unitary_part(u) - u) <= 1e-12


def test_spectral_projections_examples():
    dec = sg.spectral_projections(np.diag([0.0, 0.0, 1.0]))
    assert dec.multiplicities == [2, 1]
    np.testing.assert_allclose(dec.eigenvalues, [0.0, 1.0])
    np.testing.assert_allclose(dec.projections[0], np.diag([1.0, 1.0, 0.0]),
                               atol=1e-14)

    dec = sg.spectral_projections(np.eye(3))
    assert dec.n_clusters == 1
    np.testing.assert_allclose(dec.projections[0], np.eye(3), atol=1e-14)


def test_spectral_projections_resolution_of_identity():
    rng = substream(0, "linalg/spectral")
    for t in range(20):
        g = complex_gaussian(rng, 5)
        a = (g + g.conj().T) / 2
        dec = sg.spectral_projections(a)
        total = sum(dec.projections)
        np.testing.assert_allclose(total, np.eye(5), atol=1e-12)
        for i, pi in enumerate(dec.projections):
            np.testing.assert_allclose(pi @ pi, pi, atol=1e-12)
            np.testing.assert_allclose(pi, pi.conj().T, atol=1e-13)
            for pj in dec.projections[i + 1:]:
                assert np.linalg.norm(pi @ pj) <= 1e-12
        np.testing.assert_allclose(dec.reconstruct(), a, atol=1e-12)


def test_spectral_projections_rejects_bad_tolerance():
    with pytest.raises(ValueError):
        sg.spectral_projections(np.eye(2), tau_cluster=-1.0)


def test_matrix_json_roundtrip(tmp_path):
    rng = substream(0, "linalg/json")
    m = complex_gaussian(rng, 3)
    obj = sg.matrix_to_json(m)
    assert obj["dim"] == 3
    # serialization must round-trip every double exactly
    back = sg.matrix_from_json(json.loads(json.dumps(obj)))
    assert np.array_equal(back, m)
    path = tmp_path / "m.json"
    sg.save_matrix(path, m)
    assert np.array_equal(sg.load_matrix(path), m)


def test_matrix_json_validates_shape():
    with pytest.raises(ValueError):
        sg.matrix_from_json({"dim": 2, "entries": [[[1, 0]]]})
