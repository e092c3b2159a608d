"""Counting, IDS, eigenvectors, and trace inequalities on finite windows."""

import math

import numpy as np
import pytest
from scipy.linalg import eigh_tridiagonal

import qplab.dynamics as dy
import qplab.potential as pt
import qplab.spectrum as sp

SHIFT = dy.Shift((dy.GOLDEN_MEAN,))
AMO3 = pt.almost_mathieu(3.0)
AMO5 = pt.almost_mathieu(5.0)
FREE = pt.from_triples([], 1.0)


def oracle_eigs(H):
    return eigh_tridiagonal(H.diag, -np.ones(H.N - 1), eigvals_only=True)


# ----------------------------------------------------------- hamiltonian

def test_hamiltonian_samples_the_orbit():
    x = dy.phase(0.3)
    H = sp.hamiltonian(AMO3, SHIFT, x, 5)
    sites = dy.mod1(0.3 + (np.arange(5) + 1) * dy.GOLDEN_MEAN)
    np.testing.assert_allclose(H.diag, 3.0 * np.cos(2 * np.pi * sites),
                               atol=1e-14)
    # first_site="x" starts one step earlier
    H0 = sp.hamiltonian(AMO3, SHIFT, x, 5, first_site="x")
    assert H0.diag[0] == pytest.approx(3.0 * math.cos(2 * math.pi * 0.3))


def test_hamiltonian_dense_and_apply_agree():
    H = sp.hamiltonian(AMO3, SHIFT, dy.phase(0.11), 8)
    v = np.random.default_rng(1).standard_normal(8)
    np.testing.assert_allclose(H.apply(v), H.dense() @ v, atol=1e-13)
    with pytest.raises(ValueError):
        sp.hamiltonian(AMO3, SHIFT, dy.phase(0.1), 0)


def test_gershgorin_contains_the_spectrum():
    H = sp.hamiltonian(AMO3, SHIFT, dy.phase(0.42), 40)
    lo, hi = H.gershgorin()
    ev = oracle_eigs(H)
    assert lo < ev[0] and ev[-1] < hi


# -------------------------------------------------------------- counting

def test_sturm_count_matches_dense_counts():
    rng = np.random.default_rng(7)
    for _ in range(20):
        n = int(rng.integers(2, 120))
        H = sp.TridiagonalHamiltonian(rng.uniform(-3, 3, size=n))
        ev = oracle_eigs(H)
        for E in rng.uniform(-5, 5, size=4):
            assert sp.sturm_count(H, E) == int(np.sum(ev < E))


def test_eigenvalues_match_scipy_brackets():
    H = sp.hamiltonian(AMO5, SHIFT, dy.phase(0.2), 100)
    mine = sp.eigenvalues(H)
    ev = oracle_eigs(H)
    assert mine.size == 100
    np.testing.assert_allclose(mine, ev, atol=1e-9)


def test_free_laplacian_eigenvalues_are_cosines():
    H = sp.hamiltonian(FREE, SHIFT, dy.phase(0.0), 50)
    k = np.arange(1, 51)
    exact = -2.0 * np.cos(k * np.pi / 51.0)
    np.testing.assert_allclose(sp.eigenvalues(H), np.sort(exact), atol=1e-10)


def test_eigenvalue_window_restricts_the_list():
    H = sp.hamiltonian(AMO3, SHIFT, dy.phase(0.6), 60)
    ev = oracle_eigs(H)
    got = sp.eigenvalues(H, window=(-1.0, 1.0))
    want = ev[(ev > -1.0) & (ev < 1.0)]
    np.testing.assert_allclose(got, want, atol=1e-9)
    assert sp.eigenvalues(H, window=(2.0, 2.0)).size == 0
    with pytest.raises(ValueError):
        sp.eigenvalues(H, tol=0.0)


# ---------------------------------------------------------- eigenvectors

def test_eigenvector_solves_the_pencil():
    H = sp.hamiltonian(AMO3, SHIFT, dy.phase(0.13), 80)
    ev = sp.eigenvalues(H)
    pair = sp.eigenvector(H, float(ev[40]))
    assert pair.residual < 1e-8
    assert np.linalg.norm(pair.vector) == pytest.approx(1.0)
    assert pair.collinearity <= 1e-6


def test_eigenvector_localizes_at_strong_coupling():
    # every eigenvector of the lam=5 window should agree with its
    # determinant-formula twin; run a spread of indices
    H = sp.hamiltonian(AMO5, SHIFT, dy.phase(0.71), 120)
    ev = sp.eigenvalues(H)
    for j in (0, 30, 60, 90, 119):
        pair = sp.eigenvector(H, float(ev[j]))
        assert pair.collinearity <= 1e-6
        assert pair.residual < 1e-8


def test_eigenvector_rejects_empty_and_crowded_targets():
    H = sp.hamiltonian(AMO5, SHIFT, dy.phase(0.2), 100)
    with pytest.raises(sp.AmbiguousEigenvalue):
        sp.eigenvector(H, 100.0)
    # widen the bracket until it swallows two eigenvalues
    ev = oracle_eigs(H)
    i = int(np.argmin(np.diff(ev)))
    mid = 0.5 * (ev[i] + ev[i + 1])
    with pytest.raises(sp.AmbiguousEigenvalue):
        sp.eigenvector(H, mid, tol=0.01)


# ------------------------------------------------------------------- ids

def test_free_ids_matches_the_arcsine_law():
    grid = np.linspace(-1.9, 1.9, 21)
    tab = sp.ids(FREE, SHIFT, grid, 1000, 4)
    exact = np.arccos(-grid / 2.0) / math.pi
    np.testing.assert_allclose(tab.values, exact, atol=1e-3)


def test_ids_is_monotone_and_normalized():
    grid = np.linspace(-6.0, 6.0, 41)
    tab = sp.ids(AMO3, SHIFT, grid, 400, 8, seed=2)
    assert np.all(np.diff(tab.values) >= 0)
    assert tab.values[0] == 0.0 and tab.values[-1] == 1.0
    with pytest.raises(ValueError):
        sp.ids(AMO3, SHIFT, grid[::-1], 100, 4)


def test_window_count_requires_positive_eta():
    with pytest.raises(ValueError):
        sp.window_count(AMO3, SHIFT, 0.0, 0.0, 50, 4)
    c = sp.window_count(AMO3, SHIFT, 0.0, 6.0, 50, 4, seed=1)
    assert c == pytest.approx(50.0)   # window covers the whole spectrum


# ---------------------------------------------------------------- wegner

def test_wegner_measure_shrinks_with_sharper_resolution():
    kw = dict(N=150, x_samples=800, seed=5)
    m5 = sp.wegner_measure(AMO3, SHIFT, 0.0, 5.0, **kw)
    m10 = sp.wegner_measure(AMO3, SHIFT, 0.0, 10.0, **kw)
    assert 0.0 <= m10 <= m5 <= 1.0
    with pytest.raises(ValueError):
        sp.wegner_measure(AMO3, SHIFT, 0.0, 0.5, N=10, x_samples=4)


# --------------------------------------------------------------- min gap

def test_min_gap_agrees_with_dense_spacings():
    H = sp.hamiltonian(AMO3, SHIFT, dy.phase(0.55), 60)
    got = sp.min_gap(AMO3, SHIFT, dy.phase(0.55), 60)
    want = float(np.min(np.diff(oracle_eigs(H))))
    assert got == pytest.approx(want, rel=1e-6)


def test_min_gap_is_infinite_without_a_pair():
    assert sp.min_gap(AMO3, SHIFT, dy.phase(0.1), 1) == math.inf
    assert sp.min_gap(AMO3, SHIFT, dy.phase(0.1), 30,
                      window=(90.0, 99.0)) == math.inf


# ------------------------------------------------------ hellmann-feynman

def test_hellmann_feynman_two_routes_agree():
    for j in (0, 25, 50):
        an, fd = sp.hellmann_feynman(AMO3, SHIFT, dy.phase(0.21), j, 60)
        assert abs(an - fd) <= 1e-6 * max(abs(an), 1.0)


def test_hellmann_feynman_validates_inputs():
    with pytest.raises(ValueError):
        sp.hellmann_feynman(AMO3, SHIFT, dy.phase(0.2), 60, 60)
    with pytest.raises(ValueError):
        sp.hellmann_feynman(AMO3, dy.SkewShift((dy.GOLDEN_MEAN,)),
                            dy.phase(0.2, 0.3), 0, 20)


# ------------------------------------------------------ trace inequality

def test_trace_moment_bound_holds_for_random_hermitian():
    rng = np.random.default_rng(11)
    for _ in range(10):
        a = rng.standard_normal((20, 20))
        a = 0.5 * (a + a.T)
        lhs, rhs = sp.trace_moment_lower_bound(a, float(rng.uniform(-2, 2)),
                                               0.1)
        assert lhs >= rhs * (1.0 - 1e-12)


def test_trace_moment_bound_holds_in_a_rotated_basis():
    rng = np.random.default_rng(12)
    a = rng.standard_normal((15, 15))
    a = 0.5 * (a + a.T)
    q, _ = np.linalg.qr(rng.standard_normal((15, 15)))
    lhs, rhs = sp.trace_moment_lower_bound(a, 0.3, 0.05, basis=q)
    assert lhs >= rhs * (1.0 - 1e-12)


def test_concatenation_bound_on_one_instance():
    rep = sp.concatenation_bound_check(AMO3, SHIFT, dy.phase(0.37), 0.0,
                                       0.05, 50)
    assert rep.ok_window and rep.ok_full
    assert rep.ok_trace is True        # N <= 200 runs the dense check too
    assert rep.count_window <= rep.count_full + 2
    a, b = rep.window
    assert a in (1, 2) and b in (49, 50)
    with pytest.raises(ValueError):
        sp.concatenation_bound_check(AMO3, SHIFT, dy.phase(0.1), 0.0, 0.0, 20)
