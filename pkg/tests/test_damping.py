import numpy as np
import pytest

from postmarkov.damping import (
    DegenerateSpectrumError,
    ModelParams,
    apply_liouvillian,
    basis_for,
    damping_basis,
    decompose,
    h_coefficients,
    identity_basis,
    liouvillian_superop,
    reconstruct,
)
from postmarkov.qops import ID2, SIGMA_MINUS, SIGMA_PLUS, SIGMA_Z, fig_initial_state, kron, unvec, vec

P1 = ModelParams(gamma=1.0, nbar=1.0, chi=1.0, J=2.0)


def random_density(rng, d=4):
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


# ---------------------------------------------------------------------------
# ModelParams
# ---------------------------------------------------------------------------

@pytest.mark.parametrize(
    "kwargs",
    [
        dict(gamma=-0.1, nbar=1.0, chi=1.0, J=0.0),
        dict(gamma=1.0, nbar=-0.5, chi=1.0, J=0.0),
        dict(gamma=1.0, nbar=1.0, chi=0.0, J=0.0),
        dict(gamma=1.0, nbar=1.0, chi=-2.0, J=0.0),
        dict(gamma=np.inf, nbar=1.0, chi=1.0, J=0.0),
    ],
)
def test_model_params_validation(kwargs):
    with pytest.raises(ValueError):
        ModelParams(**kwargs)


# ---------------------------------------------------------------------------
# Liouvillian superoperator
# ---------------------------------------------------------------------------

def test_liouvillian_zero_when_gamma_zero():
    p = ModelParams(gamma=0.0, nbar=2.0, chi=1.0, J=1.0)
    np.testing.assert_array_equal(liouvillian_superop(p), np.zeros((4, 4)))


def test_liouvillian_trace_free():
    lmat = liouvillian_superop(ModelParams(gamma=1.7, nbar=0.3, chi=1.0, J=0.0))
    np.testing.assert_allclose(vec(ID2) @ lmat, np.zeros(4), atol=1e-14)


def test_liouvillian_matches_operator_expansion_on_units():
    # dual route: dense matrix action vs the jump-operator formula applied
    # entrywise to every basis unit
    p = ModelParams(gamma=0.8, nbar=1.6, chi=1.0, J=0.0)
    lmat = liouvillian_superop(p)
    for i in range(2):
        for j in range(2):
            e = np.zeros((2, 2), dtype=complex)
            e[i, j] = 1.0
            np.testing.assert_allclose(
                unvec(lmat @ vec(e), 2), apply_liouvillian(p, e), atol=1e-13
            )


def test_liouvillian_action_on_sigma_z():
    p = ModelParams(gamma=1.3, nbar=0.7, chi=1.0, J=0.0)
    width = 2 * p.nbar + 1
    np.testing.assert_allclose(
        apply_liouvillian(p, SIGMA_Z), -p.gamma * width * SIGMA_Z, atol=1e-12
    )


def test_liouvillian_spectrum_from_dense_diagonalization():
    p = ModelParams(gamma=2.0, nbar=0.5, chi=1.0, J=0.0)
    width = 2 * p.nbar + 1
    eigs = np.sort_complex(np.linalg.eigvals(liouvillian_superop(p)))
    expected = np.sort_complex(
        np.array([0.0, -p.gamma * width, -p.gamma * width / 2, -p.gamma * width / 2])
    )
    np.testing.assert_allclose(eigs, expected, atol=1e-10)


# ---------------------------------------------------------------------------
# damping basis
# ---------------------------------------------------------------------------

def test_damping_basis_eigenvalues_nbar_one():
    basis = damping_basis(P1)
    np.testing.assert_allclose(basis.eigvals, [0.0, -3.0, -1.5, -1.5], atol=1e-12)


def test_stationary_operator_nbar_one():
    basis = damping_basis(P1)
    np.testing.assert_allclose(basis.ops[0], np.diag([1.0 / 3.0, 2.0 / 3.0]), atol=1e-12)


def test_eigenoperator_relation_under_superop():
    p = ModelParams(gamma=0.9, nbar=2.3, chi=1.0, J=0.0)
    basis = damping_basis(p)
    lmat = liouvillian_superop(p)
    for lam, op in zip(basis.eigvals, basis.ops):
        np.testing.assert_allclose(lmat @ vec(op), lam * vec(op), atol=1e-10)


def test_dual_basis_biorthonormal():
    basis = damping_basis(ModelParams(gamma=1.0, nbar=0.2, chi=1.0, J=0.0))
    gram = np.array([[np.trace(d @ o) for o in basis.ops] for d in basis.duals])
    np.testing.assert_allclose(gram, np.eye(4), atol=1e-10)
    # the dual of the stationary operator is the identity
    np.testing.assert_allclose(basis.duals[0], ID2, atol=1e-10)


def test_completeness_of_basis():
    rng = np.random.default_rng(31)
    basis = damping_basis(ModelParams(gamma=1.4, nbar=1.9, chi=1.0, J=0.0))
    x = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    rebuilt = sum(op * np.trace(du @ x) for op, du in zip(basis.ops, basis.duals))
    np.testing.assert_allclose(rebuilt, x, atol=1e-12)


def test_stationary_eigenvalue_exactly_zero_unit_trace():
    basis = damping_basis(ModelParams(gamma=3.0, nbar=0.0, chi=1.0, J=0.0))
    assert basis.eigvals[0] == 0.0
    assert np.trace(basis.ops[0]) == pytest.approx(1.0, abs=1e-14)


def test_damping_basis_rejects_gamma_zero():
    with pytest.raises(DegenerateSpectrumError):
        damping_basis(ModelParams(gamma=0.0, nbar=1.0, chi=1.0, J=2.0))


def test_identity_basis_for_gamma_zero():
    basis = identity_basis()
    gram = np.array([[np.trace(d @ o) for o in basis.ops] for d in basis.duals])
    np.testing.assert_allclose(gram, np.eye(4), atol=1e-12)
    assert np.trace(basis.ops[0]) == pytest.approx(1.0)
    np.testing.assert_array_equal(basis.eigvals, np.zeros(4))
    p0 = ModelParams(gamma=0.0, nbar=1.0, chi=1.0, J=2.0)
    assert basis_for(p0).eigvals[1] == 0.0


# ---------------------------------------------------------------------------
# ancilla commutator coefficients
# ---------------------------------------------------------------------------

def test_h_coefficients_zero_for_zero_splitting():
    basis = damping_basis(P1)
    np.testing.assert_array_equal(h_coefficients(0.0, basis), np.zeros(4))


def test_h_coefficients_unit_splitting():
    basis = damping_basis(P1)
    np.testing.assert_allclose(h_coefficients(1.0, basis), [0.0, 0.0, 2.0, -2.0], atol=1e-12)


def test_h_coefficients_linear_in_splitting():
    basis = damping_basis(ModelParams(gamma=1.0, nbar=0.4, chi=1.0, J=0.0))
    rng = np.random.default_rng(32)
    for _ in range(5):
        j1, j2 = rng.normal(size=2)
        np.testing.assert_allclose(
            h_coefficients(j1 + j2, basis),
            h_coefficients(j1, basis) + h_coefficients(j2, basis),
            atol=1e-12,
        )


def test_h_tensor_diagonality_checked_directly():
    # independent brute-force tensor, not the implementation's own check
    basis = damping_basis(P1)
    ha = 1.7 * SIGMA_Z
    hfull = np.zeros((4, 4, 4, 4), dtype=complex)
    for i, di in enumerate(basis.duals):
        for j, dj in enumerate(basis.duals):
            for k, ok in enumerate(basis.ops):
                for l, ol in enumerate(basis.ops):
                    big_h = kron(ID2, ha)
                    op = kron(ok, ol)
                    hfull[i, j, k, l] = np.trace(kron(di, dj) @ (big_h @ op - op @ big_h))
    off = hfull.copy()
    hs = h_coefficients(1.7, basis)
    for i in range(4):
        for j in range(4):
            np.testing.assert_allclose(hfull[i, j, i, j], hs[j], atol=1e-12)
            off[i, j, i, j] = 0.0
    assert np.max(np.abs(off)) < 1e-12


# ---------------------------------------------------------------------------
# decompose / reconstruct
# ---------------------------------------------------------------------------

def test_decompose_product_of_stationaries():
    basis = damping_basis(P1)
    c = decompose(kron(basis.ops[0], basis.ops[0]), basis)
    expected = np.zeros((4, 4))
    expected[0, 0] = 1.0
    np.testing.assert_allclose(c, expected, atol=1e-12)


def test_decompose_roundtrip_random_states():
    rng = np.random.default_rng(33)
    basis = damping_basis(ModelParams(gamma=1.0, nbar=2.5, chi=1.0, J=0.0))
    worst = 0.0
    for _ in range(100):
        rho = random_density(rng)
        worst = max(worst, np.max(np.abs(reconstruct(decompose(rho, basis), basis) - rho)))
    assert worst < 1e-10


def test_decompose_leading_coefficient_is_trace():
    rng = np.random.default_rng(34)
    basis = damping_basis(P1)
    rho = random_density(rng)
    c = decompose(rho, basis)
    assert c[0, 0] == pytest.approx(1.0, abs=1e-10)


def test_decompose_probe_state_coefficients():
    basis = damping_basis(P1)
    c = decompose(fig_initial_state(), basis)
    assert c[0, 0] == pytest.approx(1.0, abs=1e-12)
    # ancilla coherence slots carry weight 1/2 each for the |+> ancilla
    assert abs(c[0, 2]) == pytest.approx(0.5, abs=1e-12)
    assert abs(c[0, 3]) == pytest.approx(0.5, abs=1e-12)
