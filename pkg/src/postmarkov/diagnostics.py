"""Physicality analyzers: Choi test, time-local generator, Lindblad-like form.

Complete positivity is tested through the Choi matrix C = sum_ij E_ij kron
Phi(E_ij) (environment factor first; only the spectrum is consumed, which is
convention-independent).  The instantaneous generator K(t) = dPhi/dt o
Phi^{-1} of a diagonal propagator is diagonal too, with entries
dzeta_ij/zeta_ij, and is re-expressed in Lindblad-like form

    K[rho] = -i[H', rho]
             + sum_{b,g >= 1} K_bg (B_b rho B_g^dag - {B_g^dag B_b, rho}/2)

over the Hermitian orthonormal basis B_0 = I/2, B_1..3 = (I kron
sigma_{x,y,z})/2, B_4..6 = (sigma_{x,y,z} kron I)/2, B_7..15 = (sigma_i kron
sigma_j)/2.  Coefficients with both indices in the 7..15 block are the ones
that can correlate the two qubits, so their Frobenius norm (plus the
matching Hamiltonian components) is the correlation-generation witness.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .damping import BASIS_LABELS, DampingBasis, ModelParams, basis_for, h_coefficients
from .propagators import Propagator, build, zeta_and_derivative
from .qops import (
    ID2,
    ID4,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    as_matrix,
    hamiltonian_superop,
    hermitian_eigenvalues,
    kron,
    sandwich_superop,
    unvec,
    vec,
)

_ZETA_FLOOR = 1e-12
_RECON_TOL = 1e-8


class SingularMapError(RuntimeError):
    """The propagator is not invertible at this time."""


@dataclass(frozen=True)
class ChoiMatrix:
    """Choi representation of a map with its smallest eigenvalue."""

    matrix: np.ndarray
    min_eig: float

    def __post_init__(self):
        self.matrix.setflags(write=False)


def choi(prop: Propagator) -> ChoiMatrix:
    """Choi matrix sum_ij E_ij kron Phi(E_ij) over computational units.

    Positive iff the map is completely positive; the trace equals the input
    dimension for trace-preserving maps.
    """
    d = prop.dim
    c = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            e = np.zeros((d, d), dtype=complex)
            e[i, j] = 1.0
            c += np.kron(e, prop.apply(e))
    return ChoiMatrix(matrix=c, min_eig=float(hermitian_eigenvalues(c)[0]))


def choi_min_eig(prop: Propagator) -> float:
    return choi(prop).min_eig


# ---------------------------------------------------------------------------
# Hermitian orthonormal operator basis for the Lindblad-like form
# ---------------------------------------------------------------------------

_PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)


def gks_basis() -> tuple:
    """The 16 two-qubit basis ops: identity first, then ancilla-only,
    system-only, and correlating Pauli products, each normalized to
    Tr[B_a B_b] = delta_ab."""
    ops = [0.5 * ID4]
    ops += [0.5 * kron(ID2, s) for s in _PAULIS]
    ops += [0.5 * kron(s, ID2) for s in _PAULIS]
    ops += [0.5 * kron(si, sj) for si in _PAULIS for sj in _PAULIS]
    for op in ops:
        op.setflags(write=False)
    return tuple(ops)


_GKS = gks_basis()
CORRELATING_SLOTS = tuple(range(7, 16))


def gks_label(a: int) -> str:
    names = ["I"] + [f"I*{s}" for s in "xyz"] + [f"{s}*I" for s in "xyz"]
    names += [f"{si}*{sj}" for si in "xyz" for sj in "xyz"]
    return names[a]


@dataclass(frozen=True)
class TimeLocalGenerator:
    """Instantaneous generator of a diagonal two-qubit propagator.

    diag_rates[i, j] = dzeta_ij/zeta_ij in the damping product basis;
    dense is the 16x16 matrix of the action on column-stacked states;
    K_coeffs (16x16, Hermitian) and H_eff are its Lindblad-like
    decomposition over the gks_basis() operators.
    """

    t: float
    diag_rates: np.ndarray
    K_coeffs: np.ndarray
    H_eff: np.ndarray
    dense: np.ndarray
    basis: DampingBasis

    def __post_init__(self):
        for arr in (self.diag_rates, self.K_coeffs, self.H_eff, self.dense):
            arr.setflags(write=False)

    def apply(self, rho) -> np.ndarray:
        return unvec(self.dense @ vec(as_matrix(rho)), 4)


def _diag_generator_dense(rates: np.ndarray, basis: DampingBasis) -> np.ndarray:
    m = np.zeros((16, 16), dtype=complex)
    for i, (oi, di) in enumerate(zip(basis.ops, basis.duals)):
        for j, (oj, dj) in enumerate(zip(basis.ops, basis.duals)):
            m += rates[i, j] * np.outer(vec(kron(oi, oj)), vec(kron(di, dj).T))
    return m


def _apply_dense(dense: np.ndarray, x: np.ndarray) -> np.ndarray:
    return unvec(dense @ vec(x), 4)


def _gks_coefficients(dense: np.ndarray):
    """Expansion of a superoperator over B_b rho B_g^dag, two routes.

    Route one is the triple-product trace sum_a Tr{B_g B_a^dag B_b^dag
    K[B_a]}; route two uses the superoperator scalar product <phi_bg, K> =
    sum_a Tr{(B_b B_a B_g^dag)^dag K[B_a]}.  Both must agree for this
    orthonormal basis and are asserted to, rather than picking one silently.
    """
    images = [_apply_dense(dense, b) for b in _GKS]
    k1 = np.empty((16, 16), dtype=complex)
    k2 = np.empty((16, 16), dtype=complex)
    for b in range(16):
        bb = _GKS[b]
        for g in range(16):
            bg = _GKS[g]
            acc1 = 0.0 + 0.0j
            acc2 = 0.0 + 0.0j
            for a in range(16):
                ba = _GKS[a]
                img = images[a]
                acc1 += np.trace(bg @ ba.conj().T @ bb.conj().T @ img)
                acc2 += np.trace((bb @ ba @ bg.conj().T).conj().T @ img)
            k1[b, g] = acc1
            k2[b, g] = acc2
    mismatch = float(np.max(np.abs(k1 - k2)))
    if mismatch > 1e-10:
        raise RuntimeError(f"coefficient routes disagree by {mismatch:.3e}")
    return k1


def _gks_decompose(dense: np.ndarray):
    """(H_eff, K_coeffs) of a trace- and Hermiticity-preserving generator."""
    k = _gks_coefficients(dense)
    herm_defect = float(np.max(np.abs(k - k.conj().T)))
    if herm_defect > 1e-9:
        raise ValueError(
            f"coefficient matrix is not Hermitian (defect {herm_defect:.3e}); "
            "the generator does not preserve Hermiticity"
        )
    g_op = 0.5 * sum(k[b, 0] * _GKS[b] for b in range(1, 16))
    h_eff = (g_op.conj().T - g_op) / 2j
    h_eff = 0.5 * (h_eff + h_eff.conj().T)
    return h_eff, k


def assemble_lindblad_action(h_eff: np.ndarray, k_coeffs: np.ndarray) -> np.ndarray:
    """Dense 16x16 action of the Lindblad-like form (commutator + dissipator)."""
    out = hamiltonian_superop(h_eff)
    id4 = ID4
    for b in range(1, 16):
        for g in range(1, 16):
            kbg = k_coeffs[b, g]
            if kbg == 0:
                continue
            bb, bg_ = _GKS[b], _GKS[g]
            gb = bg_.conj().T @ bb
            out += kbg * (
                sandwich_superop(bb, bg_.conj().T)
                - 0.5 * (sandwich_superop(gb, id4) + sandwich_superop(id4, gb))
            )
    return out


def generator_from_rates(rates, basis: DampingBasis, t: float) -> TimeLocalGenerator:
    """Build a TimeLocalGenerator from given diagonal rates.

    The Lindblad-like decomposition is computed on construction and its
    reassembled action is checked against the diagonal one to 1e-8.
    """
    rates = np.asarray(rates, dtype=complex).reshape(4, 4)
    dense = _diag_generator_dense(rates, basis)
    h_eff, k_coeffs = _gks_decompose(dense)
    rebuilt = assemble_lindblad_action(h_eff, k_coeffs)
    err = float(np.max(np.abs(rebuilt - dense)))
    scale = max(1.0, float(np.max(np.abs(dense))))
    if err > _RECON_TOL * scale:
        raise RuntimeError(f"Lindblad-like reassembly misses the action by {err:.3e}")
    return TimeLocalGenerator(
        t=t, diag_rates=rates, K_coeffs=k_coeffs, H_eff=h_eff, dense=dense, basis=basis
    )


def _rates_from_zetas(zetas: np.ndarray, dzetas: np.ndarray) -> np.ndarray:
    small = np.abs(zetas) < _ZETA_FLOOR
    if small.any():
        where = [
            f"({BASIS_LABELS[i]},{BASIS_LABELS[j]})"
            for i, j in zip(*np.nonzero(small))
        ]
        raise SingularMapError(
            "propagator is singular: zeta vanished at slots " + ", ".join(where)
        )
    return dzetas / zetas


def tcl_generator(kind: str, p: ModelParams, t: float) -> TimeLocalGenerator:
    """Time-local generator of a two-qubit propagator at time t.

    Derivatives of the coefficients are analytic, not finite differences;
    the finite-difference route is available separately as a cross-check.
    """
    if kind == "single_pm":
        raise ValueError("tcl_generator covers the two-qubit kinds only")
    basis = basis_for(p)
    hs = h_coefficients(p.J, basis)
    zetas = np.empty((4, 4), dtype=complex)
    dzetas = np.empty((4, 4), dtype=complex)
    for i, lam in enumerate(basis.eigvals):
        for j, h in enumerate(hs):
            if kind == "two_intuitive":
                z, dz = zeta_and_derivative(lam, h, p.chi, t)
            elif kind == "two_sl":
                z, dz = zeta_and_derivative(lam - 1j * h, 0.0, p.chi, t)
            elif kind == "two_corrected":
                x, dx = zeta_and_derivative(lam, 0.0, p.chi, t)
                phase = np.exp(-1j * h * t)
                z, dz = x * phase, (dx - 1j * h * x) * phase
            else:
                raise ValueError(f"unknown propagator kind {kind!r}")
            zetas[i, j] = z
            dzetas[i, j] = dz
    rates = _rates_from_zetas(zetas, dzetas)
    return generator_from_rates(rates, basis, t)


def lindblad_decompose(gen: TimeLocalGenerator):
    """(H_eff, K_coeffs) of a generator's action, recomputed from scratch."""
    return _gks_decompose(gen.dense)


def hamiltonian_coefficients(h_eff: np.ndarray) -> np.ndarray:
    """Real expansion coefficients of H' over the 16 basis operators."""
    return np.array([np.real(np.trace(b @ h_eff)) for b in _GKS])


def correlation_block_norm(k_coeffs: np.ndarray) -> float:
    """Size of the correlating part of a decomposition.

    Frobenius norm of the K block with both indices on sigma kron sigma
    operators, combined with the matching Hamiltonian components (recovered
    from column 0 of the full coefficient matrix: the B_a component of H' is
    -Im(K_a0)/2 for a >= 1).
    """
    k = np.asarray(k_coeffs)
    block = k[7:, 7:]
    ham = np.array([-0.5 * np.imag(k[a, 0]) for a in CORRELATING_SLOTS])
    return float(np.sqrt(np.sum(np.abs(block) ** 2) + np.sum(ham**2)))


def finite_difference_generator(
    kind: str, p: ModelParams, t: float, delta: float = 1e-6
) -> np.ndarray:
    """(Phi(t+delta) Phi(t)^{-1} - I)/delta as a dense 16x16 matrix."""
    phi_t = build(kind, p, t).dense
    phi_td = build(kind, p, t + delta).dense
    ratio = np.linalg.solve(phi_t.T, phi_td.T).T
    return (ratio - np.eye(phi_t.shape[0], dtype=complex)) / delta
