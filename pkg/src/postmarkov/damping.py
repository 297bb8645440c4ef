"""Markovian dissipator of the damped qubit and its spectral (damping) basis.

The thermal amplitude-damping Liouvillian

    L rho = gamma*nbar     * (s+ rho s-  -  {s- s+, rho}/2)
          + gamma*(nbar+1) * (s- rho s+  -  {s+ s-, rho}/2)

is diagonalized by four eigenoperators {sigma_0, sigma_z, sigma_+, sigma_-}
with eigenvalues {0, -gamma(2 nbar + 1), -gamma(2 nbar + 1)/2 (twice)}.
Density matrices expanded in this basis evolve with decoupled coefficients,
which is the coordinate system every propagator in this package uses.

Index order of the four basis slots is fixed everywhere as (0, z, +, -);
two-qubit product elements are flattened as a = 4*i + j with i the system
slot.  Dual operators satisfy Tr[dual_i op_j] = delta_ij and are obtained by
inverting the Gram matrix rather than from closed forms, which keeps the
construction robust to normalization changes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .qops import (
    ID2,
    SIGMA_MINUS,
    SIGMA_PLUS,
    SIGMA_Z,
    as_matrix,
    kron,
    sandwich_superop,
    vec,
)

BASIS_LABELS = ("0", "z", "+", "-")

_EIG_TOL = 1e-10


class DegenerateSpectrumError(ValueError):
    """The dissipator spectrum is fully degenerate (gamma = 0)."""


@dataclass(frozen=True)
class ModelParams:
    """Physical parameters: decay rate, thermal occupation, kernel rate, ancilla splitting.

    gamma >= 0 and nbar >= 0 set the dissipator, chi > 0 is the rate of the
    exponential memory kernel chi*exp(-chi*t), and J is the level splitting
    of the ancilla Hamiltonian J*sigma_z (any real, same units as gamma).
    """

    gamma: float
    nbar: float
    chi: float
    J: float

    def __post_init__(self):
        if not np.isfinite([self.gamma, self.nbar, self.chi, self.J]).all():
            raise ValueError("parameters must be finite")
        if self.gamma < 0:
            raise ValueError(f"gamma must be >= 0, got {self.gamma}")
        if self.nbar < 0:
            raise ValueError(f"nbar must be >= 0, got {self.nbar}")
        if self.chi <= 0:
            raise ValueError(f"chi must be > 0, got {self.chi}")


def _acomm(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b + b @ a


def apply_liouvillian(p: ModelParams, rho) -> np.ndarray:
    """Direct action of the dissipator on a 2x2 operator."""
    r = as_matrix(rho)
    up = SIGMA_PLUS @ r @ SIGMA_MINUS - 0.5 * _acomm(SIGMA_MINUS @ SIGMA_PLUS, r)
    down = SIGMA_MINUS @ r @ SIGMA_PLUS - 0.5 * _acomm(SIGMA_PLUS @ SIGMA_MINUS, r)
    return p.gamma * p.nbar * up + p.gamma * (p.nbar + 1.0) * down


def liouvillian_superop(p: ModelParams) -> np.ndarray:
    """4x4 matrix of the dissipator on column-stacked 2x2 operators.

    Trace-free as a generator: (vec I)^T L = 0.
    """
    idm = ID2
    sp, sm = SIGMA_PLUS, SIGMA_MINUS
    up = (
        sandwich_superop(sp, sm)
        - 0.5 * (sandwich_superop(sm @ sp, idm) + sandwich_superop(idm, sm @ sp))
    )
    down = (
        sandwich_superop(sm, sp)
        - 0.5 * (sandwich_superop(sp @ sm, idm) + sandwich_superop(idm, sp @ sm))
    )
    return p.gamma * p.nbar * up + p.gamma * (p.nbar + 1.0) * down


@dataclass(frozen=True)
class DampingBasis:
    """Eigenoperators of the dissipator, their duals and eigenvalues.

    ops[i] are the right eigenoperators in slot order (0, z, +, -), duals[i]
    the biorthonormal partners with Tr[duals[i] ops[j]] = delta_ij, and
    eigvals[i] the matching (real, non-positive) dissipator eigenvalues.
    Immutable after construction; safe to share between workers.
    """

    ops: tuple
    duals: tuple
    eigvals: np.ndarray

    def __post_init__(self):
        for arrs in (self.ops, self.duals):
            for a in arrs:
                a.setflags(write=False)
        self.eigvals.setflags(write=False)


def _dual_basis(ops) -> tuple:
    gram = np.array([[np.trace(a @ b) for b in ops] for a in ops], dtype=complex)
    ginv = np.linalg.inv(gram)
    duals = tuple(
        np.tensordot(ginv[i], np.stack(ops), axes=(0, 0)) for i in range(len(ops))
    )
    for i, d in enumerate(duals):
        for j, op in enumerate(ops):
            val = np.trace(d @ op)
            if abs(val - (1.0 if i == j else 0.0)) > _EIG_TOL:
                raise RuntimeError(f"dual basis failed biorthonormality at ({i},{j}): {val}")
    return duals


def damping_basis(p: ModelParams) -> DampingBasis:
    """Spectral basis of the dissipator for gamma > 0.

    The degenerate lambda_+ = lambda_- subspace is spanned by sigma_+ and
    sigma_- themselves (dense eigensolvers would mix them arbitrarily), and
    each candidate is verified as an eigenoperator of the superoperator
    matrix before being accepted.
    """
    if p.gamma == 0:
        raise DegenerateSpectrumError(
            "gamma = 0 makes every operator stationary; the damping basis is "
            "undefined (use the identity basis for the unitary-only case)"
        )
    width = 2.0 * p.nbar + 1.0
    sigma0 = 0.5 * (ID2 - SIGMA_Z / width)
    ops = (sigma0, SIGMA_Z.copy(), SIGMA_PLUS.copy(), SIGMA_MINUS.copy())
    eigvals = np.array(
        [0.0, -p.gamma * width, -0.5 * p.gamma * width, -0.5 * p.gamma * width],
        dtype=complex,
    )
    lmat = liouvillian_superop(p)
    for lam, op in zip(eigvals, ops):
        resid = np.max(np.abs(lmat @ vec(op) - lam * vec(op)))
        if resid > _EIG_TOL * max(1.0, abs(p.gamma) * width):
            raise RuntimeError(f"eigenoperator residual {resid:.3e} too large")
    return DampingBasis(ops=ops, duals=_dual_basis(ops), eigvals=eigvals)


def identity_basis() -> DampingBasis:
    """Fallback basis for gamma = 0: eigenoperators of [sigma_z, .] only.

    ops = (I/2, sigma_z/2, sigma_+, sigma_-) with all dissipator eigenvalues
    zero.  The leading element keeps unit trace so that coefficient (0,0)
    still tracks the trace of the state.
    """
    ops = (0.5 * ID2, 0.5 * SIGMA_Z, SIGMA_PLUS.copy(), SIGMA_MINUS.copy())
    return DampingBasis(
        ops=ops, duals=_dual_basis(ops), eigvals=np.zeros(4, dtype=complex)
    )


@lru_cache(maxsize=512)
def _cached_basis(gamma: float, nbar: float) -> DampingBasis:
    if gamma == 0:
        return identity_basis()
    return damping_basis(ModelParams(gamma=gamma, nbar=nbar, chi=1.0, J=0.0))


def basis_for(p: ModelParams) -> DampingBasis:
    """Damping basis when dissipation is on, identity basis when gamma = 0.

    Bases depend on (gamma, nbar) only and are immutable, so repeated grid
    sweeps share cached instances.
    """
    return _cached_basis(p.gamma, p.nbar)


def h_coefficients(J: float, basis: DampingBasis) -> np.ndarray:
    """Commutator eigenvalues of the ancilla Hamiltonian J*sigma_z.

    The full rank-4 tensor Tr{(dual_i kron dual_j) [I kron H_A, op_k kron
    op_l]} is evaluated and checked to be diagonal, delta_ik delta_jl h_j;
    the four diagonal values (0, 0, 2J, -2J) are returned.
    """
    ha = J * SIGMA_Z
    comm = [ha @ op - op @ ha for op in basis.ops]
    # h[i,j,k,l] = Tr[dual_i op_k] * Tr[dual_j [H_A, op_l]]
    t_pop = np.array([[np.trace(d @ o) for o in basis.ops] for d in basis.duals])
    t_comm = np.array([[np.trace(d @ c) for c in comm] for d in basis.duals])
    h_tensor = np.einsum("ik,jl->ijkl", t_pop, t_comm)
    off = h_tensor.copy()
    for i in range(4):
        for j in range(4):
            off[i, j, i, j] = 0.0
    max_off = float(np.max(np.abs(off)))
    if max_off > 1e-12 * max(1.0, abs(J)):
        raise RuntimeError(f"ancilla Hamiltonian is not diagonal in this basis: {max_off:.3e}")
    return np.array([h_tensor[0, j, 0, j] for j in range(4)], dtype=complex)


def decompose(rho, basis: DampingBasis) -> np.ndarray:
    """Coefficients c[i, j] = Tr[(dual_i kron dual_j) rho] of a 4x4 operator."""
    r = as_matrix(rho)
    if r.shape != (4, 4):
        raise ValueError(f"decompose expects a 4x4 matrix, got {r.shape}")
    c = np.array(
        [[np.trace(kron(di, dj) @ r) for dj in basis.duals] for di in basis.duals]
    )
    # dual_0 kron dual_0 = identity, so c[0,0] is exactly the trace
    assert abs(c[0, 0] - np.trace(r)) < 1e-9, "c_00 must equal the trace"
    return c


def reconstruct(c, basis: DampingBasis) -> np.ndarray:
    """Inverse of decompose: sum_ij c[i,j] op_i kron op_j."""
    c = np.asarray(c, dtype=complex)
    out = np.zeros((4, 4), dtype=complex)
    for i, oi in enumerate(basis.ops):
        for j, oj in enumerate(basis.ops):
            out += c[i, j] * kron(oi, oj)
    return out
