"""Dense operator algebra for one- and two-qubit open-system maps.

Everything downstream (damping basis, propagators, Choi tests) consumes the
small set of primitives collected here: Pauli/ladder matrices, Kronecker
products, partial traces, Hermitian spectra, trace distance and the
column-stacking vectorization used for all superoperator matrices.

Conventions, fixed project-wide:

* computational basis |0> = (1, 0)^T with sigma_z |0> = +|0>,
* sigma_plus = |0><1| (raising), sigma_minus = |1><0| (lowering),
* tensor order: system factor first, ancilla second,
* vectorization: column stacking, vec(A B C) = (C^T kron A) vec(B).

All values are plain complex ndarrays (or immutable wrappers around them);
nothing in this module mutates its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# construction tolerances for density matrices; eigenvalue comparisons in
# tests use a looser 1e-8
TOL_HERM = 1e-10
TOL_TRACE = 1e-10
TOL_POSITIVITY = 1e-9

ID2 = np.eye(2, dtype=complex)
ID4 = np.eye(4, dtype=complex)
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
SIGMA_PLUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)   # |0><1|
SIGMA_MINUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)  # |1><0|

KET0 = np.array([1.0, 0.0], dtype=complex)
KET1 = np.array([0.0, 1.0], dtype=complex)


class DimensionError(ValueError):
    """Operand has the wrong shape for the requested operation."""


def as_matrix(obj) -> np.ndarray:
    """Return the underlying complex matrix of an array or DensityMatrix."""
    m = getattr(obj, "matrix", obj)
    return np.asarray(m, dtype=complex)


def _require_square(m: np.ndarray, what: str = "matrix") -> None:
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"{what} must be square, got shape {m.shape}")


def _require_finite(m: np.ndarray, what: str = "matrix") -> None:
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError(f"{what} contains non-finite entries")


def dag(m) -> np.ndarray:
    return as_matrix(m).conj().T


def kron(a, b) -> np.ndarray:
    """Kronecker product; dims multiply, system factor goes first."""
    a = as_matrix(a)
    b = as_matrix(b)
    out = np.kron(a, b)
    _require_finite(out, "kron result")
    return out


def vec(m) -> np.ndarray:
    """Column-stack a matrix into a vector: vec(A)[i + rows*j] = A[i, j]."""
    return as_matrix(m).T.reshape(-1)

def unvec(v, dim: int | None = None) -> np.ndarray:
    v = np.asarray(v, dtype=complex).reshape(-1)
    if dim is None:
        dim = int(round(np.sqrt(v.size)))
    if dim * dim != v.size:
        raise DimensionError(f"cannot unvec length-{v.size} vector to {dim}x{dim}")
    return v.reshape(dim, dim).T


def sandwich_superop(a, b) -> np.ndarray:
    """Matrix of rho -> a rho b on column-stacked operators."""
    return np.kron(as_matrix(b).T, as_matrix(a))


def hamiltonian_superop(h) -> np.ndarray:
    """Matrix of rho -> -i [h, rho] on column-stacked operators."""
    hm = as_matrix(h)
    idm = np.eye(hm.shape[0], dtype=complex)
    return -1j * (sandwich_superop(hm, idm) - sandwich_superop(idm, hm))


def unitary_conjugation_superop(u) -> np.ndarray:
    """Matrix of rho -> u rho u^dag on column-stacked operators."""
    um = as_matrix(u)
    return np.kron(um.conj(), um)


def product_superop(m_sys, m_anc) -> np.ndarray:
    """16x16 matrix of a product map Phi_S kron Phi_A in composite vec order.

    Both arguments are 4x4 superoperator matrices on column-stacked 2x2
    operators; the composite two-qubit vec index interleaves system and
    ancilla row/column indices, so the result is a permuted Kronecker
    product.
    """
    ms = np.asarray(m_sys, dtype=complex).reshape(2, 2, 2, 2)
    ma = np.asarray(m_anc, dtype=complex).reshape(2, 2, 2, 2)
    return np.einsum("abcd,efgh->aebfcgdh", ms, ma).reshape(16, 16)


def partial_trace(m, keep: str = "system") -> np.ndarray:
    """Trace a 4x4 two-qubit operator down to the kept 2x2 factor.

    keep='system' traces out the ancilla, keep='ancilla' the system.  Linear
    in the input; the trace of the result equals the trace of the input.
    """
    m = as_matrix(m)
    if m.shape != (4, 4):
        raise DimensionError(f"partial_trace expects a 4x4 matrix, got {m.shape}")
    if keep not in ("system", "ancilla"):
        raise ValueError(f"keep must be 'system' or 'ancilla', got {keep!r}")
    t = m.reshape(2, 2, 2, 2)  # [row_sys, row_anc, col_sys, col_anc]
    if keep == "system":
        return np.trace(t, axis1=1, axis2=3)
    return np.trace(t, axis1=0, axis2=2)


def hermitian_defect(m) -> float:
    """Max-entry deviation of a matrix from its own adjoint."""
    m = as_matrix(m)
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def hermitian_eigenvalues(m) -> np.ndarray:
    """Ascending real eigenvalues of (m + m^dag)/2.

    Inputs are symmetrized first; callers are expected to have checked that
    the defect is small where that matters.
    """
    m = as_matrix(m)
    _require_square(m)
    sym = 0.5 * (m + m.conj().T)
    return np.linalg.eigvalsh(sym)


def min_eigenvalue(m) -> float:
    return float(hermitian_eigenvalues(m)[0])


def trace_distance(r, s) -> float:
    """Half the trace norm of r - s, in [0, 1] for density matrices.

    r - s is Hermitian for Hermitian inputs, so the trace norm reduces to the
    sum of absolute eigenvalues.
    """
    rm = as_matrix(r)
    sm = as_matrix(s)
    if rm.shape != sm.shape:
        raise DimensionError(f"trace_distance dims differ: {rm.shape} vs {sm.shape}")
    diff = rm - sm
    return float(0.5 * np.sum(np.abs(hermitian_eigenvalues(diff))))


@dataclass(frozen=True)
class DensityMatrix:
    """A 2x2 or 4x4 state: Hermitian, unit trace, positivity only *flagged*.

    Positivity is deliberately not an invariant: detecting its violation is
    the point of the surrounding toolkit.  `is_physical` records whether the
    smallest eigenvalue is above -1e-9 at construction time.
    """

    matrix: np.ndarray
    atol: float = TOL_HERM
    is_physical: bool = field(init=False)
    min_eig: float = field(init=False)

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        _require_square(m, "density matrix")
        if m.shape[0] not in (2, 4):
            raise DimensionError(f"density matrix must be 2x2 or 4x4, got {m.shape}")
        _require_finite(m, "density matrix")
        defect = hermitian_defect(m)
        if defect > self.atol:
            raise ValueError(f"matrix is not Hermitian: defect {defect:.3e} > {self.atol:.1e}")
        tr_err = abs(np.trace(m) - 1.0)
        if tr_err > max(self.atol, TOL_TRACE):
            raise ValueError(f"trace differs from 1 by {tr_err:.3e}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        low = min_eigenvalue(m)
        object.__setattr__(self, "min_eig", low)
        object.__setattr__(self, "is_physical", bool(low >= -TOL_POSITIVITY))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))


def pure_state(ket) -> np.ndarray:
    k = np.asarray(ket, dtype=complex).reshape(-1)
    k = k / np.linalg.norm(k)
    return np.outer(k, k.conj())


def fig_initial_state() -> np.ndarray:
    """|0>_S kron (|0>+|1>)_A/sqrt(2), the standard probe state."""
    plus = (KET0 + KET1) / np.sqrt(2.0)
    return kron(pure_state(KET0), pure_state(plus))
