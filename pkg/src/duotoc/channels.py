"""Quantum channels obtained by partially tracing gate conjugations.

``M_plus(s) = tr_1[U (s kron 1) U^dag]/q`` propagates operators along the
right light-cone edge; ``M_minus(s) = tr_2[U^dag (1 kron s) U]/q`` along the
left edge.  Channels are stored as q^2 x q^2 matrices in the operator basis,
element ``(a, b) = tr[ops[a]^dag M(ops[b])]/q``, so spectra stay q^2-sized.
Both are unital, trace-preserving, completely positive, and Hermitian
conjugates of each other.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gates import gate_matrix
from .opalg import TOL_EIG, OperatorBasis, assert_unitary, op_to_vec, pauli_basis

__all__ = [
    "Channel",
    "SpectrumReport",
    "channel_plus",
    "channel_minus",
    "channel_apply",
    "channel_superop",
    "choi_matrix",
    "channel_spectrum",
    "lightcone_correlator",
    "m_n",
]

_AGREE_TOL = 1e-12  # cross-direction agreement for correlators


@dataclass(frozen=True)
class Channel:
    """One-site channel in operator-basis representation."""

    q: int
    mat: np.ndarray  # (q^2, q^2), element (a,b) = tr[ops[a]^dag M(ops[b])]/q
    sign: int  # +1 for M_plus, -1 for M_minus
    basis: OperatorBasis

    def nontrivial_eigenvalues(self) -> np.ndarray:
        """Eigenvalues on the traceless sector (the identity row/column of the
        matrix is exactly (1,0,...,0) by unitality/trace preservation)."""
        return np.linalg.eigvals(self.mat[1:, 1:])


def _superop_plus(U: np.ndarray, q: int) -> np.ndarray:
    """S[(b,b'),(c,c')] with M_plus(s)[b,b'] = sum S[(b,b'),(c,c')] s[c,c']."""
    U4 = U.reshape(q, q, q, q)
    S = np.einsum("abcd,aefd->becf", U4, U4.conj()) / q
    return S.reshape(q * q, q * q)


def _superop_minus(U: np.ndarray, q: int) -> np.ndarray:
    U4 = U.reshape(q, q, q, q)
    S = np.einsum("cdab,cfeb->aedf", U4.conj(), U4) / q
    return S.reshape(q * q, q * q)


def _to_basis(S: np.ndarray, basis: OperatorBasis) -> np.ndarray:
    """Convert a vec-convention superoperator to the operator-basis matrix."""
    q = basis.q
    P = basis.ops.reshape(q * q, q * q)  # row a = vec(ops[a])
    return P.conj() @ S @ P.T / q


def channel_plus(gate, basis: OperatorBasis | None = None) -> Channel:
    U = gate_matrix(gate)
    assert_unitary(U)
    q = int(round(np.sqrt(U.shape[0])))
    basis = basis or pauli_basis(q)
    return Channel(q=q, mat=_to_basis(_superop_plus(U, q), basis), sign=+1, basis=basis)


def channel_minus(gate, basis: OperatorBasis | None = None) -> Channel:
    U = gate_matrix(gate)
    assert_unitary(U)
    q = int(round(np.sqrt(U.shape[0])))
    basis = basis or pauli_basis(q)
    return Channel(q=q, mat=_to_basis(_superop_minus(U, q), basis), sign=-1, basis=basis)


def channel_superop(channel: Channel) -> np.ndarray:
    """The channel as a q^2 x q^2 matrix acting on row-major vec(s)."""
    q = channel.q
    P = channel.basis.ops.reshape(q * q, q * q)
    # mat = P* S P^T / q  with  P P^dag = q * identity (orthonormal basis)
    return P.T @ channel.mat @ P.conj() / q


def channel_apply(channel: Channel, sigma: np.ndarray, t: int = 1) -> np.ndarray:
    """Apply the channel t times to a one-site operator."""
    q = channel.q
    coeffs = op_to_vec(sigma, channel.basis)
    coeffs = np.linalg.matrix_power(channel.mat, t) @ coeffs
    return np.einsum("a,aij->ij", coeffs, channel.basis.ops)


def choi_matrix(channel: Channel) -> np.ndarray:
    """Choi matrix sum_ij E_ij kron M(E_ij); positive semidefinite iff CP."""
    q = channel.q
    S4 = channel_superop(channel).reshape(q, q, q, q)
    return S4.transpose(2, 0, 3, 1).reshape(q * q, q * q)


@dataclass(frozen=True)
class SpectrumReport:
    """Channel spectrum plus the ergodicity classification it implies."""

    eigenvalues: np.ndarray  # q^2 values, sorted by descending modulus
    ergodicity_class: str
    decay_rate: float

    def to_json_dict(self) -> dict:
        return {
            "eigenvalues": [[float(z.real), float(z.imag)] for z in self.eigenvalues],
            "ergodicity_class": self.ergodicity_class,
            "decay_rate": float(self.decay_rate),
        }


def channel_spectrum(channel: Channel, tol: float = TOL_EIG) -> SpectrumReport:
    """Classify the circuit by its channel spectrum.

    The classification uses all 2(q^2 - 1) nontrivial eigenvalues of the two
    edge channels; since the channels are mutual adjoints the second set is
    the complex conjugate of the first, so one channel determines the verdict:
    every nontrivial eigenvalue equal to 1 -> non_interacting; at least one
    -> non_ergodic; none equal to 1 but some on the unit circle ->
    ergodic_non_mixing; otherwise -> ergodic_mixing.
    """
    nontrivial = channel.nontrivial_eigenvalues()
    both = np.concatenate([nontrivial, nontrivial.conj()])
    n_unit = int(np.sum(np.abs(both - 1.0) < tol))
    if n_unit == both.size:
        klass = "non_interacting"
    elif n_unit > 0:
        klass = "non_ergodic"
    elif np.any(np.abs(np.abs(both) - 1.0) < tol):
        klass = "ergodic_non_mixing"
    else:
        klass = "ergodic_mixing"
    full = np.linalg.eigvals(channel.mat)
    full = full[np.argsort(-np.abs(full))]
    return SpectrumReport(
        eigenvalues=full,
        ergodicity_class=klass,
        decay_rate=float(np.max(np.abs(nontrivial))),
    )


def lightcone_correlator(gate, sigma_alpha: np.ndarray, sigma_beta: np.ndarray, t: int):
    """Infinite-temperature correlator on the right light-cone edge x = t.

    Evaluates ``tr[sigma_alpha M_plus^t(sigma_beta)]/q`` and cross-checks the
    equivalent ``tr[sigma_beta M_minus^t(sigma_alpha)]/q``; at t = 0 this is
    the plain overlap ``tr(sigma_alpha sigma_beta)/q``.
    """
    if t < 0:
        raise ValueError("t must be a non-negative integer")
    U = gate_matrix(gate)
    q = int(round(np.sqrt(U.shape[0])))
    basis = pauli_basis(q)
    a = op_to_vec(sigma_alpha, basis)
    b = op_to_vec(sigma_beta, basis)
    if t == 0:
        return (np.trace(np.asarray(sigma_alpha) @ np.asarray(sigma_beta)) / q).real
    plus = channel_plus(U, basis)
    minus = channel_minus(U, basis)
    via_plus = np.vdot(a, np.linalg.matrix_power(plus.mat, t) @ b)
    via_minus = np.vdot(b, np.linalg.matrix_power(minus.mat, t) @ a)
    if abs(via_plus - np.conj(via_minus)) > _AGREE_TOL:
        raise AssertionError("edge-channel directions disagree beyond tolerance")
    val = complex(via_plus)
    return val.real if abs(val.imag) < _AGREE_TOL else val


def m_n(gate, sigma_beta: np.ndarray, n: int) -> float:
    """OTOC kernel ``M_n = tr[(M_plus^n s)^dag (M_plus^n s)]/q``; M_0 = 1."""
    if n < 0:
        raise ValueError("n must be a non-negative integer")
    U = gate_matrix(gate)
    q = int(round(np.sqrt(U.shape[0])))
    basis = pauli_basis(q)
    w = np.linalg.matrix_power(channel_plus(U, basis).mat, n) @ op_to_vec(sigma_beta, basis)
    return float(np.real(np.vdot(w, w)))
