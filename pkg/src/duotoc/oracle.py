"""Independent brute-force simulator: dense Heisenberg evolution on a small
periodic brickwork chain.

This module deliberately shares nothing with the transfer-matrix machinery
beyond the gate itself: operators are embedded as dense q^L x q^L matrices,
layers are multiplied out, and correlators/OTOCs are plain traces.  It is the
ground truth that every folded-diagram result is validated against.

Lattice conventions
-------------------
Sites 0..L-1, periodic.  The even layer couples (0,1), (2,3), ...; the odd
layer couples (1,2), (3,4), ..., (L-1,0).  Time counts layers (half-steps),
with the even layer applied first: U(t) = L_t ... L_2 L_1, L_1 even.

Operator placement follows the light-cone lattice of the brickwork diagrams:
for the OTOC with x >= 0 the alpha operator anchors at site (t+1) mod 2 (for
x < 0 at t mod 2) so that the causal edge site x = +-t is realized for every
t; beta sits x sites to its right.  The correlator needs no anchor shift:
sigma_alpha(x, t) with sigma_beta at site 0 realizes the x = +t edge for all
t (the leftward edge of this lattice is x = -(t-1)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gates import gate_matrix
from .opalg import assert_unitary

__all__ = [
    "ChainSpec",
    "EvolvedOperator",
    "embed_two_site",
    "site_operator",
    "layer_unitaries",
    "evolution_operator",
    "evolve_heisenberg",
    "oracle_correlator",
    "oracle_otoc",
    "haar_sample",
]

_IMAG_TOL = 1e-10


@dataclass(frozen=True)
class ChainSpec:
    """A small periodic brickwork chain; L must be even, at most 12 qubits."""

    gate: object
    L: int = 8
    q: int = 2

    def __post_init__(self):
        if self.L % 2 or self.L < 4:
            raise ValueError("L must be an even integer >= 4")
        if self.L * np.log2(self.q) > 12:
            raise ValueError("chain exceeds the 12-qubit-equivalent budget")


@dataclass(frozen=True)
class EvolvedOperator:
    matrix: np.ndarray
    site: int
    t: int


def embed_two_site(U: np.ndarray, i: int, j: int, L: int, q: int = 2) -> np.ndarray:
    """Dense embedding of a two-site gate acting on sites (i, j) of L sites."""
    rest = [s for s in range(L) if s not in (i, j)]
    order = [i, j] + rest
    perm = [order.index(s) for s in range(L)]
    A = np.kron(U, np.eye(q ** (L - 2), dtype=complex)).reshape([q] * (2 * L))
    A = A.transpose(perm + [L + p for p in perm])
    return np.ascontiguousarray(A.reshape(q**L, q**L))


def site_operator(sigma: np.ndarray, x: int, L: int, q: int = 2) -> np.ndarray:
    """Dense embedding of a one-site operator at site x."""
    x %= L
    return np.kron(
        np.kron(np.eye(q**x, dtype=complex), np.asarray(sigma, dtype=complex)),
        np.eye(q ** (L - x - 1), dtype=complex),
    )


def layer_unitaries(spec: ChainSpec) -> tuple[np.ndarray, np.ndarray]:
    """The even-bond and odd-bond layer unitaries (full-period = odd @ even)."""
    U = gate_matrix(spec.gate)
    L, q = spec.L, spec.q
    even = np.eye(q**L, dtype=complex)
    odd = np.eye(q**L, dtype=complex)
    for j in range(0, L, 2):
        even = embed_two_site(U, j, j + 1, L, q) @ even
    for j in range(1, L, 2):
        odd = embed_two_site(U, j, (j + 1) % L, L, q) @ odd
    assert_unitary(even, name="even layer")
    assert_unitary(odd, name="odd layer")
    return even, odd


def evolution_operator(spec: ChainSpec, t: int) -> np.ndarray:
    """U(t) = L_t ... L_1 with the even layer first."""
    even, odd = layer_unitaries(spec)
    out = np.eye(spec.q**spec.L, dtype=complex)
    for k in range(1, t + 1):
        out = (even if k % 2 else odd) @ out
    return out


def evolve_heisenberg(spec: ChainSpec, sigma: np.ndarray, site: int, t: int) -> EvolvedOperator:
    """sigma(site, t) = U(t)^dag sigma(site) U(t)."""
    circ = evolution_operator(spec, t)
    mat = circ.conj().T @ site_operator(sigma, site, spec.L, spec.q) @ circ
    return EvolvedOperator(matrix=mat, site=site % spec.L, t=t)


def _check_budget(spec: ChainSpec, t: int):
    if t < 0:
        raise ValueError("t must be non-negative")
    if 2 * t >= spec.L:
        raise ValueError(f"2t < L required to avoid wrap-around (t={t}, L={spec.L})")


def oracle_correlator(spec: ChainSpec, sigma_alpha: np.ndarray, x: int, sigma_beta: np.ndarray, t: int):
    """tr[sigma_alpha(x, t) sigma_beta(0, 0)] / q^L."""
    _check_budget(spec, t)
    L, q = spec.L, spec.q
    A = evolve_heisenberg(spec, sigma_alpha, x, t).matrix
    B = site_operator(sigma_beta, 0, L, q)
    val = complex(np.trace(A @ B) / q**L)
    if abs(val.imag) > _IMAG_TOL:
        return val
    return val.real


def oracle_otoc(spec: ChainSpec, sigma_alpha: np.ndarray, sigma_beta: np.ndarray, x: int, t: int):
    """tr[A B A B] / q^L with A the evolved alpha operator and B = sigma_beta
    placed x sites to its right (see the module docstring for anchoring)."""
    _check_budget(spec, t)
    L, q = spec.L, spec.q
    anchor = (t + 1) % 2 if x >= 0 else t % 2
    A = evolve_heisenberg(spec, sigma_alpha, anchor, t).matrix
    B = site_operator(sigma_beta, anchor + x, L, q)
    AB = A @ B
    val = complex(np.trace(AB @ AB) / q**L)
    if abs(val.imag) > _IMAG_TOL:
        return val
    return val.real


def haar_sample(q: int, seed) -> np.ndarray:
    """Haar-distributed q x q unitary: QR of a complex Gaussian with the
    R-diagonal phase fixed.  ``seed`` may be an integer or a Generator."""
    rng = np.random.default_rng(seed)
    Z = (rng.normal(size=(q, q)) + 1j * rng.normal(size=(q, q))) / np.sqrt(2.0)
    Q, R = np.linalg.qr(Z)
    d = np.diagonal(R)
    return Q * (d / np.abs(d))
