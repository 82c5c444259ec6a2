"""Column transfer matrix for folded brickwork OTOC diagrams.

One column of the OTOC diagram stacks n copies of the circuit gate along a
light-cone diagonal.  Each copy appears four times (two forward, two backward),
and the four copies fold into two sheets of W = U (x) U*.  Per sheet the chain
of gates runs from a bottom cap to a shared top cap:

* bundle tensor axes: (out_slot, chain_up, chain_dn, in_slot), each of
  dimension q**2, with out_slot = folded left-out leg, in_slot = folded
  right-in leg, and the chain legs tying consecutive bundles (lower right-out
  into upper left-in);
* bottom caps are intra-sheet vec(1) (or vec(sigma_beta) for the dressed
  odd-parity right boundary); the top cap ties the two sheets with a crossed
  delta;
* transfer slots 1..n are sheet one of bundles 1..n, slots 2n..n+1 are sheet
  two of the same bundles; bundle n is the innermost (sigma_alpha-adjacent).

The normalized transfer matrix is the raw contraction divided by q (each
bundle passes the folded identity through losslessly, so only the top cap
contributes a scalar); it then satisfies T|R_n) = |R_n) and (L_n|T = (L_n| for
every unitary gate, with the fixed points defined in the eigenbases module
conventions.  All overlaps are bilinear (no conjugation), so the left identity
reads T.T @ L = L.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .eigenbases import SlotState, all_identity_state
from .gates import gate_matrix
from .opalg import pauli_basis

TOL_FIXED = 1e-10
TOL_REAL = 1e-10
TOL_RADIUS = 1e-8
N_MAX_DENSE = 3
N_MAX_APPLY = 5
ITERATION_CAP = 10_000
CESARO_WINDOW = 64


def parity_tag(x: int, t: int) -> str:
    return "even" if (t - x) % 2 == 0 else "odd"


def _bundle_tensor(u: np.ndarray, q: int) -> np.ndarray:
    u4 = np.asarray(u, dtype=complex).reshape(q, q, q, q)
    w = np.einsum("abcd,efgh->aebfcgdh", u4, u4.conj())
    d = q * q
    return w.reshape(d, d, d, d)


def _inter_cap(q: int) -> np.ndarray:
    eye = np.eye(q)
    return np.einsum("ad,bc->abcd", eye, eye).reshape(q * q, q * q)


def _apply_column(w, v, n, cap_f1, cap_f2, pcap):
    """Contract one raw column against a ket given as a 2n-axis array."""
    p = np.multiply.outer(v, cap_f1)
    # sheet one, bottom to top: contract (chain, in_slot), emit (out_slot, chain)
    for b in range(1, n + 1):
        p = np.tensordot(p, w, axes=([2 * n, b - 1], [2, 3]))
        p = np.moveaxis(p, [2 * n - 1, 2 * n], [b - 1, 2 * n])
    p = np.tensordot(p, pcap, axes=([2 * n], [0]))
    # sheet two, top to bottom on slots 2n+1-b
    for b in range(n, 0, -1):
        pos = 2 * n - b
        p = np.tensordot(p, w, axes=([2 * n, pos], [1, 3]))
        p = np.moveaxis(p, [2 * n - 1, 2 * n], [pos, 2 * n])
    return np.tensordot(p, cap_f2, axes=([2 * n], [0]))


def _sheet_mpo(w, n, cap, reverse):
    """Per-sheet chain of n bundles with the bottom cap absorbed; returns
    s[chain_top, out_slots, in_slots] with slots flattened row-major in column
    order (bundle n slowest when reverse, fastest otherwise reversed...)."""
    d = w.shape[0]
    s = np.einsum("okyi,y->koi", w, cap)
    for _ in range(n - 1):
        if reverse:
            s = np.einsum("okyi,yAB->koAiB", w, s).reshape(d, s.shape[1] * d, s.shape[2] * d)
        else:
            s = np.einsum("okyi,yAB->kAoBi", w, s).reshape(d, s.shape[1] * d, s.shape[2] * d)
    return s


@dataclass
class TransferMatrix:
    n: int
    q: int
    mat: np.ndarray
    gate: np.ndarray
    spectral_radius: float = None

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def apply(self, vec: np.ndarray) -> np.ndarray:
        return self.mat @ vec


@dataclass
class BoundaryVector:
    n: int
    parity: str  # "even" / "odd" for right boundaries, None for left
    side: str
    vec: np.ndarray
    op: np.ndarray = None


class TransferOperator:
    """Matrix-free application of the depth-n column transfer matrix."""

    def __init__(self, gate, n: int, q: int = 2):
        if n < 1:
            raise ValueError("need n >= 1")
        if n > N_MAX_APPLY:
            raise ValueError(
                f"depth n={n} exceeds the application budget (n <= {N_MAX_APPLY}); "
                "use the brute-force oracle or a closed form"
            )
        u = gate_matrix(gate)
        self.n = n
        self.q = q
        self._w = _bundle_tensor(u, q)
        self._pcap = _inter_cap(q)
        self._cap = np.eye(q).astype(complex).reshape(q * q)
        self._scale = 1.0 / q

    @property
    def dim(self) -> int:
        return (self.q * self.q) ** (2 * self.n)

    def apply(self, vec: np.ndarray) -> np.ndarray:
        d = self.q * self.q
        v = np.asarray(vec, dtype=complex).reshape((d,) * (2 * self.n))
        out = _apply_column(self._w, v, self.n, self._cap, self._cap, self._pcap)
        return self._scale * out.reshape(self.dim)


def _pauli_q(q: int = 2) -> np.ndarray:
    """Columns are vec(sigma_mu)/sqrt(q): the unitary change from the
    orthonormal Hermitian leg basis to the computational folded basis."""
    basis = pauli_basis(q)
    cols = [m.reshape(q * q) / np.sqrt(q) for m in basis.ops]
    return np.stack(cols, axis=1)


def _axes_transform(vec: np.ndarray, n_axes: int, mat: np.ndarray) -> np.ndarray:
    """Contract every axis of a d^n_axes tensor with mat over its first index."""
    d = mat.shape[0]
    t = np.asarray(vec).reshape((d,) * n_axes)
    for ax in range(n_axes):
        t = np.moveaxis(np.tensordot(t, mat, axes=([ax], [0])), -1, ax)
    return t.reshape(-1)


class _PauliColumnKernel:
    """Column application rewritten in the orthonormal Hermitian leg basis.

    Expanding every leg in {sigma_mu/sqrt(q)} is an exact similarity transform
    of the column: all bundle coefficients become real (the folded action of a
    unitary on a Hermitian basis has real matrix elements), the vec(1) caps
    become sqrt(q) e_0, and the crossed top cap becomes the identity bond.  One
    application then runs as 2n real middle-axes contractions, visiting slots
    2n down to 1, with the chain axis always adjacent to the slot being
    consumed: sheet two climbs from its bottom cap, the top cap passes the
    chain straight through, and sheet one descends to its bottom cap, leaving
    the output slots already in canonical order.  Real float64 arithmetic
    halves the memory traffic of the complex path; values agree to rounding.
    """

    def __init__(self, gate, n: int, q: int = 2):
        if q != 2:
            raise NotImplementedError("the Hermitian-basis kernel assumes q = 2")
        self.n = n
        self.q = q
        self.d = q * q
        d = self.d
        qmat = _pauli_q(q)
        w = _bundle_tensor(gate_matrix(gate), q)
        wp = np.einsum("oudi,oa,ub,dc,ie->abce", w, qmat, qmat,
                       qmat.conj(), qmat.conj())
        if np.abs(wp.imag).max() > 1e-12:
            raise AssertionError("bundle is not real in the Hermitian leg basis")
        wp = np.ascontiguousarray(wp.real)
        cap = qmat.T @ np.eye(q).reshape(d)
        if np.abs(cap.imag).max() > 1e-12:
            raise AssertionError("cap is not real in the Hermitian leg basis")
        self._cap = np.ascontiguousarray(cap.real)
        # slot 2n: bottom cap of sheet two folds into the chain_dn leg
        self._m_first = np.ascontiguousarray(
            np.einsum("oudi,d->iuo", wp, self._cap).reshape(d, d * d))
        # remaining sheet-two slots pair (in_slot, chain_dn) -> (chain_up, out);
        # stored transposed for the batched matmul in apply
        self._m2t = np.ascontiguousarray(
            wp.transpose(3, 2, 1, 0).reshape(d * d, d * d).T)
        # sheet-one slots pair (in_slot, chain_up) -> (chain_dn, out)
        self._m1t = np.ascontiguousarray(
            wp.transpose(3, 1, 2, 0).reshape(d * d, d * d).T)
        self._qmat = qmat
        self._scale = 1.0 / q

    def to_iterate_basis(self, vec: np.ndarray) -> np.ndarray:
        u = _axes_transform(vec, 2 * self.n, self._qmat)
        if np.abs(u.imag).max() > 1e-10:
            raise AssertionError("iterate is not real in the Hermitian leg basis")
        return np.ascontiguousarray(u.real)

    def to_dual_basis(self, vec: np.ndarray) -> np.ndarray:
        u = _axes_transform(vec, 2 * self.n, self._qmat.conj())
        if np.abs(u.imag).max() > 1e-10:
            raise AssertionError("left vector is not real in the Hermitian leg basis")
        return np.ascontiguousarray(u.real)

    def from_iterate_basis(self, u: np.ndarray) -> np.ndarray:
        return _axes_transform(u.astype(complex), 2 * self.n,
                               self._qmat.conj().T)

    def apply(self, u: np.ndarray) -> np.ndarray:
        d, n = self.d, self.n
        p = u.reshape(-1, d) @ self._m_first
        for s in range(2 * n - 1, 0, -1):
            mat = self._m2t if s > n else self._m1t
            p = np.matmul(mat, p.reshape(d ** (s - 1), d * d, -1))
        out = self._cap @ p.reshape(d, -1)
        return self._scale * out.reshape(-1)


def fixed_right(n: int, q: int = 2) -> np.ndarray:
    """|R_n) = q^{-n/2} |o ... o): identity products on all 2n slots."""
    state = all_identity_state(n, q)
    return float(q) ** (-n / 2.0) * state.vector()


def fixed_left(n: int, q: int = 2) -> np.ndarray:
    """(L_n| = q^{-n/2} nested identity pairings tying slots j and 2n+1-j."""
    eye = np.eye(q)
    pairs = tuple((j, 2 * n + 1 - j, eye) for j in range(1, n + 1))
    state = SlotState(n=n, side="left", pairs=pairs, q=q)
    return float(q) ** (-n / 2.0) * state.vector()


def boundary_left(sigma_alpha, n: int, q: int = 2) -> BoundaryVector:
    """(L_n(sigma_alpha)|: the innermost pairing carries the insertion."""
    sa = np.asarray(sigma_alpha, dtype=complex)
    eye = np.eye(q)
    pairs = tuple((j, 2 * n + 1 - j, eye) for j in range(1, n)) + ((n, n + 1, sa),)
    state = SlotState(n=n, side="left", pairs=pairs, q=q)
    vec = float(q) ** (-n / 2.0) * state.vector()
    return BoundaryVector(n=n, parity=None, side="left", vec=vec, op=sa)


def boundary_right(sigma_beta, n: int, parity: str, gate=None, q: int = 2) -> BoundaryVector:
    """|R_n(sigma_beta)) for the requested parity of t - x.

    even: product form, sigma_beta on the outermost slots 1 and 2n;
    odd: gate-dressed form, one raw column with vec(sigma_beta) bottom caps
    applied to the all-identity product and scaled by q^{-n/2-1}.  The dressed
    form needs the circuit gate; for sigma_beta = identity both reduce to |R_n).
    """
    sb = np.asarray(sigma_beta, dtype=complex)
    if parity == "even":
        eye = np.eye(q)
        prods = {s: eye for s in range(2, 2 * n)}
        prods[1] = sb
        prods[2 * n] = sb
        state = SlotState(n=n, side="right", prods=prods, q=q)
        vec = float(q) ** (-n / 2.0) * state.vector()
        return BoundaryVector(n=n, parity="even", side="right", vec=vec, op=sb)
    if parity == "odd":
        if gate is None:
            raise ValueError("the odd-parity (dressed) right boundary needs the gate")
        u = gate_matrix(gate)
        d = q * q
        w = _bundle_tensor(u, q)
        pcap = _inter_cap(q)
        cap = sb.reshape(d)
        v0 = all_identity_state(n, q).vector().reshape((d,) * (2 * n))
        out = _apply_column(w, v0, n, cap, cap, pcap)
        vec = float(q) ** (-n / 2.0 - 1.0) * out.reshape(d ** (2 * n))
        return BoundaryVector(n=n, parity="odd", side="right", vec=vec, op=sb)
    raise ValueError("parity must be 'even' or 'odd'")


def _power_radius_estimate(apply_fn, dim, iters=200, seed=7):
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    v /= np.linalg.norm(v)
    growth = 0.0
    for _ in range(iters):
        w = apply_fn(v)
        nrm = np.linalg.norm(w)
        if nrm < 1e-300:
            return 0.0
        growth = nrm
        v = w / nrm
    return growth


def build_transfer(gate, n: int, q: int = 2) -> TransferMatrix:
    """Dense depth-n transfer matrix with fixed-point checks at construction.

    Materialization is restricted to q**(4n) <= 4096 (n <= 3 at q = 2); the
    matrix-free TransferOperator serves deeper columns.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    d = q * q
    dim = d ** (2 * n)
    if n > N_MAX_DENSE:
        raise ValueError(
            f"dense transfer at n={n} (dim {dim}) exceeds the materialization "
            f"budget (n <= {N_MAX_DENSE}); use TransferOperator.apply instead"
        )
    u = gate_matrix(gate)
    w = _bundle_tensor(u, q)
    pcap = _inter_cap(q)
    cap = np.eye(q).astype(complex).reshape(d)
    s1 = _sheet_mpo(w, n, cap, reverse=False)
    s2 = _sheet_mpo(w, n, cap, reverse=True)
    raw = np.einsum("kl,kab,lcd->acbd", pcap, s1, s2)
    half = d ** n
    mat = raw.reshape(half * half, half * half) / q

    rvec = fixed_right(n, q)
    lvec = fixed_left(n, q)
    if np.linalg.norm(mat @ rvec - rvec) > TOL_FIXED:
        raise AssertionError("transfer construction lost the right fixed point")
    if np.linalg.norm(mat.T @ lvec - lvec) > TOL_FIXED:
        raise AssertionError("transfer construction lost the left fixed point")

    if dim <= 256:
        radius = float(np.max(np.abs(np.linalg.eigvals(mat))))
        if radius > 1.0 + TOL_RADIUS:
            raise AssertionError(f"transfer spectral radius {radius} exceeds 1")
    else:
        radius = float(_power_radius_estimate(lambda v: mat @ v, dim))
        if radius > 1.0 + 1e-6:
            raise AssertionError(f"transfer spectral radius estimate {radius} exceeds 1")
    return TransferMatrix(n=n, q=q, mat=mat, gate=u, spectral_radius=radius)


@dataclass
class OtocResult:
    x: object
    t: object
    parity: str
    value: float
    method: str
    n: int = None
    meta: dict = field(default_factory=dict)

    def to_row(self):
        return (self.x, self.t, self.parity, self.value, self.method)


def _real_value(val: complex) -> float:
    if abs(val.imag) > TOL_REAL:
        raise ValueError(f"OTOC value has imaginary residue {val.imag:.3e}; "
                         "operators Hermitian?")
    return float(val.real)


def _depths(x: int, t: int):
    if (t - x) % 2 == 0:
        return (t - x + 2) // 2, (t + x) // 2, "even"
    return (t - x + 1) // 2, (t + x + 1) // 2 - 1, "odd"


def otoc_finite(gate, sigma_alpha, sigma_beta, x: int, t: int, q: int = 2) -> OtocResult:
    """C(x, t) by n_+ applications of the depth-n_- transfer matrix.

    Outside the light cone the value is 1 without computation; x < 0 is served
    by mirroring the gate (conjugation by the swap), which reflects the
    brickwork about the origin.
    """
    if t < 0:
        raise ValueError("need t >= 0")
    if abs(x) > t:
        return OtocResult(x, t, parity_tag(x, t), 1.0, "finite_transfer")
    if x < 0:
        from .opalg import swap_gate

        swap = swap_gate(q)
        mirrored = otoc_finite(swap @ gate_matrix(gate) @ swap,
                               sigma_alpha, sigma_beta, -x, t, q=q)
        return OtocResult(x, t, mirrored.parity, mirrored.value,
                          mirrored.method, n=mirrored.n, meta=mirrored.meta)
    n, applications, parity = _depths(x, t)
    if n > N_MAX_APPLY:
        raise ValueError(
            f"depth n={n} exceeds the budget (n <= {N_MAX_APPLY}); "
            "use the brute-force oracle or a closed form"
        )
    op = TransferOperator(gate, n, q=q)
    v = boundary_right(sigma_beta, n, parity, gate=gate, q=q).vec
    for _ in range(applications):
        v = op.apply(v)
    val = np.dot(boundary_left(sigma_alpha, n, q=q).vec, v)
    return OtocResult(x, t, parity, _real_value(val), "finite_transfer", n=n)


def otoc_longtime(gate, sigma_alpha, sigma_beta, n: int, parity: str,
                  q: int = 2, engine: str = "pauli") -> OtocResult:
    """lim_{m -> inf} (L(sigma_alpha)| T^m |R(sigma_beta)) by iterated
    application.

    Convergence is declared when successive overlaps differ by < 1e-10.  If the
    iteration cap is hit (unit-modulus eigenvalues keep the overlap
    oscillating), the result is the Cesaro mean over a trailing window of 64
    iterates, flagged with the oscillation amplitude.

    engine "pauli" (default) runs the iteration in the real Hermitian leg
    basis (see _PauliColumnKernel) -- an exact basis change that roughly
    halves the cost per application; "direct" keeps the complex folded basis.
    """
    if n > N_MAX_APPLY:
        raise ValueError(
            f"depth n={n} exceeds the application budget (n <= {N_MAX_APPLY}); "
            "use the brute-force oracle or a closed form"
        )
    v = boundary_right(sigma_beta, n, parity, gate=gate, q=q).vec
    lvec = boundary_left(sigma_alpha, n, q=q).vec
    if engine == "pauli" and q == 2:
        kern = _PauliColumnKernel(gate, n, q=q)
        state = kern.to_iterate_basis(v)
        left = kern.to_dual_basis(lvec)
        apply_fn = kern.apply
    elif engine in ("pauli", "direct"):
        op = TransferOperator(gate, n, q=q)
        state = v
        left = lvec
        apply_fn = op.apply
    else:
        raise ValueError("engine must be 'pauli' or 'direct'")
    window = []
    s_prev = np.dot(left, state)
    for m in range(1, ITERATION_CAP + 1):
        state = apply_fn(state)
        s = np.dot(left, state)
        window.append(s)
        if len(window) > CESARO_WINDOW:
            window.pop(0)
        if abs(s - s_prev) < 1e-10:
            return OtocResult(None, None, parity, _real_value(s),
                              "longtime_iterate", n=n,
                              meta={"iterations": m, "converged": True})
        s_prev = s
    tail = np.asarray(window)
    mean = tail.mean()
    amplitude = float(np.max(np.abs(tail - mean)))
    return OtocResult(None, None, parity, _real_value(mean),
                      "longtime_iterate", n=n,
                      meta={"iterations": ITERATION_CAP, "converged": False,
                            "amplitude": amplitude})


def otoc_longtime_projector(gate, sigma_alpha, sigma_beta, n: int, parity: str,
                            dual_pairs, q: int = 2) -> OtocResult:
    """Long-time limit through an explicit unit-eigenvalue projector
    sum_i |r_i)(l_i|, supplied as (left_vec, right_vec) dual pairs."""
    rvec = boundary_right(sigma_beta, n, parity, gate=gate, q=q).vec
    lvec = boundary_left(sigma_alpha, n, q=q).vec
    val = sum(np.dot(lvec, _vec_of(r)) * np.dot(_vec_of(l), rvec)
              for l, r in dual_pairs)
    return OtocResult(None, None, parity, _real_value(complex(val)),
                      "longtime_projector", n=n)


def _vec_of(obj) -> np.ndarray:
    vec = getattr(obj, "vec", obj)
    return np.asarray(vec)
