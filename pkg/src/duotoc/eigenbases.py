"""Labeled operator states on the 2n-slot column space.

A column state lives on 2n slots, each of dimension q**2 (one folded site
carrying a ket copy u and a bra copy ubar, flattened row-major as u*q + ubar).
States are described symbolically by

* ``prods``  -- slot -> one-site operator placed on that slot, and
* ``pairs``  -- (i, j, X) entries tying slots i and j through an insertion X.

Kets ("right" side) and bras ("left" side) materialize differently, and
overlaps are *bilinear* contractions of the materialized vectors -- no complex
conjugation -- so that an identity pairing against two product slots yields a
plain trace: (I1 I1 | a b) = tr(ab).  Concretely, with slot indices (u, ubar)
and (v, vbar):

    right product slot:  X[u, ubar]          left product slot:  X[ubar, u]
    right pair (i, j):   X[u, vbar] X[v, ubar]
    left  pair (i, j):   X[vbar, u] X[ubar, v]

Families provided: the nested identity-pairing states e_{n,k} and their
orthonormal combinations (unit-eigenvalue eigenoperators of every dual-unitary
column transfer matrix), the sigma_z-decorated states z_{n,k} of the kicked
Ising chain, and the bitstring-labeled product/pairing bases of the kicked XY
chain together with their integer overlap matrix and biorthogonal dual basis.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .opalg import pauli_basis

TOL_BASIS = 1e-12

_P = pauli_basis(2)
_EYE, _SX, _SY, _SZ = (np.asarray(op) for op in _P.ops)

# slot-operator map for the XY bitstring states; the same symbols label the
# pairing insertions of the left states through sigma(b, a)
_XY_SLOT_OP = {(0, 0): _EYE, (0, 1): _SY, (1, 0): _SZ, (1, 1): _SX}

_LETTERS = "abcdefghijklmnopqrst"


@dataclass
class SlotState:
    """Symbolic product/pairing state on 2n slots of dimension q**2."""

    n: int
    side: str  # "right" (ket) or "left" (bra)
    prods: dict = field(default_factory=dict)
    pairs: tuple = ()
    q: int = 2
    scale: complex = 1.0
    _vec: np.ndarray = field(default=None, init=False, repr=False)

    def __post_init__(self):
        if self.side not in ("right", "left"):
            raise ValueError("side must be 'right' or 'left'")
        covered = sorted(self.prods) + sorted(s for p in self.pairs for s in p[:2])
        if sorted(covered) != list(range(1, 2 * self.n + 1)):
            raise ValueError("slots must cover 1..2n exactly once")

    def vector(self) -> np.ndarray:
        if self._vec is None:
            self._vec = _materialize(self)
        return self._vec


def _materialize(state: SlotState) -> np.ndarray:
    q = state.q
    d = q * q
    subs, operands = [], []
    for i, j, x in state.pairs:
        x = np.asarray(x, dtype=complex)
        if state.side == "right":
            # A[(u,ubar),(v,vbar)] = X[u,vbar] X[v,ubar]
            block = np.einsum("ad,cb->abcd", x, x)
        else:
            # A[(u,ubar),(v,vbar)] = X[vbar,u] X[ubar,v]
            block = np.einsum("da,bc->abcd", x, x)
        operands.append(block.reshape(d, d))
        subs.append(_LETTERS[i - 1] + _LETTERS[j - 1])
    for i in sorted(state.prods):
        x = np.asarray(state.prods[i], dtype=complex)
        vec = x.reshape(d) if state.side == "right" else x.T.reshape(d)
        operands.append(vec)
        subs.append(_LETTERS[i - 1])
    out = _LETTERS[: 2 * state.n]
    full = np.einsum(",".join(subs) + "->" + out, *operands)
    return state.scale * full.reshape(d ** (2 * state.n))


@dataclass
class LabeledState:
    """A named column state: symbolic slot description or a dense combination."""

    n: int
    kind: str  # e_k | z_k | xy_right | xy_left | boundary
    label: object
    state: object  # SlotState or ndarray
    orthonormal: bool = False

    @property
    def vec(self) -> np.ndarray:
        if isinstance(self.state, SlotState):
            return self.state.vector()
        return np.asarray(self.state)


def bilinear(bra, ket) -> complex:
    """Plain (conjugation-free) contraction of a bra-side and a ket-side state."""
    return complex(np.dot(_as_vec(bra), _as_vec(ket)))


def _as_vec(obj) -> np.ndarray:
    if isinstance(obj, LabeledState):
        return obj.vec
    if isinstance(obj, SlotState):
        return obj.vector()
    return np.asarray(obj)


def all_identity_state(n: int, q: int = 2, side: str = "right") -> SlotState:
    """The bare product of vectorized identities on all 2n slots."""
    eye = np.eye(q)
    return SlotState(n=n, side=side, prods={s: eye for s in range(1, 2 * n + 1)}, q=q)


# ---------------------------------------------------------------------------
# nested-pairing family e_{n,k}

def e_state(n: int, k: int, q: int = 2) -> LabeledState:
    """Raw e_{n,k}: k nested identity pairings tying slots n-k+1 .. n+k from
    the outside in, identity products elsewhere.  e_{n,0} is the all-identity
    product state."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    eye = np.eye(q)
    pairs = tuple((n - j, n + 1 + j, eye) for j in range(k))
    prods = {s: eye for s in range(1, n - k + 1)}
    prods.update({s: eye for s in range(n + k + 1, 2 * n + 1)})
    slot = SlotState(n=n, side="right", prods=prods, pairs=pairs, q=q)
    return LabeledState(n=n, kind="e_k", label=k, state=slot)


def e_basis(n: int, q: int = 2):
    """Return (raw, orthonormal) lists for k = 0..n.

    The orthonormal combinations are
        e~_{n,0}    = q^{-n} e_{n,0}
        e~_{n,k>0}  = q^{-n} (q e_{n,k} - e_{n,k-1}) / sqrt(q^2 - 1)
    """
    raw = [e_state(n, k, q) for k in range(n + 1)]
    tilde = [LabeledState(n, "e_k", 0, float(q) ** (-n) * raw[0].vec, orthonormal=True)]
    for k in range(1, n + 1):
        vec = (q * raw[k].vec - raw[k - 1].vec) / (float(q) ** n * np.sqrt(q * q - 1.0))
        tilde.append(LabeledState(n, "e_k", k, vec, orthonormal=True))
    return raw, tilde


# ---------------------------------------------------------------------------
# kicked-Ising z_{n,k} extension (q = 2)

def kim_z_state(n: int, k: int) -> LabeledState:
    """Raw z_{n,k}: sigma_z products on slots n-k+1 and n+k around a nested
    identity-pairing core, identity products outside."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    eye = np.eye(2)
    pairs = tuple((n - j, n + 1 + j, eye) for j in range(k - 1))
    prods = {n - k + 1: _SZ, n + k: _SZ}
    prods.update({s: eye for s in range(1, n - k + 1)})
    prods.update({s: eye for s in range(n + k + 1, 2 * n + 1)})
    slot = SlotState(n=n, side="right", prods=prods, pairs=pairs, q=2)
    return LabeledState(n=n, kind="z_k", label=k, state=slot)


def kim_z_basis(n: int):
    """Return (raw z_{n,k} for k = 1..n, orthonormal e~_{n,n+k} extensions).

    e~_{n,n+k} = 2^{-n} (sqrt(3/2) z_{n,k} - sqrt(2/3) e_{n,k} + sqrt(1/6) e_{n,k-1})
    completes the e~_{n,0..n} set to an orthonormal family of 2n+1 states.
    """
    zs = [kim_z_state(n, k) for k in range(1, n + 1)]
    raw_e, _ = e_basis(n)
    tilde = []
    for k in range(1, n + 1):
        vec = 2.0 ** (-n) * (
            np.sqrt(1.5) * zs[k - 1].vec
            - np.sqrt(2.0 / 3.0) * raw_e[k].vec
            + np.sqrt(1.0 / 6.0) * raw_e[k - 1].vec
        )
        tilde.append(LabeledState(n, "z_k", n + k, vec, orthonormal=True))
    return zs, tilde


# ---------------------------------------------------------------------------
# kicked-XY bitstring bases (q = 2)

def _bits(label) -> tuple:
    bits = tuple(int(b) for b in label)
    if any(b not in (0, 1) for b in bits):
        raise ValueError("labels are bitstrings")
    return bits


def xy_right_state(r) -> LabeledState:
    """Product state |{r}): slots i and 2n+1-i carry sigma(r_{i-1}, r_i) with
    the implicit r_0 = 0, under sigma(0,0)=1, sigma(0,1)=sy, sigma(1,0)=sz,
    sigma(1,1)=sx."""
    r = _bits(r)
    n = len(r)
    rr = (0,) + r
    prods = {}
    for i in range(1, n + 1):
        op = _XY_SLOT_OP[(rr[i - 1], rr[i])]
        prods[i] = op
        prods[2 * n + 1 - i] = op
    slot = SlotState(n=n, side="right", prods=prods, q=2)
    return LabeledState(n=n, kind="xy_right", label=r, state=slot)


def xy_left_state(l) -> LabeledState:
    """Pairing state ({l}|: pairing i ties slots (n+1-i, n+i) through the
    insertion sigma(l_i, l_{i-1}) with the implicit l_0 = 0 (innermost pairing
    i=1, outermost i=n)."""
    l = _bits(l)
    n = len(l)
    ll = (0,) + l
    pairs = tuple(
        (n + 1 - i, n + i, _XY_SLOT_OP[(ll[i], ll[i - 1])]) for i in range(1, n + 1)
    )
    slot = SlotState(n=n, side="left", pairs=pairs, q=2)
    return LabeledState(n=n, kind="xy_left", label=l, state=slot)


def xy_overlap(l, r) -> int:
    """Closed-form overlap ({l}|{r}) = prod_i 2 (-1)^(r_{i-1} l_{n-i} + r_i l_{n-i+1}),
    always 2^n times a sign."""
    l, r = _bits(l), _bits(r)
    if len(l) != len(r):
        raise ValueError("bitstring lengths differ")
    n = len(l)
    ll, rr = (0,) + l, (0,) + r
    expo = sum(rr[i - 1] * ll[n - i] + rr[i] * ll[n - i + 1] for i in range(1, n + 1))
    return (2 ** n) * (-1) ** (expo % 2)


@dataclass
class OverlapMatrix:
    """Integer matrix G[l, r] = ({l}|{r}) over all bitstrings in binary order."""

    n: int
    entries: np.ndarray
    labels: tuple

    def gram_identity_holds(self) -> bool:
        gram = self.entries @ self.entries.T
        return bool(np.array_equal(gram, 2 ** (3 * self.n) * np.eye(2 ** self.n, dtype=gram.dtype)))


def xy_overlap_matrix(n: int) -> OverlapMatrix:
    labels = tuple(itertools.product((0, 1), repeat=n))
    g = np.array([[xy_overlap(l, r) for r in labels] for l in labels], dtype=np.int64)
    return OverlapMatrix(n=n, entries=g, labels=labels)


def xy_dual_basis(n: int):
    """Biorthogonal dual sets built from the overlap matrix:

        (L({l})| = 2^{-n} ({l}|
        |R({l})) = 2^{-2n} sum_r ({l}|{r}) |{r})

    so that (L({l})|R({l'})) = delta exactly.  Returns (lefts, rights).
    """
    overlap = xy_overlap_matrix(n)
    rights_raw = [xy_right_state(r).vec for r in overlap.labels]
    lefts, rights = [], []
    for i, l in enumerate(overlap.labels):
        lvec = 2.0 ** (-n) * xy_left_state(l).vec
        rvec = 2.0 ** (-2 * n) * sum(
            overlap.entries[i, j] * rights_raw[j] for j in range(len(overlap.labels))
        )
        lefts.append(LabeledState(n, "xy_left", l, lvec, orthonormal=True))
        rights.append(LabeledState(n, "xy_right", l, rvec, orthonormal=True))
    return lefts, rights


def xy_left_boundary_overlap(sigma_alpha, r) -> float:
    """(L_n(sigma_alpha)|{r}) = 2^{n/2-1} tr(sigma_alpha X sigma_alpha X) with
    X = sigma(r_{n-1}, r_n)."""
    r = _bits(r)
    n = len(r)
    rr = (0,) + r
    x = _XY_SLOT_OP[(rr[n - 1], rr[n])]
    a = np.asarray(sigma_alpha)
    return 2.0 ** (n / 2.0 - 1.0) * float(np.trace(a @ x @ a @ x).real)


def xy_right_boundary_overlap(sigma_beta, l, parity: str) -> float:
    """({l}|R(sigma_beta)) against the even (product) or odd (gate-dressed)
    right boundary; the dressed overlap collapses to a J-independent value."""
    l = _bits(l)
    n = len(l)
    ll = (0,) + l
    b = np.asarray(sigma_beta)
    if parity == "even":
        x = _XY_SLOT_OP[(ll[n], ll[n - 1])]
        return 2.0 ** (n / 2.0 - 1.0) * float(np.trace(b @ x @ b @ x).real)
    if parity == "odd":
        if ll[n] == 0:
            return 2.0 ** (n / 2.0)
        bx = float(np.trace(b @ _SX).real) / 2.0
        return 2.0 ** (n / 2.0) * (2.0 * bx * bx - 1.0)
    raise ValueError("parity must be 'even' or 'odd'")


def xy_longtime_projector(sigma_alpha, sigma_beta, n: int, parity: str) -> float:
    """Long-time OTOC limit for the kicked XY chain by projecting onto the
    bitstring eigenbasis: sum_l (L(sigma_alpha)|R({l})) (L({l})|R(sigma_beta)).
    Uses only closed-form overlaps, so no dense vectors are materialized."""
    overlap = xy_overlap_matrix(n)
    left_bnd = np.array([xy_left_boundary_overlap(sigma_alpha, r) for r in overlap.labels])
    right_bnd = np.array(
        [xy_right_boundary_overlap(sigma_beta, l, parity) for l in overlap.labels]
    )
    # (L(a)|R({l})) = 2^{-2n} sum_r G[l,r] (L(a)|{r});  (L({l})| = 2^{-n} ({l}|
    left_dual = 2.0 ** (-2 * n) * overlap.entries @ left_bnd
    return float(2.0 ** (-n) * np.dot(left_dual, right_bnd))


def product_state(ops) -> LabeledState:
    """Bare product state with explicit one-site operators on all 2n slots."""
    ops = tuple(np.asarray(op) for op in ops)
    if len(ops) % 2:
        raise ValueError("need an even number of slot operators")
    n = len(ops) // 2
    slot = SlotState(n=n, side="right", prods={i + 1: ops[i] for i in range(2 * n)}, q=2)
    return LabeledState(n=n, kind="boundary", label=None, state=slot)
