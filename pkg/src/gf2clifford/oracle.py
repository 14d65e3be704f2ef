"""Dense complex-matrix ground truth for small registers.

Basis state ``|x>`` has index ``sum_k x_k 2^(n-1-k)``: qubit 0 is the most
significant bit, so Kronecker products list qubit 0 first.  In this basis
``tau_a = sum_x (-1)^(v.x) |x><x + w|``.

Everything here is deliberately naive (Kronecker products, explicit
sums over basis states) so that it shares no code path with the binary
formalism it checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import TYPE_CHECKING

import numpy as np

from . import gf2
from .clifford import CliffordTableau, block_factors, compose_all, from_symplectic
from .decompose import (
    Cnot,
    ExpPi4,
    GateSeq,
    HadamardSet,
    PauliGate,
    SingleQubitSymplectic,
    Swap,
    symplectic_block_decompose,
)
from .gf2 import BinMat, BinVec
from .pauli import PauliElement

if TYPE_CHECKING:
    from .stabilizer import StabilizerRep

MAX_OPERATOR_QUBITS = 10
MAX_PAULI_QUBITS = 12
TOLERANCE = 1e-10

_TAU = {
    (0, 0): np.eye(2, dtype=complex),
    (0, 1): np.array([[0, 1], [1, 0]], dtype=complex),
    (1, 0): np.array([[1, 0], [0, -1]], dtype=complex),
    (1, 1): np.array([[0, 1], [-1, 0]], dtype=complex),
}
_HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_PHASE = {(0, 0): 1, (1, 0): 1j, (0, 1): -1, (1, 1): -1j}


class OracleSizeError(ValueError):
    """Register too large for a dense representation."""


def _check_size(n: int, cap: int) -> None:
    if n > cap:
        raise OracleSizeError(f"n={n} exceeds the dense limit of {cap} qubits")


def basis_bits(n: int) -> np.ndarray:
    """``(2^n, n)`` array whose row ``j`` holds the bits of basis state ``j``."""
    idx = np.arange(2**n)
    return ((idx[:, None] >> np.arange(n - 1, -1, -1)) & 1).astype(np.uint8)


def basis_index(bits: np.ndarray) -> np.ndarray:
    """Inverse of :func:`basis_bits` along the last axis."""
    n = bits.shape[-1]
    return (bits.astype(np.int64) << np.arange(n - 1, -1, -1)).sum(axis=-1)


def dense_pauli(p: PauliElement) -> np.ndarray:
    """``i^delta (-1)^epsilon tau_a`` as a ``2^n x 2^n`` matrix."""
    _check_size(p.n, MAX_PAULI_QUBITS)
    v, w = p.v.to_array(), p.w.to_array()
    out = np.ones((1, 1), dtype=complex)
    for k in range(p.n):
        out = np.kron(out, _TAU[(int(v[k]), int(w[k]))])
    return p.phase * out


def pauli_from_dense(m: np.ndarray) -> PauliElement:
    """Decode a matrix equal to some ``i^delta (-1)^epsilon tau_a``.

    Raises:
        ValueError: if ``m`` is not of that form.
    """
    dim = m.shape[0]
    n = dim.bit_length() - 1
    if m.shape != (dim, dim) or 2**n != dim:
        raise ValueError(f"not a square 2^n matrix: {m.shape}")
    row = np.flatnonzero(np.abs(m[0]) > 0.5)
    if row.size != 1:
        raise ValueError("row 0 does not have exactly one nonzero entry")
    w_idx = int(row[0])
    phase = m[0, w_idx]
    key = next((k for k, z in _PHASE.items() if abs(phase - z) < TOLERANCE), None)
    if key is None:
        raise ValueError(f"entry {phase} is not a power of i")
    w = basis_bits(n)[w_idx] if n else np.zeros(0, dtype=np.uint8)
    v = np.zeros(n, dtype=np.uint8)
    for k in range(n):
        x = 1 << (n - 1 - k)
        ratio = m[x, x ^ w_idx] / phase
        v[k] = int(ratio.real < 0)
    p = PauliElement(BinVec(np.concatenate([v, w])), *key)
    if not np.allclose(dense_pauli(p), m, atol=TOLERANCE):
        raise ValueError("matrix is not a scaled tau operator")
    return p


def tableau_from_unitary(u: np.ndarray) -> CliffordTableau:
    """Read ``(C, d, h)`` off ``u`` by conjugating every generator ``tau_{e_k}``."""
    n = u.shape[0].bit_length() - 1
    cols, d, h = [], [], []
    for k in range(2 * n):
        g = dense_pauli(PauliElement(BinVec.unit(2 * n, k)))
        img = pauli_from_dense(u @ g @ u.conj().T)
        cols.append(img.a)
        d.append(img.delta)
        h.append(img.epsilon)
    return CliffordTableau(BinMat.from_columns(cols, 2 * n), BinVec(d), BinVec(h))


def conjugate_dense(u: np.ndarray, p: PauliElement) -> PauliElement:
    return pauli_from_dense(u @ dense_pauli(p) @ u.conj().T)


# -- gate unitaries ----------------------------------------------------------


def exp_pi4_dense(a: BinVec) -> np.ndarray:
    """``(I + i tau_abar)/sqrt(2)`` with ``tau_abar = i^(a^T U a) tau_a``."""
    tau_bar = dense_pauli(PauliElement(a, gf2.u_form(a, a), 0))
    return (np.eye(tau_bar.shape[0]) + 1j * tau_bar) / np.sqrt(2)


@lru_cache(maxsize=None)
def _one_qubit_cliffords() -> dict:
    """The 24 one-qubit Cliffords modulo phase, keyed by their tableau."""
    s = np.diag([1, 1j])
    found: dict = {}
    frontier = [np.eye(2, dtype=complex)]
    while frontier:
        nxt = []
        for u in frontier:
            t = tableau_from_unitary(u)
            key = (str(t.C), str(t.h))
            if key in found:
                continue
            found[key] = u
            nxt += [_HADAMARD @ u, s @ u]
        frontier = nxt
    return found


def _small_unitary(gate, n: int) -> tuple[np.ndarray, list[int]]:
    """Unitary of ``gate`` restricted to the qubits it touches, and those qubits."""
    if isinstance(gate, ExpPi4 | PauliGate):
        qs = gate.qubits()
        sub = BinVec(np.concatenate([gate.a.to_array()[qs], gate.a.to_array()[[n + q for q in qs]]]))
        if isinstance(gate, PauliGate):
            return dense_pauli(PauliElement(sub)), qs
        return exp_pi4_dense(sub), qs
    if isinstance(gate, Cnot):
        u = np.eye(4, dtype=complex)[[0, 1, 3, 2]]
        return u, [gate.control, gate.target]
    if isinstance(gate, Swap):
        return np.eye(4, dtype=complex)[[0, 2, 1, 3]], [gate.q1, gate.q2]
    if isinstance(gate, HadamardSet):
        u = np.ones((1, 1), dtype=complex)
        for _ in gate.targets:
            u = np.kron(u, _HADAMARD)
        return u, list(gate.targets)
    if isinstance(gate, SingleQubitSymplectic):
        return _one_qubit_cliffords()[(str(gate.C), str(gate.h))], [gate.qubit]
    raise TypeError(f"unknown gate {gate!r}")


def apply_on_qubits(state: np.ndarray, u: np.ndarray, qubits: list[int], n: int) -> np.ndarray:
    """Apply a ``2^k x 2^k`` unitary on ``qubits`` to the rows of ``state``."""
    k = len(qubits)
    if k == 0:
        return state
    rest = state.shape[1:]
    t = state.reshape((2,) * n + rest)
    t = np.tensordot(u.reshape((2,) * (2 * k)), t, axes=(list(range(k, 2 * k)), qubits))
    t = np.moveaxis(t, list(range(k)), qubits)
    return t.reshape(state.shape)


def gate_unitary(gate, n: int) -> np.ndarray:
    _check_size(n, MAX_OPERATOR_QUBITS)
    u, qs = _small_unitary(gate, n)
    return apply_on_qubits(np.eye(2**n, dtype=complex), u, qs, n)


def apply_gates(state: np.ndarray, seq: GateSeq) -> np.ndarray:
    """Apply the gates of ``seq`` in order to a vector or to the columns of a matrix."""
    for g in seq:
        u, qs = _small_unitary(g, seq.n)
        state = apply_on_qubits(state, u, qs, seq.n)
    return state


def dense_from_gates(seq: GateSeq) -> np.ndarray:
    """Unitary ``g_last ... g_1`` of a gate sequence."""
    _check_size(seq.n, MAX_OPERATOR_QUBITS)
    seq.validate()
    return apply_gates(np.eye(2**seq.n, dtype=complex), seq)


# -- closed forms ------------------------------------------------------------


def _lows_form(bits: np.ndarray, m: BinMat) -> np.ndarray:
    """``x^T lows(M) x`` mod 2 for every row ``x`` of ``bits``."""
    low = np.tril(m.to_array(), -1).astype(np.int64)
    return ((bits.astype(np.int64) @ low.T) * bits).sum(axis=1) & 1


def _minus_i_power(e: np.ndarray) -> np.ndarray:
    return np.where(e & 1, -1j, 1.0)


def diagonal_clifford_matrix(z: BinMat, d: BinVec) -> np.ndarray:
    """``sum_x (-i)^(d^T x) (-1)^(x^T lows(Z + d d^T) x) |x><x|``."""
    if not z.is_symmetric():
        raise ValueError("Z must be symmetric")
    if gf2.diag_vec(z) != d:
        raise ValueError("d must equal diag(Z)")
    n = z.rows
    _check_size(n, MAX_OPERATOR_QUBITS)
    x = basis_bits(n)
    e_d = (x.astype(np.int64) @ d.to_array().astype(np.int64)) & 1
    q = _lows_form(x, z + BinMat.outer(d, d))
    return np.diag(_minus_i_power(e_d) * np.where(q, -1.0, 1.0))


@dataclass(frozen=True)
class ClosedFormData:
    """Parameters of the closed-form entries of a Clifford matrix."""

    T1: BinMat
    T2: BinMat
    Z_br: BinMat
    Z_bc: BinMat
    h_bc: BinVec
    t: BinVec
    r: int

    @property
    def d_br(self) -> BinVec:
        return gf2.diag_vec(self.Z_br)

    @property
    def d_bc(self) -> BinVec:
        return gf2.diag_vec(self.Z_bc)


def closed_form_data(Q: CliffordTableau) -> ClosedFormData:
    """Closed-form parameters from the five-factor decomposition of ``C`` and the ``h`` correction."""
    n = Q.n
    blocks = symplectic_block_decompose(Q.C)
    z_br, z_bc = blocks.z_blocks()
    factors = [from_symplectic(f) for f in blocks.factors()]
    h_prime = compose_all(factors[::-1], n).h
    h6 = Q.h + h_prime
    t = h6[:n]
    h_bc = gf2.mat_inverse(blocks.T2).T @ h6[n:]
    return ClosedFormData(blocks.T1, blocks.T2, z_br, z_bc, h_bc, t, blocks.r)


def clifford_matrix_closed_form(Q: CliffordTableau) -> np.ndarray:
    """Dense matrix of ``Q`` assembled entry by entry from the closed form.

    The entry at ``(T1 x_br, T2^-1 x_bc + t)`` is
    ``2^(-r/2) (-i)^(d_br.x_br) (-i)^(d_bc.x_bc)
    (-1)^(h_bc.x_bc + x_r.x_c + q_br(x_br) + q_bc(x_bc))``
    with ``x_br = [x_b; x_r]``, ``x_bc = [x_b; x_c]`` and
    ``q(x) = x^T lows(Z + d d^T) x``.
    """
    n = Q.n
    _check_size(n, MAX_OPERATOR_QUBITS)
    data = closed_form_data(Q)
    r, k = data.r, n - data.r
    xb = basis_bits(k)
    xr = basis_bits(r)
    # every (x_b, x_r, x_c) triple
    ib, ir, ic = (a.reshape(-1) for a in np.meshgrid(np.arange(2**k), np.arange(2**r), np.arange(2**r), indexing="ij"))
    x_br = np.concatenate([xb[ib], xr[ir]], axis=1)
    x_bc = np.concatenate([xb[ib], xr[ic]], axis=1)

    def lin(x, vec):
        return (x.astype(np.int64) @ vec.to_array().astype(np.int64)) & 1

    sign = (
        lin(x_bc, data.h_bc)
        + ((xr[ir].astype(np.int64) * xr[ic]).sum(axis=1) & 1)
        + _lows_form(x_br, data.Z_br + BinMat.outer(data.d_br, data.d_br))
        + _lows_form(x_bc, data.Z_bc + BinMat.outer(data.d_bc, data.d_bc))
    ) & 1
    vals = _minus_i_power(lin(x_br, data.d_br)) * _minus_i_power(lin(x_bc, data.d_bc))
    vals = vals * np.where(sign, -1.0, 1.0) / np.sqrt(2.0**r)

    t1 = data.T1.to_array().astype(np.int64)
    t2inv = gf2.mat_inverse(data.T2).to_array().astype(np.int64)
    rows = basis_index((x_br @ t1.T) & 1)
    cols = basis_index(((x_bc @ t2inv.T) & 1) ^ data.t.to_array())
    out = np.zeros((2**n, 2**n), dtype=complex)
    out[rows, cols] = vals
    return out


# -- states and comparison ---------------------------------------------------


def projector_state(state: StabilizerRep) -> np.ndarray:
    """Common +1 eigenvector of the generators, by projecting basis seeds.

    Raises:
        ValueError: if every seed projects to zero.
    """
    n = state.n
    _check_size(n, MAX_OPERATOR_QUBITS)
    gens = [dense_pauli(g) for g in state.generators()]
    threshold = 2.0 ** (-n / 2 - 1)
    for seed in range(2**n):
        psi = np.zeros(2**n, dtype=complex)
        psi[seed] = 1.0
        for g in gens:
            psi = (psi + g @ psi) / 2
        norm = np.linalg.norm(psi)
        if norm > threshold:
            return psi / norm
    raise ValueError("generators have no common +1 eigenvector")


def phase_deviation(u: np.ndarray, v: np.ndarray) -> float:
    """Largest entrywise deviation between ``u`` and ``v`` after matching global phase."""
    if u.shape != v.shape:
        raise ValueError(f"shape mismatch: {u.shape} vs {v.shape}")
    flat_v = v.reshape(-1)
    j = int(np.argmax(np.abs(flat_v)))
    if abs(flat_v[j]) == 0:
        raise ValueError("reference must be nonzero")
    ratio = u.reshape(-1)[j] / flat_v[j]
    if abs(abs(ratio) - 1) > TOLERANCE:
        return float(abs(abs(ratio) - 1))
    return float(np.max(np.abs(u - ratio * v)))


def equal_up_to_phase(u: np.ndarray, v: np.ndarray, tol: float = TOLERANCE) -> bool:
    return phase_deviation(u, v) <= tol
