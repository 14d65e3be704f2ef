"""Clifford operations as binary tableaux ``(C, d, h)``.

Column ``k`` of the symplectic matrix ``C`` together with the bits ``d_k``
and ``h_k`` describes the image ``i^d_k (-1)^h_k tau_{c_k}`` of the
single-qubit generator ``tau_{e_k}`` under ``X -> Q X Q^dagger``.  A
tableau fixes ``Q`` only up to a global phase.

The extended ``(2n+1)``-dimensional matrices ``Cbar = [[C, 0], [d^T, 1]]``
and ``Ubar = diag(U, 1)`` are never formed in the hot paths; the functions
below use their block structure directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from . import _kernels, gf2
from .gf2 import BinMat, BinVec, DimensionError, _extract, _parity
from .pauli import PauliElement


class NotSymplecticError(ValueError):
    def __init__(self, row: int, col: int):
        super().__init__(f"C^T P C differs from P at entry ({row}, {col})")
        self.row = row
        self.col = col


class PhaseVectorMismatch(ValueError):
    def __init__(self, indices: Sequence[int]):
        super().__init__(f"d differs from diag(C^T U C) at positions {list(indices)}")
        self.indices = list(indices)


def u_diag(m: BinMat) -> BinVec:
    """``diag(M^T U M)`` for a matrix with ``2n`` rows."""
    n = m.rows // 2
    return gf2.diag_tmul(m[:n, :], m[n:, :])


def u_gram(m: BinMat) -> BinMat:
    """``M^T U M``, computed as ``M_top^T M_bottom``."""
    n = m.rows // 2
    return m[:n, :].T @ m[n:, :]


def phase_lows(m: BinMat, f: BinVec) -> BinMat:
    """``lows(M^T U M + f f^T)``: the upper-left block of ``lows(Mbar^T Ubar Mbar)``."""
    return gf2.lows(u_gram(m) + BinMat.outer(f, f))


def ext_congruence_diag(lm: BinMat, dm: BinVec, x: BinMat, dx: BinVec) -> BinVec:
    """``diag(Xbar^T Lbar Xbar)`` with ``Lbar = [[lm, 0], [dm^T, 0]]`` and ``Xbar = [[X], [dx^T]]``."""
    return gf2.diag_tmul(x, lm @ x) + (dx & (dm @ x))


@dataclass(frozen=True)
class CliffordTableau:
    """Binary image ``(C, d, h)`` of a Clifford operation.

    Construction validates ``C^T P C = P`` and ``d = diag(C^T U C)``.
    """

    C: BinMat
    d: BinVec
    h: BinVec

    def __post_init__(self):
        _validate(self.C, self.d, self.h)

    @classmethod
    def _make(cls, C: BinMat, d: BinVec, h: BinVec) -> CliffordTableau:
        obj = object.__new__(cls)
        object.__setattr__(obj, "C", C)
        object.__setattr__(obj, "d", d)
        object.__setattr__(obj, "h", h)
        return obj

    @property
    def n(self) -> int:
        return self.C.rows // 2

    @cached_property
    def _columns(self) -> np.ndarray:
        return self.C.T.data

    def image(self, k: int) -> PauliElement:
        """Image of the generator ``tau_{e_k}``."""
        return PauliElement(self.C.col(k), self.d[k], self.h[k])

    def cbar(self) -> BinMat:
        return BinMat.block([[self.C, BinMat.zeros(2 * self.n, 1)], [BinMat.from_rows([self.d]), BinMat([[1]])]])

    def hbar(self) -> BinVec:
        return BinVec.concat(self.h, BinVec.zeros(1))

    def is_identity(self) -> bool:
        return self.C == BinMat.identity(2 * self.n) and not self.h.any()

    def __repr__(self) -> str:
        return f"CliffordTableau(n={self.n})"


def _validate(C: BinMat, d: BinVec, h: BinVec) -> None:
    if not C.is_square() or C.rows % 2:
        raise DimensionError(f"C must be 2n x 2n, got {C.shape}")
    if len(d) != C.rows or len(h) != C.rows:
        raise DimensionError("d and h must have length 2n")
    n = C.rows // 2
    p = gf2.p_matrix(n)
    diff = C.T @ gf2.p_times(C) + p
    if not diff.is_zero():
        i, j = np.argwhere(diff.to_array())[0]
        raise NotSymplecticError(int(i), int(j))
    expected = u_diag(C)
    if expected != d:
        raise PhaseVectorMismatch((expected + d).support())


def new_tableau(C: BinMat, d: BinVec, h: BinVec) -> CliffordTableau:
    """Validated tableau; raises ``NotSymplecticError`` or ``PhaseVectorMismatch``."""
    return CliffordTableau(C, d, h)


def from_symplectic(C: BinMat, h: BinVec | None = None) -> CliffordTableau:
    """Tableau with ``d`` derived from ``C``."""
    if h is None:
        h = BinVec.zeros(C.rows)
    return CliffordTableau(C, u_diag(C), h)


def identity_tableau(n: int) -> CliffordTableau:
    z = BinVec.zeros(2 * n)
    return CliffordTableau._make(BinMat.identity(2 * n), z, z)


def _check_n(a: int, b: int) -> None:
    if a != b:
        raise DimensionError(f"qubit counts differ: {a} vs {b}")


def _lower_pair_sum(cols: np.ndarray, n: int) -> int:
    """Parity of ``sum_{i > k} c_i^T U c_k`` over the given packed columns, in order."""
    m = cols.shape[0]
    if m < 2:
        return 0
    prefix = np.bitwise_xor.accumulate(cols, axis=0)
    earlier = np.zeros_like(cols)
    earlier[1:] = prefix[:-1]
    v = _extract(cols, 0, n)
    w = _extract(earlier, n, n)
    return int(_parity(v & w, axis=None))


def conjugate_pauli(Q: CliffordTableau, p: PauliElement) -> PauliElement:
    """Image of ``p`` under ``X -> Q X Q^dagger``.

    With ``bbar = [b; delta]``: ``bbar' = Cbar bbar`` and
    ``epsilon' = epsilon + hbar^T bbar + bbar^T lows(Cbar^T Ubar Cbar) bbar``.
    The quadratic term is accumulated over prefix sums of the selected
    columns, so ``lows(...)`` is never materialized.
    """
    _check_n(Q.n, p.n)
    b = p.a
    sel = b.to_array().astype(bool)
    cols = Q._columns[sel]
    db = Q.d.dot(b)
    m_d = int((Q.d & b).weight())
    quad = _lower_pair_sum(cols, Q.n) ^ ((m_d * (m_d - 1) // 2) & 1) ^ (p.delta & db)
    epsilon = p.epsilon ^ Q.h.dot(b) ^ quad
    return PauliElement(Q.C @ b, p.delta ^ db, epsilon)


def compose(Q2: CliffordTableau, Q1: CliffordTableau) -> CliffordTableau:
    """Tableau of ``Q2 Q1`` (``Q1`` acts first).

    ``Cbar21 = Cbar2 Cbar1`` and
    ``hbar21 = hbar1 + Cbar1^T hbar2 + diag(Cbar1^T lows(Cbar2^T Ubar Cbar2) Cbar1)``.
    """
    _check_n(Q2.n, Q1.n)
    if 0 < 2 * Q1.n <= 64:
        return _compose_word(Q2, Q1)
    C1 = Q1.C
    C = Q2.C @ C1
    d = (Q2.d @ C1) + Q1.d
    lm = phase_lows(Q2.C, Q2.d)
    h = Q1.h + (Q2.h @ C1) + ext_congruence_diag(lm, Q2.d, C1, Q1.d)
    return CliffordTableau._make(C, d, h)


def _compose_word(Q2: CliffordTableau, Q1: CliffordTableau) -> CliffordTableau:
    m = 2 * Q1.n
    c, d, h = _kernels.compose_word(
        np.ascontiguousarray(Q2.C.data[:, 0]), Q2.d.words[0], Q2.h.words[0], np.ascontiguousarray(Q1.C.data[:, 0]), Q1.d.words[0], Q1.h.words[0], Q1.n
    )
    return CliffordTableau._make(
        BinMat._wrap(m, m, c.reshape(m, 1)), BinVec._wrap(m, np.array([d], dtype=np.uint64)), BinVec._wrap(m, np.array([h], dtype=np.uint64))
    )


def compose_all(tableaux: Sequence[CliffordTableau], n: int | None = None) -> CliffordTableau:
    """Fold :func:`compose` over operations listed in order of application."""
    if not tableaux:
        if n is None:
            raise ValueError("qubit count needed for an empty product")
        return identity_tableau(n)
    out = tableaux[0]
    for q in tableaux[1:]:
        out = compose(q, out)
    return out


def inverse(Q: CliffordTableau) -> CliffordTableau:
    """Tableau of ``Q^{-1}``.

    ``C^{-1} = P C^T P`` and
    ``hbar2 = Cbar^{-T} hbar + diag(Cbar^{-T} lows(Cbar^T Ubar Cbar) Cbar^{-1})``.
    """
    cinv = gf2.p_times(gf2.times_p(Q.C.T))
    dinv = Q.d @ cinv
    lm = phase_lows(Q.C, Q.d)
    h = (Q.h @ cinv) + ext_congruence_diag(lm, Q.d, cinv, dinv)
    return CliffordTableau._make(cinv, dinv, h)


def pauli_gate(a: BinVec) -> CliffordTableau:
    """``tau_a`` as a Clifford operation: ``C = I``, ``h = P a``."""
    if len(a) % 2:
        raise DimensionError("Pauli label must have length 2n")
    m = len(a)
    return CliffordTableau._make(BinMat.identity(m), BinVec.zeros(m), gf2.p_times(a))


def linear_gate(R: BinMat) -> CliffordTableau:
    """``|x> -> |R x>``: ``C = blockdiag(R^{-T}, R)``, ``h = 0``."""
    if not R.is_square():
        raise DimensionError("R must be square")
    rinv = gf2.mat_inverse(R)
    C = BinMat.blockdiag(rinv.T, R)
    z = BinVec.zeros(2 * R.rows)
    return CliffordTableau._make(C, z, z)


def permutation_matrix(perm: Sequence[int]) -> BinMat:
    """``Pi`` with ``Pi[perm[k], k] = 1``: qubit ``k`` moves to position ``perm[k]``."""
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"{list(perm)} is not a permutation of 0..{n - 1}")
    arr = np.zeros((n, n), dtype=np.uint8)
    arr[list(perm), list(range(n))] = 1
    return BinMat(arr)


def permutation_gate(perm: Sequence[int]) -> CliffordTableau:
    pi = permutation_matrix(perm)
    z = BinVec.zeros(2 * len(perm))
    return CliffordTableau._make(BinMat.blockdiag(pi, pi), z, z)


def swap_gate(n: int, q1: int, q2: int) -> CliffordTableau:
    perm = list(range(n))
    perm[q1], perm[q2] = q2, q1
    return permutation_gate(perm)


def cnot_gate(n: int, control: int, target: int) -> CliffordTableau:
    if control == target:
        raise ValueError("control and target must differ")
    if not (0 <= control < n and 0 <= target < n):
        raise IndexError(f"qubit index out of range for n={n}")
    arr = np.eye(n, dtype=np.uint8)
    arr[target, control] = 1
    return linear_gate(BinMat(arr))


def hadamard_gate(n: int, qubits: Sequence[int]) -> CliffordTableau:
    arr = np.eye(2 * n, dtype=np.uint8)
    for q in set(qubits):
        if not 0 <= q < n:
            raise IndexError(f"qubit {q} out of range for n={n}")
        arr[q, q] = arr[n + q, n + q] = 0
        arr[q, n + q] = arr[n + q, q] = 1
    z = BinVec.zeros(2 * n)
    return CliffordTableau._make(BinMat(arr), z, z)


def exp_pi4_gate(a: BinVec) -> CliffordTableau:
    """``exp(i pi/4 tau_abar) = (I + i tau_abar)/sqrt(2)``: ``C = I + a a^T P``, ``h = C^T U a``."""
    if len(a) % 2:
        raise DimensionError("label must have length 2n")
    if not a.any():
        raise ValueError("a = 0 gives a global phase, not a Clifford tableau")
    m = len(a)
    n = m // 2
    bits = a.to_array()
    C = np.eye(m, dtype=np.uint8) ^ np.outer(bits, np.roll(bits, n))
    ua = np.concatenate([bits[n:], np.zeros(n, dtype=np.uint8)])
    h = (ua @ C) & 1
    d = np.bitwise_xor.reduce(C[:n] & C[n:], axis=0) if n else np.zeros(0, dtype=np.uint8)
    return CliffordTableau._make(BinMat(C), BinVec(d), BinVec(h))


def embed_tableau(small: CliffordTableau, qubits: Sequence[int], n: int) -> CliffordTableau:
    """Place a k-qubit tableau on the listed qubits of an n-qubit register."""
    k = small.n
    if len(qubits) != k or len(set(qubits)) != k:
        raise ValueError("need one distinct target qubit per tableau qubit")
    if any(not 0 <= q < n for q in qubits):
        raise IndexError(f"qubit index out of range for n={n}")
    pos = list(qubits) + [n + q for q in qubits]
    arr = np.eye(2 * n, dtype=np.uint8)
    sarr = small.C.to_array()
    arr[np.ix_(pos, pos)] = sarr
    h = np.zeros(2 * n, dtype=np.uint8)
    h[pos] = small.h.to_array()
    d = np.zeros(2 * n, dtype=np.uint8)
    d[pos] = small.d.to_array()
    return CliffordTableau._make(BinMat(arr), BinVec(d), BinVec(h))


def symmetric_from_upper(arr: np.ndarray) -> np.ndarray:
    up = np.triu(arr)
    return (up + np.triu(up, 1).T) % 2


def random_invertible(n: int, rng: np.random.Generator) -> BinMat:
    """Random invertible matrix as a row-permuted product of unit triangular factors."""
    lower = np.tril(rng.integers(0, 2, (n, n), dtype=np.uint8), -1) + np.eye(n, dtype=np.uint8)
    upper = np.triu(rng.integers(0, 2, (n, n), dtype=np.uint8), 1) + np.eye(n, dtype=np.uint8)
    perm = rng.permutation(n)
    prod = BinMat(lower) @ BinMat(upper)
    return BinMat._wrap(n, n, prod.data[perm])


def random_symmetric(n: int, rng: np.random.Generator) -> BinMat:
    return BinMat(symmetric_from_upper(rng.integers(0, 2, (n, n), dtype=np.uint8)))


def block_factors(T1, T2, Z1, Z2, Z3, V1, V2) -> list[BinMat]:
    """The five symplectic factors whose product is ``C`` in the block decomposition."""
    n = T1.rows
    r = Z1.rows
    k = n - r
    I_n = BinMat.identity(n)
    zbr = BinMat.block([[Z3, V1], [V1.T, Z1]])
    zbc = BinMat.block([[BinMat.zeros(k, k), V2], [V2.T, Z2]])
    zn = BinMat.zeros(n, n)
    f1 = BinMat.blockdiag(gf2.mat_inverse(T1).T, T1)
    f2 = BinMat.block([[I_n, zbr], [zn, I_n]])
    f3 = hadamard_gate(n, range(k, n)).C
    f4 = BinMat.block([[I_n, zbc], [zn, I_n]])
    f5 = BinMat.blockdiag(gf2.mat_inverse(T2).T, T2)
    return [f1, f2, f3, f4, f5]


def random_tableau(n: int, rng: np.random.Generator) -> CliffordTableau:
    """Random tableau built from random block-decomposition parameters plus a random ``h``.

    Not uniform over the Clifford group.
    """
    r = int(rng.integers(0, n + 1))
    k = n - r
    T1 = random_invertible(n, rng)
    T2 = random_invertible(n, rng)
    Z1 = random_symmetric(r, rng)
    Z2 = random_symmetric(r, rng)
    Z3 = random_symmetric(k, rng)
    V1 = BinMat(rng.integers(0, 2, (k, r), dtype=np.uint8))
    V2 = BinMat(rng.integers(0, 2, (k, r), dtype=np.uint8))
    f1, f2, f3, f4, f5 = block_factors(T1, T2, Z1, Z2, Z3, V1, V2)
    C = f1 @ (f2 @ (f3 @ (f4 @ f5)))
    h = BinVec(rng.integers(0, 2, 2 * n, dtype=np.uint8))
    return CliffordTableau._make(C, u_diag(C), h)
