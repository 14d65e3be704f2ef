"""Stabilizer states in binary form and their standard-basis expansion.

A state is the common +1 eigenvector of the generators
``i^f_k (-1)^b_k tau_{s_k}``; the labels ``s_k`` are the columns of the
``2n x n`` matrix ``S = [V; W]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from . import gf2
from .clifford import (
    CliffordTableau,
    ext_congruence_diag,
    linear_gate,
    phase_lows,
    random_invertible,
    random_tableau,
    u_diag,
)
from .gf2 import BinMat, BinVec, DimensionError, SingularMatrixError
from .pauli import PauliElement


class InvalidStabilizerError(ValueError):
    """Generators are dependent, do not commute, or carry a wrong ``f``."""


@dataclass(frozen=True)
class StabilizerRep:
    S: BinMat
    f: BinVec
    b: BinVec

    def __post_init__(self):
        S = self.S
        if S.rows != 2 * S.cols:
            raise DimensionError(f"S must be 2n x n, got {S.shape}")
        if len(self.f) != S.cols or len(self.b) != S.cols:
            raise DimensionError("f and b must have length n")
        if gf2.rank(S) != S.cols:
            raise InvalidStabilizerError("generator labels are linearly dependent")
        if not (S.T @ gf2.p_times(S)).is_zero():
            raise InvalidStabilizerError("generators do not commute")
        if u_diag(S) != self.f:
            raise InvalidStabilizerError("f differs from diag(S^T U S): generators not Hermitian")

    @classmethod
    def _make(cls, S: BinMat, f: BinVec, b: BinVec) -> StabilizerRep:
        obj = object.__new__(cls)
        object.__setattr__(obj, "S", S)
        object.__setattr__(obj, "f", f)
        object.__setattr__(obj, "b", b)
        return obj

    @property
    def n(self) -> int:
        return self.S.cols

    @property
    def V(self) -> BinMat:
        return self.S[: self.n, :]

    @property
    def W(self) -> BinMat:
        return self.S[self.n :, :]

    def generators(self) -> list[PauliElement]:
        return [PauliElement(self.S.col(k), self.f[k], self.b[k]) for k in range(self.n)]

    @classmethod
    def from_paulis(cls, gens: Sequence[PauliElement]) -> StabilizerRep:
        n = len(gens)
        if any(g.n != n for g in gens):
            raise DimensionError("need n generators on n qubits")
        S = BinMat.from_columns([g.a for g in gens], 2 * n)
        return cls(S, BinVec([g.delta for g in gens]), BinVec([g.epsilon for g in gens]))

    @classmethod
    def from_strings(cls, strings: Sequence[str]) -> StabilizerRep:
        return cls.from_paulis([PauliElement.from_string(s) for s in strings])

    def to_strings(self) -> list[str]:
        return [g.to_string() for g in self.generators()]


def zero_state(n: int) -> StabilizerRep:
    """``|0...0>``, stabilized by ``+Z`` on every qubit."""
    S = BinMat.vstack([BinMat.identity(n), BinMat.zeros(n, n)])
    return StabilizerRep(S, BinVec.zeros(n), BinVec.zeros(n))


def apply_clifford(state: StabilizerRep, Q: CliffordTableau) -> StabilizerRep:
    """Generators of ``Q|psi>``.

    ``S' = C S``, ``f' = d^T S + f`` and
    ``b' = b + S^T h + diag(Sbar^T lows(Cbar^T Ubar Cbar) Sbar)``.
    """
    if state.n != Q.n:
        raise DimensionError(f"state has {state.n} qubits, operation {Q.n}")
    S, f = state.S, state.f
    lm = phase_lows(Q.C, Q.d)
    b = state.b + (Q.h @ S) + ext_congruence_diag(lm, Q.d, S, f)
    return StabilizerRep._make(Q.C @ S, (Q.d @ S) + f, b)


def basis_change(state: StabilizerRep, R: BinMat) -> StabilizerRep:
    """Generators ``S R`` of the same stabilizer group.

    ``b' = R^T b + diag(R^T lows(S^T U S + f f^T) R)``.

    Raises:
        SingularMatrixError: if ``R`` is not invertible.
    """
    if R.shape != (state.n, state.n):
        raise DimensionError(f"R must be {state.n} x {state.n}")
    r = gf2.rank(R)
    if r != state.n:
        raise SingularMatrixError(r, state.n)
    S = state.S @ R
    lm = phase_lows(state.S, state.f)
    b = (state.b @ R) + gf2.diag_tmul(R, lm @ R)
    return StabilizerRep._make(S, u_diag(S), b)


@dataclass(frozen=True)
class CanonicalStabilizer:
    """Canonical data of a state: ``T``, ``Z``, block sizes and phase bits.

    ``R`` is the accumulated basis change; ``diag(T^T, T^-1, 1) Sbar R``
    has the canonical block shape.
    """

    T: BinMat
    Z: BinMat
    r_a: int
    r_b: int
    r_c: int
    f_a: BinVec
    b_ab: BinVec
    b_c: BinVec
    R: BinMat

    @property
    def n(self) -> int:
        return self.T.rows

    def canonical_rep(self) -> StabilizerRep:
        """The generators in canonical shape (index space already transformed)."""
        ra, rb, rc, n = self.r_a, self.r_b, self.r_c, self.n
        z = BinMat.zeros
        V = BinMat.block([[self.Z, z(ra, rb), z(ra, rc)], [z(rb, ra), z(rb, rb), z(rb, rc)], [z(rc, ra), z(rc, rb), BinMat.identity(rc)]])
        W = BinMat.blockdiag(BinMat.identity(ra + rb), z(rc, rc))
        f = BinVec.concat(self.f_a, BinVec.zeros(n - ra))
        return StabilizerRep(BinMat.vstack([V, W]), f, BinVec.concat(self.b_ab, self.b_c))


def _check_shape(state: StabilizerRep, ra: int, rb: int) -> None:
    n = state.n
    rab = ra + rb
    W = state.W.to_array()
    V = state.V.to_array()
    expect_w = np.zeros((n, n), dtype=np.uint8)
    expect_w[:rab, :rab] = np.eye(rab, dtype=np.uint8)
    ok = (W == expect_w).all() and not V[ra:, :rab].any() and not V[:rab, rab:].any()
    ok = ok and (V[rab:, rab:] == np.eye(n - rab, dtype=np.uint8)).all()
    if not ok:
        raise AssertionError("canonical reduction did not reach the block shape")


def canonical_form(state: StabilizerRep) -> CanonicalStabilizer:
    """Index transformation ``T`` and basis change ``R`` bringing the generators to canonical shape.

    1. ``R1`` moves a kernel basis of ``W`` to the last ``r_c`` columns.
    2. ``R2`` puts a kernel basis of ``V`` into the middle ``r_b`` columns
       and keeps the last ``r_c`` columns fixed.
    3. ``T = [W_a W_b W_c]``, completed to invertible, turns ``W`` into
       ``diag(I, 0)``; this is the linear operation ``x -> T^-1 x``.
    4. ``R3`` clears the lower-left block of ``V`` with ``V_cc^-1``.
    """
    n = state.n
    kern_w, _, rank_w = gf2.kernel_range_bases(state.W)
    rab, rc = rank_w, n - rank_w
    R1 = gf2.complete_to_invertible(kern_w, given_first=False)
    s1 = basis_change(state, R1)

    kern_v, _, _ = gf2.kernel_range_bases(s1.V)
    rb = kern_v.cols
    ra = rab - rb
    k_ab = kern_v[:rab, :]
    top = gf2.complete_to_invertible(k_ab, given_first=False)
    R2 = BinMat.block(
        [
            [top, BinMat.zeros(rab, rc)],
            [BinMat.hstack([BinMat.zeros(rc, ra), kern_v[rab:, :]]), BinMat.identity(rc)],
        ]
    )
    s2 = basis_change(s1, R2)

    T = gf2.complete_to_invertible(s2.W[:, :rab], given_first=True)
    s3 = apply_clifford(s2, linear_gate(gf2.mat_inverse(T)))

    V3 = s3.V
    vcc_inv = gf2.mat_inverse(V3[rab:, rab:])
    R3 = BinMat.block(
        [
            [BinMat.identity(rab), BinMat.zeros(rab, rc)],
            [BinMat.hstack([vcc_inv @ V3[rab:, :ra], BinMat.zeros(rc, rb)]), vcc_inv],
        ]
    )
    s4 = basis_change(s3, R3)
    _check_shape(s4, ra, rb)
    Z = s4.V[:ra, :ra]
    if gf2.rank(Z) != ra or not Z.is_symmetric():
        raise AssertionError("Z is not full-rank symmetric")
    return CanonicalStabilizer(
        T=T,
        Z=Z,
        r_a=ra,
        r_b=rb,
        r_c=rc,
        f_a=s4.f[:ra],
        b_ab=s4.b[:rab],
        b_c=s4.b[rab:],
        R=R1 @ R2 @ R3,
    )


def _int_bits(k: int, width: int) -> np.ndarray:
    return ((k >> np.arange(width - 1, -1, -1)) & 1).astype(np.uint8)


@dataclass(frozen=True)
class AmplitudeMap:
    """Standard-basis amplitudes of a stabilizer state on its support plane ``{T [y; b_c]}``.

    ``psi(T [y; b_c]) = 2^(-(r_a+r_b)/2) (-i)^(f_a.y_a) (-1)^(y_a^T L y_a + b_ab.y)``
    with ``L = lows(Z + f_a f_a^T)``.
    """

    T: BinMat
    b_c: BinVec
    Z: BinMat
    f_a: BinVec
    b_ab: BinVec

    @property
    def n(self) -> int:
        return self.T.rows

    @property
    def r_a(self) -> int:
        return self.Z.rows

    @property
    def dim(self) -> int:
        return len(self.b_ab)

    @property
    def norm(self) -> float:
        return 2.0 ** (-self.dim / 2)

    def amplitude_of(self, y: np.ndarray) -> complex:
        """Amplitude at ``T [y; b_c]`` for ``y`` in ``Z_2^(r_a+r_b)``."""
        ra = self.r_a
        ya = y[:ra].astype(np.int64)
        low = np.tril((self.Z + BinMat.outer(self.f_a, self.f_a)).to_array(), -1).astype(np.int64)
        sign = (int(ya @ low @ ya) + int(y.astype(np.int64) @ self.b_ab.to_array())) & 1
        ipow = int(ya @ self.f_a.to_array()) & 1
        return self.norm * (-1j if ipow else 1) * (-1 if sign else 1)

    def point(self, y: np.ndarray) -> BinVec:
        return self.T @ BinVec(np.concatenate([y, self.b_c.to_array()]))

    def support(self) -> Iterator[tuple[BinVec, complex]]:
        """``(x, psi_x)`` for the ``2^(r_a+r_b)`` support points, in order of ``y``."""
        for k in range(2**self.dim):
            y = _int_bits(k, self.dim)
            yield self.point(y), self.amplitude_of(y)

    def amplitude(self, x: BinVec) -> complex:
        """``psi_x`` for an arbitrary basis label (zero off the support plane)."""
        u = (gf2.mat_inverse(self.T) @ x).to_array()
        if (u[self.dim :] != self.b_c.to_array()).any():
            return 0j
        return self.amplitude_of(u[: self.dim])

    def to_dense(self) -> np.ndarray:
        psi = np.zeros(2**self.n, dtype=complex)
        for x, amp in self.support():
            psi[x.to_int()] = amp
        return psi


def amplitudes(canon: CanonicalStabilizer) -> AmplitudeMap:
    return AmplitudeMap(canon.T, canon.b_c, canon.Z, canon.f_a, canon.b_ab)


def state_vector(state: StabilizerRep) -> np.ndarray:
    """Dense amplitudes of a stabilizer state via its canonical form."""
    return amplitudes(canonical_form(state)).to_dense()


def pauli_on_statevector(a: BinVec, psi: np.ndarray) -> np.ndarray:
    """``tau_a psi``: ``(tau_a psi)_x = (-1)^(v.x) psi_(x + w)``."""
    n = len(a) // 2
    if len(a) != 2 * n or psi.shape != (2**n,):
        raise DimensionError(f"label of length {len(a)} against a vector of length {psi.shape[0]}")
    idx = np.arange(2**n)
    weights = 1 << np.arange(n - 1, -1, -1)
    v_int = int((a[:n].to_array().astype(np.int64) * weights).sum())
    w_int = int((a[n:].to_array().astype(np.int64) * weights).sum())
    parity = np.bitwise_count(idx & v_int) & 1
    return np.where(parity, -1, 1) * psi[idx ^ w_int]


def apply_generator(p: PauliElement, psi: np.ndarray) -> np.ndarray:
    """``i^delta (-1)^epsilon tau_a psi``."""
    return p.phase * pauli_on_statevector(p.a, psi)


def random_state(n: int, rng: np.random.Generator) -> StabilizerRep:
    """Random state: a random tableau applied to ``|0...0>``, then a random basis change."""
    s = apply_clifford(zero_state(n), random_tableau(n, rng))
    return basis_change(s, random_invertible(n, rng)) if n else s
