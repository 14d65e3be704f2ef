"""Factoring Clifford tableaux into one- and two-qubit gates.

Two schemes are provided.  :func:`decompose_scheme1` reduces ``C`` to the
identity two columns at a time with two-qubit ``exp(i pi/4 tau)`` gates.
:func:`decompose_scheme2` goes through the five-factor block
decomposition of :func:`symplectic_block_decompose`: CNOT circuits for the
two linear factors, Hadamards in the middle and ``exp(i pi/4 tau_z)`` gates
for the two ``[[I, Z], [0, I]]`` factors.  Both finish with a Pauli gate
that corrects ``h``.

A :class:`GateSeq` lists gates in order of application: the first gate
acts first, so the realized operator is ``g_last ... g_2 g_1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import gf2
from .clifford import (
    CliffordTableau,
    NotSymplecticError,
    block_factors,
    cnot_gate,
    compose,
    compose_all,
    embed_tableau,
    exp_pi4_gate,
    hadamard_gate,
    identity_tableau,
    pauli_gate,
    swap_gate,
    u_diag,
)
from .gf2 import BinMat, BinVec, DimensionError, SingularMatrixError


class DecompositionError(ValueError):
    """The input cannot be decomposed, which means it was not symplectic."""


def _label_qubits(a: BinVec) -> list[int]:
    n = len(a) // 2
    return sorted({k % n for k in a.support()})


@dataclass(frozen=True)
class ExpPi4:
    """``(I + i tau_abar)/sqrt(2)`` with ``a`` touching at most two qubits."""

    a: BinVec

    def __post_init__(self):
        if not self.a.any():
            raise ValueError("ExpPi4 needs a nonzero label")
        if len(_label_qubits(self.a)) > 2:
            raise ValueError(f"ExpPi4 label {self.a} touches more than two qubits")

    def qubits(self) -> list[int]:
        return _label_qubits(self.a)

    def tableau(self, n: int) -> CliffordTableau:
        _check_len(self.a, n)
        return exp_pi4_gate(self.a)

    def to_line(self) -> str:
        return f"EXP {self.a}"


@dataclass(frozen=True)
class Cnot:
    control: int
    target: int

    def qubits(self) -> list[int]:
        return [self.control, self.target]

    def tableau(self, n: int) -> CliffordTableau:
        return cnot_gate(n, self.control, self.target)

    def to_line(self) -> str:
        return f"CNOT {self.control} {self.target}"


@dataclass(frozen=True)
class Swap:
    q1: int
    q2: int

    def qubits(self) -> list[int]:
        return [self.q1, self.q2]

    def tableau(self, n: int) -> CliffordTableau:
        return swap_gate(n, self.q1, self.q2)

    def to_line(self) -> str:
        return f"SWAP {self.q1} {self.q2}"


@dataclass(frozen=True)
class HadamardSet:
    targets: tuple[int, ...]

    def qubits(self) -> list[int]:
        return list(self.targets)

    def tableau(self, n: int) -> CliffordTableau:
        return hadamard_gate(n, self.targets)

    def to_line(self) -> str:
        return "H " + " ".join(map(str, self.targets))


@dataclass(frozen=True)
class PauliGate:
    a: BinVec

    def qubits(self) -> list[int]:
        return _label_qubits(self.a)

    def tableau(self, n: int) -> CliffordTableau:
        _check_len(self.a, n)
        return pauli_gate(self.a)

    def to_line(self) -> str:
        return f"PAULI {self.a}"


@dataclass(frozen=True)
class SingleQubitSymplectic:
    """Arbitrary one-qubit tableau ``(C, d, h)`` acting on ``qubit``."""

    qubit: int
    C: BinMat
    h: BinVec = field(default_factory=lambda: BinVec.zeros(2))

    def __post_init__(self):
        if self.C.shape != (2, 2) or len(self.h) != 2:
            raise DimensionError("single-qubit tableau needs a 2x2 C and 2-bit h")
        if gf2.rank(self.C) != 2:
            raise NotSymplecticError(0, 0)

    @property
    def d(self) -> BinVec:
        return u_diag(self.C)

    def small(self) -> CliffordTableau:
        return CliffordTableau(self.C, self.d, self.h)

    def qubits(self) -> list[int]:
        return [self.qubit]

    def tableau(self, n: int) -> CliffordTableau:
        return embed_tableau(self.small(), [self.qubit], n)

    def to_line(self) -> str:
        bits = "".join(map(str, self.C.to_array().reshape(-1)))
        return f"SQ {self.qubit} {bits} {self.d} {self.h}"


PrimitiveGate = ExpPi4 | Cnot | Swap | HadamardSet | PauliGate | SingleQubitSymplectic


def _check_len(a: BinVec, n: int) -> None:
    if len(a) != 2 * n:
        raise DimensionError(f"label of length {len(a)} on {n} qubits")


def is_two_qubit(gate: PrimitiveGate) -> bool:
    return len(set(gate.qubits())) == 2 and not isinstance(gate, HadamardSet | PauliGate)


@dataclass
class GateSeq:
    n: int
    gates: list = field(default_factory=list)

    def __iter__(self) -> Iterator[PrimitiveGate]:
        return iter(self.gates)

    def __len__(self) -> int:
        return len(self.gates)

    def __add__(self, other: GateSeq) -> GateSeq:
        if other.n != self.n:
            raise DimensionError("qubit counts differ")
        return GateSeq(self.n, self.gates + other.gates)

    def tableaux(self) -> list[CliffordTableau]:
        return [g.tableau(self.n) for g in self.gates]

    def tableau(self) -> CliffordTableau:
        return compose_all(self.tableaux(), self.n)

    def two_qubit_count(self) -> int:
        return sum(is_two_qubit(g) for g in self.gates)

    def validate(self) -> None:
        for k, g in enumerate(self.gates):
            for q in g.qubits():
                if not 0 <= q < self.n:
                    raise IndexError(f"gate {k} ({g.to_line()}) uses qubit {q} >= n={self.n}")


def fix_h(current: CliffordTableau, target: BinVec | CliffordTableau, side: str = "right") -> PauliGate:
    """Pauli gate turning ``current`` into the tableau with the same ``C`` and the target ``h``.

    ``side="right"`` gives the gate acting before ``current``, with label
    ``P (h + h')``; ``side="left"`` the gate acting after it, with label
    ``C P (h + h')``.

    Args:
        current: tableau to correct.
        target: the wanted ``h``, or a tableau whose ``C`` must equal ``current.C``.
        side: where the Pauli gate goes.

    Raises:
        ValueError: if a target tableau has a different ``C``.
    """
    if isinstance(target, CliffordTableau):
        if target.C != current.C:
            raise ValueError("target tableau has a different symplectic matrix")
        target = target.h
    target_h = target
    if len(target_h) != 2 * current.n:
        raise DimensionError("target h has the wrong length")
    delta = gf2.p_times(current.h + target_h)
    if side == "right":
        return PauliGate(delta)
    if side == "left":
        return PauliGate(current.C @ delta)
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def _with_h_fix(seq: GateSeq, target_h: BinVec, mask: BinVec | None = None) -> GateSeq:
    current = seq.tableau()
    delta = current.h + target_h
    if mask is not None:
        delta = delta & mask
    if not delta.any():
        return seq
    return GateSeq(seq.n, [PauliGate(gf2.p_times(delta))] + seq.gates)


# -- one-qubit table ---------------------------------------------------------

_ONE_QUBIT_LABELS = (BinVec("10"), BinVec("01"), BinVec("11"))


@lru_cache(maxsize=None)
def _one_qubit_table() -> dict:
    """Shortest word of one-qubit ``ExpPi4`` gates for each of the 24 tableaux (C, h)."""
    table: dict = {}
    for length in range(4):
        for word in product(range(3), repeat=length):
            q = compose_all([exp_pi4_gate(_ONE_QUBIT_LABELS[i]) for i in word], 1)
            key = (str(q.C), str(q.h))
            table.setdefault(key, word)
    return table


def single_qubit_gates(qubit: int, K: BinMat, n: int) -> list[ExpPi4]:
    """``ExpPi4`` gates on ``qubit`` whose product has symplectic part ``K`` there."""
    table = _one_qubit_table()
    word = table.get((str(K), "00"))
    if word is None:
        word = next((w for (c, _), w in table.items() if c == str(K)), None)
    if word is None:
        raise DecompositionError(f"no one-qubit word for {K!r}")
    out = []
    for i in word:
        bits = np.zeros(2 * n, dtype=np.uint8)
        lab = _ONE_QUBIT_LABELS[i].to_array()
        bits[qubit], bits[n + qubit] = lab
        out.append(ExpPi4(BinVec(bits)))
    return out


# -- scheme 1 ----------------------------------------------------------------


class _Work:
    """Mutable packed copy of a 2n x 2n matrix for left multiplications."""

    def __init__(self, C: BinMat):
        self.n = C.rows // 2
        self.data = C.data.copy()

    def bit(self, i: int, j: int) -> int:
        return int((self.data[i, j >> 6] >> np.uint64(j & 63)) & np.uint64(1))

    def block(self, k: int, m: int) -> tuple[int, int, int, int]:
        n = self.n
        return (self.bit(k, m), self.bit(k, n + m), self.bit(n + k, m), self.bit(n + k, n + m))

    def swap_qubits(self, k: int, m: int) -> None:
        n = self.n
        for a, b in ((k, m), (n + k, n + m)):
            self.data[[a, b]] = self.data[[b, a]]

    def apply_transvection(self, a: BinVec) -> None:
        """``C <- (I + a a^T P) C``."""
        n = self.n
        supp = a.support()
        row = np.bitwise_xor.reduce(self.data[[(i + n) % (2 * n) for i in supp]], axis=0)
        for i in supp:
            self.data[i] ^= row

    def column(self, j: int) -> BinVec:
        return BinVec(((self.data[:, j >> 6] >> np.uint64(j & 63)) & np.uint64(1)).astype(np.uint8))

    def matrix(self) -> BinMat:
        return BinMat._wrap(2 * self.n, 2 * self.n, self.data.copy())


def _label(n: int, entries: dict[int, int]) -> BinVec:
    bits = np.zeros(2 * n, dtype=np.uint8)
    for k, v in entries.items():
        bits[k] = v
    return BinVec(bits)


def decompose_scheme1(Q: CliffordTableau, qubits: Iterable[int] | None = None) -> GateSeq:
    """Column-pair reduction of ``C`` by two-qubit ``ExpPi4`` gates.

    With ``qubits`` given, only those column pairs ``(m, n+m)`` of ``C``
    (and the matching entries of ``h``) are realized; the other columns of
    the returned circuit's tableau are whatever the reduction leaves.
    """
    n = Q.n
    work = _Work(Q.C)
    targets = list(range(n)) if qubits is None else sorted(set(qubits))
    done: set[int] = set()
    ops: list = []
    for m in targets:
        free = [k for k in range(n) if k not in done]
        candidates = [m] + [k for k in free if k != m]
        k = next((k for k in candidates if _det(work.block(k, m))), None)
        if k is None:
            raise DecompositionError(f"no invertible 2x2 block for column pair {m}: C is not symplectic")
        if k != m:
            work.swap_qubits(k, m)
            ops.append(Swap(m, k))
        others = [l for l in free if l != m]
        for i, l in enumerate(others):
            cb = (work.bit(l, m), work.bit(n + l, m))
            if cb == (0, 0):
                continue
            if _det(work.block(l, m)):
                # A two-qubit step on (m, l) would make C_aa singular here, so
                # first move column m's entries on qubit l onto another qubit
                # whose block is also invertible.
                ops.append(_pair_step(work, m, l, others[i + 1 :]))
                continue
            a = _label(n, {m: work.bit(m, n + m), n + m: work.bit(n + m, n + m), l: cb[0], n + l: cb[1]})
            assert gf2.p_form(a, work.column(m)) == 1
            work.apply_transvection(a)
            ops.append(ExpPi4(a))
        for l in others:
            cb = (work.bit(l, n + m), work.bit(n + l, n + m))
            if cb == (0, 0):
                continue
            a = _label(n, {m: work.bit(m, m), n + m: work.bit(n + m, m), l: cb[0], n + l: cb[1]})
            assert gf2.p_form(a, work.column(m)) == 0
            work.apply_transvection(a)
            ops.append(ExpPi4(a))
        p, q, r, s = work.block(m, m)
        K = BinMat([[p, q], [r, s]])
        kinv = gf2.mat_inverse(K).to_array()
        rows = work.data[[m, n + m]].copy()
        for out_row, coeffs in zip((m, n + m), kinv):
            work.data[out_row] = (rows[0] if coeffs[0] else 0) ^ (rows[1] if coeffs[1] else 0)
        ops.append(("K", m, K))
        _check_reduced(work, m)
        done.add(m)

    gates: list = []
    for op in reversed(ops):
        if isinstance(op, tuple):
            _, m, K = op
            gates.extend(single_qubit_gates(m, K, n))
        else:
            gates.append(op)
    seq = GateSeq(n, gates)
    mask = None
    if qubits is not None:
        mask = _label(n, {i: 1 for m in targets for i in (m, n + m)})
    return _with_h_fix(seq, Q.h, mask)


def _pair_step(work: _Work, m: int, l: int, later: list[int]) -> ExpPi4:
    n = work.n
    partner = next((k for k in later if _det(work.block(k, m))), None)
    if partner is None:
        raise DecompositionError(f"column pair {m} cannot be reduced: C is not symplectic")
    cb = (work.bit(l, m), work.bit(n + l, m))
    z, x = work.bit(partner, m), work.bit(n + partner, m)
    # any (p, q) with p*x + q*z = 1
    pq = (1, 0) if x else (0, 1)
    a = _label(n, {l: cb[0], n + l: cb[1], partner: pq[0], n + partner: pq[1]})
    assert gf2.p_form(a, work.column(m)) == 1
    work.apply_transvection(a)
    return ExpPi4(a)


def _det(block: tuple[int, int, int, int]) -> int:
    p, q, r, s = block
    return (p & s) ^ (q & r)


def _check_reduced(work: _Work, m: int) -> None:
    n = work.n
    for j in (m, n + m):
        e = BinVec.unit(2 * n, j)
        if work.column(j) != e or BinVec._wrap(2 * n, work.data[j].copy()) != e:
            raise DecompositionError(f"column pair {m} not reduced: input is not symplectic")


# -- block decomposition -----------------------------------------------------


@dataclass(frozen=True)
class SymplecticBlocks:
    T1: BinMat
    T2: BinMat
    Z1: BinMat
    Z2: BinMat
    Z3: BinMat
    V1: BinMat
    V2: BinMat
    r: int

    @property
    def n(self) -> int:
        return self.T1.rows

    def factors(self) -> list[BinMat]:
        return block_factors(self.T1, self.T2, self.Z1, self.Z2, self.Z3, self.V1, self.V2)

    def assemble(self) -> BinMat:
        out = BinMat.identity(2 * self.n)
        for f in reversed(self.factors()):
            out = f @ out
        return out

    def z_blocks(self) -> tuple[BinMat, BinMat]:
        """``Z_br = [[Z3, V1], [V1^T, Z1]]`` and ``Z_bc = [[0, V2], [V2^T, Z2]]``."""
        k = self.n - self.r
        zbr = BinMat.block([[self.Z3, self.V1], [self.V1.T, self.Z1]])
        zbc = BinMat.block([[BinMat.zeros(k, k), self.V2], [self.V2.T, self.Z2]])
        return zbr, zbc


def _transform(C: BinMat, R1: BinMat, R2: BinMat) -> BinMat:
    left = BinMat.blockdiag(R1.T, gf2.mat_inverse(R1))
    right = BinMat.blockdiag(R2, gf2.mat_inverse(R2).T)
    return left @ C @ right


def block_transform(C: BinMat) -> tuple[BinMat, BinMat, BinMat, int]:
    """``(R1, R2, X, r)`` with ``X = diag(R1^T, R1^-1) C diag(R2, R2^-T)``.

    ``R1^-1 G' R2 = [[0, 0], [0, I_r]]`` for the lower-left block ``G'`` of
    ``C``, and ``R2`` is normalized so that ``E11 = H11 = I``.
    """
    n = C.rows // 2
    G = C[n:, :n]
    kern, _, r = gf2.kernel_range_bases(G)
    k = n - r
    R2 = gf2.complete_to_invertible(kern, given_first=True)
    R1 = gf2.complete_to_invertible(G @ R2[:, k:], given_first=False)
    X = _transform(C, R1, R2)
    try:
        e11_inv = gf2.mat_inverse(X[:k, :k])
    except SingularMatrixError:
        raise DecompositionError("E11 is singular: C is not symplectic") from None
    R2 = R2 @ BinMat.blockdiag(e11_inv, BinMat.identity(r))
    return R1, R2, _transform(C, R1, R2), r


def symplectic_block_decompose(C: BinMat) -> SymplecticBlocks:
    """Parameters ``T1, T2, Z1, Z2, Z3, V1, V2, r`` of the five-factor decomposition of ``C``."""
    if not gf2.is_symplectic(C):
        raise DecompositionError("input matrix is not symplectic")
    n = C.rows // 2
    R1, R2, X, r = block_transform(C)
    k = n - r
    V1 = X[:k, k:n]
    Z1 = X[k:n, k:n]
    V2 = X[n + k :, n : n + k].T
    Z2 = X[n + k :, n + k :]
    Z3 = X[:k, n : n + k] + V1 @ V2.T
    blocks = SymplecticBlocks(R1, R2.T, Z1, Z2, Z3, V1, V2, r)
    for name in ("Z1", "Z2", "Z3"):
        if not getattr(blocks, name).is_symmetric():
            raise DecompositionError(f"{name} is not symmetric: C is not symplectic")
    return blocks


def linear_to_cnots(R: BinMat) -> GateSeq:
    """CNOT and SWAP gates realizing ``|x> -> |R x>``, by Gauss-Jordan elimination.

    Raises:
        SingularMatrixError: if ``R`` is not invertible.
    """
    if not R.is_square():
        raise DimensionError("R must be square")
    n = R.rows
    data = R.data.copy()
    ops: list = []
    for j in range(n):
        colbits = ((data[:, j >> 6] >> np.uint64(j & 63)) & np.uint64(1)).astype(bool)
        below = np.flatnonzero(colbits[j:])
        if below.size == 0:
            raise SingularMatrixError(j, n)
        p = j + int(below[0])
        if p != j:
            data[[p, j]] = data[[j, p]]
            colbits[[p, j]] = colbits[[j, p]]
            ops.append(Swap(j, p))
        for i in np.flatnonzero(colbits):
            if i != j:
                data[i] ^= data[j]
                ops.append(Cnot(j, int(i)))
    return GateSeq(n, ops[::-1])


def zmatrix_to_gates(Z: BinMat) -> GateSeq:
    """``ExpPi4`` gates with z-type labels realizing ``C = [[I, Z], [0, I]]``.

    Each off-diagonal pair ``Z[k, l] = 1`` costs one two-qubit gate, which
    also toggles ``Z[k, k]`` and ``Z[l, l]``; one-qubit gates then correct
    the diagonal.
    """
    if not Z.is_symmetric():
        raise ValueError("Z must be symmetric")
    n = Z.rows
    z = Z.to_array()
    gates: list = []
    diag = np.zeros(n, dtype=np.uint8)
    for k in range(n):
        for l in range(k + 1, n):
            if z[k, l]:
                gates.append(ExpPi4(_label(n, {k: 1, l: 1})))
                diag[k] ^= 1
                diag[l] ^= 1
    for k in np.flatnonzero(diag ^ np.diag(z)):
        gates.append(ExpPi4(_label(n, {int(k): 1})))
    return GateSeq(n, gates)


def decompose_scheme2(Q: CliffordTableau) -> GateSeq:
    """Five-factor realization: linear, diagonal, Hadamard, diagonal, linear, then the ``h`` fix."""
    n = Q.n
    blocks = symplectic_block_decompose(Q.C)
    zbr, zbc = blocks.z_blocks()
    k = n - blocks.r
    gates = linear_to_cnots(blocks.T2).gates + zmatrix_to_gates(zbc).gates
    if blocks.r:
        gates.append(HadamardSet(tuple(range(k, n))))
    gates += zmatrix_to_gates(zbr).gates + linear_to_cnots(blocks.T1).gates
    return _with_h_fix(GateSeq(n, gates), Q.h)


# -- random circuits ---------------------------------------------------------


def random_gate(n: int, rng: np.random.Generator) -> PrimitiveGate:
    kinds = ["H", "EXP1", "PAULI", "SQ"] + (["CNOT", "SWAP", "EXP2"] if n > 1 else [])
    kind = kinds[int(rng.integers(len(kinds)))]
    if kind == "H":
        qs = [q for q in range(n) if rng.integers(2)] or [int(rng.integers(n))]
        return HadamardSet(tuple(qs))
    if kind == "PAULI":
        return PauliGate(BinVec(rng.integers(0, 2, 2 * n, dtype=np.uint8)))
    if kind == "SQ":
        K = _random_2x2_invertible(rng)
        return SingleQubitSymplectic(int(rng.integers(n)), K, BinVec(rng.integers(0, 2, 2, dtype=np.uint8)))
    if kind == "EXP1":
        q = int(rng.integers(n))
        bits = _ONE_QUBIT_LABELS[int(rng.integers(3))].to_array()
        return ExpPi4(_label(n, {q: bits[0], n + q: bits[1]}))
    k, l = (int(x) for x in rng.choice(n, size=2, replace=False))
    if kind == "CNOT":
        return Cnot(k, l)
    if kind == "SWAP":
        return Swap(k, l)
    while True:
        bits = rng.integers(0, 2, 4, dtype=np.uint8)
        if bits.any():
            return ExpPi4(_label(n, {k: bits[0], n + k: bits[1], l: bits[2], n + l: bits[3]}))


def _random_2x2_invertible(rng: np.random.Generator) -> BinMat:
    while True:
        arr = rng.integers(0, 2, (2, 2), dtype=np.uint8)
        if (arr[0, 0] & arr[1, 1]) ^ (arr[0, 1] & arr[1, 0]):
            return BinMat(arr)


def random_circuit(n: int, length: int, rng: np.random.Generator) -> GateSeq:
    return GateSeq(n, [random_gate(n, rng) for _ in range(length)])


def gate_tableau_product(gates: Sequence[PrimitiveGate], n: int) -> CliffordTableau:
    out = identity_tableau(n)
    for g in gates:
        out = compose(g.tableau(n), out)
    return out
