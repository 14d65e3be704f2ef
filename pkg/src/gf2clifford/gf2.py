"""Bit-packed linear algebra over GF(2).

Rows are stored in 64-bit words, bit ``k`` of a row being the coefficient of
column ``k``.  Vectors of length ``2n`` that label Pauli operators use the
split ``a = [v; w]``: coordinates ``0..n-1`` are the z-part ``v`` and
coordinates ``n..2n-1`` the x-part ``w``.

Values are immutable from the caller's side; every operation returns a
fresh object.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _kernels

WORD_BITS = 64


class DimensionError(ValueError):
    """Operand shapes are incompatible."""


class SingularMatrixError(ValueError):
    """Raised by :func:`mat_inverse`; ``rank`` is the rank that was reached."""

    def __init__(self, rank: int, size: int):
        super().__init__(f"matrix is singular: rank {rank} < {size}")
        self.rank = rank
        self.size = size


class DependentColumnsError(ValueError):
    """The columns handed to :func:`complete_to_invertible` are dependent."""


def _nwords(nbits: int) -> int:
    return (nbits + WORD_BITS - 1) // WORD_BITS


def _tail_mask(nbits: int) -> np.uint64:
    r = nbits % WORD_BITS
    if r == 0:
        return np.uint64(0xFFFFFFFFFFFFFFFF)
    return np.uint64((1 << r) - 1)


def _pack(bits: np.ndarray) -> np.ndarray:
    """Pack a 2-D 0/1 array row-wise into uint64 words."""
    bits = np.asarray(bits, dtype=np.uint8) & 1
    rows, cols = bits.shape
    nw = _nwords(cols)
    out = np.zeros((rows, nw * 8), dtype=np.uint8)
    if cols:
        packed = np.packbits(bits, axis=1, bitorder="little")
        out[:, : packed.shape[1]] = packed
    return np.ascontiguousarray(out).view("<u8").astype(np.uint64, copy=False)


def _unpack(data: np.ndarray, cols: int) -> np.ndarray:
    rows = data.shape[0]
    if cols == 0 or rows == 0:
        return np.zeros((rows, cols), dtype=np.uint8)
    raw = np.ascontiguousarray(data).astype("<u8", copy=False).view(np.uint8)
    return np.unpackbits(raw, axis=1, bitorder="little")[:, :cols]


def _extract(data: np.ndarray, start: int, length: int) -> np.ndarray:
    """Bits ``start .. start+length-1`` of every row, re-based at bit 0."""
    rows = data.shape[0]
    nw = _nwords(length)
    out = np.zeros((rows, nw), dtype=np.uint64)
    if nw == 0:
        return out
    q, r = divmod(start, WORD_BITS)
    src = np.zeros((rows, nw + 1), dtype=np.uint64)
    avail = data[:, q : q + nw + 1]
    src[:, : avail.shape[1]] = avail
    if r == 0:
        out[:] = src[:, :nw]
    else:
        out[:] = (src[:, :nw] >> np.uint64(r)) | (src[:, 1:] << np.uint64(WORD_BITS - r))
    out[:, -1] &= _tail_mask(length)
    return out


def _place(dst: np.ndarray, src: np.ndarray, offset: int) -> None:
    """OR the packed rows ``src`` into ``dst`` starting at bit ``offset``."""
    nw = src.shape[1]
    if nw == 0:
        return
    q, r = divmod(offset, WORD_BITS)
    if r == 0:
        dst[:, q : q + nw] |= src
        return
    dst[:, q : q + nw] |= src << np.uint64(r)
    k = min(nw, dst.shape[1] - q - 1)
    if k > 0:
        dst[:, q + 1 : q + 1 + k] |= src[:, :k] >> np.uint64(WORD_BITS - r)


def _parity(words: np.ndarray, axis: int = -1) -> np.ndarray:
    return (np.bitwise_count(words).sum(axis=axis) & 1).astype(np.uint8)


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


class BinVec:
    """A vector over GF(2) stored in packed 64-bit words."""

    __slots__ = ("_n", "_words")

    def __init__(self, bits: Iterable[int] | str = ()):
        if isinstance(bits, str):
            arr = np.array([int(c) for c in bits if not c.isspace()], dtype=np.uint8)
        else:
            arr = np.asarray(list(bits) if not isinstance(bits, np.ndarray) else bits)
            arr = arr.astype(np.uint8).reshape(-1)
        if arr.size and arr.max() > 1:
            raise ValueError("bits must be 0 or 1")
        self._n = int(arr.size)
        self._words = _frozen(_pack(arr[None, :])[0])

    @classmethod
    def _wrap(cls, n: int, words: np.ndarray) -> BinVec:
        v = cls.__new__(cls)
        v._n = n
        v._words = _frozen(np.ascontiguousarray(words, dtype=np.uint64))
        return v

    @classmethod
    def zeros(cls, n: int) -> BinVec:
        return cls._wrap(n, np.zeros(_nwords(n), dtype=np.uint64))

    @classmethod
    def ones(cls, n: int) -> BinVec:
        return cls(np.ones(n, dtype=np.uint8))

    @classmethod
    def unit(cls, n: int, k: int) -> BinVec:
        if not 0 <= k < n:
            raise IndexError(f"unit index {k} out of range for length {n}")
        words = np.zeros(_nwords(n), dtype=np.uint64)
        words[k // WORD_BITS] = np.uint64(1) << np.uint64(k % WORD_BITS)
        return cls._wrap(n, words)

    @classmethod
    def concat(cls, *parts: BinVec) -> BinVec:
        n = sum(len(p) for p in parts)
        out = np.zeros((1, _nwords(n)), dtype=np.uint64)
        offset = 0
        for p in parts:
            _place(out, p._words[None, :], offset)
            offset += len(p)
        return cls._wrap(n, out[0])

    @property
    def words(self) -> np.ndarray:
        return self._words

    def __len__(self) -> int:
        return self._n

    def __getitem__(self, key):
        if isinstance(key, slice):
            start, stop, step = key.indices(self._n)
            if step != 1:
                return BinVec(self.to_array()[key])
            length = max(0, stop - start)
            return BinVec._wrap(length, _extract(self._words[None, :], start, length)[0])
        k = int(key)
        if k < 0:
            k += self._n
        if not 0 <= k < self._n:
            raise IndexError(k)
        return int((self._words[k // WORD_BITS] >> np.uint64(k % WORD_BITS)) & np.uint64(1))

    def __iter__(self):
        return iter(int(b) for b in self.to_array())

    def _check(self, other: BinVec) -> None:
        if not isinstance(other, BinVec):
            raise TypeError(f"expected BinVec, got {type(other).__name__}")
        if other._n != self._n:
            raise DimensionError(f"vector lengths differ: {self._n} vs {other._n}")

    def __add__(self, other: BinVec) -> BinVec:
        self._check(other)
        return BinVec._wrap(self._n, self._words ^ other._words)

    __xor__ = __add__
    __sub__ = __add__

    def __and__(self, other: BinVec) -> BinVec:
        self._check(other)
        return BinVec._wrap(self._n, self._words & other._words)

    def __matmul__(self, other):
        """Row vector times matrix, or the GF(2) inner product of two vectors."""
        if isinstance(other, BinVec):
            return self.dot(other)
        if isinstance(other, BinMat):
            if other.rows != self._n:
                raise DimensionError(f"cannot multiply 1x{self._n} by {other.shape}")
            sel = self.to_array().astype(bool)
            words = np.bitwise_xor.reduce(other.data[sel], axis=0) if sel.any() else None
            if words is None:
                return BinVec.zeros(other.cols)
            return BinVec._wrap(other.cols, words)
        return NotImplemented

    def dot(self, other: BinVec) -> int:
        self._check(other)
        return int(np.bitwise_count(self._words & other._words).sum() & 1)

    def weight(self) -> int:
        return int(np.bitwise_count(self._words).sum())

    def any(self) -> bool:
        return bool(self._words.any())

    def support(self) -> list[int]:
        return [int(k) for k in np.flatnonzero(self.to_array())]

    def to_array(self) -> np.ndarray:
        return _unpack(self._words[None, :], self._n)[0]

    def to_int(self) -> int:
        """Integer whose binary expansion reads the bits with bit 0 most significant."""
        out = 0
        for b in self.to_array():
            out = (out << 1) | int(b)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinVec):
            return NotImplemented
        return self._n == other._n and bool(np.array_equal(self._words, other._words))

    def __hash__(self) -> int:
        return hash((self._n, self._words.tobytes()))

    def __str__(self) -> str:
        return "".join(map(str, self.to_array()))

    def __repr__(self) -> str:
        return f"BinVec('{self}')"


class BinMat:
    """A dense GF(2) matrix with rows packed into 64-bit words."""

    __slots__ = ("_rows", "_cols", "_data")

    def __init__(self, entries: Sequence | np.ndarray | None = None, *, cols: int | None = None):
        if entries is None:
            entries = []
        if isinstance(entries, np.ndarray):
            arr = entries
        elif len(entries) and isinstance(entries[0], str):
            arr = np.array([[int(c) for c in row] for row in entries], dtype=np.uint8)
        else:
            arr = np.array(entries, dtype=np.uint8)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, cols or 0)
        if arr.ndim != 2:
            raise DimensionError("matrix entries must be two-dimensional")
        if arr.size and arr.max() > 1:
            raise ValueError("entries must be 0 or 1")
        self._rows, self._cols = (int(s) for s in arr.shape)
        self._data = _frozen(_pack(arr))

    @classmethod
    def _wrap(cls, rows: int, cols: int, data: np.ndarray) -> BinMat:
        m = cls.__new__(cls)
        m._rows = rows
        m._cols = cols
        m._data = _frozen(np.ascontiguousarray(data, dtype=np.uint64))
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> BinMat:
        return cls._wrap(rows, cols, np.zeros((rows, _nwords(cols)), dtype=np.uint64))

    @classmethod
    def identity(cls, n: int) -> BinMat:
        data = np.zeros((n, _nwords(n)), dtype=np.uint64)
        idx = np.arange(n)
        data[idx, idx // WORD_BITS] = np.uint64(1) << (idx % WORD_BITS).astype(np.uint64)
        return cls._wrap(n, n, data)

    @classmethod
    def from_columns(cls, columns: Sequence[BinVec], n: int | None = None) -> BinMat:
        if not columns:
            return cls.zeros(n or 0, 0)
        arr = np.stack([c.to_array() for c in columns], axis=1)
        return cls(arr)

    @classmethod
    def from_rows(cls, rows: Sequence[BinVec], n: int | None = None) -> BinMat:
        if not rows:
            return cls.zeros(0, n or 0)
        cols = len(rows[0])
        return cls._wrap(len(rows), cols, np.stack([r.words for r in rows]))

    @classmethod
    def outer(cls, u: BinVec, v: BinVec) -> BinMat:
        sel = u.to_array().astype(bool)
        data = np.zeros((len(u), _nwords(len(v))), dtype=np.uint64)
        data[sel] = v.words
        return cls._wrap(len(u), len(v), data)

    @classmethod
    def hstack(cls, mats: Sequence[BinMat]) -> BinMat:
        rows = mats[0].rows
        if any(m.rows != rows for m in mats):
            raise DimensionError("hstack needs equal row counts")
        cols = sum(m.cols for m in mats)
        data = np.zeros((rows, _nwords(cols)), dtype=np.uint64)
        offset = 0
        for m in mats:
            _place(data, m.data, offset)
            offset += m.cols
        return cls._wrap(rows, cols, data)

    @classmethod
    def vstack(cls, mats: Sequence[BinMat]) -> BinMat:
        cols = mats[0].cols
        if any(m.cols != cols for m in mats):
            raise DimensionError("vstack needs equal column counts")
        rows = sum(m.rows for m in mats)
        data = np.concatenate([m.data for m in mats], axis=0) if rows else np.zeros((0, _nwords(cols)), np.uint64)
        return cls._wrap(rows, cols, data)

    @classmethod
    def block(cls, grid: Sequence[Sequence[BinMat]]) -> BinMat:
        return cls.vstack([cls.hstack(row) for row in grid])

    @classmethod
    def blockdiag(cls, *mats: BinMat) -> BinMat:
        rows = sum(m.rows for m in mats)
        cols = sum(m.cols for m in mats)
        data = np.zeros((rows, _nwords(cols)), dtype=np.uint64)
        r = c = 0
        for m in mats:
            _place(data[r : r + m.rows], m.data, c)
            r += m.rows
            c += m.cols
        return cls._wrap(rows, cols, data)

    @property
    def rows(self) -> int:
        return self._rows

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def shape(self) -> tuple[int, int]:
        return (self._rows, self._cols)

    @property
    def data(self) -> np.ndarray:
        return self._data

    @property
    def T(self) -> BinMat:
        return BinMat._wrap(self._cols, self._rows, _kernels.transpose(self._data, self._rows, self._cols))

    def is_square(self) -> bool:
        return self._rows == self._cols

    def row(self, i: int) -> BinVec:
        return BinVec._wrap(self._cols, self._data[i].copy())

    def col(self, j: int) -> BinVec:
        if not 0 <= j < self._cols:
            raise IndexError(j)
        bits = (self._data[:, j // WORD_BITS] >> np.uint64(j % WORD_BITS)) & np.uint64(1)
        return BinVec(bits.astype(np.uint8))

    def columns(self) -> list[BinVec]:
        t = self.T
        return [t.row(j) for j in range(self._cols)]

    def __getitem__(self, key):
        if not isinstance(key, tuple) or len(key) != 2:
            raise TypeError("index a BinMat with [i, j] or [rows, cols]")
        ri, ci = key
        if isinstance(ri, slice) or isinstance(ci, slice):
            rs = ri if isinstance(ri, slice) else slice(ri, ri + 1)
            cs = ci if isinstance(ci, slice) else slice(ci, ci + 1)
            r0, r1, rstep = rs.indices(self._rows)
            c0, c1, cstep = cs.indices(self._cols)
            if rstep != 1 or cstep != 1:
                return BinMat(self.to_array()[rs, cs])
            nr, nc = max(0, r1 - r0), max(0, c1 - c0)
            return BinMat._wrap(nr, nc, _extract(self._data[r0 : r0 + nr], c0, nc))
        i, j = int(ri), int(ci)
        if not (0 <= i < self._rows and 0 <= j < self._cols):
            raise IndexError(key)
        return int((self._data[i, j // WORD_BITS] >> np.uint64(j % WORD_BITS)) & np.uint64(1))

    def __add__(self, other: BinMat) -> BinMat:
        if not isinstance(other, BinMat):
            return NotImplemented
        if other.shape != self.shape:
            raise DimensionError(f"shapes differ: {self.shape} vs {other.shape}")
        return BinMat._wrap(self._rows, self._cols, self._data ^ other._data)

    __xor__ = __add__
    __sub__ = __add__

    def __and__(self, other: BinMat) -> BinMat:
        if other.shape != self.shape:
            raise DimensionError(f"shapes differ: {self.shape} vs {other.shape}")
        return BinMat._wrap(self._rows, self._cols, self._data & other._data)

    def __matmul__(self, other):
        if isinstance(other, BinMat):
            return mat_mul(self, other)
        if isinstance(other, BinVec):
            if len(other) != self._cols:
                raise DimensionError(f"cannot multiply {self.shape} by vector of length {len(other)}")
            bits = _parity(self._data & other.words[None, :], axis=1)
            return BinVec(bits)
        return NotImplemented

    def is_zero(self) -> bool:
        return not self._data.any()

    def is_symmetric(self) -> bool:
        return self.is_square() and self == self.T

    def to_array(self) -> np.ndarray:
        return _unpack(self._data, self._cols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinMat):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._data, other._data))

    def __hash__(self) -> int:
        return hash((self.shape, self._data.tobytes()))

    def __str__(self) -> str:
        return "\n".join("".join(map(str, r)) for r in self.to_array())

    def __repr__(self) -> str:
        if self._rows * self._cols > 400:
            return f"BinMat<{self._rows}x{self._cols}>"
        rows = ", ".join(f"'{''.join(map(str, r))}'" for r in self.to_array())
        return f"BinMat([{rows}])"


@dataclass(frozen=True)
class StructMatrices:
    """The fixed matrices ``U = [[0, I], [0, 0]]`` and ``P = U + U^T`` for n qubits."""

    n: int
    U: BinMat
    P: BinMat


def u_matrix(n: int) -> BinMat:
    z = BinMat.zeros(n, n)
    return BinMat.block([[z, BinMat.identity(n)], [z, z]])


def p_matrix(n: int) -> BinMat:
    z = BinMat.zeros(n, n)
    i = BinMat.identity(n)
    return BinMat.block([[z, i], [i, z]])


def struct_matrices(n: int) -> StructMatrices:
    return StructMatrices(n, u_matrix(n), p_matrix(n))


def p_times(x):
    """``P x`` for a vector, or ``P M`` (swap of the row halves) for a matrix."""
    if isinstance(x, BinVec):
        n = len(x) // 2
        return BinVec.concat(x[n:], x[:n])
    n = x.rows // 2
    return BinMat._wrap(x.rows, x.cols, np.concatenate([x.data[n:], x.data[:n]]))


def times_p(m: BinMat) -> BinMat:
    """``M P``: swap of the column halves."""
    n = m.cols // 2
    return BinMat.hstack([m[:, n:], m[:, :n]])


def u_form(x: BinVec, y: BinVec) -> int:
    """``x^T U y``, i.e. the parity of ``x_v AND y_w``."""
    n = len(x) // 2
    if len(x) <= WORD_BITS and len(y) == len(x):
        if not n:
            return 0
        # single word: shift the w half of y down onto the v half of x
        xv = int(x.words[0]) & ((1 << n) - 1)
        return (xv & (int(y.words[0]) >> n)).bit_count() & 1
    return x[:n].dot(y[n:])


def p_form(x: BinVec, y: BinVec) -> int:
    """Symplectic inner product ``x^T P y``."""
    return u_form(x, y) ^ u_form(y, x)


def mat_mul(a: BinMat, b: BinMat) -> BinMat:
    """Matrix product over GF(2).

    Raises:
        DimensionError: if ``a.cols != b.rows``.
    """
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return BinMat._wrap(a.rows, b.cols, _kernels.matmul(a.data, b.data))


def rank(a: BinMat) -> int:
    work = a.data.copy()
    return len(_kernels.rref(work, np.zeros((a.rows, 0), np.uint64), a.cols))


def mat_inverse(a: BinMat) -> BinMat:
    """Inverse by Gauss-Jordan elimination on ``[A | I]``.

    Raises:
        SingularMatrixError: carrying the rank reached, when ``a`` is singular.
    """
    if not a.is_square():
        raise DimensionError(f"cannot invert non-square {a.shape}")
    work = a.data.copy()
    inv = BinMat.identity(a.rows).data.copy()
    piv = _kernels.rref(work, inv, a.cols)
    if len(piv) < a.rows:
        raise SingularMatrixError(len(piv), a.rows)
    return BinMat._wrap(a.rows, a.cols, inv)


def _lows_mask(rows: int, cols: int) -> np.ndarray:
    nw = _nwords(cols)
    i = np.arange(rows)[:, None]
    q = np.arange(nw)[None, :]
    full = q < (i // WORD_BITS)
    part = q == (i // WORD_BITS)
    r = (i % WORD_BITS).astype(np.uint64)
    partial = (np.uint64(1) << r) - np.uint64(1)
    mask = np.where(full, np.uint64(0xFFFFFFFFFFFFFFFF), np.uint64(0))
    return np.where(part, np.broadcast_to(partial, mask.shape), mask).astype(np.uint64)


def lows(a: BinMat) -> BinMat:
    """Strictly lower triangular part."""
    if not a.is_square():
        raise DimensionError("lows needs a square matrix")
    return BinMat._wrap(a.rows, a.cols, a.data & _lows_mask(a.rows, a.cols))


def diag_vec(a: BinMat) -> BinVec:
    if not a.is_square():
        raise DimensionError("diag_vec needs a square matrix")
    n = a.rows
    idx = np.arange(n)
    bits = (a.data[idx, idx // WORD_BITS] >> (idx % WORD_BITS).astype(np.uint64)) & np.uint64(1)
    return BinVec(bits.astype(np.uint8))


def diag_tmul(a: BinMat, b: BinMat) -> BinVec:
    """``diag(A^T B)`` without forming the product: column parities of ``A AND B``."""
    if a.shape != b.shape:
        raise DimensionError(f"shapes differ: {a.shape} vs {b.shape}")
    if a.rows == 0:
        return BinVec.zeros(a.cols)
    return BinVec._wrap(a.cols, np.bitwise_xor.reduce(a.data & b.data, axis=0))


def congruence_diag(a: BinMat, m: BinMat) -> BinVec:
    """``diag(A^T M A)``."""
    return diag_tmul(a, m @ a)


def quad_form(x: BinVec, m: BinMat) -> int:
    """``x^T M x``."""
    return x.dot(m @ x)


def is_symplectic(a: BinMat, p: BinMat | None = None) -> bool:
    if not a.is_square() or a.rows % 2:
        return False
    if p is None:
        p = p_matrix(a.rows // 2)
    return a.T @ (p @ a) == p


def kernel_range_bases(a: BinMat) -> tuple[BinMat, BinMat, int]:
    """Bases of the kernel and of the range of ``a``, plus its rank.

    The kernel basis holds one column per free column of the reduced row
    echelon form, in increasing order; the range basis holds the pivot
    columns of ``a`` itself.
    """
    work = a.data.copy()
    piv = [int(p) for p in _kernels.rref(work, np.zeros((a.rows, 0), np.uint64), a.cols)]
    r = len(piv)
    reduced = _unpack(work[:r], a.cols)
    free = [j for j in range(a.cols) if j not in set(piv)]
    kern = np.zeros((a.cols, len(free)), dtype=np.uint8)
    for c, f in enumerate(free):
        kern[f, c] = 1
        for i, p in enumerate(piv):
            kern[p, c] = reduced[i, f]
    full = a.to_array()
    rng = full[:, piv] if piv else np.zeros((a.rows, 0), dtype=np.uint8)
    return BinMat(kern.reshape(a.cols, len(free))), BinMat(rng.reshape(a.rows, r)), r


def complete_to_invertible(cols: BinMat, given_first: bool = True) -> BinMat:
    """Extend independent columns to an invertible square matrix.

    The given columns are reduced with the lowest-row pivot rule; a unit
    vector ``e_k`` is added for every row ``k`` that carries no pivot, in
    increasing ``k``.  With ``given_first`` the given columns come first,
    otherwise they are placed last.

    Raises:
        DependentColumnsError: if the given columns are linearly dependent.
    """
    n, k = cols.shape
    work = cols.T.data.copy()
    piv = {int(p) for p in _kernels.rref(work, np.zeros((k, 0), np.uint64), n)}
    if len(piv) < k:
        raise DependentColumnsError(f"{k} columns span only rank {len(piv)}")
    extra = [BinVec.unit(n, j) for j in range(n) if j not in piv]
    added = BinMat.from_columns(extra, n)
    parts = [cols, added] if given_first else [added, cols]
    return BinMat.hstack(parts)
