"""Numba kernels on bit-packed GF(2) rows.

Every matrix is a C-contiguous ``uint64`` array of shape ``(rows, words)``;
bit ``k`` of a row lives in word ``k // 64`` at position ``k % 64``.
Padding bits past the logical column count are kept at zero by callers.
"""

import numba
import numpy as np

_ONE = np.uint64(1)
_BYTE = np.uint64(255)


@numba.njit(cache=True)
def matmul(a, b):
    """Product of packed ``a`` (m x k) and packed ``b`` (k x n) over GF(2).

    Method of the Four Russians: for every 64-row slab of ``b`` eight
    256-entry tables of XOR combinations are built, then each row of ``a``
    picks one table row per byte of its matching word.
    """
    m = a.shape[0]
    kw = a.shape[1]
    k = b.shape[0]
    nw = b.shape[1]
    out = np.zeros((m, nw), dtype=np.uint64)
    if m == 0 or k == 0 or nw == 0:
        return out
    tables = np.zeros((8, 256, nw), dtype=np.uint64)
    for w in range(kw):
        base = w * 64
        if base >= k:
            break
        ng = min(8, (k - base + 7) // 8)
        for g in range(ng):
            t = tables[g]
            for j in range(8):
                r = base + 8 * g + j
                step = 1 << j
                if r < k:
                    br = b[r]
                    for s in range(step):
                        for q in range(nw):
                            t[step + s, q] = t[s, q] ^ br[q]
                else:
                    for s in range(step):
                        for q in range(nw):
                            t[step + s, q] = t[s, q]
        for i in range(m):
            x = a[i, w]
            if x == 0:
                continue
            o = out[i]
            for g in range(ng):
                byte = (x >> np.uint64(8 * g)) & _BYTE
                if byte != 0:
                    t = tables[g, byte]
                    for q in range(nw):
                        o[q] ^= t[q]
    return out


@numba.njit(cache=True)
def transpose(a, rows, cols):
    out = np.zeros((cols, (rows + 63) >> 6), dtype=np.uint64)
    nw = a.shape[1]
    for i in range(rows):
        wi = i >> 6
        bi = _ONE << np.uint64(i & 63)
        for q in range(nw):
            x = a[i, q]
            if x == 0:
                continue
            base = q << 6
            for s in range(64):
                if (x >> np.uint64(s)) & _ONE:
                    out[base + s, wi] |= bi
    return out


@numba.njit(cache=True)
def rref(a, b, ncols):
    """Gauss-Jordan elimination in place; same row operations applied to ``b``.

    The pivot for column ``j`` is the lowest-index row (at or below the
    current rank) holding a one there.  Returns the pivot columns.
    """
    m = a.shape[0]
    wa = a.shape[1]
    wb = b.shape[1]
    pivots = np.empty(min(m, ncols), dtype=np.int64)
    rank = 0
    for j in range(ncols):
        if rank == m:
            break
        wj = j >> 6
        bit = _ONE << np.uint64(j & 63)
        p = -1
        for i in range(rank, m):
            if a[i, wj] & bit:
                p = i
                break
        if p < 0:
            continue
        if p != rank:
            for q in range(wa):
                tmp = a[p, q]
                a[p, q] = a[rank, q]
                a[rank, q] = tmp
            for q in range(wb):
                tmp = b[p, q]
                b[p, q] = b[rank, q]
                b[rank, q] = tmp
        for i in range(m):
            if i != rank and (a[i, wj] & bit):
                for q in range(wa):
                    a[i, q] ^= a[rank, q]
                for q in range(wb):
                    b[i, q] ^= b[rank, q]
        pivots[rank] = j
        rank += 1
    return pivots[:rank]


@numba.njit(cache=True)
def _parity64(x):
    x ^= x >> np.uint64(32)
    x ^= x >> np.uint64(16)
    x ^= x >> np.uint64(8)
    x ^= x >> np.uint64(4)
    x ^= x >> np.uint64(2)
    x ^= x >> np.uint64(1)
    return x & _ONE


@numba.njit(cache=True)
def _row_combo(sel, rows):
    acc = np.uint64(0)
    for i in range(rows.shape[0]):
        if (sel >> np.uint64(i)) & _ONE:
            acc ^= rows[i]
    return acc


@numba.njit(cache=True)
def compose_word(c2, d2, h2, c1, d1, h1, n):
    """Tableau product for ``2n <= 64``: every row, ``d`` and ``h`` is one word.

    ``c2`` and ``c1`` hold the rows of ``C2`` and ``C1``.  Computes
    ``C = C2 C1``, ``d = d2^T C1 + d1`` and
    ``h = h1 + h2^T C1 + diag(C1^T L C1) + d1 (d2^T C1)`` with
    ``L = lows(C2^T U C2 + d2 d2^T)``.
    """
    m = 2 * n
    c = np.empty(m, dtype=np.uint64)
    for i in range(m):
        c[i] = _row_combo(c2[i], c1)
    d2c1 = _row_combo(d2, c1)
    d = d2c1 ^ d1
    h = h1 ^ _row_combo(h2, c1) ^ (d1 & d2c1)
    # columns of C2, split into their z and x halves
    low = (_ONE << np.uint64(n)) - _ONE if n < 64 else ~np.uint64(0)
    zc = np.zeros(m, dtype=np.uint64)
    xc = np.zeros(m, dtype=np.uint64)
    for k in range(n):
        rz = c2[k]
        rx = c2[n + k]
        for j in range(m):
            bit = _ONE << np.uint64(j)
            if rz & bit:
                zc[j] |= _ONE << np.uint64(k)
            if rx & bit:
                xc[j] |= _ONE << np.uint64(k)
    # strictly lower rows of L
    lrow = np.zeros(m, dtype=np.uint64)
    for i in range(m):
        di = (d2 >> np.uint64(i)) & _ONE
        for j in range(i):
            g = _parity64(zc[i] & xc[j] & low) ^ (di & (d2 >> np.uint64(j)) & _ONE)
            if g:
                lrow[i] |= _ONE << np.uint64(j)
    # column k of C1 as a word, then its quadratic form under L
    for k in range(m):
        col = np.uint64(0)
        for i in range(m):
            if (c1[i] >> np.uint64(k)) & _ONE:
                col |= _ONE << np.uint64(i)
        q = np.uint64(0)
        for i in range(m):
            if (col >> np.uint64(i)) & _ONE:
                q ^= _parity64(lrow[i] & col)
        h ^= q << np.uint64(k)
    return c, d, h
