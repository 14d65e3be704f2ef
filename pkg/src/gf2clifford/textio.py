"""Plain-text formats for matrices, tableaux, circuits, stabilizer states and amplitudes.

Matrix::

    <rows> <cols>
    0110...            one line of '0'/'1' per row

Tableau::

    n <n>
    <2n lines of 2n bits: C>
    <2n bits: d>
    <2n bits: h>

Circuit: ``n <n>`` followed by one gate per line, first line applied
first; ``#`` starts a comment.  Gate lines are ``H q...``, ``CNOT c t``,
``SWAP a b``, ``PAULI <2n bits>``, ``EXP <2n bits>`` and
``SQ q <4 bits C> <2 bits d> <2 bits h>``.

Stabilizer state: ``n <n>`` followed by ``n`` signed Pauli strings.

Amplitudes: ``<bitstring> <re> <im>`` per support point, lexicographic.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from .clifford import CliffordTableau, new_tableau, u_diag
from .decompose import (
    Cnot,
    ExpPi4,
    GateSeq,
    HadamardSet,
    PauliGate,
    SingleQubitSymplectic,
    Swap,
)
from .gf2 import BinMat, BinVec
from .pauli import PauliElement
from .stabilizer import AmplitudeMap, CanonicalStabilizer, StabilizerRep


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
        self.line = line


def _lines(text: str) -> list[tuple[int, str]]:
    """Non-empty lines with comments stripped, paired with 1-based line numbers."""
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((no, line))
    return out


def _bits(token: str, length: int, line: int, what: str) -> BinVec:
    if len(token) != length or set(token) - {"0", "1"}:
        raise ParseError(f"{what} must be {length} characters of 0/1, got {token!r}", line)
    return BinVec(token)


def _int(token: str, line: int, what: str = "integer") -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected {what}, got {token!r}", line) from None


def _header(lines: list[tuple[int, str]]) -> int:
    if not lines:
        raise ParseError("empty input: expected header 'n <n>'")
    no, line = lines[0]
    parts = line.split()
    if len(parts) != 2 or parts[0] != "n":
        raise ParseError(f"expected header 'n <n>', got {line!r}", no)
    n = _int(parts[1], no, "qubit count")
    if n < 0:
        raise ParseError("qubit count must be nonnegative", no)
    return n


# -- matrices ----------------------------------------------------------------


def format_matrix(m: BinMat) -> str:
    body = "".join(f"{row}\n" for row in str(m).splitlines()) if m.rows and m.cols else "\n" * m.rows
    return f"{m.rows} {m.cols}\n{body}"


def parse_matrix(text: str) -> BinMat:
    lines = [(no, raw.strip()) for no, raw in enumerate(text.splitlines(), start=1)]
    lines = [(no, s) for no, s in lines if not s.startswith("#")]
    while lines and not lines[-1][1]:
        lines.pop()
    if not lines:
        raise ParseError("empty input: expected 'rows cols'")
    no, head = lines[0]
    parts = head.split()
    if len(parts) != 2:
        raise ParseError(f"expected 'rows cols', got {head!r}", no)
    rows, cols = _int(parts[0], no), _int(parts[1], no)
    body = lines[1:]
    if len(body) != rows:
        raise ParseError(f"expected {rows} rows, found {len(body)}", no)
    arr = np.zeros((rows, cols), dtype=np.uint8)
    for i, (no, s) in enumerate(body):
        arr[i] = _bits(s, cols, no, "matrix row").to_array()
    return BinMat(arr, cols=cols)


# -- tableaux ----------------------------------------------------------------


def format_tableau(Q: CliffordTableau) -> str:
    rows = str(Q.C).splitlines() if Q.n else []
    return "\n".join([f"n {Q.n}", *rows, str(Q.d), str(Q.h)]) + "\n"


def parse_tableau(text: str) -> CliffordTableau:
    """Read a tableau and validate it.

    Raises:
        ParseError: on malformed text.
        NotSymplecticError, PhaseVectorMismatch: if the data is not a valid tableau.
    """
    lines = _lines(text)
    n = _header(lines)
    m = 2 * n
    body = lines[1:]
    if n == 0 and not body:
        return new_tableau(BinMat.zeros(0, 0), BinVec.zeros(0), BinVec.zeros(0))
    if len(body) != m + 2:
        raise ParseError(f"expected {m} rows of C plus d and h lines, found {len(body)} lines", lines[0][0])
    arr = np.array([_bits(s, m, no, "row of C").to_array() for no, s in body[:m]])
    d = _bits(body[m][1], m, body[m][0], "d")
    h = _bits(body[m + 1][1], m, body[m + 1][0], "h")
    return new_tableau(BinMat(arr), d, h)


# -- circuits ----------------------------------------------------------------


def _check_qubit(q: int, n: int, line: int) -> int:
    if not 0 <= q < n:
        raise ParseError(f"qubit index {q} out of range for n={n}", line)
    return q


def parse_gate(line: str, n: int, no: int):
    parts = line.split()
    op, args = parts[0].upper(), parts[1:]

    def qubits(k: int | None = None) -> list[int]:
        if k is not None and len(args) != k:
            raise ParseError(f"{op} takes {k} qubit indices", no)
        return [_check_qubit(_int(a, no, "qubit index"), n, no) for a in args]

    try:
        if op == "H":
            qs = qubits()
            if not qs:
                raise ParseError("H needs at least one qubit", no)
            return HadamardSet(tuple(qs))
        if op in ("CNOT", "SWAP"):
            a, b = qubits(2)
            if a == b:
                raise ParseError(f"{op} needs two distinct qubits", no)
            return Cnot(a, b) if op == "CNOT" else Swap(a, b)
        if op in ("PAULI", "EXP"):
            if len(args) != 1:
                raise ParseError(f"{op} takes one bit string", no)
            a = _bits(args[0], 2 * n, no, "label")
            return PauliGate(a) if op == "PAULI" else ExpPi4(a)
        if op == "SQ":
            if len(args) != 4:
                raise ParseError("SQ takes: qubit, 4 bits of C, 2 bits of d, 2 bits of h", no)
            q = _check_qubit(_int(args[0], no, "qubit index"), n, no)
            c = _bits(args[1], 4, no, "C").to_array().reshape(2, 2)
            d = _bits(args[2], 2, no, "d")
            h = _bits(args[3], 2, no, "h")
            C = BinMat(c)
            if u_diag(C) != d:
                raise ParseError(f"d={d} does not match C (expected {u_diag(C)})", no)
            return SingleQubitSymplectic(q, C, h)
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc), no) from None
    raise ParseError(f"unknown gate {parts[0]!r}", no)


def parse_circuit(text: str) -> GateSeq:
    lines = _lines(text)
    n = _header(lines)
    return GateSeq(n, [parse_gate(line, n, no) for no, line in lines[1:]])


def format_circuit(seq: GateSeq, summary: bool = False) -> str:
    out = [f"n {seq.n}"]
    out += [g.to_line() for g in seq]
    if summary:
        out.append(f"# gates: {len(seq)} two-qubit: {seq.two_qubit_count()}")
    return "\n".join(out) + "\n"


# -- stabilizer states -------------------------------------------------------


def parse_stabilizer(text: str) -> StabilizerRep:
    lines = _lines(text)
    n = _header(lines)
    body = lines[1:]
    if len(body) != n:
        raise ParseError(f"expected {n} generators, found {len(body)}", lines[0][0])
    gens = []
    for no, line in body:
        try:
            p = PauliElement.from_string(line)
        except ValueError as exc:
            raise ParseError(str(exc), no) from None
        if p.n != n:
            raise ParseError(f"generator has {p.n} qubits, expected {n}", no)
        gens.append(p)
    return StabilizerRep.from_paulis(gens)


def format_stabilizer(state: StabilizerRep) -> str:
    return "\n".join([f"n {state.n}", *state.to_strings()]) + "\n"


def _num(x: float) -> str:
    return "%.17g" % (x + 0.0)


def format_amplitudes(amps: AmplitudeMap) -> str:
    points = sorted((str(x), amp) for x, amp in amps.support())
    return "".join(f"{bits} {_num(a.real)} {_num(a.imag)}\n" for bits, a in points)


def format_named(items: Iterable[tuple[str, object]]) -> str:
    """``key: value`` lines; matrices go on following lines in matrix format."""
    out = []
    for key, value in items:
        if isinstance(value, BinMat):
            out.append(f"{key}:")
            out.append(format_matrix(value).rstrip("\n"))
        else:
            out.append(f"{key}: {value}".rstrip())
    return "\n".join(out) + "\n"


def format_canonical(c: CanonicalStabilizer) -> str:
    return format_named(
        [
            ("r_a", c.r_a),
            ("r_b", c.r_b),
            ("r_c", c.r_c),
            ("T", c.T),
            ("Z", c.Z),
            ("f_a", c.f_a),
            ("b_ab", c.b_ab),
            ("b_c", c.b_c),
            ("R", c.R),
        ]
    )
