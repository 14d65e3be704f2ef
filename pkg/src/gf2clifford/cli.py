"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input or parse error,
3 refusal (register too large for the dense checks).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import oracle
from .clifford import NotSymplecticError, PhaseVectorMismatch, compose, conjugate_pauli, inverse, random_tableau
from .decompose import DecompositionError, decompose_scheme1, decompose_scheme2
from .gf2 import BinVec
from .pauli import PauliElement
from .stabilizer import InvalidStabilizerError, amplitudes, apply_clifford, canonical_form
from .textio import (
    ParseError,
    format_amplitudes,
    format_canonical,
    format_circuit,
    format_named,
    format_tableau,
    parse_circuit,
    parse_stabilizer,
    parse_tableau,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_REFUSED = 3


class Refusal(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def cmd_tableau(args) -> int:
    seq = parse_circuit(_read(args.circuit))
    sys.stdout.write(format_tableau(seq.tableau()))
    return EXIT_OK


def cmd_compose(args) -> int:
    first = parse_tableau(_read(args.first))
    second = parse_tableau(_read(args.second))
    sys.stdout.write(format_tableau(compose(second, first)))
    return EXIT_OK


def cmd_invert(args) -> int:
    sys.stdout.write(format_tableau(inverse(parse_tableau(_read(args.tableau)))))
    return EXIT_OK


def cmd_decompose(args) -> int:
    Q = parse_tableau(_read(args.tableau))
    seq = decompose_scheme1(Q) if args.scheme == "cols" else decompose_scheme2(Q)
    sys.stdout.write(format_circuit(seq, summary=True))
    return EXIT_OK


def cmd_canon(args) -> int:
    sys.stdout.write(format_canonical(canonical_form(parse_stabilizer(_read(args.stabilizer)))))
    return EXIT_OK


def cmd_amplitudes(args) -> int:
    state = parse_stabilizer(_read(args.stabilizer))
    sys.stdout.write(format_amplitudes(amplitudes(canonical_form(state))))
    return EXIT_OK


def cmd_closed_form(args) -> int:
    data = oracle.closed_form_data(parse_tableau(_read(args.tableau)))
    items = [
        ("r", data.r),
        ("T1", data.T1),
        ("T2", data.T2),
        ("Z_br", data.Z_br),
        ("Z_bc", data.Z_bc),
        ("d_br", data.d_br),
        ("d_bc", data.d_bc),
        ("h_bc", data.h_bc),
        ("t", data.t),
    ]
    sys.stdout.write(format_named(items))
    return EXIT_OK


def cmd_gen_random_tableau(args) -> int:
    if args.n < 0:
        raise ParseError("--n must be nonnegative")
    rng = np.random.default_rng(args.seed)
    sys.stdout.write(format_tableau(random_tableau(args.n, rng)))
    return EXIT_OK


def cmd_verify(args) -> int:
    seq = parse_circuit(_read(args.circuit))
    n = seq.n
    if n > oracle.MAX_OPERATOR_QUBITS:
        raise Refusal(f"n={n} exceeds the dense-check limit of {oracle.MAX_OPERATOR_QUBITS} qubits")
    expected = parse_tableau(_read(args.tableau)) if args.tableau else None
    state = parse_stabilizer(_read(args.stabilizer)) if args.stabilizer else None
    if expected is not None and expected.n != n:
        raise ParseError(f"tableau has {expected.n} qubits, circuit {n}")
    if state is not None and state.n != n:
        raise ParseError(f"stabilizer state has {state.n} qubits, circuit {n}")

    failures = []
    unitary = oracle.dense_from_gates(seq)
    Q = seq.tableau()
    for label, tab in [("circuit tableau", Q), ("given tableau", expected)]:
        if tab is None:
            continue
        for k in range(2 * n):
            gen = PauliElement(BinVec.unit(2 * n, k))
            if conjugate_pauli(tab, gen) != oracle.conjugate_dense(unitary, gen):
                failures.append(f"{label}: generator {k} image differs from dense conjugation")

    dev = oracle.phase_deviation(oracle.clifford_matrix_closed_form(Q), unitary)
    if dev > oracle.TOLERANCE:
        failures.append(f"closed-form matrix differs from gate product (deviation {dev:.3g})")

    if state is not None:
        psi0 = oracle.projector_state(state)
        final = apply_clifford(state, Q)
        expansion = amplitudes(canonical_form(final)).to_dense()
        dev = oracle.phase_deviation(expansion, unitary @ psi0)
        if dev > oracle.TOLERANCE:
            failures.append(f"evolved state expansion differs from dense evolution (deviation {dev:.3g})")
        dev = oracle.phase_deviation(expansion, oracle.projector_state(final))
        if dev > oracle.TOLERANCE:
            failures.append(f"state expansion differs from projector state (deviation {dev:.3g})")

    for line in failures:
        print(f"FAIL {line}")
    if failures:
        return EXIT_FAIL
    print(f"PASS n={n} gates={len(seq)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gf2clifford", description="Binary Clifford tableaux and stabilizer states.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tableau", help="tableau of a circuit")
    p.add_argument("circuit")
    p.set_defaults(func=cmd_tableau)

    p = sub.add_parser("compose", help="tableau of FIRST followed by SECOND")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("invert", help="inverse tableau")
    p.add_argument("tableau")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("decompose", help="gate sequence realizing a tableau")
    p.add_argument("tableau")
    p.add_argument("--scheme", choices=["cols", "blocks"], default="cols")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("canon", help="canonical form of a stabilizer state")
    p.add_argument("stabilizer")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("amplitudes", help="standard-basis amplitudes of a stabilizer state")
    p.add_argument("stabilizer")
    p.set_defaults(func=cmd_amplitudes)

    p = sub.add_parser("closed-form", help="closed-form matrix parameters of a tableau")
    p.add_argument("tableau")
    p.set_defaults(func=cmd_closed_form)

    p = sub.add_parser("verify", help="check a circuit against dense matrices")
    p.add_argument("circuit")
    p.add_argument("--tableau", help="tableau the circuit is expected to realize")
    p.add_argument("--stabilizer", help="input state to evolve through the circuit")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen-random-tableau", help="random tableau (not uniform)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen_random_tableau)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Refusal as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (
        ParseError,
        NotSymplecticError,
        PhaseVectorMismatch,
        DecompositionError,
        InvalidStabilizerError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
