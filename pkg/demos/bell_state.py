"""Prepare a Bell pair from |00> with H and CNOT, then read off its amplitudes.

Run with ``python3 demos/bell_state.py``.
"""

from gf2clifford import oracle
from gf2clifford.decompose import Cnot, GateSeq, HadamardSet
from gf2clifford.stabilizer import amplitudes, apply_clifford, canonical_form, zero_state
from gf2clifford.textio import format_amplitudes, format_tableau

circuit = GateSeq(2, [HadamardSet((0,)), Cnot(0, 1)])
tableau = circuit.tableau()
print("tableau of H(0) then CNOT(0,1):")
print(format_tableau(tableau), end="")

state = apply_clifford(zero_state(2), tableau)
print("\nstabilizer generators:", state.to_strings())

canon = canonical_form(state)
print(f"block sizes r_a={canon.r_a} r_b={canon.r_b} r_c={canon.r_c}")
print("amplitudes (label, real, imag):")
print(format_amplitudes(amplitudes(canon)), end="")

dense = oracle.dense_from_gates(circuit)[:, 0]
print("\nagrees with the dense circuit up to phase:", oracle.equal_up_to_phase(amplitudes(canon).to_dense(), dense))
