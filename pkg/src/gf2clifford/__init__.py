"""Binary (GF(2)) representation of Pauli groups, Clifford operations and stabilizer states."""

from .clifford import (
    CliffordTableau,
    NotSymplecticError,
    PhaseVectorMismatch,
    cnot_gate,
    compose,
    compose_all,
    conjugate_pauli,
    exp_pi4_gate,
    from_symplectic,
    hadamard_gate,
    identity_tableau,
    inverse,
    linear_gate,
    new_tableau,
    pauli_gate,
    permutation_gate,
    random_tableau,
    swap_gate,
)
from .decompose import (
    GateSeq,
    decompose_scheme1,
    decompose_scheme2,
    fix_h,
    linear_to_cnots,
    symplectic_block_decompose,
    zmatrix_to_gates,
)
from .gf2 import BinMat, BinVec
from .pauli import PauliElement, commutes, pauli_mul
from .stabilizer import (
    StabilizerRep,
    amplitudes,
    apply_clifford,
    basis_change,
    canonical_form,
    pauli_on_statevector,
    zero_state,
)

__all__ = [
    "BinMat",
    "BinVec",
    "CliffordTableau",
    "GateSeq",
    "NotSymplecticError",
    "PauliElement",
    "PhaseVectorMismatch",
    "StabilizerRep",
    "amplitudes",
    "apply_clifford",
    "basis_change",
    "canonical_form",
    "cnot_gate",
    "commutes",
    "compose",
    "compose_all",
    "conjugate_pauli",
    "decompose_scheme1",
    "decompose_scheme2",
    "exp_pi4_gate",
    "fix_h",
    "from_symplectic",
    "hadamard_gate",
    "identity_tableau",
    "inverse",
    "linear_gate",
    "linear_to_cnots",
    "new_tableau",
    "pauli_gate",
    "pauli_mul",
    "pauli_on_statevector",
    "permutation_gate",
    "random_tableau",
    "swap_gate",
    "symplectic_block_decompose",
    "zero_state",
    "zmatrix_to_gates",
]
