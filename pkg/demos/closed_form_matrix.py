"""Build a Clifford unitary entry by entry from its tableau and check it against a circuit.

Run with ``python3 demos/closed_form_matrix.py``.
"""

import numpy as np

from gf2clifford import oracle
from gf2clifford.clifford import random_tableau
from gf2clifford.decompose import decompose_scheme2
from gf2clifford.textio import format_matrix

q = random_tableau(2, np.random.default_rng(11))
data = oracle.closed_form_data(q)
print(f"r = {data.r}")
print("T1:")
print(format_matrix(data.T1), end="")
print("T2:")
print(format_matrix(data.T2), end="")

u = oracle.clifford_matrix_closed_form(q)
np.set_printoptions(precision=3, suppress=True)
print("\nunitary from the closed form:")
print(u)

v = oracle.dense_from_gates(decompose_scheme2(q))
print("\nphase deviation from the decomposed circuit:", oracle.phase_deviation(u, v))
print("tableau recovered from the matrix matches:", oracle.tableau_from_unitary(u) == q)
