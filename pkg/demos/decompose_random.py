"""Decompose random Clifford tableaux with both schemes and compare gate counts.

Run with ``python3 demos/decompose_random.py [n] [samples]``.
"""

import sys

import numpy as np

from gf2clifford.clifford import random_tableau
from gf2clifford.decompose import decompose_scheme1, decompose_scheme2
from gf2clifford.textio import format_circuit

n = int(sys.argv[1]) if len(sys.argv) > 1 else 3
samples = int(sys.argv[2]) if len(sys.argv) > 2 else 100
rng = np.random.default_rng(7)

q = random_tableau(n, rng)
print(f"one random {n}-qubit tableau, column scheme:")
print(format_circuit(decompose_scheme1(q), summary=True), end="")
print("\nsame tableau, block scheme:")
print(format_circuit(decompose_scheme2(q), summary=True), end="")

counts = {"columns": [], "blocks": []}
for _ in range(samples):
    q = random_tableau(n, rng)
    for name, fn in (("columns", decompose_scheme1), ("blocks", decompose_scheme2)):
        seq = fn(q)
        assert seq.tableau() == q
        counts[name].append(seq.two_qubit_count())

print(f"\ntwo-qubit gates over {samples} tableaux (bound 4n^2 = {4 * n * n}):")
for name, c in counts.items():
    print(f"  {name:8s} mean {np.mean(c):6.1f}  max {max(c)}")
