"""Hypothesis strategies shared by the test modules."""

import numpy as np
from hypothesis import strategies as st

from gf2clifford.clifford import random_invertible, random_symmetric, random_tableau
from gf2clifford.gf2 import BinMat, BinVec
from gf2clifford.pauli import PauliElement
from gf2clifford.stabilizer import random_state

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def binvecs(n):
    return st.lists(st.integers(0, 1), min_size=n, max_size=n).map(BinVec)


def binmats(rows, cols):
    return st.lists(st.integers(0, 1), min_size=rows * cols, max_size=rows * cols).map(
        lambda bits: BinMat(np.array(bits, dtype=np.uint8).reshape(rows, cols), cols=cols)
    )


@st.composite
def paulis(draw, n):
    return PauliElement(draw(binvecs(2 * n)), draw(st.integers(0, 1)), draw(st.integers(0, 1)))


@st.composite
def tableaux(draw, n_min=1, n_max=5):
    n = draw(st.integers(n_min, n_max))
    return random_tableau(n, np.random.default_rng(draw(seeds)))


@st.composite
def invertibles(draw, n_min=1, n_max=8):
    n = draw(st.integers(n_min, n_max))
    return random_invertible(n, np.random.default_rng(draw(seeds)))


@st.composite
def symmetrics(draw, n_min=1, n_max=8):
    n = draw(st.integers(n_min, n_max))
    return random_symmetric(n, np.random.default_rng(draw(seeds)))


@st.composite
def states(draw, n_min=1, n_max=5):
    n = draw(st.integers(n_min, n_max))
    return random_state(n, np.random.default_rng(draw(seeds)))
