"""Tests for binary Pauli group elements."""

import itertools
from functools import reduce

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from _strategies import binvecs, paulis, tableaux
from gf2clifford import gf2
from gf2clifford.clifford import conjugate_pauli
from gf2clifford.gf2 import BinVec, DimensionError
from gf2clifford.oracle import dense_pauli
from gf2clifford.pauli import PauliElement, commutes, is_hermitian, pauli_mul

SIGMA = {
    "I": np.eye(2),
    "X": np.array([[0, 1], [1, 0]]),
    "Y": np.array([[0, -1j], [1j, 0]]),
    "Z": np.array([[1, 0], [0, -1]]),
}


def sigma_string(text):
    sign = -1 if text[0] == "-" else 1
    return sign * reduce(np.kron, [SIGMA[c] for c in text.lstrip("+-")], np.eye(1))


def all_elements(n):
    for bits in itertools.product((0, 1), repeat=2 * n):
        for delta, eps in itertools.product((0, 1), repeat=2):
            yield PauliElement(BinVec(bits), delta, eps)


class TestProduct:
    """The binary product rule against matrix products."""

    def test_z_times_x(self):
        p = pauli_mul(PauliElement(BinVec("10")), PauliElement(BinVec("01")))
        assert p == PauliElement(BinVec("11"), 0, 0)

    def test_x_times_z_picks_up_sign(self):
        p = pauli_mul(PauliElement(BinVec("01")), PauliElement(BinVec("10")))
        assert p == PauliElement(BinVec("11"), 0, 1)

    @pytest.mark.parametrize("n", [1, 2])
    def test_exhaustive_against_dense(self, n):
        elements = list(all_elements(n))
        dense = {p: dense_pauli(p) for p in elements}
        for p, q in itertools.product(elements, repeat=2):
            np.testing.assert_array_equal(dense_pauli(pauli_mul(p, q)), dense[p] @ dense[q])

    @given(st.integers(1, 4).flatmap(lambda n: st.tuples(paulis(n), paulis(n), paulis(n))))
    def test_associative(self, triple):
        p, q, r = triple
        assert pauli_mul(pauli_mul(p, q), r) == pauli_mul(p, pauli_mul(q, r))

    @given(st.integers(1, 6).flatmap(lambda n: paulis(n)))
    def test_hermitian_squares_to_identity(self, p):
        h = PauliElement(p.a, gf2.u_form(p.a, p.a), p.epsilon)
        assert pauli_mul(h, h) == PauliElement.identity(p.n)

    @given(st.integers(1, 6).flatmap(lambda n: st.tuples(paulis(n), paulis(n))))
    def test_reversed_order_differs_by_commutator(self, pair):
        p, q = pair
        pq, qp = pauli_mul(p, q), pauli_mul(q, p)
        assert pq.a == qp.a and pq.delta == qp.delta
        assert pq.epsilon ^ qp.epsilon == gf2.p_form(q.a, p.a)

    def test_size_mismatch(self):
        with pytest.raises(DimensionError):
            pauli_mul(PauliElement.identity(1), PauliElement.identity(2))


class TestCommutes:
    """The symplectic commutation test."""

    @pytest.mark.parametrize(
        "a, b, expected",
        [("10", "10", True), ("10", "01", False), ("0011", "1100", True), ("1000", "0010", False)],
    )
    def test_examples(self, a, b, expected):
        assert commutes(BinVec(a), BinVec(b)) is expected

    @given(st.integers(1, 3).flatmap(lambda n: st.tuples(binvecs(2 * n), binvecs(2 * n))))
    def test_matches_dense_commutator(self, pair):
        a, b = pair
        ta, tb = dense_pauli(PauliElement(a)), dense_pauli(PauliElement(b))
        assert commutes(a, b) == np.allclose(ta @ tb, tb @ ta)

    @given(tableaux(1, 5), st.data())
    def test_preserved_by_symplectic_maps(self, q, data):
        a, b = data.draw(binvecs(2 * q.n)), data.draw(binvecs(2 * q.n))
        assert commutes(a, b) == commutes(q.C @ a, q.C @ b)


class TestHermitian:
    """Hermiticity test and the signed string form."""

    @pytest.mark.parametrize(
        "p, expected",
        [
            (PauliElement.identity(1), True),
            (PauliElement(BinVec("11"), 0, 0), False),
            (PauliElement(BinVec("11"), 1, 0), True),
        ],
    )
    def test_examples(self, p, expected):
        assert is_hermitian(p) is expected

    @pytest.mark.parametrize("n", [1, 2])
    def test_matches_dense(self, n):
        for p in all_elements(n):
            m = dense_pauli(p)
            assert is_hermitian(p) == np.allclose(m, m.conj().T)

    @given(tableaux(1, 4), st.data())
    def test_preserved_by_conjugation(self, q, data):
        a = data.draw(binvecs(2 * q.n))
        p = PauliElement.hermitian(a, data.draw(st.integers(0, 1)))
        assert is_hermitian(conjugate_pauli(q, p))


class TestStrings:
    """Signed Pauli strings match tensor products of the Pauli matrices."""

    @pytest.mark.parametrize("text", ["+I", "-X", "+Y", "-Y", "+ZX", "+XX", "-ZZ", "+YY", "-YYY", "+YYYY", "-IYXZY"])
    def test_dense_matches_kronecker(self, text):
        np.testing.assert_array_equal(dense_pauli(PauliElement.from_string(text)), sigma_string(text))

    @given(st.text(alphabet="IXYZ", min_size=1, max_size=8), st.sampled_from("+-"))
    def test_roundtrip(self, letters, sign):
        p = PauliElement.from_string(sign + letters)
        assert is_hermitian(p)
        assert p.to_string() == sign + letters

    def test_unsigned_means_plus(self):
        assert PauliElement.from_string("XZ") == PauliElement.from_string("+XZ")

    def test_plus_y_bits(self):
        p = PauliElement.from_string("+Y")
        assert (p.a, p.delta, p.epsilon) == (BinVec("11"), 1, 1)

    def test_bad_letter(self):
        with pytest.raises(ValueError):
            PauliElement.from_string("+XQ")

    def test_sign_requires_hermitian(self):
        with pytest.raises(ValueError):
            PauliElement(BinVec("11")).sign
