"""Pauli group elements ``i^delta (-1)^epsilon tau_a`` in binary form.

``tau_a`` is the tensor product of ``tau_00 = I``, ``tau_01 = X``,
``tau_10 = Z`` and ``tau_11 = Z X = i Y`` over the qubits, with
``a = [v; w]``.  Both phase exponents are single bits.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf2 import BinVec, DimensionError, p_form, u_form

_LETTERS = {"I": (0, 0), "X": (0, 1), "Z": (1, 0), "Y": (1, 1)}
_FROM_BITS = {bits: letter for letter, bits in _LETTERS.items()}


@dataclass(frozen=True)
class PauliElement:
    a: BinVec
    delta: int = 0
    epsilon: int = 0

    def __post_init__(self):
        if len(self.a) % 2:
            raise DimensionError("Pauli label must have even length 2n")
        if self.delta not in (0, 1) or self.epsilon not in (0, 1):
            raise ValueError("phase exponents are single bits")

    @property
    def n(self) -> int:
        return len(self.a) // 2

    @property
    def v(self) -> BinVec:
        return self.a[: self.n]

    @property
    def w(self) -> BinVec:
        return self.a[self.n :]

    @property
    def phase(self) -> complex:
        return (1j if self.delta else 1) * (-1 if self.epsilon else 1)

    @classmethod
    def identity(cls, n: int) -> PauliElement:
        return cls(BinVec.zeros(2 * n))

    @classmethod
    def hermitian(cls, a: BinVec, sign: int = 0) -> PauliElement:
        """The Hermitian element ``(-1)^sign sigma_a``, with ``sigma_a`` the plain tensor product."""
        delta, eps = sigma_phase(a)
        return cls(a, delta, (sign + eps) & 1)

    @classmethod
    def from_string(cls, text: str) -> PauliElement:
        """Parse a signed string such as ``"+XZI"`` or ``"-YY"``."""
        text = text.strip().replace("−", "-")
        sign = 0
        if text[:1] in "+-":
            sign = int(text[0] == "-")
            text = text[1:]
        try:
            pairs = [_LETTERS[c] for c in text.upper()]
        except KeyError as exc:
            raise ValueError(f"invalid Pauli letter {exc.args[0]!r}") from None
        v = [p[0] for p in pairs]
        w = [p[1] for p in pairs]
        return cls.hermitian(BinVec(v + w), sign)

    @property
    def sign(self) -> int:
        """Sign bit ``s`` of a Hermitian element written as ``(-1)^s sigma_a``."""
        if not is_hermitian(self):
            raise ValueError("only Hermitian elements have a real sign")
        return (self.epsilon + sigma_phase(self.a)[1]) & 1

    def to_string(self) -> str:
        n = self.n
        v, w = self.v.to_array(), self.w.to_array()
        letters = "".join(_FROM_BITS[(int(v[k]), int(w[k]))] for k in range(n))
        return ("-" if self.sign else "+") + letters

    def __str__(self) -> str:
        if is_hermitian(self):
            return self.to_string()
        return f"{'-' if self.epsilon else ''}{'i' if self.delta else ''}tau[{self.a}]"


def sigma_phase(a: BinVec) -> tuple[int, int]:
    """``(delta, epsilon)`` with ``sigma_a = i^delta (-1)^epsilon tau_a``.

    Each ``Y = -i tau_11`` contributes a factor ``-i``, so with ``y`` the
    number of Y letters, ``sigma_a = (-i)^y tau_a``: ``delta = y mod 2``
    and ``epsilon = 1`` exactly when ``y mod 4`` is 1 or 2.
    """
    n = len(a) // 2
    y = (a[:n] & a[n:]).weight()
    return y & 1, int(y % 4 in (1, 2))


def pauli_mul(p1: PauliElement, p2: PauliElement) -> PauliElement:
    """Product ``p1 p2``.

    ``delta = d1 + d2``, ``epsilon = e1 + e2 + d1 d2 + a2^T U a1`` and
    ``a = a1 + a2``, all modulo 2.
    """
    if p1.n != p2.n:
        raise DimensionError(f"qubit counts differ: {p1.n} vs {p2.n}")
    delta = p1.delta ^ p2.delta
    epsilon = p1.epsilon ^ p2.epsilon ^ (p1.delta & p2.delta) ^ u_form(p2.a, p1.a)
    return PauliElement(p1.a + p2.a, delta, epsilon)


def commutes(a: BinVec, b: BinVec) -> bool:
    """Whether ``tau_a`` and ``tau_b`` commute (``b^T P a = 0``)."""
    if len(a) != len(b):
        raise DimensionError("labels differ in length")
    return p_form(b, a) == 0


def is_hermitian(p: PauliElement) -> bool:
    return p.delta == u_form(p.a, p.a)
