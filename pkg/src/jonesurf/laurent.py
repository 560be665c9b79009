"""Exact Laurent polynomials in ``q = t^(1/4)`` with integer coefficients.

Every power ``t^(k/4)`` that shows up in brackets and colored Jones
polynomials is an integral power of ``q``, so exponents stay integers.
Degrees reported in ``t`` units are :class:`fractions.Fraction` values with
denominator dividing 4.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

TDegree = Fraction


class LaurentPolynomial:
    """Immutable map ``q-exponent -> nonzero int``."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for e, c in items:
            e = int(e)
            acc[e] = acc.get(e, 0) + int(c)
        self._terms = {e: c for e, c in sorted(acc.items()) if c}

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPolynomial":
        return cls({exponent: coeff})

    @classmethod
    def constant(cls, c: int) -> "LaurentPolynomial":
        return cls({0: c})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def coeff(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def max_exponent(self) -> int:
        if not self._terms:
            raise ValueError("degree of zero polynomial")
        return max(self._terms)

    def min_exponent(self) -> int:
        if not self._terms:
            raise ValueError("degree of zero polynomial")
        return min(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPolynomial.constant(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial({e: -c for e, c in self._terms.items()})

    def __add__(self, other) -> "LaurentPolynomial":
        if isinstance(other, int):
            other = LaurentPolynomial.constant(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return LaurentPolynomial(acc)

    __radd__ = __add__

    def __sub__(self, other) -> "LaurentPolynomial":
        if isinstance(other, int):
            other = LaurentPolynomial.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPolynomial":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPolynomial":
        if isinstance(other, int):
            return LaurentPolynomial({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        acc: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPolynomial":
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials can be inverted")
            (e, c), = self._terms.items()
            if c not in (1, -1):
                raise ValueError("only unit monomials can be inverted")
            return LaurentPolynomial({e * k: c ** -k})
        result = LaurentPolynomial.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by ``q^k``."""
        return LaurentPolynomial({e + k: c for e, c in self._terms.items()})

    def substitute_inverse(self) -> "LaurentPolynomial":
        """``q -> q^-1``."""
        return LaurentPolynomial({-e: c for e, c in self._terms.items()})

    def degrees_t(self) -> tuple[TDegree, TDegree]:
        return degrees_t(self)

    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in sorted(self._terms.items(), reverse=True)}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> "LaurentPolynomial":
        return cls({int(e): int(c) for e, c in data.items()})

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            if e == 0:
                mono = f"{abs(c)}"
            elif abs(c) == 1:
                mono = f"q^{e}"
            else:
                mono = f"{abs(c)}*q^{e}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, mono))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, mono in parts[1:]:
            out += f" {sign} {mono}"
        return out

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self._terms!r})"


ZERO = LaurentPolynomial()
ONE = LaurentPolynomial.constant(1)
Q = LaurentPolynomial.monomial(1)
# value of a closed loop: -(t^(1/2) + t^(-1/2))
DELTA = LaurentPolynomial({2: -1, -2: -1})


def add(p: LaurentPolynomial, r: LaurentPolynomial) -> LaurentPolynomial:
    return p + r


def mul(p: LaurentPolynomial, r: LaurentPolynomial) -> LaurentPolynomial:
    return p * r


def degrees_t(p: LaurentPolynomial) -> tuple[TDegree, TDegree]:
    """Return ``(max, min)`` degree of ``p`` measured in powers of ``t``."""
    if p.is_zero():
        raise ValueError("degree of zero polynomial")
    return Fraction(p.max_exponent(), 4), Fraction(p.min_exponent(), 4)
