"""Independent reference values used to cross-check the cabling route.

Nothing here shares code with the bracket sweep: the unknot values come from
iterating the Chebyshev recursion on ``delta`` directly, and torus knots use
Morton's closed formula. Both are exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .laurent import DELTA, LaurentPolynomial


def unknot_colored_jones(n: int) -> LaurentPolynomial:
    """``(-1)^(n-1) S_(n-1)(delta)`` by the three-term recursion."""
    if n < 1:
        raise ValueError("n must be >= 1")
    prev, cur = LaurentPolynomial.constant(1), DELTA
    if n == 1:
        return prev
    for _ in range(n - 2):
        prev, cur = cur, DELTA * cur - prev
    return cur * (-1 if (n - 1) % 2 else 1)


def divexact(num: LaurentPolynomial, den: LaurentPolynomial) -> LaurentPolynomial:
    """Exact division of Laurent polynomials; raises if there is a remainder."""
    if den.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    rem = dict(num.terms)
    top_e, top_c = den.max_exponent(), den.coeff(den.max_exponent())
    quot: dict[int, int] = {}
    lowest = num.min_exponent() - den.min_exponent() if rem else 0
    while rem:
        e = max(rem)
        shift = e - top_e
        if shift < lowest:
            break
        c, r = divmod(rem[e], top_c)
        if r:
            raise ArithmeticError("inexact division")
        quot[shift] = c
        for de, dc in den:
            key = de + shift
            rem[key] = rem.get(key, 0) - c * dc
            if rem[key] == 0:
                del rem[key]
    if rem:
        raise ArithmeticError("inexact division")
    return LaurentPolynomial(quot)


def torus_colored_jones(a: int, b: int, n: int) -> LaurentPolynomial:
    """Unnormalized ``J(n)`` of the positive torus knot ``T(a, b)`` in ``q = t^(1/4)``.

    Morton's formula, written for the left-handed knot in the variable
    ``s = t^-1``; half-exponents of ``s`` become multiples of 2 in ``q``.
    """
    if gcd(a, b) != 1 or min(abs(a), abs(b)) < 2:
        raise ValueError("torus knot needs coprime a, b with |a|, |b| >= 2")
    if n < 1:
        raise ValueError("n must be >= 1")

    def s_pow(e: Fraction) -> int:
        # s^e = t^-e = q^(-4e)
        val = -4 * e
        if val.denominator != 1:
            raise ArithmeticError("non-integral q exponent")
        return int(val)

    ab = a * b
    acc: dict[int, int] = {}
    half = Fraction(n - 1, 2)
    k = -half
    while k <= half:
        e1 = ab * k * k - (a + b) * k + Fraction(1, 2)
        e2 = ab * k * k - (a - b) * k - Fraction(1, 2)
        for e, c in ((e1, 1), (e2, -1)):
            key = s_pow(e)
            acc[key] = acc.get(key, 0) + c
        k += 1
    total = LaurentPolynomial(acc).shift(s_pow(Fraction(ab * (1 - n * n), 4)))
    # normalized J = total / (s^(n/2) - s^(-n/2)); times [n] gives the unnormalized one
    den = LaurentPolynomial({s_pow(Fraction(1, 2)): 1, s_pow(Fraction(-1, 2)): -1})
    return divexact(total, den)
