"""Exact integer polynomials and cyclotomic polynomial construction.

Coefficients are plain Python ints, stored densely with the constant term
first, so nothing here overflows or rounds.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@dataclass(frozen=True, init=False)
class IntPolynomial:
    """Dense integer polynomial; coeffs[i] multiplies x**i.

    Normalized so the leading coefficient is nonzero; the zero polynomial
    is the empty tuple and has degree -1.
    """

    coeffs: tuple[int, ...]

    def __init__(self, coeffs=()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if self.is_zero or other.is_zero:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] += a * b
        return IntPolynomial(out)

    def __divmod__(self, other: "IntPolynomial"):
        """Long division over the integers.

        Every quotient coefficient must divide exactly (always true for a
        monic divisor); otherwise the division is not defined over Z and a
        ValueError is raised.
        """
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        dd = other.degree
        if self.degree < dd:
            return IntPolynomial(), self
        rem = list(self.coeffs)
        lead = other.coeffs[-1]
        quot = [0] * (self.degree - dd + 1)
        for i in range(self.degree - dd, -1, -1):
            c = rem[i + dd]
            if c == 0:
                continue
            q, r = divmod(c, lead)
            if r:
                raise ValueError("non-exact integer polynomial division")
            quot[i] = q
            for j, oc in enumerate(other.coeffs):
                rem[i + j] -= q * oc
        return IntPolynomial(quot), IntPolynomial(rem)

    def __floordiv__(self, other: "IntPolynomial") -> "IntPolynomial":
        return divmod(self, other)[0]

    def __mod__(self, other: "IntPolynomial") -> "IntPolynomial":
        return divmod(self, other)[1]

    def exact_div(self, other: "IntPolynomial") -> "IntPolynomial":
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ValueError("polynomial division left a remainder")
        return q

    def compose_power(self, e: int) -> "IntPolynomial":
        """Substitute x -> x**e."""
        if e < 1:
            raise ValueError("exponent must be a positive integer")
        if self.is_zero or e == 1:
            return self
        out = [0] * (self.degree * e + 1)
        for i, c in enumerate(self.coeffs):
            out[i * e] = c
        return IntPolynomial(out)

    def evaluate(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                term = str(mag)
            else:
                xs = "x" if i == 1 else f"x^{i}"
                term = xs if mag == 1 else f"{mag}*{xs}"
            parts.append((sign, term))
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, term in parts[1:]:
            text += f" {sign} {term}"
        return text


def x_power_minus_one(n: int) -> IntPolynomial:
    """x**n - 1."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    return IntPolynomial([-1] + [0] * (n - 1) + [1])


@functools.cache
def cyclotomic_poly(n: int) -> IntPolynomial:
    """The n-th cyclotomic polynomial.

    Built by iterated exact division: start from x**n - 1 and divide out
    cyclotomic_poly(d) for every proper divisor d of n. Monic of degree
    phi(n); results are memoized.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    poly = x_power_minus_one(n)
    for d in divisors(n)[:-1]:
        poly = poly.exact_div(cyclotomic_poly(d))
    return poly


def eval_cyclotomic(n: int, x: int) -> int:
    """cyclotomic_poly(n) evaluated at the integer x."""
    return cyclotomic_poly(n).evaluate(x)


def product_identity_holds(n: int, x: int) -> bool:
    """Check prod over d | n of Phi_d(x) == x**n - 1 at the integer x."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    prod = 1
    for d in divisors(n):
        prod *= eval_cyclotomic(d, x)
    return prod == x ** n - 1


def substitution_identity_holds(n: int, p: int, k: int) -> bool:
    """Check the composition identity for Phi_n under x -> x**(p**k).

    For p dividing n:    Phi_{p**k * n}(x) == Phi_n(x**(p**k)).
    For p coprime to n:  Phi_n(x**(p**k)) == Phi_n(x**(p**(k-1))) * Phi_{p**k * n}(x).
    Both sides are expanded as exact polynomials and compared.
    """
    if n < 1 or k < 1 or p < 2:
        raise ValueError("need n >= 1, k >= 1, p >= 2")
    q = p ** k
    base = cyclotomic_poly(n)
    if n % p == 0:
        return cyclotomic_poly(q * n) == base.compose_power(q)
    lhs = base.compose_power(q)
    rhs = base.compose_power(p ** (k - 1)) * cyclotomic_poly(q * n)
    return lhs == rhs
