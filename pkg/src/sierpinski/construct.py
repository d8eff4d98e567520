"""Compositeness certificates for k*m**n + 1 (and k*m**n - 1) families.

A certificate pins a covering system {a_i(n_i)} and distinct primes p_i
with p_i | m**n_i - 1 and p_i | k*m**a_i +/- 1; together those force a
proper prime divisor of every term k*m**n +/- 1, n >= 1, so k is a
Sierpinski (or Riesel) number base m.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .arith import (
    Congruence,
    FactorBudget,
    crt_solve,
    factorize,
    mod_inverse,
    multiplicative_order,
    prime_verdict,
)
from .covering import CoveringSystem, verify_cover
from .cyclotomic import eval_cyclotomic

SIERPINSKI = "sierpinski"
RIESEL = "riesel"
VARIANT_SIGN = {SIERPINSKI: 1, RIESEL: -1}

NONTRIVIAL = "nontrivial"
MULTIPLE_OF_M_MINUS_1 = "multiple_of_m_minus_1"
CONSTRAINTS = (NONTRIVIAL, MULTIPLE_OF_M_MINUS_1)

# 5-class system for generic bases; the n=2 class needs an odd prime from
# Phi_2(m) = m+1, which does not exist when m+1 is a power of two, so
# those bases use the 13-class system avoiding moduli 1 and 2.
GENERIC_COVER = CoveringSystem.parse("0(2),0(3),1(4),5(6),7(12)")
MERSENNE_COVER = CoveringSystem.parse(
    "2(4),4(8),8(16),8(24),0(48),1(3),5(6),3(12),1(5),7(10),3(15),9(20),15(30)"
)


class NoQualifyingPrime(RuntimeError):
    """No prime factor of Phi_n(m) is coprime to n (within budget)."""


class FactorBudgetExceeded(RuntimeError):
    """A required factorization did not complete within its budget."""


def is_mersenne_like(m: int) -> tuple[bool, int | None]:
    """Whether m + 1 is a power of two; returns (flag, l) with m = 2**l - 1."""
    if m < 2:
        raise ValueError("m must be at least 2")
    if (m + 1) & m == 0:
        return True, (m + 1).bit_length() - 1
    return False, None


def select_cover_prime(m: int, n: int, budget: FactorBudget | None = None) -> int:
    """Smallest prime p | Phi_n(m) with gcd(p, n) = 1.

    Such a p has multiplicative order exactly n mod m, hence for n >= 2
    also gcd(p, m - 1) = 1 (asserted). With an incomplete factorization
    the minimum is only certified when the best candidate lies below the
    trial-division bound (everything hidden in the cofactor is larger).
    """
    if m < 2 or n < 1:
        raise ValueError("need m >= 2 and n >= 1")
    if budget is None:
        budget = FactorBudget.default()
    value = eval_cyclotomic(n, m)
    fac = factorize(value, budget)
    qualifying = [p for p in fac.primes() if math.gcd(p, n) == 1]
    if qualifying:
        p = min(qualifying)
        if fac.is_complete or p < budget.trial_bound:
            if n >= 2:
                assert math.gcd(p, m - 1) == 1, "order-n prime cannot divide m-1"
            return p
    if not fac.is_complete:
        raise FactorBudgetExceeded(
            f"Phi_{n}({m}) = {value} not fully factored within budget"
        )
    raise NoQualifyingPrime(f"no prime factor of Phi_{n}({m}) = {value} is coprime to {n}")


def build_congruences(m: int, cover: CoveringSystem, primes, variant: str) -> list[Congruence]:
    """One congruence per class: p | k*m**a + sign forces k mod p.

    k ≡ -sign * m**(-a) (mod p), least nonnegative residue.
    """
    sign = VARIANT_SIGN[variant]
    primes = list(primes)
    if len(primes) != len(cover.classes):
        raise ValueError("need exactly one prime per covering class")
    if len(set(primes)) != len(primes):
        raise ValueError("primes must be pairwise distinct")
    out = []
    for cls, p in zip(cover.classes, primes):
        inv = mod_inverse(pow(m, cls.residue, p), p)
        out.append(Congruence(-sign * inv % p, p))
    return out


@dataclass(frozen=True)
class SierpinskiCertificate:
    """Machine-checkable witness that k*m**n + sign is composite for all n >= 1."""

    base: int
    k: int
    entries: tuple[tuple[int, int, int], ...]  # (a_i, n_i, p_i)
    variant: str = SIERPINSKI
    triviality_primes: tuple[int, ...] = ()
    multiplier_constraint: str = NONTRIVIAL

    @property
    def cover(self) -> CoveringSystem:
        return CoveringSystem((a, n) for a, n, _ in self.entries)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for _, _, p in self.entries)

    @property
    def sign(self) -> int:
        return VARIANT_SIGN[self.variant]

    def term(self, n: int) -> int:
        return self.k * self.base ** n + self.sign

    def dividing_prime(self, n: int) -> int | None:
        """A certificate prime dividing term(n), if any."""
        for a, mod, p in self.entries:
            if (n - a) % mod == 0 and (self.k * pow(self.base, n, p) + self.sign) % p == 0:
                return p
        return None

    def to_json_dict(self) -> dict:
        return {
            "base": str(self.base),
            "k": str(self.k),
            "variant": self.variant,
            "entries": [
                {"a": a, "n": n, "p": str(p)} for a, n, p in self.entries
            ],
            "constraint": self.multiplier_constraint,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json_dict(cls, doc: dict, budget: FactorBudget | None = None) -> "SierpinskiCertificate":
        """Rebuild from the JSON schema; triviality primes are recomputed
        from base - 1 since the schema does not carry them."""
        base = int(doc["base"])
        fac = factorize(base - 1, budget) if base >= 3 else None
        qs = fac.primes() if fac is not None and fac.is_complete else ()
        return cls(
            base=base,
            k=int(doc["k"]),
            entries=tuple((int(e["a"]), int(e["n"]), int(e["p"])) for e in doc["entries"]),
            variant=doc["variant"],
            triviality_primes=qs,
            multiplier_constraint=doc["constraint"],
        )


def _forbidden_residue(q: int, variant: str) -> int:
    # q | k*m**n + 1 for all n exactly when k ≡ -1 (mod q); mirrored for riesel
    return (q - 1) if variant == SIERPINSKI else 1


def _admissible(k: int, m: int, max_p: int, variant: str, constraint: str, qs) -> bool:
    if k < 1:
        return False
    if k * m + VARIANT_SIGN[variant] <= max_p:
        return False
    if constraint == NONTRIVIAL:
        return all(k % q != _forbidden_residue(q, variant) for q in qs)
    return k % (m - 1) == 0


def _nth_admissible(sol: Congruence, m: int, max_p: int, variant: str, constraint: str, qs, index: int) -> int:
    k = sol.residue
    seen = 0
    while True:
        if _admissible(k, m, max_p, variant, constraint, qs):
            if seen == index:
                return k
            seen += 1
        k += sol.modulus


def construct(
    m: int,
    variant: str = SIERPINSKI,
    multiplier_constraint: str = NONTRIVIAL,
    index: int = 0,
    budget: FactorBudget | None = None,
) -> SierpinskiCertificate:
    """Certificate for the index-th smallest admissible k in base m >= 3.

    Picks the covering system by the m = 2**l - 1 test, selects the
    smallest qualifying prime from each Phi_{n_i}(m), solves the CRT
    system, then walks representatives until the side conditions hold
    (k >= 1, k*m + sign > max p_i, and the multiplier constraint).
    """
    if m < 3:
        raise ValueError("construct needs m >= 3 (base 2 has its own stored certificate)")
    if variant not in VARIANT_SIGN:
        raise ValueError(f"unknown variant {variant!r}")
    if multiplier_constraint not in CONSTRAINTS:
        raise ValueError(f"unknown multiplier constraint {multiplier_constraint!r}")
    if index < 0:
        raise ValueError("index must be nonnegative")
    if budget is None:
        budget = FactorBudget.default()
    mers, _ = is_mersenne_like(m)
    cover = MERSENNE_COVER if mers else GENERIC_COVER
    primes = [select_cover_prime(m, cls.modulus, budget) for cls in cover.classes]
    if len(set(primes)) != len(primes):
        # distinctness follows from distinct multiplicative orders
        raise NoQualifyingPrime(f"cover primes for base {m} are not distinct: {primes}")
    fac = factorize(m - 1, budget)
    if not fac.is_complete:
        raise FactorBudgetExceeded(f"m - 1 = {m - 1} not fully factored within budget")
    qs = fac.primes()
    sol = crt_solve(build_congruences(m, cover, primes, variant))
    k = _nth_admissible(sol, m, max(primes), variant, multiplier_constraint, qs, index)
    return SierpinskiCertificate(
        base=m,
        k=k,
        entries=tuple((cls.residue, cls.modulus, p) for cls, p in zip(cover.classes, primes)),
        variant=variant,
        triviality_primes=qs,
        multiplier_constraint=multiplier_constraint,
    )


_BASE2_K = 78557
_BASE2_PRIMES = (3, 5, 7, 13, 19, 37, 73)


def base2_certificate(index: int = 0) -> SierpinskiCertificate:
    """The classical base-2 certificate family starting at k = 78557.

    Exponents (a_i, n_i) are derived from the stored prime set: n_i is
    the order of 2 mod p_i and a_i the residue with p_i | 78557*2**a_i + 1.
    Adding multiples of prod(p_i) preserves every congruence, so index
    walks an infinite family (m - 1 = 1 leaves no triviality screen).
    """
    if index < 0:
        raise ValueError("index must be nonnegative")
    entries = []
    for p in _BASE2_PRIMES:
        n = multiplicative_order(2, p)
        a = next(a for a in range(n) if (_BASE2_K * pow(2, a, p) + 1) % p == 0)
        entries.append((a, n, p))
    k = _BASE2_K + index * math.prod(_BASE2_PRIMES)
    return SierpinskiCertificate(
        base=2,
        k=k,
        entries=tuple(entries),
        variant=SIERPINSKI,
        triviality_primes=(),
        multiplier_constraint=NONTRIVIAL,
    )


def verify_certificate(cert: SierpinskiCertificate, spot_check_limit: int = 512) -> tuple[bool, str | None]:
    """Check every certificate invariant; (True, None) or (False, reason).

    Order: structure, coverage, primality, p | m**n - 1, the k congruences,
    distinctness, the size condition, triviality-prime bookkeeping, the
    multiplier constraint, then a direct dividing-prime spot check for
    n = 1..spot_check_limit.
    """
    if cert.variant not in VARIANT_SIGN:
        return False, f"unknown variant {cert.variant!r}"
    if cert.multiplier_constraint not in CONSTRAINTS:
        return False, f"unknown multiplier constraint {cert.multiplier_constraint!r}"
    if cert.base < 2:
        return False, f"base {cert.base} is below 2"
    if cert.k < 1:
        return False, f"multiplier {cert.k} is not positive"
    if not cert.entries:
        return False, "certificate has no entries"
    for a, n, p in cert.entries:
        if n < 1 or not 0 <= a < n:
            return False, f"entry ({a},{n},{p}) is not a residue class"
        if p < 2:
            return False, f"entry ({a},{n},{p}) has no prime"
    ok, witness = verify_cover(cert.cover)
    if not ok:
        return False, f"coverage violated (uncovered exponent {witness})"
    m, k, sign = cert.base, cert.k, cert.sign
    for a, n, p in cert.entries:
        if not prime_verdict(p)[0]:
            return False, f"{p} is not prime"
        if pow(m, n, p) != 1:
            return False, f"{p} does not divide {m}^{n} - 1"
        if (k * pow(m, a, p) + sign) % p != 0:
            return False, f"{p} does not divide k*{m}^{a} {'+' if sign > 0 else '-'} 1"
    primes = cert.primes
    if len(set(primes)) != len(primes):
        return False, "certificate primes are not pairwise distinct"
    if k * m + sign <= max(primes):
        return False, f"size condition fails: k*m{'+' if sign > 0 else '-'}1 = {k * m + sign} <= {max(primes)}"
    if cert.base == 2:
        if cert.triviality_primes:
            return False, "base 2 admits no triviality primes"
    else:
        fac = factorize(m - 1)
        if not fac.is_complete:
            return False, f"could not factor m - 1 = {m - 1} to audit triviality primes"
        if tuple(cert.triviality_primes) != fac.primes():
            return False, (
                f"triviality primes {list(cert.triviality_primes)} do not match "
                f"the prime factors {list(fac.primes())} of m - 1"
            )
    if cert.multiplier_constraint == NONTRIVIAL:
        for q in cert.triviality_primes:
            if k % q == _forbidden_residue(q, cert.variant):
                return False, f"k is trivial modulo {q}"
    else:
        if m < 3 or k % (m - 1) != 0:
            return False, f"k = {k} is not a multiple of m - 1 = {m - 1}"
    for n in range(1, spot_check_limit + 1):
        p = cert.dividing_prime(n)
        if p is None:
            return False, f"no certificate prime divides term n = {n}"
        if cert.term(n) <= p:
            return False, f"term n = {n} does not exceed its divisor {p}"
    return True, None
