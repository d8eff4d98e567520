"""Primality, factorization, CRT, and order tests against sieve/sympy oracles."""

import math
import random

import numpy as np
import pytest
import sympy

from sierpinski.arith import (
    Congruence,
    FactorBudget,
    Factorization,
    ModuliNotCoprime,
    NotCoprime,
    crt_solve,
    factorize,
    is_prime,
    mod_inverse,
    multiplicative_order,
    prime_verdict,
)


def sieve(limit):
    flags = np.ones(limit, dtype=bool)
    flags[:2] = False
    for p in range(2, int(limit ** 0.5) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return flags


class TestPrimeVerdict:
    def test_small_values(self):
        assert prime_verdict(0) == (False, "proven")
        assert prime_verdict(1) == (False, "proven")
        assert prime_verdict(2) == (True, "proven")
        assert prime_verdict(35) == (False, "proven")
        assert prime_verdict(103) == (True, "proven")
        assert prime_verdict(137) == (True, "proven")
        assert prime_verdict(1336337) == (True, "proven")
        with pytest.raises(ValueError):
            prime_verdict(-7)

    def test_agrees_with_sieve(self):
        flags = sieve(100_000)
        for x in range(100_000):
            assert is_prime(x) == bool(flags[x]), x

    def test_agrees_with_sympy_sampled(self):
        rng = random.Random(20260814)
        for _ in range(3000):
            x = rng.randrange(2, 10 ** 7)
            assert is_prime(x) == sympy.isprime(x), x
        for _ in range(300):
            x = rng.randrange(2 ** 60, 2 ** 64)
            assert is_prime(x) == sympy.isprime(x), x

    def test_strong_pseudoprimes_are_caught(self):
        # strong pseudoprimes to several fixed bases, and Carmichael numbers
        for x in (561, 41041, 3215031751, 341550071728321, 3825123056546413051):
            assert prime_verdict(x) == (False, "proven"), x

    def test_certainty_labels(self):
        # below 2^64 the witness set is deterministic
        assert prime_verdict(2 ** 61 - 1) == (True, "proven")
        # above, prime verdicts are only probable
        assert prime_verdict(2 ** 89 - 1) == (True, "probable")
        assert prime_verdict(2 ** 101 - 1) == (False, "proven")

    def test_deterministic_for_seed(self):
        x = 2 ** 89 - 1
        assert prime_verdict(x, seed=5) == prime_verdict(x, seed=5)

    def test_large_prime_square_is_composite(self):
        p = 618970019642690137449562111  # 2^89 - 1
        assert prime_verdict(p * p)[0] is False


class TestFactorize:
    def test_examples(self):
        f = factorize(1155)
        assert f.factors == ((3, 1, "proven"), (5, 1, "proven"), (7, 1, "proven"), (11, 1, "proven"))
        assert f.is_complete
        assert factorize(1) == Factorization(1, (), 1)
        assert factorize(2 ** 10).factors == ((2, 10, "proven"),)
        assert factorize(16003).factors == ((13, 1, "proven"), (1231, 1, "proven"))
        with pytest.raises(ValueError):
            factorize(0)

    def test_reassembly_sweep(self):
        rng = random.Random(99)
        budget = FactorBudget(trial_bound=1000, rho_steps=500_000)
        for _ in range(400):
            x = rng.randrange(2, 2 ** 48)
            f = factorize(x, budget)
            assert f.reassemble() == x
            assert f.is_complete, x
            assert list(f.primes()) == sorted(f.primes())
            for p, e, certainty in f.factors:
                assert sympy.isprime(p)
                assert e >= 1
                assert certainty == "proven"

    def test_factors_big_semiprime(self):
        p, q = 1000003, 1000033
        f = factorize(p * q)
        assert f.primes() == (p, q)
        assert f.is_complete

    def test_budget_exhaustion_leaves_cofactor(self):
        p, q = 1000003, 1000033
        f = factorize(p * q, FactorBudget(trial_bound=1000, rho_steps=0))
        assert not f.is_complete
        assert f.cofactor == p * q
        assert f.factors == ()
        assert f.reassemble() == p * q

    def test_partial_factors_with_exhausted_budget(self):
        p, q = 1000003, 1000033
        f = factorize(12 * p * q, FactorBudget(trial_bound=1000, rho_steps=0))
        assert f.factors == ((2, 2, "proven"), (3, 1, "proven"))
        assert f.cofactor == p * q
        assert f.reassemble() == 12 * p * q

    def test_trial_bound_is_honored_upward(self):
        # all prime factors under the bound: completes with no rho work
        f = factorize(2 ** 4 * 3 * 65537, FactorBudget(trial_bound=100_000, rho_steps=0))
        assert f.is_complete
        assert f.primes() == (2, 3, 65537)


class TestCrt:
    def test_examples(self):
        sol = crt_solve([Congruence(4, 5), Congruence(1, 7)])
        assert (sol.residue, sol.modulus) == (29, 35)
        sol = crt_solve([Congruence(6, 35)])
        assert (sol.residue, sol.modulus) == (6, 35)
        sol = crt_solve([])
        assert (sol.residue, sol.modulus) == (0, 1)
        sol = crt_solve([Congruence(0, 1), Congruence(3, 7)])
        assert (sol.residue, sol.modulus) == (3, 7)

    def test_rejects_shared_factor(self):
        with pytest.raises(ModuliNotCoprime, match="4 and 6"):
            crt_solve([Congruence(1, 4), Congruence(3, 6)])

    def test_minimality_by_scan(self):
        rng = random.Random(3)
        for _ in range(60):
            moduli = []
            m = 1
            for candidate in rng.sample([2, 3, 5, 7, 11, 13], rng.randrange(1, 4)):
                moduli.append(candidate)
                m *= candidate
            congruences = [Congruence(rng.randrange(n), n) for n in moduli]
            sol = crt_solve(congruences)
            assert sol.modulus == m
            matches = [
                x for x in range(m)
                if all((x - c.residue) % c.modulus == 0 for c in congruences)
            ]
            assert matches == [sol.residue]

    def test_congruence_normalizes(self):
        assert Congruence(-1, 5).residue == 4
        assert Congruence(12, 5).residue == 2
        assert str(Congruence(29, 35)) == "29 (mod 35)"
        with pytest.raises(ValueError):
            Congruence(1, 0)


class TestModInverse:
    def test_examples(self):
        assert mod_inverse(34, 7) == 6
        assert mod_inverse(1, 1) == 0
        with pytest.raises(NotCoprime):
            mod_inverse(4, 6)

    def test_random_property(self):
        rng = random.Random(8)
        for _ in range(300):
            n = rng.randrange(2, 10 ** 6)
            a = rng.randrange(1, n)
            if math.gcd(a, n) != 1:
                with pytest.raises(NotCoprime):
                    mod_inverse(a, n)
            else:
                assert a * mod_inverse(a, n) % n == 1


class TestMultiplicativeOrder:
    def test_examples(self):
        assert multiplicative_order(34, 5) == 2
        assert multiplicative_order(127, 13) == 6
        assert multiplicative_order(2, 7) == 3
        assert multiplicative_order(3, 2) == 1
        with pytest.raises(NotCoprime):
            multiplicative_order(10, 5)

    def test_matches_sympy_and_divides_group_order(self):
        rng = random.Random(17)
        primes = [int(sympy.prime(rng.randrange(2, 2000))) for _ in range(60)]
        for p in primes:
            m = rng.randrange(2, 10 ** 6)
            if m % p == 0:
                m += 1
            order = multiplicative_order(m, p)
            assert order == sympy.n_order(m, p)
            assert (p - 1) % order == 0
            assert pow(m, order, p) == 1
            for q in sympy.primefactors(order):
                assert pow(m, order // q, p) != 1


def test_factor_bound_env_override(monkeypatch):
    monkeypatch.setenv("SIERPINSKI_FACTOR_BOUND", "500")
    assert FactorBudget.default().trial_bound == 500
    monkeypatch.delenv("SIERPINSKI_FACTOR_BOUND")
    assert FactorBudget.default().trial_bound == 100_000
