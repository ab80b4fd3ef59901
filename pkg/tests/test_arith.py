import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from spmul import (RandomSource, first_primes, irreducible_poly, is_prime,
                   lambda_coeff, lambda_no_collision, lambda_nonzero,
                   random_prime)
from spmul.arith import canonical_irreducible, is_irreducible

from helpers import Q62, trial_division_primes


class TestIsPrime:
    def test_units_and_small(self):
        assert not is_prime(0)
        assert not is_prime(1)
        assert is_prime(2)
        assert is_prime(41)
        assert not is_prime(42)

    def test_mersenne31_vs_trial_division(self):
        # oracle first: 2^31 - 1 has no prime factor below its square root
        n = 2 ** 31 - 1
        assert all(n % p for p in trial_division_primes(2 ** 16) if p * p <= n)
        assert is_prime(n)

    def test_agrees_with_trial_division_to_3000(self):
        oracle = set(trial_division_primes(3000))
        for n in range(3000):
            assert is_prime(n) == (n in oracle)

    def test_large_inputs(self):
        assert is_prime(Q62)
        assert not is_prime(Q62 * (2 ** 61 - 1))
        assert is_prime(2 ** 89 - 1)  # Mersenne prime above the 2^64 line
        assert not is_prime(2 ** 67 - 1)  # Mersenne composite (Cole)


class TestRandomPrime:
    def test_enumerated_range_lambda_21(self):
        candidates = set(trial_division_primes(42)) - set(trial_division_primes(20))
        assert candidates == {23, 29, 31, 37, 41}
        seen = set()
        for seed in range(60):
            p = random_prime(21, 0.01, RandomSource(seed))
            assert p in candidates
            seen.add(p)
        assert len(seen) > 1  # actually samples

    def test_lambda_2(self):
        for seed in range(10):
            assert random_prime(2, 0.01, RandomSource(seed)) in {2, 3}

    def test_deterministic_under_seed(self):
        a = random_prime(100, 0.01, RandomSource(1234))
        b = random_prime(100, 0.01, RandomSource(1234))
        assert a == b

    def test_many_seeded_draws_always_prime_in_range(self):
        rng = RandomSource(7)
        import random as _random
        size_rnd = _random.Random(77)
        for _ in range(10_000):
            lam = size_rnd.randrange(2, 10 ** 6)
            p = random_prime(lam, 2.0 ** -20, rng)
            assert lam <= p <= 2 * lam
            assert is_prime(p)

    def test_validation(self):
        with pytest.raises(ValueError):
            random_prime(1, 0.5, RandomSource(0))
        with pytest.raises(ValueError):
            random_prime(10, 1.5, RandomSource(0))


class TestFirstPrimes:
    def test_smallest(self):
        assert first_primes(4) == [2, 3, 5, 7]
        assert first_primes(1) == [2]

    def test_hundredth_ends_541(self):
        assert first_primes(100)[-1] == 541

    def test_against_trial_division_oracle(self):
        oracle = trial_division_primes(104730)  # beyond the 10^4-th prime
        assert first_primes(10_000) == oracle[:10_000]

    def test_validation(self):
        with pytest.raises(ValueError):
            first_primes(0)


class TestLambdaFormulas:
    def test_no_collision_anchors(self):
        assert lambda_no_collision(1, 2, 0.5) == 21  # formula value below floor
        assert lambda_no_collision(10, math.e ** 3, 0.5) == 2000
        assert lambda_no_collision(2, math.e, 1 / 3) == 40

    def test_nonzero_anchors(self):
        assert lambda_nonzero(1, 2, 0.5) == 21
        assert lambda_nonzero(10, math.e ** 3, 0.5) == 200
        assert lambda_nonzero(100, math.e, 1 / 3) == 1000

    def test_coeff_anchors(self):
        assert lambda_coeff(1, 0.5) == 21  # ln 1 = 0
        assert lambda_coeff(math.e ** 30, 0.5) == 200
        assert lambda_coeff(math.e ** 3, 1 / 3) == 30

    def test_formula_matches_direct_evaluation(self):
        for T, D, eps in [(3, 17, 0.2), (7, 10 ** 9, 0.01), (40, 2 ** 31, 0.9)]:
            assert lambda_no_collision(T, D, eps) == max(
                21, math.ceil(10.0 * T * T * math.log(D) / (3.0 * eps)))
            assert lambda_nonzero(T, D, eps) == max(
                21, math.ceil(10.0 * T * math.log(D) / (3.0 * eps)))

    @given(st.integers(1, 200), st.integers(2, 10 ** 12),
           st.sampled_from([0.9, 0.5, 0.1, 0.01, 0.001]))
    def test_monotone(self, T, D, eps):
        for fn in (lambda_no_collision, lambda_nonzero):
            assert fn(T + 1, D, eps) >= fn(T, D, eps)
            assert fn(T, D + 1, eps) >= fn(T, D, eps)
            assert fn(T, D, eps / 2) >= fn(T, D, eps)
        assert lambda_coeff(D + 1, eps) >= lambda_coeff(D, eps)
        assert lambda_coeff(D, eps / 2) >= lambda_coeff(D, eps)

    def test_validation(self):
        with pytest.raises(ValueError):
            lambda_no_collision(0, 10, 0.5)
        with pytest.raises(ValueError):
            lambda_no_collision(1, 1, 0.5)
        with pytest.raises(ValueError):
            lambda_coeff(0, 0.5)


class TestIrreduciblePoly:
    def test_unique_quadratic_over_f2(self):
        # enumeration: X^2+X+1 is the only monic irreducible quadratic over F_2
        quadratics = [(c0, c1, 1) for c0 in range(2) for c1 in range(2)]
        irreducible = [f for f in quadratics if is_irreducible(list(f), 2)]
        assert irreducible == [(1, 1, 1)]
        for seed in range(5):
            assert irreducible_poly(2, 2, 0.1, RandomSource(seed)) == (1, 1, 1)

    def test_linear_always_irreducible(self):
        for seed in range(5):
            m = irreducible_poly(3, 1, 0.1, RandomSource(seed))
            assert len(m) == 2 and m[-1] == 1

    def test_degree_3_over_f5_no_roots(self):
        # a cubic is reducible iff it has a root; brute-force root search
        for seed in range(10):
            m = irreducible_poly(5, 3, 0.1, RandomSource(seed))
            assert m[-1] == 1 and len(m) == 4
            for x in range(5):
                assert sum(c * x ** i for i, c in enumerate(m)) % 5 != 0

    def test_no_roots_when_s_at_least_2(self):
        for q, s, seed in [(3, 2, 0), (7, 4, 1), (11, 3, 2), (2, 8, 3)]:
            m = irreducible_poly(q, s, 0.1, RandomSource(seed))
            for x in range(q):
                assert sum(c * pow(x, i, q) for i, c in enumerate(m)) % q != 0

    def test_canonical_is_deterministic_and_irreducible(self):
        assert canonical_irreducible(2, 2) == (1, 1, 1)
        assert canonical_irreducible(3, 1) == (0, 1)  # X itself
        m = canonical_irreducible(3, 2)
        assert m == canonical_irreducible(3, 2)
        assert is_irreducible(list(m), 3)

    def test_validation(self):
        with pytest.raises(ValueError):
            irreducible_poly(4, 2, 0.1, RandomSource(0))
        with pytest.raises(ValueError):
            irreducible_poly(5, 0, 0.1, RandomSource(0))
