"""Shared generators and independent oracles for the test suite.

Oracles here deliberately avoid the library code paths they check:
integer polynomial arithmetic is done on plain dicts, modular powers with
the builtin pow, and primality by trial division.
"""

import random

from spmul import SparsePoly, canonicalize, canonicalize_multi


# ---------------------------------------------------------------------------
# independent oracles

def trial_division_primes(limit):
    """All primes <= limit by trial division (no sieve shared with arith)."""
    primes = []
    for n in range(2, limit + 1):
        d = 2
        is_p = True
        while d * d <= n:
            if n % d == 0:
                is_p = False
                break
            d += 1
        if is_p:
            primes.append(n)
    return primes


def dict_mul_z(fa: dict, fb: dict) -> dict:
    """Schoolbook product of integer polynomials as {exponent: coeff} dicts."""
    out = {}
    for e1, c1 in fa.items():
        for e2, c2 in fb.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def dict_mul_ring(fa: dict, fb: dict, ring) -> dict:
    """Schoolbook product over any RingSpec, keyed by exponent (int or tuple)."""
    out = {}
    for e1, c1 in fa.items():
        for e2, c2 in fb.items():
            e = e1 + e2 if isinstance(e1, int) else tuple(a + b for a, b in zip(e1, e2))
            prod = ring.mul(c1, c2)
            out[e] = ring.add(out[e], prod) if e in out else prod
    zero = ring.zero()
    return {e: c for e, c in out.items() if c != zero}


def cyclic_convolve_oracle(a: list, b: list, ring) -> list:
    """O(p^2) schoolbook cyclic convolution."""
    p = len(a)
    out = [ring.zero()] * p
    for i in range(p):
        for j in range(p):
            k = (i + j) % p
            out[k] = ring.add(out[k], ring.mul(a[i], b[j]))
    return out


def eval_oracle_prime_field(terms, alpha: int, q: int) -> int:
    """Evaluation over F_q using builtin pow only."""
    return sum(c * pow(alpha, e, q) for e, c in terms) % q


# ---------------------------------------------------------------------------
# random instances

def rand_sparse(rnd: random.Random, ring, tmax: int, emax: int, cmax: int = None) -> SparsePoly:
    """Random polynomial with between 1 and tmax terms (capped by emax
    distinct exponents)."""
    t = rnd.randint(1, min(tmax, emax))
    terms = {}
    while len(terms) < t:
        e = rnd.randrange(emax)
        if ring.kind == "integers":
            c = rnd.randint(-cmax, cmax)
        elif ring.kind == "prime_field":
            c = rnd.randrange(1, ring.q)
        else:
            c = tuple(rnd.randrange(ring.q) for _ in range(ring.s))
        if c != ring.zero():
            terms[e] = c
    return canonicalize(list(terms.items()), ring)


def rand_multi(rnd: random.Random, ring, nvars: int, tmax: int, dmax: int,
               cmax: int = None):
    t = rnd.randint(1, min(tmax, dmax ** nvars))
    terms = {}
    while len(terms) < t:
        e = tuple(rnd.randrange(dmax) for _ in range(nvars))
        if ring.kind == "integers":
            c = rnd.randint(-cmax, cmax)
        elif ring.kind == "prime_field":
            c = rnd.randrange(1, ring.q)
        else:
            c = tuple(rnd.randrange(ring.q) for _ in range(ring.s))
        if c != ring.zero():
            terms[e] = c
    return canonicalize_multi(list(terms.items()), nvars, ring)


def poly_to_dict(F) -> dict:
    return dict(F.terms)


# a fixed 62-bit prime used across field tests (checked in test_arith)
Q62 = 2305843009213714499
