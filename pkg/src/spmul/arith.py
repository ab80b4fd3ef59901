"""Primality, prime generation, cyclic-prime sizing formulas, and
irreducible polynomials over prime fields.

Everything here is deterministic given its inputs and, where applicable,
an explicit :class:`RandomSource`.  Dense polynomials over F_q appearing
in this module are little-endian coefficient lists of Python ints.
"""

from __future__ import annotations

import math
import random

from .errors import RetryBudgetError


class RandomSource:
    """Seedable deterministic randomness handle.

    Identical seeds yield identical outcomes across runs and platforms.
    A single instance must not be shared between concurrent calls.
    """

    def __init__(self, seed: int = 0):
        self.seed = int(seed)
        self._rng = random.Random(self.seed)

    def randrange(self, n: int) -> int:
        return self._rng.randrange(n)

    def randint(self, a: int, b: int) -> int:
        return self._rng.randint(a, b)

    def __repr__(self) -> str:
        return f"RandomSource(seed={self.seed})"


# ---------------------------------------------------------------------------
# primality

_TRIAL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
                 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)

# Witnesses proven deterministic for n < 3,317,044,064,679,887,385,961,981
# (Sorenson & Webster), which covers the 2^64 requirement with a lot of room.
_DET_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_DET_LIMIT = 3317044064679887385961981

# 40 rounds give error <= 4^-40 <= 2^-80 beyond the deterministic range.
_MR_ROUNDS = 40


def _mr_composite(n: int, a: int, d: int, r: int) -> bool:
    # True if a certifies n composite; n-1 = d * 2^r with d odd.
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def is_prime(n: int) -> bool:
    """Primality test: exact below ~3.3e24, Miller-Rabin with error
    <= 2^-80 above (witnesses derived deterministically from n)."""
    if n < 2:
        return False
    for p in _TRIAL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n < 101 * 101:
        return True
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    if n < _DET_LIMIT:
        witnesses = _DET_WITNESSES
    else:
        wrng = random.Random(n)
        witnesses = tuple(wrng.randrange(2, n - 1) for _ in range(_MR_ROUNDS))
    return not any(_mr_composite(n, a, d, r) for a in witnesses)


def random_prime(lam: int, eps: float, rng: RandomSource) -> int:
    """Return a prime p in [lam, 2*lam].

    Samples uniform odd candidates and tests each with :func:`is_prime`,
    whose error is far below any eps used here.  The retry budget is
    64*ceil(log2 lam) candidates; exhausting it raises
    :class:`RetryBudgetError` (it signals a pathological RNG, not a
    caller bug).
    """
    lam = int(lam)
    if lam < 2:
        raise ValueError("lam must be >= 2")
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie in (0, 1)")
    first_odd = lam | 1
    count = (2 * lam - first_odd) // 2 + 1
    budget = 64 * max(1, (lam - 1).bit_length())
    for _ in range(budget):
        candidate = first_odd + 2 * rng.randrange(count)
        if is_prime(candidate):
            return candidate
    raise RetryBudgetError(f"no prime found in [{lam}, {2 * lam}] after {budget} draws")


# ---------------------------------------------------------------------------
# prime list (cached, extended by segmented sieving, never rebuilt)

_PRIMES: list[int] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61]
_SIEVED_TO = 61


def _extend_sieve(limit: int) -> None:
    global _SIEVED_TO
    if limit <= _SIEVED_TO:
        return
    root = math.isqrt(limit)
    if root > _SIEVED_TO:
        _extend_sieve(root)
    lo = _SIEVED_TO + 1
    seg = bytearray(b"\x01") * (limit - lo + 1)
    for p in _PRIMES:
        if p * p > limit:
            break
        start = max(p * p, ((lo + p - 1) // p) * p)
        seg[start - lo::p] = bytes(len(range(start - lo, len(seg), p)))
    _PRIMES.extend(i + lo for i, flag in enumerate(seg) if flag)
    _SIEVED_TO = limit


def first_primes(count: int) -> list[int]:
    """The first `count` primes in increasing order."""
    count = int(count)
    if count < 1:
        raise ValueError("count must be >= 1")
    if len(_PRIMES) < count:
        if count < 6:
            bound = 16
        else:
            # upper bound on the n-th prime for n >= 6 (Rosser)
            bound = int(count * (math.log(count) + math.log(math.log(count)))) + 16
        _extend_sieve(max(bound, 2 * _SIEVED_TO))
        while len(_PRIMES) < count:
            _extend_sieve(2 * _SIEVED_TO)
    return _PRIMES[:count]


# ---------------------------------------------------------------------------
# cyclic-prime sizing formulas

def _check_lambda_args(T: int, D, eps: float) -> None:
    if T < 1:
        raise ValueError("T must be >= 1")
    if D < 2:
        raise ValueError("D must be >= 2")
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie in (0, 1)")


def lambda_no_collision(T: int, D, eps: float) -> int:
    """Sampling bound so a random prime in [lambda, 2*lambda] keeps all
    exponents of a T-sparse, degree-<=D polynomial distinct mod p with
    probability >= 1 - eps."""
    _check_lambda_args(T, D, eps)
    # multiply before dividing: keeps the clean-ratio cases float-exact
    return max(21, math.ceil(10.0 * T * T * math.log(D) / (3.0 * eps)))


def lambda_nonzero(T: int, D, eps: float) -> int:
    """Sampling bound so a nonzero T-sparse polynomial stays nonzero
    mod X^p - 1 with probability >= 1 - eps."""
    _check_lambda_args(T, D, eps)
    return max(21, math.ceil(10.0 * T * math.log(D) / (3.0 * eps)))


def lambda_coeff(height, eps: float) -> int:
    """Sampling bound so a random prime misses a fixed nonzero integer
    of absolute value <= height with probability >= 1 - eps."""
    if height < 1:
        raise ValueError("height must be >= 1")
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie in (0, 1)")
    return max(21, math.ceil(10.0 * math.log(height) / (3.0 * eps)))


# ---------------------------------------------------------------------------
# dense polynomials over F_q (little-endian int lists), used for
# irreducibility testing and extension-field plumbing

def _fq_trim(v: list[int]) -> list[int]:
    while v and v[-1] == 0:
        v.pop()
    return v


def _fq_deg(v: list[int]) -> int:
    return len(v) - 1


def _fq_sub(a: list[int], b: list[int], q: int) -> list[int]:
    n = max(len(a), len(b))
    out = [0] * n
    for i in range(n):
        ai = a[i] if i < len(a) else 0
        bi = b[i] if i < len(b) else 0
        out[i] = (ai - bi) % q
    return _fq_trim(out)


def _fq_mul(a: list[int], b: list[int], q: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _fq_trim([v % q for v in out])


def _fq_rem_monic(a: list[int], m: list[int], q: int) -> list[int]:
    # remainder of a by monic m
    r = list(a)
    dm = len(m) - 1
    for i in range(len(r) - 1, dm - 1, -1):
        c = r[i] % q
        if c:
            base = i - dm
            for j in range(dm):
                if m[j]:
                    r[base + j] -= c * m[j]
        r[i] = 0
    return _fq_trim([v % q for v in r[:dm]])


def _fq_divmod(a: list[int], b: list[int], q: int) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    r = [v % q for v in a]
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], _fq_trim(r)
    inv_lead = pow(b[-1], q - 2, q)
    quo = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i] % q
        if c:
            c = c * inv_lead % q
            quo[i - db] = c
            for j in range(db + 1):
                r[i - db + j] = (r[i - db + j] - c * b[j]) % q
    return _fq_trim(quo), _fq_trim(r)


def _fq_gcd(a: list[int], b: list[int], q: int) -> list[int]:
    a, b = _fq_trim([v % q for v in a]), _fq_trim([v % q for v in b])
    while b:
        a, b = b, _fq_divmod(a, b, q)[1]
    if a:
        inv_lead = pow(a[-1], q - 2, q)
        a = [v * inv_lead % q for v in a]
    return a


def _fq_gcdext(a: list[int], b: list[int], q: int) -> tuple[list[int], list[int]]:
    # returns (g, u) with u*a = g mod b, g = gcd(a, b) made monic
    r0, r1 = _fq_trim([v % q for v in a]), _fq_trim([v % q for v in b])
    u0, u1 = [1], []
    while r1:
        quo, rem = _fq_divmod(r0, r1, q)
        r0, r1 = r1, rem
        u0, u1 = u1, _fq_sub(u0, _fq_mul(quo, u1, q), q)
    if r0:
        inv_lead = pow(r0[-1], q - 2, q)
        r0 = [v * inv_lead % q for v in r0]
        u0 = [v * inv_lead % q for v in u0]
    return r0, u0


def _fq_powmod(base: list[int], e: int, m: list[int], q: int) -> list[int]:
    result = [1]
    b = _fq_rem_monic(base, m, q)
    while e:
        if e & 1:
            result = _fq_rem_monic(_fq_mul(result, b, q), m, q)
        e >>= 1
        if e:
            b = _fq_rem_monic(_fq_mul(b, b, q), m, q)
    return result


def is_irreducible(coeffs, q: int) -> bool:
    """Deterministic irreducibility test for a polynomial over F_q.

    A degree-s polynomial is irreducible iff it shares no factor with
    X^(q^i) - X for any i <= s/2 (every factor of degree i divides that
    binomial; a degree-s polynomial whose factors all exceed degree s/2
    must itself be irreducible).
    """
    f = _fq_trim([c % q for c in coeffs])
    s = _fq_deg(f)
    if s <= 0:
        return False
    if s == 1:
        return True
    if f[-1] != 1:
        inv_lead = pow(f[-1], q - 2, q)
        f = [v * inv_lead % q for v in f]
    x = [0, 1]
    xqi = x
    for _ in range(s // 2):
        xqi = _fq_powmod(xqi, q, f, q)
        g = _fq_gcd(f, _fq_sub(xqi, x, q), q)
        if _fq_deg(g) >= 1:
            return False
    return True


def irreducible_poly(q: int, s: int, eps: float, rng: RandomSource) -> tuple[int, ...]:
    """Random monic irreducible polynomial of degree s over F_q,
    little-endian coefficient tuple of length s+1.

    Candidates are uniform random monic polynomials checked with the
    deterministic test, so the output is always irreducible; eps only
    sizes the retry budget.
    """
    if not is_prime(q):
        raise ValueError("q must be prime")
    if s < 1:
        raise ValueError("s must be >= 1")
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie in (0, 1)")
    budget = max(32, math.ceil(2 * s * math.log(2.0 / eps)))
    for _ in range(budget):
        coeffs = [rng.randrange(q) for _ in range(s)] + [1]
        if is_irreducible(coeffs, q):
            return tuple(coeffs)
    raise RetryBudgetError(f"no irreducible of degree {s} over F_{q} after {budget} draws")


def canonical_irreducible(q: int, s: int) -> tuple[int, ...]:
    """The lexicographically smallest monic irreducible of degree s over
    F_q (low coefficients read little-endian as a base-q integer).

    Deterministic; used as the file-format convention for extension
    fields, whose headers carry only q and s.
    """
    if not is_prime(q):
        raise ValueError("q must be prime")
    if s < 1:
        raise ValueError("s must be >= 1")
    k = 0
    limit = q ** s
    while k < limit:
        digits = []
        v = k
        for _ in range(s):
            v, d = divmod(v, q)
            digits.append(d)
        coeffs = digits + [1]
        if is_irreducible(coeffs, q):
            return tuple(coeffs)
        k += 1
    raise RuntimeError("unreachable: monic irreducibles exist for every degree")
