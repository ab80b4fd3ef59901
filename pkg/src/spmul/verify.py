"""Probabilistic verification that F*G = H (and sum-of-products variants)
in quasi-linear time.

The test never forms the product: it reduces everything modulo X^p - 1
for a random prime p, evaluates the reduced product at a random field
point via a circulant recurrence, and compares against the reduced H.
A true identity always verifies; a false one survives with probability
at most eps.

Over the integers the evaluation is never carried out in Z (values of
size p*log(alpha) would defeat sparsity); a random coefficient prime q
is drawn and everything moves to F_q first.  Over a prime field too
small to supply enough evaluation points, an extension F_{q^s} is built
on the fly; over a small extension field the identity is split into
prime-field component identities instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import RandomSource, irreducible_poly, random_prime
from .errors import RingMismatchError, UnsupportedRingError
from .poly import SparsePoly, cyclic_reduce, eval_sparse, reduce_coeffs_mod_q, scale
from .rings import RingSpec, ext_field, prime_field

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class VerifyParams:
    """Failure-budget split constants for one verification run."""

    eps: float
    c1: float
    c2: float
    c3: float | None = None
    path: str = "generic"

    def validate(self) -> None:
        eps, c1, c2, c3 = self.eps, self.c1, self.c2, self.c3
        slack = 1e-9
        if self.path == "generic":
            ok = c1 > 10 / 3 and c2 > 1 and \
                10 / (3 * c1) + (1 - 10 / (3 * c1)) / c2 <= eps + slack
        elif self.path == "integers":
            ok = c1 >= 10 / 3 and c2 >= 10 / 3 and \
                1 - (1 - 10 / (3 * c1)) * (1 - 10 / (3 * c2)) * (1 - 1 / c2) <= eps + slack
        elif self.path == "extension":
            ok = c3 is not None and \
                1 - (1 - 10 / (3 * c1)) * (1 - 1 / c2) * (1 - 1 / c3) <= eps + slack
        else:
            raise ValueError(f"unknown path {self.path!r}")
        if not ok:
            raise ValueError(f"constants do not meet the eps budget on the {self.path} path")

    @classmethod
    def generic(cls, eps: float) -> "VerifyParams":
        # 10/(3c1) <= eps/2 and (1 - .)/c2 <= eps/2
        p = cls(eps, max(4.0, 20.0 / (3.0 * eps)), max(2.0, 2.0 / eps), None, "generic")
        p.validate()
        return p

    @classmethod
    def for_integers(cls, eps: float) -> "VerifyParams":
        # three failure sources at eps/3, eps/3, eps/10
        p = cls(eps, 10.0 / eps, 10.0 / eps, None, "integers")
        p.validate()
        return p

    @classmethod
    def for_extension(cls, eps: float) -> "VerifyParams":
        # three equal shares: 1 - (1 - eps/3)^3 <= eps
        p = cls(eps, 10.0 / eps, 3.0 / eps, 3.0 / eps, "extension")
        p.validate()
        return p


def eval_cyclic_product(F_p: SparsePoly, G_p: SparsePoly, p: int, alpha):
    """Evaluate [(F_p * G_p) mod X^p - 1] at alpha without forming the product.

    Writing c_j for the degree-j coefficient functional of the cyclic
    product against F_p, the values at the support points of G_p satisfy

        c_j = alpha * c_{j-1} + (1 - alpha^p) * f_{(p-j) mod p},

    seeded with c_0 = F_p(alpha).  Iterating the relation across the gap
    between consecutive support points j_k < j_{k+1} of G_p gives

        c_{j_{k+1}} = alpha^(j_{k+1}-j_k) * c_{j_k}
                      + (1 - alpha^p) * sum_{ell=j_k+1}^{j_{k+1}} alpha^(j_{k+1}-ell) * f_{p-ell},

    in which every nonzero coefficient of F_p is consumed exactly once.
    The answer is sum_k c_{j_k} * g_{j_k}, at O((#F + #G) log p) ring
    multiplications, all charged to the global counter.
    """
    if F_p.ring != G_p.ring:
        raise RingMismatchError("operands live in different rings")
    ring = F_p.ring
    if not ring.is_field:
        raise UnsupportedRingError("cyclic evaluation requires a finite field")
    if p < 1:
        raise ValueError("p must be >= 1")
    if (not F_p.is_zero and F_p.degree >= p) or (not G_p.is_zero and G_p.degree >= p):
        raise ValueError("degrees must be < p")

    zero = ring.zero()
    c = eval_sparse(F_p, alpha)  # c_0
    one_minus_ap = ring.sub(ring.one(), ring.pow(alpha, p))
    # F terms with exponent t > 0 enter window ell = p - t; walk them in
    # increasing ell, i.e. decreasing t.  The t = 0 term lives only in c_0.
    f_desc = [term for term in reversed(F_p.terms) if term[0] > 0]
    idx = 0
    j_prev = 0
    acc = zero
    for j, g_coeff in G_p.terms:
        window = zero
        while idx < len(f_desc):
            t, f_coeff = f_desc[idx]
            ell = p - t
            if ell > j:
                break
            window = ring.add(window, ring.mul(ring.pow(alpha, j - ell), f_coeff))
            idx += 1
        if j > j_prev:
            c = ring.mul(ring.pow(alpha, j - j_prev), c)
        if window != zero:
            c = ring.add(c, ring.mul(one_minus_ap, window))
        acc = ring.add(acc, ring.mul(c, g_coeff))
        j_prev = j
    return acc


def _embed(F: SparsePoly, target: RingSpec) -> SparsePoly:
    # prime-field coefficients into an extension of the same characteristic
    return SparsePoly(target, tuple((e, target.coerce(c)) for e, c in F.terms))


def _split_ext_identity(pairs, H: SparsePoly, eps: float, rng: RandomSource) -> bool:
    """Check sum F_i*G_i = H over a small F_{q^s} by component checks.

    Writing elements as polynomials in Y over F_q, the identity holds iff
    for every j < s the prime-field identity

        sum_i sum_{k,l} lambda[k+l][j] * (F_i)_k * (G_i)_l = H_j

    holds, where lambda[d][j] is the Y^j coordinate of Y^d mod m.  Each
    component is tested with the full eps budget: true components never
    fail, and a false overall identity is false in some component, which
    then rejects with probability >= 1 - eps.
    """
    ring = H.ring
    q, s, modulus = ring.q, ring.s, ring.modulus
    fq = prime_field(q)

    # lambda rows: Y^d mod m for d = 0 .. 2s-2, little-endian over F_q
    rows = []
    cur = [1] + [0] * (s - 1)
    rows.append(list(cur))
    for _ in range(1, 2 * s - 1):
        carry = cur[-1]
        cur = [0] + cur[:-1]
        if carry:
            for j in range(s):
                if modulus[j]:
                    cur[j] = (cur[j] - carry * modulus[j]) % q
        rows.append(list(cur))

    def components(P):
        return [SparsePoly(fq, tuple((e, c[k]) for e, c in P.terms if c[k]))
                for k in range(s)]

    split_pairs = [(components(F), components(G)) for F, G in pairs]
    h_parts = components(H)
    for j in range(s):
        sum_pairs = []
        for f_parts, g_parts in split_pairs:
            for k, f_k in enumerate(f_parts):
                if f_k.is_zero:
                    continue
                for l, g_l in enumerate(g_parts):
                    lam = rows[k + l][j]
                    if lam and not g_l.is_zero:
                        sum_pairs.append((scale(f_k, lam), g_l))
        if not sum_pairs:
            if not h_parts[j].is_zero:
                return False
            continue
        if not verify_sum_sp(h_parts[j], sum_pairs, eps, rng):
            return False
    return True


def _delta_height_bound(pairs, H: SparsePoly) -> int:
    # rigorous bound on || sum F_i G_i - H ||_inf over Z
    total = H.height()
    for F, G in pairs:
        total += min(F.sparsity, G.sparsity) * F.height() * G.height()
    return max(total, 1)


def _modular_check(pairs, H: SparsePoly, D, sparsity_sum: int, eps: float,
                   rng: RandomSource) -> bool:
    """Shared evaluation core: True iff sum F_i G_i and H evaluate equally
    modulo X^p - 1 at a random point of a large-enough field."""
    ring = H.ring
    ln_d = math.log(max(D, 2))

    if ring.kind == "integers":
        params = VerifyParams.for_integers(eps)
        lam = max(21, math.ceil(params.c1 * sparsity_sum * ln_d))
        p = random_prime(lam, 5.0 / (3.0 * params.c1), rng)
        # ln of the height bound via bit length; overestimating is safe
        ln_height = _delta_height_bound(pairs, H).bit_length() * _LN2
        mu = math.ceil(params.c2 * max(p, math.ceil(ln_height)))
        q = random_prime(mu, 5.0 / (3.0 * params.c2), rng)
        red_pairs = [(reduce_coeffs_mod_q(cyclic_reduce(F, p), q),
                      reduce_coeffs_mod_q(cyclic_reduce(G, p), q)) for F, G in pairs]
        H_p = reduce_coeffs_mod_q(cyclic_reduce(H, p), q)
        eval_ring = H_p.ring
        alpha = eval_ring.rand_elem(rng)
        lhs = eval_ring.zero()
        for F_p, G_p in red_pairs:
            lhs = eval_ring.add(lhs, eval_cyclic_product(F_p, G_p, p, alpha))
        return lhs == eval_sparse(H_p, alpha)

    params = VerifyParams.generic(eps)
    lam = max(21, math.ceil(params.c1 * sparsity_sum * ln_d))
    if ring.size > params.c2 * (2 * lam):
        # the field itself has more than c2*p points for every possible p
        p = random_prime(lam, 5.0 / (3.0 * params.c1), rng)
        eval_ring = ring
        embed = False
    else:
        if ring.kind == "ext_field":
            # no tower extensions: split into prime-field component checks
            return _split_ext_identity(pairs, H, eps, rng)
        params = VerifyParams.for_extension(eps)
        lam = max(21, math.ceil(params.c1 * sparsity_sum * ln_d))
        p = random_prime(lam, 5.0 / (3.0 * params.c1), rng)
        s = 1
        while ring.q ** s <= params.c2 * p:
            s += 1
        if s == 1:
            eval_ring = ring
            embed = False
        else:
            modulus = irreducible_poly(ring.q, s, 1.0 / params.c3, rng)
            eval_ring = ext_field(ring.q, s, modulus)
            embed = True

    alpha = eval_ring.rand_elem(rng)
    lhs = eval_ring.zero()
    for F, G in pairs:
        F_p = cyclic_reduce(F, p)
        G_p = cyclic_reduce(G, p)
        if embed:
            F_p = _embed(F_p, eval_ring)
            G_p = _embed(G_p, eval_ring)
        lhs = eval_ring.add(lhs, eval_cyclic_product(F_p, G_p, p, alpha))
    H_p = cyclic_reduce(H, p)
    if embed:
        H_p = _embed(H_p, eval_ring)
    return lhs == eval_sparse(H_p, alpha)


def verify_sp(F: SparsePoly, G: SparsePoly, H: SparsePoly, eps: float,
              rng: RandomSource) -> bool:
    """Test whether F*G = H.

    Always True when the identity holds; False with probability at least
    1 - eps otherwise.  Works over Z, F_q, and F_{q^s} (any characteristic).
    """
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie in (0, 1)")
    if F.ring != G.ring or F.ring != H.ring:
        raise RingMismatchError("operands live in different rings")
    if F.is_zero or G.is_zero:
        return H.is_zero
    # cheap structural rejects; afterwards deg H bounds every degree
    if H.sparsity > F.sparsity * G.sparsity:
        return False
    if H.degree != F.degree + G.degree:
        return False
    sparsity_sum = F.sparsity * G.sparsity + H.sparsity
    return _modular_check([(F, G)], H, H.degree, sparsity_sum, eps, rng)


def verify_sum_sp(H: SparsePoly, pairs, eps: float, rng: RandomSource) -> bool:
    """Test whether sum_i F_i*G_i = H; same guarantees as verify_sp."""
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie in (0, 1)")
    if not pairs:
        raise ValueError("pairs must be nonempty")
    for F, G in pairs:
        if F.ring != H.ring or G.ring != H.ring:
            raise RingMismatchError("operands live in different rings")
    live = [(F, G) for F, G in pairs if not F.is_zero and not G.is_zero]
    if not live:
        return H.is_zero
    D = max(F.degree + G.degree for F, G in live)
    if not H.is_zero:
        D = max(D, H.degree)
    sparsity_sum = sum(F.sparsity * G.sparsity for F, G in live) + H.sparsity
    return _modular_check(live, H, D, sparsity_sum, eps, rng)
