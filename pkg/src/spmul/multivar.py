"""Multivariate sparse polynomials: Kronecker substitution, randomized
substitution, sparsity estimation, and products over any characteristic.

Classical Kronecker substitution encodes an exponent vector as base-d
digits of one univariate exponent, turning a multivariate product into a
univariate one without changing sparsity or height.  Randomized
substitution x_i -> X^(s_i) trades injectivity for much smaller degrees;
taking the max observed sparsity over a few random substitutions brackets
the true sparsity of the product, which is what interpolation needs.
Small characteristic is handled by lifting coefficients to Z, multiplying
there, and reducing back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import RandomSource, _fq_rem_monic
from .errors import RingMismatchError, UnsupportedRingError
from .poly import SparsePoly, canonicalize
from .product import ProductParams, sparse_product
from .rings import RingSpec, integers


@dataclass(frozen=True)
class MultiPoly:
    """Canonical multivariate sparse polynomial.

    terms hold (exponent vector, coefficient) pairs in strictly
    increasing lexicographic order with no zero coefficients.
    """

    ring: RingSpec
    nvars: int
    terms: tuple  # ((exps, coeff), ...)

    @property
    def sparsity(self) -> int:
        return len(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def var_degree(self, i: int) -> int:
        """Max exponent of variable i (0 for the zero polynomial)."""
        return max((e[i] for e, _ in self.terms), default=0)

    def total_degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=0)


def canonicalize_multi(terms, nvars: int, ring: RingSpec) -> MultiPoly:
    """Merge duplicate exponent vectors, drop zeros, sort lexicographically."""
    if nvars < 1:
        raise ValueError("nvars must be >= 1")
    acc: dict = {}
    for exps, c in terms:
        exps = tuple(int(v) for v in exps)
        if len(exps) != nvars:
            raise ValueError("exponent vector has wrong length")
        if any(v < 0 for v in exps):
            raise ValueError("exponents must be nonnegative")
        c = ring.coerce(c)
        if exps in acc:
            acc[exps] = ring.add(acc[exps], c)
        else:
            acc[exps] = c
    zero = ring.zero()
    return MultiPoly(ring, nvars, tuple(sorted((e, c) for e, c in acc.items() if c != zero)))


def zero_multi(ring: RingSpec, nvars: int) -> MultiPoly:
    return MultiPoly(ring, nvars, ())


def from_univariate(F: SparsePoly) -> MultiPoly:
    return MultiPoly(F.ring, 1, tuple(((e,), c) for e, c in F.terms))


def to_univariate(F: MultiPoly) -> SparsePoly:
    if F.nvars != 1:
        raise ValueError("only single-variable polynomials convert")
    return SparsePoly(F.ring, tuple((e[0], c) for e, c in F.terms))


def naive_mul_multi(F: MultiPoly, G: MultiPoly) -> MultiPoly:
    """Schoolbook multivariate product; exact reference path."""
    if F.ring != G.ring or F.nvars != G.nvars:
        raise RingMismatchError("operands must share ring and variables")
    ring = F.ring
    acc: dict = {}
    for e1, c1 in F.terms:
        for e2, c2 in G.terms:
            e = tuple(a + b for a, b in zip(e1, e2))
            c = ring.mul(c1, c2)
            if e in acc:
                acc[e] = ring.add(acc[e], c)
            else:
                acc[e] = c
    zero = ring.zero()
    return MultiPoly(ring, F.nvars, tuple(sorted((e, c) for e, c in acc.items() if c != zero)))


def kronecker(F: MultiPoly, d: int) -> SparsePoly:
    """Encode exponent vectors as base-d digits of one exponent.

    Injective on (and invertible from) exponents with all partial degrees
    below d; preserves sparsity and height.
    """
    if any(F.var_degree(i) >= d for i in range(F.nvars)):
        raise ValueError("partial degree >= d")
    weights = [d ** i for i in range(F.nvars)]
    return SparsePoly(F.ring, tuple(sorted(
        (sum(e * w for e, w in zip(exps, weights)), c) for exps, c in F.terms)))


def inverse_kronecker(H: SparsePoly, d: int, n: int) -> MultiPoly:
    """Decode base-d digits back into exponent vectors."""
    if not H.is_zero and H.degree >= d ** n:
        raise ValueError("exponent >= d^n")
    out = []
    for e, c in H.terms:
        exps = []
        v = e
        for _ in range(n):
            v, r = divmod(v, d)
            exps.append(r)
        out.append((tuple(exps), c))
    return MultiPoly(H.ring, n, tuple(sorted(out)))


def randomized_kronecker(F: MultiPoly, s_vec) -> SparsePoly:
    """Substitute x_i -> X^(s_i); colliding images merge, so the result
    has at most #F terms."""
    s_vec = tuple(int(v) for v in s_vec)
    if len(s_vec) != F.nvars:
        raise ValueError("substitution vector has wrong length")
    return canonicalize(
        [(sum(e * s for e, s in zip(exps, s_vec)), c) for exps, c in F.terms], F.ring)


def sparsity_estimate(F: MultiPoly, G: MultiPoly, eps: float, lam,
                      rng: RandomSource) -> int:
    """Estimate #(F*G) within a factor lam.

    The return value never exceeds lam * #(FG); it is at least #(FG) with
    probability >= 1 - eps.  Over F_{q^s} the field must satisfy
    q >= 4*D*#F*#G / (1 - 1/lam) with D = max total degree, so the
    substituted products stay interpolable.
    """
    if F.ring != G.ring or F.nvars != G.nvars:
        raise RingMismatchError("operands must share ring and variables")
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie in (0, 1)")
    if not lam > 1:
        raise ValueError("lam must exceed 1")
    if F.is_zero or G.is_zero:
        return 0
    ring = F.ring
    nfng = F.sparsity * G.sparsity
    d_max = max(F.total_degree(), G.total_degree())
    if ring.is_field and ring.q < 4.0 * max(d_max, 1) * nfng / (1.0 - 1.0 / lam):
        raise UnsupportedRingError("field too small for sparsity estimation")
    n_box = max(1, math.ceil(2.0 * (nfng - 1) / (1.0 - 1.0 / lam)))
    ell = math.ceil(math.log2(2.0 / eps))
    mu = eps / (4.0 * ell)
    params = ProductParams(mu, mu)
    best = 0
    for _ in range(ell):
        s_vec = tuple(rng.randrange(n_box) for _ in range(F.nvars))
        h_s = sparse_product(randomized_kronecker(F, s_vec),
                             randomized_kronecker(G, s_vec), params, rng)
        best = max(best, h_s.sparsity)
    return math.ceil(lam * best)


def multivar_product_z(F: MultiPoly, G: MultiPoly, eps: float,
                       rng: RandomSource) -> MultiPoly:
    """Multivariate product over Z via classical Kronecker substitution."""
    if F.ring != G.ring or F.nvars != G.nvars:
        raise RingMismatchError("operands must share ring and variables")
    if F.ring.kind != "integers":
        raise UnsupportedRingError("this path multiplies integer polynomials")
    if F.is_zero or G.is_zero:
        return zero_multi(F.ring, F.nvars)
    d = 1 + max(F.var_degree(i) + G.var_degree(i) for i in range(F.nvars))
    params = ProductParams(eps / 2.0, eps / 2.0)
    h_u = sparse_product(kronecker(F, d), kronecker(G, d), params, rng)
    return inverse_kronecker(h_u, d, F.nvars)


def multivar_product_field(F: MultiPoly, G: MultiPoly, eps: float,
                           rng: RandomSource) -> MultiPoly:
    """Multivariate product over a field with large characteristic:
    classical Kronecker plus the univariate algorithm.

    Requires characteristic > deg(F_u) + deg(G_u) after substitution (and
    more; see sparse_product); use multivar_product_smallchar otherwise.
    """
    if F.ring != G.ring or F.nvars != G.nvars:
        raise RingMismatchError("operands must share ring and variables")
    if not F.ring.is_field:
        raise UnsupportedRingError("this path multiplies field polynomials")
    if F.is_zero or G.is_zero:
        return zero_multi(F.ring, F.nvars)
    d = 1 + max(F.var_degree(i) + G.var_degree(i) for i in range(F.nvars))
    params = ProductParams(eps / 2.0, eps / 2.0)
    h_u = sparse_product(kronecker(F, d), kronecker(G, d), params, rng)
    return inverse_kronecker(h_u, d, F.nvars)


def multivar_product_smallchar(F: MultiPoly, G: MultiPoly, eps: float,
                               rng: RandomSource) -> MultiPoly:
    """Multivariate product over F_{q^s} for any characteristic.

    Coefficients are lifted to integers (packing the s residues at base
    B = T*s*q^2, wide enough that no slot ever carries into the next),
    the product is taken over Z, and slots are unpacked and reduced back
    into the field.  The intermediate sparsity is the structural sparsity
    of the product rather than its true sparsity.
    """
    if F.ring != G.ring or F.nvars != G.nvars:
        raise RingMismatchError("operands must share ring and variables")
    ring = F.ring
    if not ring.is_field:
        raise UnsupportedRingError("input must live over a finite field")
    if F.is_zero or G.is_zero:
        return zero_multi(ring, F.nvars)
    zz = integers()
    q = ring.q

    if ring.kind == "prime_field":
        f_z = MultiPoly(zz, F.nvars, F.terms)
        g_z = MultiPoly(zz, G.nvars, G.terms)
        h_z = multivar_product_z(f_z, g_z, eps, rng)
        out = [(e, r) for e, c in h_z.terms if (r := c % q)]
        return MultiPoly(ring, F.nvars, tuple(sorted(out)))

    s = ring.s
    big_t = max(F.sparsity, G.sparsity)
    base = big_t * s * q * q  # wide enough: <= T colliding pairs, s slots, q^2 products
    f_z = MultiPoly(zz, F.nvars,
                    tuple((e, sum(r * base ** i for i, r in enumerate(c))) for e, c in F.terms))
    g_z = MultiPoly(zz, G.nvars,
                    tuple((e, sum(r * base ** i for i, r in enumerate(c))) for e, c in G.terms))
    h_z = multivar_product_z(f_z, g_z, eps, rng)

    modulus = list(ring.modulus)
    out = []
    for e, c in h_z.terms:
        digits = []
        v = c
        while v:
            v, r = divmod(v, base)
            digits.append(r)
        # a slot overflowing into its neighbour would widen the digit string
        # past the 2s-1 coefficients a product in Y can have
        if len(digits) > 2 * s - 1:
            raise AssertionError("packed coefficient slot overflow")
        rem = _fq_rem_monic([d % q for d in digits], modulus, q)
        elem = tuple(rem) + (0,) * (s - len(rem))
        if any(elem):
            out.append((e, elem))
    return MultiPoly(ring, F.nvars, tuple(sorted(out)))
