"""Sparse and dense-cyclic polynomial representations and base arithmetic.

A :class:`SparsePoly` is a canonical list of (exponent, coefficient)
terms with strictly increasing exponents and no zero coefficients; the
zero polynomial is the empty list and its degree is the sentinel -inf.
Exponents are unbounded Python ints (multivariate Kronecker images reach
d^n).

A :class:`DenseCyclic` is a length-p coefficient vector representing a
residue modulo X^p - 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import RingMismatchError, UnsupportedRingError
from .rings import RingSpec, prime_field

NEG_INF = float("-inf")


@dataclass(frozen=True)
class SparsePoly:
    ring: RingSpec
    terms: tuple  # ((exponent, coefficient), ...), exponents strictly increasing

    @property
    def sparsity(self) -> int:
        return len(self.terms)

    @property
    def degree(self):
        """Largest exponent, or -inf for the zero polynomial."""
        return self.terms[-1][0] if self.terms else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(e for e, _ in self.terms)

    def height(self) -> int:
        """Max absolute coefficient; integer polynomials only."""
        if self.ring.kind != "integers":
            raise UnsupportedRingError("height is defined over the integers")
        return max((abs(c) for _, c in self.terms), default=0)

    def coeff(self, e: int):
        """Coefficient of X^e (zero if absent); linear scan, test helper."""
        for exp, c in self.terms:
            if exp == e:
                return c
        return self.ring.zero()


@dataclass
class DenseCyclic:
    """Residue modulo X^p - 1 as a length-p coefficient vector."""
    ring: RingSpec
    p: int
    coeffs: list

    def __post_init__(self):
        if len(self.coeffs) != self.p:
            raise ValueError("coefficient vector must have length exactly p")


def _same_ring(*polys) -> RingSpec:
    ring = polys[0].ring
    for f in polys[1:]:
        if f.ring != ring:
            raise RingMismatchError("operands live in different rings")
    return ring


def canonicalize(terms, ring: RingSpec) -> SparsePoly:
    """Sort by exponent, merge equal exponents, drop zero coefficients."""
    acc: dict = {}
    for e, c in terms:
        e = int(e)
        if e < 0:
            raise ValueError("exponents must be nonnegative")
        c = ring.coerce(c)
        if e in acc:
            acc[e] = ring.add(acc[e], c)
        else:
            acc[e] = c
    zero = ring.zero()
    return SparsePoly(ring, tuple(sorted((e, c) for e, c in acc.items() if c != zero)))


def zero_poly(ring: RingSpec) -> SparsePoly:
    return SparsePoly(ring, ())


def monomial(ring: RingSpec, e: int, c) -> SparsePoly:
    return canonicalize([(e, c)], ring)


def add(F: SparsePoly, G: SparsePoly) -> SparsePoly:
    """Merge-based sum, O(#F + #G)."""
    ring = _same_ring(F, G)
    zero = ring.zero()
    out = []
    i = j = 0
    ft, gt = F.terms, G.terms
    while i < len(ft) and j < len(gt):
        ei, ci = ft[i]
        ej, cj = gt[j]
        if ei < ej:
            out.append((ei, ci))
            i += 1
        elif ei > ej:
            out.append((ej, cj))
            j += 1
        else:
            c = ring.add(ci, cj)
            if c != zero:
                out.append((ei, c))
            i += 1
            j += 1
    out.extend(ft[i:])
    out.extend(gt[j:])
    return SparsePoly(ring, tuple(out))


def negate(F: SparsePoly) -> SparsePoly:
    ring = F.ring
    return SparsePoly(ring, tuple((e, ring.neg(c)) for e, c in F.terms))


def sub(F: SparsePoly, G: SparsePoly) -> SparsePoly:
    return add(F, negate(G))


def scale(F: SparsePoly, c) -> SparsePoly:
    ring = F.ring
    c = ring.coerce(c)
    if c == ring.zero():
        return zero_poly(ring)
    return canonicalize([(e, ring.mul(a, c)) for e, a in F.terms], ring)


def naive_mul(F: SparsePoly, G: SparsePoly) -> SparsePoly:
    """Schoolbook product: all #F*#G term products, merged.

    Exact; the correctness oracle for every other multiplication path.
    """
    ring = _same_ring(F, G)
    acc: dict = {}
    for e1, c1 in F.terms:
        for e2, c2 in G.terms:
            e = e1 + e2
            c = ring.mul(c1, c2)
            if e in acc:
                acc[e] = ring.add(acc[e], c)
            else:
                acc[e] = c
    zero = ring.zero()
    return SparsePoly(ring, tuple(sorted((e, c) for e, c in acc.items() if c != zero)))


def derivative(F: SparsePoly) -> SparsePoly:
    """Formal derivative; terms whose coefficient e*c vanishes are dropped."""
    ring = F.ring
    zero = ring.zero()
    out = []
    for e, c in F.terms:
        if e >= 1:
            d = ring.smul(c, e)
            if d != zero:
                out.append((e - 1, d))
    return SparsePoly(ring, tuple(out))


def cyclic_reduce(F: SparsePoly, p: int) -> SparsePoly:
    """Remainder modulo X^p - 1: exponents reduced mod p, terms merged."""
    if p < 1:
        raise ValueError("p must be >= 1")
    ring = F.ring
    acc: dict = {}
    for e, c in F.terms:
        r = e % p
        if r in acc:
            acc[r] = ring.add(acc[r], c)
        else:
            acc[r] = c
    zero = ring.zero()
    return SparsePoly(ring, tuple(sorted((e, c) for e, c in acc.items() if c != zero)))


def to_dense(F: SparsePoly, p: int) -> DenseCyclic:
    """Positional coefficient vector; every exponent must already be < p."""
    if not F.is_zero and F.degree >= p:
        raise ValueError("exponent >= p; cyclic_reduce first")
    coeffs = [F.ring.zero()] * p
    for e, c in F.terms:
        coeffs[e] = c
    return DenseCyclic(F.ring, p, coeffs)


def from_dense(D: DenseCyclic) -> SparsePoly:
    zero = D.ring.zero()
    return SparsePoly(D.ring, tuple((e, c) for e, c in enumerate(D.coeffs) if c != zero))


def _pack(values: list[int], nb: int) -> int:
    return int.from_bytes(b"".join(v.to_bytes(nb, "little") for v in values), "little")


def _unpack(z: int, nb: int, count: int) -> list[int]:
    zb = z.to_bytes(count * nb, "little")
    return [int.from_bytes(zb[k * nb:(k + 1) * nb], "little") for k in range(count)]


def dense_cyclic_mul(A: DenseCyclic, B: DenseCyclic) -> DenseCyclic:
    """Cyclic convolution of length p.

    Over Z and F_q the linear convolution is obtained from one big-integer
    product of the slot-packed vectors (Kronecker segmentation), then slots
    >= p are folded back.  Each folded slot sums exactly p pair products,
    so slot width bits(p*Ma*Mb) + 2 cannot overflow even after adding the
    nonnegativity offsets used for signed input.  Extension fields fall
    back to schoolbook convolution.
    """
    if A.ring != B.ring:
        raise RingMismatchError("operands live in different rings")
    if A.p != B.p:
        raise ValueError("mismatched cyclic lengths")
    ring = A.ring
    p = A.p
    if ring.kind == "ext_field":
        out = [ring.zero()] * p
        for i, ai in enumerate(A.coeffs):
            if ai == ring.zero():
                continue
            for j, bj in enumerate(B.coeffs):
                if bj == ring.zero():
                    continue
                k = i + j
                if k >= p:
                    k -= p
                out[k] = ring.add(out[k], ring.mul(ai, bj))
        return DenseCyclic(ring, p, out)

    if ring.kind == "integers":
        ma = max((abs(v) for v in A.coeffs), default=0)
        mb = max((abs(v) for v in B.coeffs), default=0)
        if ma == 0 or mb == 0:
            return DenseCyclic(ring, p, [0] * p)
        slot_bits = (p * ma * mb).bit_length() + 2
        nb = (slot_bits + 7) // 8
        za = _pack([v + ma for v in A.coeffs], nb)
        zb = _pack([v + mb for v in B.coeffs], nb)
        slots = _unpack(za * zb, nb, 2 * p)
        sig_a = sum(A.coeffs)
        sig_b = sum(B.coeffs)
        corr = ma * sig_b + mb * sig_a + p * ma * mb
        out = [slots[k] + slots[k + p] - corr for k in range(p - 1)]
        out.append(slots[p - 1] - corr)
        return DenseCyclic(ring, p, out)

    q = ring.q
    if all(v == 0 for v in A.coeffs) or all(v == 0 for v in B.coeffs):
        return DenseCyclic(ring, p, [0] * p)
    slot_bits = (p * (q - 1) * (q - 1)).bit_length() + 2
    nb = (slot_bits + 7) // 8
    slots = _unpack(_pack(A.coeffs, nb) * _pack(B.coeffs, nb), nb, 2 * p)
    out = [(slots[k] + slots[k + p]) % q for k in range(p - 1)]
    out.append(slots[p - 1] % q)
    return DenseCyclic(ring, p, out)


def eval_sparse(F: SparsePoly, alpha):
    """Evaluate over a finite field by per-term square-and-multiply.

    Evaluation over the integers is intentionally unsupported: values of
    size deg*log(alpha) defeat the point of sparse verification, which
    always routes through a prime field instead.
    """
    ring = F.ring
    if not ring.is_field:
        raise UnsupportedRingError("evaluation requires a finite field")
    acc = ring.zero()
    for e, c in F.terms:
        acc = ring.add(acc, ring.mul(c, ring.pow(alpha, e)))
    return acc


def reduce_coeffs_mod_q(F: SparsePoly, q: int):
    """Coefficient-wise reduction of an integer polynomial into F_q."""
    if F.ring.kind != "integers":
        raise UnsupportedRingError("input must be an integer polynomial")
    fq = prime_field(q)
    return SparsePoly(fq, tuple((e, cr) for e, c in F.terms if (cr := c % q)))
