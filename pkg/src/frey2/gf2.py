"""Small binary fields GF(2^k), k <= 16.

Field elements are plain ints interpreted as bit vectors over GF(2); the
zero and one elements are 0 and 1.  Arithmetic is carry-less
multiplication reduced by the field modulus.  Bulk operations (exhaustive
root search, brute-force fiber scans) are delegated to a compiled kernel
when available, with a pure-Python fallback selected at import time.
"""

import os
from functools import lru_cache

from .algebra import Domain, Poly, PolyRing, gcd_monic
from .errors import DivisionByZero, FieldTooLarge, Frey2Error, ZeroInput

if os.environ.get("FREY2_PURE"):
    from . import _scan_py as kernel
else:
    try:
        from . import _scan as kernel  # type: ignore[attr-defined]
    except ImportError:
        from . import _scan_py as kernel

KERNEL_BACKEND = kernel.BACKEND

# Lowest-weight irreducible polynomial of each degree, found by exhaustive
# search with trial division; verified again at field construction.
IRREDUCIBLE = {
    1: 0x3,
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11B,
    9: 0x203,
    10: 0x409,
    11: 0x805,
    12: 0x1009,
    13: 0x201B,
    14: 0x4021,
    15: 0x8003,
    16: 0x1002B,
}

MAX_K = 16


def _gf2_mod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a and a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def gf2_poly_irreducible(m: int) -> bool:
    """Trial division by every polynomial of degree 1..k/2 over GF(2)."""
    k = m.bit_length() - 1
    if k < 1:
        return False
    for d in range(1, k // 2 + 1):
        for p in range(1 << d, 1 << (d + 1)):
            if _gf2_mod(m, p) == 0:
                return False
    return True


class GF2k(Domain):
    """The field with 2^k elements, elements represented as ints."""

    zero = 0
    one = 1

    def __init__(self, k: int, modulus: int | None = None):
        if not 1 <= k <= MAX_K:
            raise FieldTooLarge(f"GF(2^{k}) outside the supported range k <= {MAX_K}")
        if modulus is None:
            modulus = IRREDUCIBLE[k]
        if modulus.bit_length() - 1 != k:
            raise ValueError("modulus degree must equal k")
        if not gf2_poly_irreducible(modulus):
            raise ValueError(f"modulus {modulus:#x} is reducible over GF(2)")
        self.k = k
        self.modulus = modulus
        self.order = 1 << k

    def add(self, a, b):
        return a ^ b

    def neg(self, a):
        return a

    def mul(self, a, b):
        r = 0
        m, k = self.modulus, self.k
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a >> k:
                a ^= m
        return r

    def from_int(self, n):
        return n & 1

    def is_unit(self, a):
        return a != 0

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of 0 in GF(2^k)")
        return self.pow(a, self.order - 2)

    def exact_div(self, a, b):
        return self.mul(a, self.inv(b))

    def sqrt(self, a):
        """Unique square root: the Frobenius inverse a^(2^(k-1))."""
        return self.pow(a, 1 << (self.k - 1))

    def characteristic(self):
        return 2

    def elements(self):
        return range(self.order)

    def __eq__(self, other):
        return (
            isinstance(other, GF2k)
            and self.k == other.k
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash(("GF2k", self.k, self.modulus))

    def __repr__(self):
        return f"GF(2^{self.k})"


GF2 = GF2k(1)


@lru_cache(maxsize=None)
def gf2k(k: int) -> GF2k:
    """The field with 2^k elements under the built-in modulus table."""
    return GF2k(k)


def poly_ring(field: GF2k, var="x") -> PolyRing:
    return PolyRing(field, var)


def reduce_mod2(H: Poly, var=None) -> Poly:
    """Coefficient-wise reduction of a 2-integral rational polynomial to GF(2).

    Raises NonIntegralCoefficient if any coefficient has v2 < 0.
    """
    from .algebra import rational_residue_bit

    ring = PolyRing(GF2, var or H.ring.var)
    return Poly(ring, [rational_residue_bit(c) for c in H.cs])


def roots_in_gf2k(H: Poly, field: GF2k) -> list[int]:
    """All roots of H in the field, by exhaustive evaluation of every element."""
    if H.is_zero():
        raise ZeroInput("root search on the zero polynomial")
    if H.base != field:
        raise TypeError("polynomial is not over the given field")
    return list(kernel.find_roots(field.k, field.modulus, list(H.cs)))


def frobenius_power_mod(H: Poly, i: int) -> Poly:
    """x^(2^i) reduced mod H, by repeated squaring; field coefficients."""
    ring = H.ring
    xq = ring.gen
    for _ in range(i):
        xq = (xq * xq).divmod(H)[1]
    return xq


def linear_factor_count(H: Poly, field: GF2k) -> int:
    """deg gcd(H, x^(2^k) - x): the number of roots of H in the field."""
    ring = H.ring
    xq = frobenius_power_mod(H, field.k)
    g = gcd_monic(H, xq - ring.gen)
    return g.degree()


def irreducible_factor_degrees(H: Poly) -> set[int]:
    """Degrees of the irreducible factors of a nonzero polynomial H.

    Computes deg gcd(H, x^(q^d) - x) for d = 1..deg H; that degree equals
    the sum of e * (number of distinct degree-e factors) over e | d, from
    which the factor-degree counts are peeled off.  Only degrees are
    needed, never the factors themselves.
    """
    if H.is_zero():
        raise ZeroInput("factor degrees of the zero polynomial")
    field = H.base
    ring = H.ring
    H = H.monic()
    n = H.degree()
    if n == 0:
        return set()
    counts: dict[int, int] = {}
    xq = ring.gen.divmod(H)[1]
    for d in range(1, n + 1):
        for _ in range(field.k):
            xq = (xq * xq).divmod(H)[1]
        g = gcd_monic(H, xq - ring.gen)
        total = g.degree()
        covered = sum(e * c for e, c in counts.items() if d % e == 0)
        if (total - covered) % d:
            raise Frey2Error("factor degree accounting failed")
        counts[d] = (total - covered) // d
    return {e for e, c in counts.items() if c > 0}


def lcm(values) -> int:
    out = 1
    for v in values:
        g, a = out, v
        while a:
            g, a = a, g % a
        out = out * v // g
    return out


@lru_cache(maxsize=None)
def _embedding_root(src_k: int, src_mod: int, dst_k: int, dst_mod: int) -> int:
    """Smallest root of the source modulus inside the destination field."""
    if dst_k % src_k:
        raise ValueError(f"GF(2^{src_k}) does not embed in GF(2^{dst_k})")
    dst = GF2k(dst_k, dst_mod)
    ring = PolyRing(dst, "x")
    mod_poly = Poly(ring, [(src_mod >> i) & 1 for i in range(src_k + 1)])
    roots = roots_in_gf2k(mod_poly, dst)
    if not roots:
        raise Frey2Error("irreducible modulus without roots in extension")
    return min(roots)


def embed(x: int, src: GF2k, dst: GF2k) -> int:
    """Canonical field embedding GF(2^src.k) -> GF(2^dst.k), src.k | dst.k."""
    if src == dst:
        return x
    root = _embedding_root(src.k, src.modulus, dst.k, dst.modulus)
    out = 0
    power = 1
    for i in range(src.k):
        if (x >> i) & 1:
            out ^= power
        power = dst.mul(power, root)
    return out


def embed_poly(H: Poly, src: GF2k, dst_ring: PolyRing) -> Poly:
    return Poly(dst_ring, [embed(c, src, dst_ring.base) for c in H.cs])


def minpoly_over_subfield(a: int, big: GF2k, sub: GF2k) -> Poly:
    """Minimal polynomial of a over the embedded subfield, coefficients in `sub`.

    Conjugates are taken under x -> x^(2^sub.k); the product's coefficients
    are pulled back through the canonical embedding.
    """
    if big.k % sub.k:
        raise ValueError("not a subfield")
    back = {embed(c, sub, big): c for c in sub.elements()}
    ring = PolyRing(big, "x")
    conj = []
    c = a
    while c not in conj:
        conj.append(c)
        c = big.pow(c, 1 << sub.k)
    P = ring.one
    for c in conj:
        P = P * Poly(ring, [c, big.one])
    sub_ring = PolyRing(sub, "x")
    try:
        return Poly(sub_ring, [back[c] for c in P.cs])
    except KeyError:
        raise Frey2Error("conjugate product left the subfield") from None
