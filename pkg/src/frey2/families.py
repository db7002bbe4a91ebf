"""The Frey hyperelliptic curve families and their printed invariants.

`darmon_f` builds the degree-r companion polynomial by the three-term
recurrence V_{k+1} = x V_k - V_{k-1} (V_0 = 2, V_1 = x); `omega_min_poly`
recovers the minimal polynomial h of 2cos(2*pi/r) as the exact square root
of (f-2)/(x-2).  The construction is cross-asserted against the
definitional formula f = (-1)^((r-1)/2) x h(2-x^2), so no cyclotomic
arithmetic is ever needed.

`verify_identities` checks the three factorization identities exactly and
reports which square factor f-2 actually has (h(x), not the h(-x) some
sources print).  `verify_closed_form_disc` compares the curve discriminant
of each family against its printed closed form and reports an exact
structured diff when the printed form follows the bare polynomial-
discriminant normalization instead (ratio 2^(4g): the C_r^+ family).
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import (
    Poly,
    PolyRing,
    QQ,
    check_odd_prime,
    poly_sqrt,
    poly_str,
)
from .curves import HyperEq, hyper_discriminant
from .errors import DegenerateParameter, Frey2Error

C_S = "C_s"
C_PLUS = "C_plus"
C_MINUS = "C_minus"
C_ZS = "C_zs"
H_RR = "H_rr"
H_2R = "H_2r"
H_35 = "H_35"

ALL_FAMILIES = (C_S, C_PLUS, C_MINUS, C_ZS, H_RR, H_2R, H_35)
CLOSED_FORM_FAMILIES = (C_ZS, C_PLUS, H_RR, H_2R, H_35)


@lru_cache(maxsize=None)
def darmon_f(r: int) -> Poly:
    """Monic odd degree-r polynomial with f(2cos a) = 2cos(r a)."""
    check_odd_prime(r)
    ring = PolyRing(QQ, "x")
    x = ring.gen
    a, b = ring.from_coeffs([2]), x
    for _ in range(r - 1):
        a, b = b, x * b - a
    f = b
    h = omega_min_poly(r)
    sign = -1 if ((r - 1) // 2) % 2 else 1
    definitional = (x * h.compose(ring.from_coeffs([2, 0, -1]))).scale(
        Fraction(sign)
    )
    if f != definitional:
        raise Frey2Error(f"recurrence and definitional f disagree at r={r}")
    return f


@lru_cache(maxsize=None)
def omega_min_poly(r: int) -> Poly:
    """Minimal polynomial of 2cos(2*pi/r), degree (r-1)/2, integer monic."""
    check_odd_prime(r)
    ring = PolyRing(QQ, "x")
    x = ring.gen
    a, b = ring.from_coeffs([2]), x
    for _ in range(r - 1):
        a, b = b, x * b - a
    f = b
    h = poly_sqrt((f - 2).exact_div(x - 2))
    if h.degree() != (r - 1) // 2:
        raise Frey2Error("square factor has wrong degree")
    if any(c.denominator != 1 for c in h.cs):
        raise Frey2Error("square factor is not integral")
    if irreducibility_witness(h) is None:
        raise Frey2Error(f"no irreducibility witness found for h at r={r}")
    return h


def c_coefficients(r: int) -> list[Fraction]:
    """c_1..c_((r-1)/2) with f = x^r + sum_k c_k x^(r-2k)."""
    f = darmon_f(r)
    return [f.coeff(r - 2 * k) for k in range(1, (r - 1) // 2 + 1)]


# --- irreducibility over Q via a good-reduction witness prime ---------------

def _modp_mul(a, b, m, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _modp_rem(out, m, p)


def _modp_rem(a, m, p):
    a = a[:]
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < dm:
            break
        q = a[-1] * inv_lead % p
        off = len(a) - 1 - dm
        for j in range(dm + 1):
            a[off + j] = (a[off + j] - q * m[j]) % p
    while a and a[-1] == 0:
        a.pop()
    return a


def _modp_gcd(a, b, p):
    while any(b):
        a, b = b, _modp_rem(a, b, p)
    return a


def _modp_irreducible(coeffs, p) -> bool:
    """Distinct-degree irreducibility test over GF(p)."""
    n = len(coeffs) - 1
    m = [c % p for c in coeffs]
    if m[-1] == 0:
        return False
    xq = [0, 1]
    xq = _modp_rem(xq, m, p)
    for d in range(1, n // 2 + 1):
        # xq -> xq^p mod m
        acc = [1]
        base = xq
        e = p
        while e:
            if e & 1:
                acc = _modp_mul(acc, base, m, p)
            base = _modp_mul(base, base, m, p)
            e >>= 1
        xq = acc
        diff = xq[:]
        while len(diff) < 2:
            diff.append(0)
        diff[1] = (diff[1] - 1) % p
        while diff and diff[-1] == 0:
            diff.pop()
        g = _modp_gcd(m, diff, p) if any(diff) else m
        if len(g) - 1 >= 1:
            return False
    return True


_SMALL_PRIMES = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67,
    71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113,
)


def irreducibility_witness(h: Poly) -> int | None:
    """A prime p with h irreducible mod p, proving irreducibility over Q."""
    coeffs = [int(c) for c in h.cs]
    for p in _SMALL_PRIMES:
        if coeffs[-1] % p == 0:
            continue
        if _modp_irreducible(coeffs, p):
            return p
    return None


# --- family construction ----------------------------------------------------


@dataclass(frozen=True)
class CurveInstance:
    family: str
    r: int | None
    params: dict
    equation: HyperEq

    def __repr__(self):
        from .curves import equation_str

        ps = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.family}({ps}): {equation_str(self.equation)}"


def _lift_poly(p: Poly, target: PolyRing) -> Poly:
    """Lift a rational-coefficient polynomial into a char-0 coefficient ring."""
    dom = target.base
    return Poly(target, [dom.from_rational(c) for c in p.cs])


def _dom_from_rational(dom, q):
    return dom.from_rational(q)


def czs_polynomial(r: int, z, s, ring: PolyRing) -> Poly:
    """x^r + sum_k c_k z^k x^(r-2k) + s over the given x-ring."""
    dom = ring.base
    cs = [dom.zero] * (r + 1)
    cs[r] = dom.one
    zk = dom.one
    for k, ck in enumerate(c_coefficients(r), start=1):
        zk = dom.mul(zk, z)
        cs[r - 2 * k] = dom.mul(dom.from_rational(ck), zk)
    cs[0] = dom.add(cs[0], s)
    return Poly(ring, cs)


def build_curve(family: str, r: int | None = None, *, t=None, z=None, s=None,
                dom=None, var="x") -> CurveInstance:
    """Construct a family member exactly.

    Parameters left as None are kept symbolic (the evaluation domain
    becomes a polynomial ring in them); Fractions/ints give a curve over
    Q; elements of an explicit coefficient domain `dom` give a curve over
    that domain.
    """
    if family not in ALL_FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if family == H_35:
        r = None
    else:
        check_odd_prime(r)

    if family == C_ZS:
        z, s, dom = _resolve_zs(z, s, dom)
        _check_nondegenerate_zs(r, z, s, dom)
        ring = PolyRing(dom, var)
        P = czs_polynomial(r, z, s, ring)
        eq = HyperEq(ring.zero, P, (r - 1) // 2)
        return CurveInstance(family, r, {"z": z, "s": s}, eq)

    if family == C_S:
        s, dom = _resolve_single(s, dom, "s")
        _check_nondegenerate_zs(r, dom.one, s, dom)
        ring = PolyRing(dom, var)
        P = czs_polynomial(r, dom.one, s, ring)
        eq = HyperEq(ring.zero, P, (r - 1) // 2)
        return CurveInstance(family, r, {"s": s}, eq)

    t, dom = _resolve_single(t, dom, "t")
    _check_nondegenerate_t(t, dom)
    ring = PolyRing(dom, var)
    g = 2 if family == H_35 else (r - 1) // 2
    one = dom.one

    if family == C_MINUS:
        s_elt = dom.add(dom.from_rational(2), dom.neg(dom.mul(dom.from_rational(4), t)))
        P = czs_polynomial(r, one, s_elt, ring)
        eq = HyperEq(ring.zero, P, g)
    elif family == C_PLUS:
        f = _lift_poly(darmon_f(r), ring)
        inner = f + ring.const(
            dom.sub(dom.from_rational(2), dom.mul(dom.from_rational(4), t))
        )
        P = Poly(ring, (dom.mul(dom.from_rational(2), one), one)) * inner  # (x+2) * (...)
        eq = HyperEq(ring.zero, P, g)
    elif family == H_RR:
        zz = dom.mul(t, dom.sub(t, one))
        ss = dom.mul(
            dom.pow(zz, (r - 1) // 2),
            dom.sub(dom.mul(dom.from_rational(2), t), one),
        )
        P = czs_polynomial(r, zz, ss, ring)
        eq = HyperEq(ring.zero, P, g)
    elif family == H_2R:
        zz = dom.mul(t, dom.sub(t, one))
        ss = dom.mul(
            dom.from_rational(2),
            dom.mul(dom.pow(dom.sub(t, one), (r - 1) // 2), dom.pow(t, (r + 1) // 2)),
        )
        P = czs_polynomial(r, zz, ss, ring)
        eq = HyperEq(ring.zero, P, g)
    elif family == H_35:
        omt = dom.sub(one, t)  # 1 - t
        a = dom.mul(t, dom.pow(omt, 2))          # t(1-t)^2
        t2 = dom.mul(t, t)
        Qp = Poly(ring, (a, dom.zero, dom.zero, one))  # x^3 + t(1-t)^2
        p3 = dom.mul(dom.from_rational(2), a)               # 2t(1-t)^2
        p1 = dom.mul(dom.from_rational(3), dom.mul(t2, dom.pow(omt, 3)))
        p0 = dom.mul(t2, dom.pow(omt, 4))
        Pp = Poly(ring, (p0, p1, dom.zero, p3))
        eq = HyperEq(Qp, Pp, g)
    else:  # pragma: no cover
        raise ValueError(family)
    return CurveInstance(family, r, {"t": t}, eq)


def _resolve_single(value, dom, name):
    if value is None:
        if dom is not None:
            raise ValueError(f"symbolic {name} cannot take an explicit domain")
        dom = PolyRing(QQ, name)
        return dom.gen, dom
    if isinstance(value, (int, Fraction)):
        return Fraction(value), QQ
    if dom is None:
        raise ValueError(f"domain required for non-rational {name}")
    return value, dom


def _resolve_zs(z, s, dom):
    if z is None and s is None:
        if dom is not None:
            raise ValueError("symbolic (z, s) cannot take an explicit domain")
        zring = PolyRing(QQ, "z")
        sring = PolyRing(zring, "s")
        return sring.const(zring.gen), sring.gen, sring
    if isinstance(z, (int, Fraction)) and isinstance(s, (int, Fraction)):
        return Fraction(z), Fraction(s), QQ
    if dom is None:
        raise ValueError("domain required for non-rational (z, s)")
    return z, s, dom


def _check_nondegenerate_t(t, dom):
    if dom is QQ and t in (Fraction(0), Fraction(1)):
        raise DegenerateParameter(f"t = {t} is a degenerate parameter")


def _check_nondegenerate_zs(r, z, s, dom):
    if dom is QQ:
        if Fraction(s) ** 2 == 4 * Fraction(z) ** r:
            raise DegenerateParameter("s^2 = 4 z^r is degenerate")


# --- verification reports ----------------------------------------------------


@dataclass
class IdentityReport:
    r: int
    f: Poly
    h: Poly
    f_plus_2_printed: bool          # f+2 = (x+2) h(-x)^2
    f_minus_2_square_factor: Poly   # exact square factor of (f-2)/(x-2)
    f_minus_2_factor_is: str        # 'h(x)' | 'h(-x)' | 'other'
    f_minus_2_printed: bool         # the printed form f-2 = (x-2) h(-x)^2
    f_squared_minus_4: bool         # f^2-4 = (x^2-4)(h(x)h(-x))^2
    recurrence_matches_definition: bool

    def all_true_claims_hold(self) -> bool:
        return self.f_plus_2_printed and self.f_squared_minus_4 and (
            self.recurrence_matches_definition
        )


def verify_identities(r: int) -> IdentityReport:
    check_odd_prime(r)
    f = darmon_f(r)
    h = omega_min_poly(r)
    ring = f.ring
    x = ring.gen
    h_neg = h.compose(-x)
    plus_ok = (f + 2) == (x + 2) * h_neg * h_neg
    g_factor = poly_sqrt((f - 2).exact_div(x - 2))
    if g_factor == h:
        which = "h(x)"
    elif g_factor == h_neg:
        which = "h(-x)"
    else:
        which = "other"
    minus_printed = (f - 2) == (x - 2) * h_neg * h_neg
    prod = h * h_neg
    sq_ok = (f * f - 4) == (x * x - 4) * prod * prod
    return IdentityReport(
        r=r,
        f=f,
        h=h,
        f_plus_2_printed=plus_ok,
        f_minus_2_square_factor=g_factor,
        f_minus_2_factor_is=which,
        f_minus_2_printed=minus_printed,
        f_squared_minus_4=sq_ok,
        recurrence_matches_definition=True,  # asserted inside darmon_f
    )


@dataclass
class DiscReport:
    family: str
    r: int | None
    direct: Poly
    printed: Poly
    equal: bool
    ratio: object          # direct/printed when the quotient is exact, else None
    documented_mismatch: bool
    note: str = ""


def _printed_closed_form(family: str, r: int | None, ring: PolyRing) -> Poly:
    dom = ring.base

    def fr(q):
        return dom.from_rational(Fraction(q))

    if family == C_ZS:
        # over Q[z][s]: (-1)^((r-1)/2) 2^(2(r-1)) r^r (s^2 - 4 z^r)^((r-1)/2)
        sring = dom
        zring = sring.base
        zg = sring.const(zring.gen)
        sg = sring.gen
        core = sring.sub(sring.mul(sg, sg), sring.mul(sring.from_int(4), sring.pow(zg, r)))
        sign = -1 if ((r - 1) // 2) % 2 else 1
        val = sring.mul(
            sring.from_rational(Fraction(sign * 2 ** (2 * (r - 1)) * r**r)),
            sring.pow(core, (r - 1) // 2),
        )
        return ring.const(val)
    tdom = dom
    tg = tdom.gen
    one = tdom.one
    if family == C_PLUS:
        val = tdom.mul(
            tdom.from_rational(Fraction(2 ** (2 * (r + 1)) * r**r)),
            tdom.mul(tdom.pow(tg, (r + 3) // 2), tdom.pow(tdom.sub(one, tg), (r - 1) // 2)),
        )
    elif family == H_RR:
        sign = -1 if ((r - 1) // 2) % 2 else 1
        val = tdom.mul(
            tdom.from_rational(Fraction(sign * 2 ** (2 * (r - 1)) * r**r)),
            tdom.pow(tdom.mul(tg, tdom.sub(tg, one)), (r - 1) ** 2 // 2),
        )
    elif family == H_2R:
        sign = -1 if ((r - 1) // 2) % 2 else 1
        val = tdom.mul(
            tdom.from_rational(Fraction(sign * 2 ** (3 * (r - 1)) * r**r)),
            tdom.mul(
                tdom.pow(tg, r * (r - 1) // 2),
                tdom.pow(tdom.sub(tg, one), (r - 1) ** 2 // 2),
            ),
        )
    elif family == H_35:
        val = tdom.mul(
            tdom.from_rational(Fraction(3**6 * 5**5)),
            tdom.mul(tdom.pow(tg, 10), tdom.pow(tdom.sub(tg, one), 18)),
        )
    else:
        raise ValueError(f"{family} has no printed closed form")
    return ring.const(val)


def verify_closed_form_disc(family: str, r: int | None = None) -> DiscReport:
    """Compare the curve discriminant with the family's printed closed form.

    The comparison is exact.  When they differ, the exact ratio is
    reported; a ratio of 2^(4g) marks the known polynomial-discriminant
    normalization of the printed C_r^+ value and is flagged as a
    documented mismatch rather than a failure.
    """
    if family not in CLOSED_FORM_FAMILIES:
        raise ValueError(f"{family} has no printed closed form")
    inst = build_curve(family, r)
    eq = inst.equation
    direct = hyper_discriminant(eq)
    printed_in_x = _printed_closed_form(family, r, eq.ring)
    printed = printed_in_x.constant()
    dom = eq.base
    equal = direct == printed
    ratio = None
    documented = False
    note = ""
    if not equal:
        try:
            ratio = dom.exact_div(direct, printed)
        except Exception:
            ratio = None
        g = eq.g
        expected_gap = dom.from_rational(Fraction(2 ** (4 * g)))
        if ratio == expected_gap:
            documented = True
            note = (
                "printed value is the discriminant of the defining polynomial; "
                f"the curve discriminant is 2^(4g) = 2^{4*g} times it"
            )
    return DiscReport(
        family=family,
        r=r,
        direct=direct,
        printed=printed,
        equal=equal,
        ratio=ratio,
        documented_mismatch=documented,
        note=note,
    )
