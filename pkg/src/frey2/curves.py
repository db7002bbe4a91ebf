"""Hyperelliptic equations y^2 + Q(x) y = P(x) and their transformations.

The degree window 2g+1 <= max(2 deg Q, deg P) <= 2g+2 with deg Q <= g+1,
deg P <= 2g+2 is enforced at construction.  The discriminant follows the
normalization

    Delta_E = 2^(-4(g+1)) * Delta(R)            (deg R = 2g+2)
    Delta_E = 2^(-4(g+1)) * kappa^2 * Delta(R)  (deg R = 2g+1)

for R = 4P + Q^2 with leading coefficient kappa.  Changes of variables
return the transformed equation together with the exact discriminant
scale factor e^(-4(2g+1)) (ad-bc)^(2(g+1)(2g+1)), so pipelines can track
discriminants without recomputing resultants.
"""

from dataclasses import dataclass

from .algebra import Poly, PolyRing, discriminant, poly_str
from .errors import DegreeViolation, NotTwistable, SingularChange, ZeroDelta


class HyperEq:
    """Pair (Q, P) of polynomials defining y^2 + Q y = P of genus g."""

    __slots__ = ("ring", "Q", "P", "g")

    def __init__(self, Q: Poly, P: Poly, g: int, check_window=True):
        if Q.ring != P.ring:
            raise TypeError("Q and P must live in the same polynomial ring")
        if g < 0:
            raise DegreeViolation("genus must be non-negative")
        if check_window:
            dq, dp = Q.degree(), P.degree()
            if dq > g + 1:
                raise DegreeViolation(f"deg Q = {dq} exceeds g+1 = {g+1}")
            if dp > 2 * g + 2:
                raise DegreeViolation(f"deg P = {dp} exceeds 2g+2 = {2*g+2}")
            top = max(2 * dq, dp)
            if not (2 * g + 1 <= top <= 2 * g + 2):
                raise DegreeViolation(
                    f"max(2 deg Q, deg P) = {top} outside [{2*g+1}, {2*g+2}]"
                )
        self.ring = Q.ring
        self.Q = Q
        self.P = P
        self.g = g

    @property
    def base(self):
        return self.ring.base

    def R(self) -> Poly:
        return self.P.scale(self.base.from_int(4)) + self.Q * self.Q

    def __eq__(self, other):
        return (
            isinstance(other, HyperEq)
            and self.g == other.g
            and self.Q == other.Q
            and self.P == other.P
        )

    def __hash__(self):
        return hash((self.Q, self.P, self.g))

    def __repr__(self):
        return f"HyperEq(g={self.g}: {equation_str(self)})"


def equation_str(E: HyperEq, var=None) -> str:
    var = var or E.ring.var
    qs = poly_str(E.Q, var)
    if E.Q.is_zero():
        lhs = "y^2"
    elif qs == "1":
        lhs = "y^2 + y"
    elif E.Q.degree() == 0:
        lhs = f"y^2 + ({qs})*y"
    else:
        lhs = f"y^2 + y*({qs})"
    return f"{lhs} = {poly_str(E.P, var)}"


def hyper_discriminant(E: HyperEq):
    """The curve discriminant Delta_E; nonzero iff the curve is nonsingular."""
    base = E.base
    if base.characteristic() == 2:
        raise DegreeViolation("discriminant normalization needs 2 invertible")
    R = E.R()
    n = R.degree()
    if n == 2 * E.g + 2:
        d = discriminant(R)
    elif n == 2 * E.g + 1:
        kappa = R.lc()
        d = base.mul(base.mul(kappa, kappa), discriminant(R))
    else:
        raise DegreeViolation(f"deg R = {n}, expected 2g+1 or 2g+2")
    return base.exact_div(d, base.from_int(2 ** (4 * (E.g + 1))))


def infinity_patch(E: HyperEq) -> HyperEq:
    """The second affine chart (T, S): S(u) = u^(2g+2) P(1/u), T(u) = u^(g+1) Q(1/u).

    Applying it twice returns the original equation.  The result may fall
    outside the degree window (the chart is whatever the gluing dictates),
    so no window check is performed on it.
    """
    g = E.g
    S = E.P.reversed_to(2 * g + 2)
    T = E.Q.reversed_to(g + 1)
    return HyperEq(T, S, g, check_window=False)


@dataclass(frozen=True)
class MobiusChange:
    """x = (a X + b)/(c X + d), y = (e Y + shift(X))/(c X + d)^(g+1)."""

    a: object
    b: object
    c: object
    d: object
    e: object
    shift: Poly  # the additive polynomial R(X)

    @staticmethod
    def identity(ring: PolyRing) -> "MobiusChange":
        base = ring.base
        return MobiusChange(base.one, base.zero, base.zero, base.one, base.one, ring.zero)

    @staticmethod
    def x_scale(ring: PolyRing, a) -> "MobiusChange":
        """x = a X (with y untouched up to the chart factor)."""
        base = ring.base
        return MobiusChange(a, base.zero, base.zero, base.one, base.one, ring.zero)

    @staticmethod
    def y_sub(ring: PolyRing, e, shift=None) -> "MobiusChange":
        """y = e Y + shift(X), x unchanged."""
        base = ring.base
        return MobiusChange(
            base.one, base.zero, base.zero, base.one, e, shift if shift is not None else ring.zero
        )


@dataclass(frozen=True)
class ChangeResult:
    equation: HyperEq
    factor: object  # exact Delta multiplier e^(-4(2g+1)) (ad-bc)^(2(g+1)(2g+1))


def _clearing_transform(H: Poly, a, b, c, d, cap: int) -> Poly:
    """(c X + d)^cap * H((a X + b)/(c X + d)) as a polynomial of degree <= cap."""
    ring = H.ring
    base = ring.base
    num = Poly(ring, (b, a))  # a X + b
    den = Poly(ring, (d, c))  # c X + d
    out = ring.zero
    num_pow = ring.one
    den_pows = [ring.one]
    for _ in range(cap):
        den_pows.append(den_pows[-1] * den)
    for i in range(H.degree() + 1):
        ci = H.coeff(i)
        if not base.is_zero(ci):
            out = out + (num_pow * den_pows[cap - i]).scale(ci)
        if i < H.degree():
            num_pow = num_pow * num
    return out


def apply_change(E: HyperEq, M: MobiusChange) -> ChangeResult:
    """Transformed equation plus the exact discriminant scale factor."""
    base = E.base
    g = E.g
    det = base.sub(base.mul(M.a, M.d), base.mul(M.b, M.c))
    if base.is_zero(det) or base.is_zero(M.e):
        raise SingularChange("ad - bc = 0 or e = 0")
    q_star = _clearing_transform(E.Q, M.a, M.b, M.c, M.d, g + 1)
    p_star = _clearing_transform(E.P, M.a, M.b, M.c, M.d, 2 * g + 2)
    two_shift = M.shift.scale(base.from_int(2))
    new_Q = (two_shift + q_star).map_coeffs(lambda co: base.exact_div(co, M.e), E.ring)
    e2 = base.mul(M.e, M.e)
    new_P = (p_star - M.shift * M.shift - q_star * M.shift).map_coeffs(
        lambda co: base.exact_div(co, e2), E.ring
    )
    new_eq = HyperEq(new_Q, new_P, g)
    factor = base.mul(
        base.pow(M.e, -4 * (2 * g + 1)),
        base.pow(det, 2 * (g + 1) * (2 * g + 1)),
    )
    return ChangeResult(new_eq, factor)


def quadratic_twist(E: HyperEq, delta) -> HyperEq:
    """Twist of y^2 = F(x) by delta: isomorphic over any field containing sqrt(delta).

    Odd deg F = 2g+1: returns y^2 = delta^(2g+1) F(x/delta); even degree:
    y^2 = delta F(x).
    """
    base = E.base
    if not E.Q.is_zero():
        raise NotTwistable("quadratic twists need Q = 0")
    if base.is_zero(delta):
        raise ZeroDelta("twist by zero")
    F = E.P
    if F.degree() == 2 * E.g + 1:
        # delta^(2g+1) F(x/delta): coefficient of x^i picks up delta^(2g+1-i)
        cs = [
            base.mul(F.coeff(i), base.pow(delta, 2 * E.g + 1 - i))
            for i in range(F.degree() + 1)
        ]
        return HyperEq(E.ring.zero, Poly(E.ring, cs), E.g)
    return HyperEq(E.ring.zero, F.scale(delta), E.g)
