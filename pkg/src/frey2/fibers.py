"""Characteristic-2 geometry of special fibers.

Singular points of y^2 + Q y = P over a binary field are exactly the
points (a, b) with Q(a) = 0 and P'(a)^2 = Q'(a)^2 P(a); such a point is an
ordinary double point (node) iff Q'(a) != 0, and fails to be semistable
exactly when Q(a) = Q'(a) = P'(a) = 0.  Points are collected over both
affine charts; the second chart contributes only its u = 0 points, the
rest being glued to the first chart.
"""

from dataclasses import dataclass

from .algebra import Poly, PolyRing
from .curves import HyperEq, infinity_patch
from .errors import FieldTooLarge, Frey2Error, PointNotOnCurve
from . import gf2
from .gf2 import GF2k, embed_poly, irreducible_factor_degrees, kernel

SMOOTH = "smooth"
NODE = "node"
NON_SEMISTABLE = "non-semistable-singular"

AFFINE = "affine"
INFINITY = "infinity"


class SpecialFiber:
    """Reduction (Q, P) over a binary field, with the genus of the model."""

    __slots__ = ("field", "eq",)

    def __init__(self, field: GF2k, Q: Poly, P: Poly, g: int):
        self.field = field
        self.eq = HyperEq(Q, P, g, check_window=False)

    @property
    def Q(self):
        return self.eq.Q

    @property
    def P(self):
        return self.eq.P

    @property
    def g(self):
        return self.eq.g

    def patches(self):
        inf = infinity_patch(self.eq)
        return ((AFFINE, self.eq.Q, self.eq.P), (INFINITY, inf.Q, inf.P))

    def __repr__(self):
        from .curves import equation_str

        return f"SpecialFiber({self.field!r}: {equation_str(self.eq)})"


@dataclass(frozen=True)
class PointReport:
    """A classified point: chart, coordinates, and the field they live in."""

    patch: str
    field: GF2k
    a: int
    b: int
    kind: str


def _point_kind(field: GF2k, Q: Poly, P: Poly, a: int, b: int) -> str:
    qa = Q.eval(a)
    pa = P.eval(a)
    lhs = field.add(field.mul(b, b), field.mul(b, qa))
    if lhs != pa:
        raise PointNotOnCurve(f"({a}, {b}) does not satisfy the equation")
    qda = Q.derivative().eval(a)
    pda = P.derivative().eval(a)
    singular = qa == 0 and field.mul(pda, pda) == field.mul(field.mul(qda, qda), pa)
    if not singular:
        return SMOOTH
    if qda != 0:
        return NODE
    return NON_SEMISTABLE


def classify_point(F: SpecialFiber, patch: str, a: int, b: int, field: GF2k | None = None) -> str:
    """Kind of a point on the given chart: smooth, node, or worse."""
    field = field or F.field
    for name, Q, P in F.patches():
        if name != patch:
            continue
        if field != F.field:
            ring = PolyRing(field, Q.ring.var)
            Q = embed_poly(Q, F.field, ring)
            P = embed_poly(P, F.field, ring)
        return _point_kind(field, Q, P, a, b)
    raise ValueError(f"unknown patch {patch!r}")


def splitting_field(F: SpecialFiber) -> GF2k:
    """Smallest field containing every singular point of both charts."""
    k = F.field.k
    degs = {1}
    for _, Q, P in F.patches():
        locus = Q if not Q.is_zero() else P.derivative()
        if locus.is_zero():
            raise Frey2Error(
                "degenerate fiber: singular locus is not zero-dimensional"
            )
        if locus.degree() >= 1:
            degs |= irreducible_factor_degrees(locus)
    m = k * gf2.lcm(degs)
    if m > gf2.MAX_K:
        raise FieldTooLarge(f"splitting field GF(2^{m}) exceeds GF(2^{gf2.MAX_K})")
    return gf2.gf2k(m)


def singular_points(F: SpecialFiber, field: GF2k | None = None) -> list[PointReport]:
    """All singular points over the splitting field, both charts, classified.

    Chart-2 points with u != 0 are glued to chart-1 points and therefore
    reported once, on the affine chart.
    """
    big = field or splitting_field(F)
    out = []
    for patch, Q, P in F.patches():
        ring = PolyRing(big, Q.ring.var)
        Qb = embed_poly(Q, F.field, ring)
        Pb = embed_poly(P, F.field, ring)
        locus = Qb if not Qb.is_zero() else Pb.derivative()
        if locus.is_zero():
            raise Frey2Error("degenerate fiber: singular locus is not zero-dimensional")
        if locus.degree() < 1:
            continue
        candidates = gf2.roots_in_gf2k(locus, big)
        for a in candidates:
            if patch == INFINITY and a != 0:
                continue
            if Qb.eval(a) != 0:
                continue
            pda = Pb.derivative().eval(a)
            qda = Qb.derivative().eval(a)
            if big.mul(pda, pda) != big.mul(big.mul(qda, qda), Pb.eval(a)):
                continue
            b = big.sqrt(Pb.eval(a))
            kind = _point_kind(big, Qb, Pb, a, b)
            out.append(PointReport(patch, big, a, b, kind))
    return out


def fiber_type(F: SpecialFiber) -> tuple[str, int]:
    """('smooth' | 'nodal' | 'non-semistable', node count)."""
    pts = singular_points(F)
    if not pts:
        return "smooth", 0
    if all(p.kind == NODE for p in pts):
        return "nodal", len(pts)
    return "non-semistable", sum(1 for p in pts if p.kind == NODE)


def brute_force_singular(F: SpecialFiber, m: int) -> set[tuple[str, int, int]]:
    """Oracle: test the three Jacobian-criterion equations at every point.

    Scans all of GF(2^m)^2 on both charts (the second chart contributes its
    u = 0 points).  The fiber's coefficients are embedded into GF(2^m), so
    m must be a multiple of the coefficient field degree.
    """
    if m > 8:
        raise FieldTooLarge("brute-force scans support m <= 8")
    big = gf2.gf2k(m)
    found = set()
    for patch, Q, P in F.patches():
        ring = PolyRing(big, Q.ring.var)
        Qb = embed_poly(Q, F.field, ring)
        Pb = embed_poly(P, F.field, ring)
        hits = kernel.scan_singular(
            m, big.modulus, [Qb.coeff(i) for i in range(Qb.degree() + 1)],
            [Pb.coeff(i) for i in range(Pb.degree() + 1)],
        )
        for a, b in hits:
            if patch == INFINITY and a != 0:
                continue
            found.add((patch, a, b))
    return found
