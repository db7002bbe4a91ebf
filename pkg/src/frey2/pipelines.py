"""Case-by-case 2-adic reduction pipelines.

Each pipeline builds a curve family member over an exact local coefficient
domain, applies the appropriate substitution chain through
`curves.apply_change` (which tracks the exact discriminant factor), and
then *asserts* the claimed conclusions: the final model matches its
expected display termwise, is integral, has the stated discriminant
valuation (identically across the declared weight interval in the formal
cases), and has the stated special-fiber type.  A violated claim raises
PipelineAssertionFailed rather than producing a report.

The even-degree (formal-parameter) cases prove their claims uniformly in
v2(t) via Laurent models; the odd-degree case runs over the tame field
Q(2^(1/r)) with concrete rational parameters.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Poly, PolyRing, QQ, check_odd_prime, v2
from .curves import (
    HyperEq,
    MobiusChange,
    apply_change,
    equation_str,
    hyper_discriminant,
)
from .errors import HypothesisViolated, PipelineAssertionFailed
from .families import C_PLUS, C_ZS, H_35, build_curve, c_coefficients, omega_min_poly
from .fibers import PointReport, SpecialFiber, fiber_type, singular_points
from .gf2 import GF2
from .localfield import (
    AffineVal,
    FormalParam,
    LaurentRing,
    TameField,
    WeightInterval,
    laurent_integral,
    laurent_residue,
    laurent_substitute,
    laurent_val,
    normalize_twist,
)

PPR_EVEN_CASES = ("v_neg", "v_t_pos", "v_1mt_pos")
P35_CASES = ("v_t_pos", "v_1mt_pos", "v_neg")


@dataclass
class PipelineResult:
    label: str
    r: int | None
    model: HyperEq
    integral: bool
    disc_val: AffineVal | Fraction
    factor_consistent: bool
    display_matches: bool
    fiber: SpecialFiber
    fiber_kind: str
    node_count: int
    points: list[PointReport]
    field_of_definition: str  # 'base' | 'ramified-degree-r' | 'unramified-or-base'
    base_defined: bool | None = None
    notes: list[str] = field(default_factory=list)

    def model_str(self) -> str:
        return equation_str(self.model)

    def fiber_str(self) -> str:
        return equation_str(self.fiber.eq)


def _require(cond: bool, label: str, claim: str):
    if not cond:
        raise PipelineAssertionFailed(f"[{label}] violated claim: {claim}")


def _lift(p: Poly, ring: PolyRing) -> Poly:
    dom = ring.base
    return Poly(ring, [dom.from_rational(c) for c in p.cs])


def _laurent_fiber(E: HyperEq, g: int) -> SpecialFiber:
    ring = E.ring.base  # LaurentRing
    param = ring.param
    fld = GF2 if param.kind == "positive" else param.residue_field
    gring = PolyRing(fld, E.ring.var)
    Qbar = Poly(gring, [laurent_residue(c) for c in E.Q.cs])
    Pbar = Poly(gring, [laurent_residue(c) for c in E.P.cs])
    return SpecialFiber(fld, Qbar, Pbar, g)


def _tame_fiber(E: HyperEq, L: TameField, g: int) -> SpecialFiber:
    gring = PolyRing(GF2, E.ring.var)
    Qbar = Poly(gring, [L.residue_bit(c) for c in E.Q.cs])
    Pbar = Poly(gring, [L.residue_bit(c) for c in E.P.cs])
    return SpecialFiber(GF2, Qbar, Pbar, g)


def _cplus_disc(r: int, t, dom):
    """Curve discriminant of C_r^+ as a closed form: 2^(4r) r^r t^((r+3)/2) (1-t)^((r-1)/2)."""
    lead = dom.from_rational(Fraction(2 ** (4 * r) * r**r))
    one_minus_t = dom.sub(dom.one, t)
    return dom.mul(
        lead, dom.mul(dom.pow(t, (r + 3) // 2), dom.pow(one_minus_t, (r - 1) // 2))
    )


def _h35_disc(t, dom):
    """Curve discriminant of the (3,5,p) family: 3^6 5^5 t^10 (t-1)^18."""
    lead = dom.from_rational(Fraction(3**6 * 5**5))
    return dom.mul(lead, dom.mul(dom.pow(t, 10), dom.pow(dom.sub(t, dom.one), 18)))


def _czs_disc(r: int, z: Fraction, s: Fraction) -> Fraction:
    sign = -1 if ((r - 1) // 2) % 2 else 1
    return (
        Fraction(sign * 2 ** (2 * (r - 1)) * r**r)
        * (Fraction(s) ** 2 - 4 * Fraction(z) ** r) ** ((r - 1) // 2)
    )


def _split_factor_polys(r: int):
    """(h(-x), h(x), (x+2)h(-x), x*h(x)) over Q, used by the even pipelines."""
    ring = PolyRing(QQ, "x")
    x = ring.gen
    h = omega_min_poly(r)
    h_neg = h.compose(-x)
    return h_neg, h, (x + 2) * h_neg, x * h


def pipeline_ppr_even(case: str, r: int, interval: WeightInterval | None = None) -> PipelineResult:
    """Even-degree signature (p,p,r): the three valuation cases."""
    check_odd_prime(r)
    if case not in PPR_EVEN_CASES:
        raise ValueError(f"unknown case {case!r}")
    label = f"ppr-even/{case}/r={r}"
    g = (r - 1) // 2
    notes = []

    if case == "v_neg":
        itv = interval or WeightInterval.at_least(Fraction(1, r))
        param = FormalParam.positive("u", itv)
        ring = LaurentRing(param)
        t = ring.term(1, -r)  # t = u^(-r)
    elif case == "v_t_pos":
        itv = interval or WeightInterval.at_least(1)
        param = FormalParam.positive("t", itv)
        ring = LaurentRing(param)
        t = ring.gen
    else:
        itv = interval or WeightInterval.at_least(1)
        param = FormalParam.positive("s1", itv)  # s1 = 1 - t
        ring = LaurentRing(param)
        t = ring.sub(ring.one, ring.gen)

    Rx = PolyRing(ring, "x")
    E0 = build_curve(C_PLUS, r, t=t, dom=ring).equation
    h_neg, h, q_plus, q_new = _split_factor_polys(r)

    if case == "v_1mt_pos":
        # y -> 2y + x h(x) with the *computed* square factor of f-2
        shift = _lift(q_new, Rx)
        notes.append(
            "square factor of f-2 is h(x); the sometimes-printed h(-x) fails "
            "the exact identity and the model is built with the computed factor"
        )
    else:
        shift = _lift(q_plus, Rx)
    res1 = apply_change(E0, MobiusChange.y_sub(Rx, ring.from_int(2), shift))
    model = res1.equation
    factor = res1.factor

    if case == "v_neg":
        u = ring.gen
        chart = MobiusChange(ring.one, ring.zero, ring.zero, u, ring.one, Rx.zero)
        res2 = apply_change(model, chart)
        model = res2.equation
        factor = ring.mul(factor, res2.factor)
        # expected display: y^2 + (x+2u) u^((r-1)/2) h(-x/u) y = -(x+2u)
        hu = Poly(
            Rx,
            [ring.term(h_neg.coeff(j), g - j) for j in range(g + 1)],
        )
        x_plus_2u = Poly(Rx, [ring.term(2, 1), ring.one])
        expected_Q = x_plus_2u * hu
        expected_P = -x_plus_2u
        expected_disc_val = AffineVal(Fraction(0), 0)
        expected_fiber = ("smooth", 0)
    elif case == "v_t_pos":
        expected_Q = _lift(q_plus, Rx)
        expected_P = Poly(Rx, [ring.mul(ring.neg(t), ring.from_int(2)), ring.neg(t)])
        expected_disc_val = AffineVal(Fraction(0), (r + 3) // 2)
        expected_fiber = ("nodal", (r + 1) // 2)
    else:
        expected_Q = _lift(q_new, Rx)
        h_lift = _lift(h, Rx)
        expected_P = -(h_lift * h_lift) + Poly(Rx, [ring.term(2, 1), ring.gen])
        expected_disc_val = AffineVal(Fraction(0), (r - 1) // 2)
        expected_fiber = ("nodal", (r - 1) // 2)

    display_matches = model.Q == expected_Q and model.P == expected_P
    _require(display_matches, label, "final model matches the expected display")

    integral = all(laurent_integral(c) for c in model.Q.cs + model.P.cs)
    _require(integral, label, "final model is integral")

    disc = hyper_discriminant(model)
    closed = _cplus_disc(r, t, ring)
    factor_ok = disc == ring.mul(factor, closed)
    _require(factor_ok, label, "tracked factor times closed-form discriminant")

    dval = laurent_val(disc)
    _require(dval == expected_disc_val, label, f"discriminant valuation {expected_disc_val!r}")

    fib = _laurent_fiber(model, g)
    kind, nodes = fiber_type(fib)
    _require((kind, nodes) == expected_fiber, label, f"fiber type {expected_fiber}")

    return PipelineResult(
        label=label,
        r=r,
        model=model,
        integral=integral,
        disc_val=dval,
        factor_consistent=factor_ok,
        display_matches=display_matches,
        fiber=fib,
        fiber_kind=kind,
        node_count=nodes,
        points=singular_points(fib),
        field_of_definition="ramified-degree-r" if case == "v_neg" else "base",
        notes=notes,
    )


def pipeline_35p(case: str, interval: WeightInterval | None = None) -> PipelineResult:
    """Signature (3,5,p): good reduction over degree-3/degree-5 tame charts,
    toric reduction in the negative-valuation case."""
    if case not in P35_CASES:
        raise ValueError(f"unknown case {case!r}")
    label = f"35p/{case}"
    g = 2
    notes = []

    if case == "v_t_pos":
        itv = interval or WeightInterval.at_least(Fraction(1, 3))
        param = FormalParam.positive("u", itv)
        ring = LaurentRing(param)
        t = ring.term(1, 3)  # t = u^3
        a_scale, e_scale = ring.gen, ring.pow(ring.gen, 3)
        expected_disc_val = AffineVal(Fraction(0), 0)
        expected_fiber = ("smooth", 0)
    elif case == "v_1mt_pos":
        itv = interval or WeightInterval.at_least(Fraction(1, 5))
        param = FormalParam.positive("u", itv)
        ring = LaurentRing(param)
        t = ring.sub(ring.one, ring.term(1, 5))  # t = 1 - u^5
        a_scale, e_scale = ring.pow(ring.gen, 3), ring.pow(ring.gen, 9)
        expected_disc_val = AffineVal(Fraction(0), 0)
        expected_fiber = ("smooth", 0)
    else:
        itv = interval or WeightInterval.at_least(1)
        param = FormalParam.positive("tau", itv)  # tau = 1/t
        ring = LaurentRing(param)
        t = ring.term(1, -1)
        a_scale, e_scale = None, ring.one
        expected_disc_val = AffineVal(Fraction(0), 2)
        expected_fiber = ("nodal", 2)

    Rx = PolyRing(ring, "x")
    E0 = build_curve(H_35, t=t, dom=ring).equation
    if case == "v_neg":
        chart = MobiusChange(ring.one, ring.zero, ring.zero, ring.gen, ring.one, Rx.zero)
    else:
        chart = MobiusChange(a_scale, ring.zero, ring.zero, ring.one, e_scale, Rx.zero)
    res = apply_change(E0, chart)
    model = res.equation
    factor = res.factor

    u = ring.gen
    if case == "v_t_pos":
        w = ring.sub(ring.one, ring.pow(u, 3))  # 1 - u^3
        expected_Q = Poly(Rx, [ring.pow(w, 2), ring.zero, ring.zero, ring.one])
        expected_P = Poly(
            Rx,
            [
                ring.pow(w, 4),
                ring.mul(ring.from_int(3), ring.mul(u, ring.pow(w, 3))),
                ring.zero,
                ring.mul(ring.from_int(2), ring.pow(w, 2)),
            ],
        )
    elif case == "v_1mt_pos":
        w = ring.sub(ring.one, ring.pow(u, 5))  # 1 - u^5
        wu = ring.mul(w, u)
        expected_Q = Poly(Rx, [wu, ring.zero, ring.zero, ring.one])
        expected_P = Poly(
            Rx,
            [
                ring.mul(ring.pow(w, 2), ring.pow(u, 2)),
                ring.mul(ring.from_int(3), ring.pow(w, 2)),
                ring.zero,
                ring.mul(ring.from_int(2), wu),
            ],
        )
    else:
        w = ring.sub(u, ring.one)  # tau - 1, the unit (1-t)/t in disguise
        expected_Q = Poly(Rx, [ring.pow(w, 2), ring.zero, ring.zero, ring.one])
        expected_P = Poly(
            Rx,
            [
                ring.pow(w, 4),
                ring.mul(ring.from_int(3), ring.pow(w, 3)),
                ring.zero,
                ring.mul(ring.from_int(2), ring.pow(w, 2)),
            ],
        )

    display_matches = model.Q == expected_Q and model.P == expected_P
    _require(display_matches, label, "final model matches the expected display")

    integral = all(laurent_integral(c) for c in model.Q.cs + model.P.cs)
    _require(integral, label, "final model is integral")

    disc = hyper_discriminant(model)
    closed = _h35_disc(t, ring)
    factor_ok = disc == ring.mul(factor, closed)
    _require(factor_ok, label, "tracked factor times closed-form discriminant")

    dval = laurent_val(disc)
    _require(dval == expected_disc_val, label, f"discriminant valuation {expected_disc_val!r}")

    if case == "v_neg":
        # rewrite in the unit parameter w = (1-t)/t = tau - 1, residue 1
        unit_param = FormalParam.unit("w", residue=1, field=GF2)
        uring = LaurentRing(unit_param)
        wplus1 = uring.add(uring.gen, uring.one)  # tau = w + 1
        Rxu = PolyRing(uring, "x")
        model_u = HyperEq(
            Poly(Rxu, [laurent_substitute(c, uring, wplus1) for c in model.Q.cs]),
            Poly(Rxu, [laurent_substitute(c, uring, wplus1) for c in model.P.cs]),
            g,
        )
        wg = uring.gen
        exp_Qu = Poly(Rxu, [uring.pow(wg, 2), uring.zero, uring.zero, uring.one])
        exp_Pu = Poly(
            Rxu,
            [
                uring.pow(wg, 4),
                uring.mul(uring.from_int(3), uring.pow(wg, 3)),
                uring.zero,
                uring.mul(uring.from_int(2), uring.pow(wg, 2)),
            ],
        )
        _require(
            model_u.Q == exp_Qu and model_u.P == exp_Pu,
            label,
            "unit-parameter model y^2 + y(x^3 + w^2) = 2w^2 x^3 + 3w^3 x + w^4",
        )
        fib = _laurent_fiber(model_u, g)
        notes.append("toric chart: unit parameter w = (1-t)/t with residue 1")
        gring = fib.Q.ring
        _require(
            fib.Q == Poly(gring, [1, 0, 0, 1]) and fib.P == Poly(gring, [1, 1]),
            label,
            "special fiber y^2 + y(x^3 + 1) = x + 1",
        )
    else:
        fib = _laurent_fiber(model, g)

    kind, nodes = fiber_type(fib)
    _require((kind, nodes) == expected_fiber, label, f"fiber type {expected_fiber}")
    pts = singular_points(fib)
    if case == "v_neg":
        _require(
            all(p.field.k == 2 and p.kind == "node" for p in pts) and len(pts) == 2,
            label,
            "two nodes at the primitive cube roots of unity in GF(4)",
        )

    return PipelineResult(
        label=label,
        r=None,
        model=model,
        integral=integral,
        disc_val=dval,
        factor_consistent=factor_ok,
        display_matches=display_matches,
        fiber=fib,
        fiber_kind=kind,
        node_count=nodes,
        points=pts,
        field_of_definition={
            "v_t_pos": "ramified-degree-3",
            "v_1mt_pos": "ramified-degree-5",
            "v_neg": "base",
        }[case],
        notes=notes,
    )


def field_of_definition(z, s, r: int) -> bool:
    """True iff the good-reduction model descends to the 2-adic base field.

    Criterion: r divides v2(s'^2) + 4 after twist normalization (a twist
    moves v2(s^2) by 2r, so the class mod r is twist-invariant).
    """
    check_odd_prime(r)
    z = Fraction(z)
    s = Fraction(s)
    if s == 0 or r * v2(z) < 2 * v2(s) + 4:
        raise HypothesisViolated(
            f"need v2(z^r) = {r * v2(z) if z else '-inf'} >= v2(s^2)+4 = {2 * v2(s) + 4}"
        )
    _, _, s1 = normalize_twist(z, s, r)
    return (2 * v2(s1) + 4) % r == 0


def pipeline_odd_good_reduction(z, s, r: int) -> PipelineResult:
    """Odd-degree good-reduction chain over the tame field Q(2^(1/r)).

    Requires v2(z^r) >= v2(s^2) + 4.  Twists to the normalized (z', s'),
    scales x by pi^v2(s') and y by pi^(r v2(s')/2), then x by pi^2 and
    y -> pi^r y + 1, and certifies: the final model agrees termwise with

        y^2 + y = x^r + sum_k c_k (z'/pi^(v2(s'^2)+4))^k x^(r-2k)
                        + (s'/2^v2(s') - 1)/4,

    is integral, has unit discriminant, and has a smooth special fiber.
    """
    check_odd_prime(r)
    z = Fraction(z)
    s = Fraction(s)
    if s == 0 or r * v2(z) < 2 * v2(s) + 4:
        raise HypothesisViolated(
            f"need v2(z^r) >= v2(s^2) + 4; got {r * v2(z)} < {2 * v2(s) + 4}"
        )
    label = f"odd-good/r={r}"
    delta, z1, s1 = normalize_twist(z, s, r)
    g = (r - 1) // 2
    L = TameField(r)
    Rx = PolyRing(L, "x")
    E0 = build_curve(C_ZS, r, z=L.from_rational(z1), s=L.from_rational(s1), dom=L).equation

    v = v2(s1)
    step1 = MobiusChange(
        L.pi_power(v), L.zero, L.zero, L.one, L.pi_power(r * v // 2), Rx.zero
    )
    res1 = apply_change(E0, step1)
    step2 = MobiusChange(L.pi_power(2), L.zero, L.zero, L.one, L.pi_power(r), Rx.one)
    res2 = apply_change(res1.equation, step2)
    model = res2.equation
    factor = L.mul(res1.factor, res2.factor)

    notes = [
        "second substitution scales x by pi^2 (termwise degree accounting; "
        "a plain pi scaling does not reproduce the stated final model)",
        "integrality of the constant term rests on s'/2^v2(s') = 1 mod 4, "
        "i.e. the s-form of the unit congruence",
    ]
    # the pi-scaling probe: with x -> pi x the final model fails to match
    probe = apply_change(
        res1.equation,
        MobiusChange(L.pi, L.zero, L.zero, L.one, L.pi_power(r), Rx.one),
    ).equation

    expected_Q = Poly(Rx, [L.one])
    s_unit = s1 / Fraction(2) ** v
    const = (s_unit - 1) / 4
    exp_cs = [L.zero] * (r + 1)
    exp_cs[r] = L.one
    for k, ck in enumerate(c_coefficients(r), start=1):
        exp_cs[r - 2 * k] = L.mul(
            L.from_rational(ck * z1**k), L.pi_power(-(2 * v + 4) * k)
        )
    exp_cs[0] = L.add(exp_cs[0], L.from_rational(const))
    expected_P = Poly(Rx, exp_cs)

    display_matches = model.Q == expected_Q and model.P == expected_P
    _require(display_matches, label, "final model matches the stated closed form")
    if probe.Q == expected_Q and probe.P == expected_P:
        notes.append("unexpected: the pi-scaling probe also reproduces the model")

    integral = all(
        (not any(c)) or L.val(c) >= 0 for c in model.Q.cs + model.P.cs
    )
    _require(integral, label, "final model is integral")

    disc = hyper_discriminant(model)
    closed = L.from_rational(_czs_disc(r, z1, s1))
    factor_ok = disc == L.mul(factor, closed)
    _require(factor_ok, label, "tracked factor times closed-form discriminant")

    dval = L.val(disc)
    _require(dval == 0, label, "unit discriminant")

    fib = _tame_fiber(model, L, g)
    kind, nodes = fiber_type(fib)
    _require(kind == "smooth", label, "smooth special fiber")

    base_defined = all(L.is_base(c) for c in model.Q.cs + model.P.cs)
    fod = field_of_definition(z, s, r)
    _require(
        base_defined == fod,
        label,
        "base-definition matches the congruence criterion r | v2(s'^2)+4",
    )

    return PipelineResult(
        label=label,
        r=r,
        model=model,
        integral=integral,
        disc_val=dval,
        factor_consistent=factor_ok,
        display_matches=display_matches,
        fiber=fib,
        fiber_kind=kind,
        node_count=nodes,
        points=singular_points(fib),
        field_of_definition="base" if base_defined else "ramified-degree-r",
        base_defined=base_defined,
        notes=notes + [f"twist delta = {delta}, normalized (z', s') = ({z1}, {s1})"],
    )
