from fractions import Fraction as F

import pytest

from frey2.algebra import PolyRing, QQ, poly_str
from frey2.curves import hyper_discriminant
from frey2.errors import DegenerateParameter, NotOddPrime
from frey2.families import (
    ALL_FAMILIES,
    C_MINUS,
    C_PLUS,
    C_S,
    C_ZS,
    CLOSED_FORM_FAMILIES,
    H_2R,
    H_35,
    H_RR,
    build_curve,
    c_coefficients,
    darmon_f,
    irreducibility_witness,
    omega_min_poly,
    verify_closed_form_disc,
    verify_identities,
)

R = PolyRing(QQ, "x")
x = R.gen

ALL_R = (3, 5, 7, 11, 13, 17, 19)


def test_darmon_f_examples():
    assert darmon_f(3) == x**3 - 3 * x
    assert darmon_f(5) == x**5 - 5 * x**3 + 5 * x
    assert darmon_f(7) == x**7 - 7 * x**5 + 14 * x**3 - 7 * x


def test_omega_min_poly_examples():
    assert omega_min_poly(3) == x + 1
    assert omega_min_poly(5) == x * x + x - 1
    assert omega_min_poly(7) == x**3 + x * x - 2 * x - 1


def test_not_odd_prime():
    for bad in (2, 4, 9, 1, 15):
        with pytest.raises(NotOddPrime):
            darmon_f(bad)
        with pytest.raises(NotOddPrime):
            omega_min_poly(bad)


@pytest.mark.parametrize("r", ALL_R)
def test_degrees_and_integrality(r):
    f, h = darmon_f(r), omega_min_poly(r)
    assert f.degree() == r and f.lc() == 1
    assert h.degree() == (r - 1) // 2 and h.lc() == 1
    assert all(c.denominator == 1 for c in f.cs)
    assert all(c.denominator == 1 for c in h.cs)
    # odd polynomial: even-degree coefficients vanish
    assert all(f.coeff(i) == 0 for i in range(0, r + 1, 2))


@pytest.mark.parametrize("r", ALL_R)
def test_values_at_pm2(r):
    f = darmon_f(r)
    assert f.eval(F(2)) == 2
    assert f.eval(F(-2)) == -2


@pytest.mark.parametrize("r", ALL_R)
def test_irreducibility_witness(r):
    assert irreducibility_witness(omega_min_poly(r)) is not None


@pytest.mark.parametrize("r", ALL_R)
def test_identity_suite(r):
    rep = verify_identities(r)
    assert rep.f_plus_2_printed
    assert rep.f_squared_minus_4
    assert rep.recurrence_matches_definition
    # the printed f-2 factor h(-x) is wrong; the computed factor is h(x)
    assert rep.f_minus_2_factor_is == "h(x)"
    assert not rep.f_minus_2_printed


def test_c_coefficients():
    assert c_coefficients(3) == [-3]
    assert c_coefficients(5) == [-5, 5]


def test_build_curve_symbolic_examples():
    inst = build_curve(C_ZS, 3)
    assert poly_str(inst.equation.P) == "x^3 + (-3*z)*x + s"
    inst = build_curve(H_2R, 3)
    assert poly_str(inst.equation.P) == "x^3 + (-3*t^2 + 3*t)*x + 2*t^3 - 2*t^2"
    inst = build_curve(H_35)
    E = inst.equation
    assert poly_str(E.Q) == "x^3 + t^3 - 2*t^2 + t"
    assert E.P.coeff(3) == E.Q.ring.base.from_coeffs([0, 2, -4, 2])  # 2t(1-t)^2


def test_build_curve_polynomial_coefficients():
    """No denominators survive expansion for symbolic parameters."""
    for fam in ALL_FAMILIES:
        r = None if fam == H_35 else 7
        inst = build_curve(fam, r)
        for c in inst.equation.Q.cs + inst.equation.P.cs:
            stack = [c]
            while stack:
                v = stack.pop()
                if isinstance(v, F):
                    assert v.denominator == 1
                else:
                    stack.extend(v.cs)


def test_build_curve_matches_direct_expansion():
    # P(z = u^2, x) must equal u^r f(x/u) cleared: sum f_i x^i u^(r-i)
    for r in (3, 5, 7):
        f = darmon_f(r)
        Ru = PolyRing(QQ, "u")
        Rxu = PolyRing(Ru, "x")
        u = Ru.gen
        inst = build_curve(C_ZS, r)
        # substitute z -> u^2, s -> 0 into the x-coefficients
        P = inst.equation.P
        for i in range(r + 1):
            c = P.coeff(i)  # element of Q[z][s]
            czs = c.coeff(0)  # s = 0 part, element of Q[z]
            got = Ru.coerce(czs.eval(u * u))  # z = u^2
            expected = Ru.coerce(f.coeff(i)) * u ** (r - i)
            assert got == expected, (r, i)


def test_degenerate_parameters():
    with pytest.raises(DegenerateParameter):
        build_curve(C_PLUS, 3, t=F(1))
    with pytest.raises(DegenerateParameter):
        build_curve(H_35, t=F(0))
    with pytest.raises(DegenerateParameter):
        build_curve(C_ZS, 3, z=F(1), s=F(2))  # s^2 = 4 z^3
    with pytest.raises(DegenerateParameter):
        build_curve(C_S, 3, s=F(-2))


def test_numeric_instances_match_symbolic():
    for fam, r in ((C_PLUS, 3), (C_MINUS, 5), (H_RR, 3), (H_2R, 5)):
        tv = F(3, 7)
        sym = build_curve(fam, r)
        num = build_curve(fam, r, t=tv)
        evaluated = [c.eval(tv) for c in sym.equation.P.cs]
        assert evaluated == list(num.equation.P.cs)


@pytest.mark.parametrize("fam,r", [(C_ZS, 3), (C_ZS, 5), (H_RR, 3), (H_RR, 5),
                                   (H_2R, 3), (H_2R, 5), (H_35, None)])
def test_closed_forms_exact(fam, r):
    rep = verify_closed_form_disc(fam, r)
    assert rep.equal, f"{fam} r={r}: ratio {rep.ratio}"


@pytest.mark.parametrize("r", [3, 5, 7])
def test_closed_form_cplus_documented_gap(r):
    rep = verify_closed_form_disc(C_PLUS, r)
    assert not rep.equal
    assert rep.documented_mismatch
    g = (r - 1) // 2
    assert rep.ratio == PolyRing(QQ, "t").from_rational(F(2 ** (4 * g)))


def test_closed_form_families_list():
    assert set(CLOSED_FORM_FAMILIES) == {C_ZS, C_PLUS, H_RR, H_2R, H_35}
    with pytest.raises(ValueError):
        verify_closed_form_disc(C_MINUS, 3)
