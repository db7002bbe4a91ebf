from fractions import Fraction as F

import pytest

from frey2.algebra import v2
from frey2.classify import (
    NOT_COVERED,
    ORACLE_CORRECTED,
    PRINCIPAL_SERIES,
    SUPERCUSPIDAL,
    TABLE_AS_PRINTED,
    classify,
    cross_validate,
    inertial_type,
    residue_degree,
)
from frey2.errors import DegenerateParameter, NotCovered, NotOddPrime
from frey2.pipelines import field_of_definition


def test_residue_degree_examples():
    assert residue_degree(3) == 1
    assert residue_degree(5) == 2
    assert residue_degree(7) == 3
    assert residue_degree(11) == 5
    assert residue_degree(13) == 6


def test_inertial_type_examples():
    assert inertial_type(7) == PRINCIPAL_SERIES
    assert inertial_type(3) == SUPERCUSPIDAL
    assert inertial_type(5) == SUPERCUSPIDAL
    assert inertial_type(11) == SUPERCUSPIDAL
    assert inertial_type(13) == SUPERCUSPIDAL
    with pytest.raises(NotOddPrime):
        inertial_type(4)


def test_classify_examples():
    assert classify("ppr-even", 5, F(1, 32)).exponent == 0
    assert classify("2rp", 5, 65).exponent == 0
    rep = classify("35p", None, F(3, 2))
    assert rep.exponent == 1 and rep.inertial_type == "toric"


def test_classify_degenerate():
    for t in (0, 1):
        with pytest.raises(DegenerateParameter):
            classify("ppr-even", 3, t)


def test_classify_not_covered():
    assert classify("rrp", 3, 6).exponent == NOT_COVERED
    assert classify("ppr-odd", 3, F(1, 8)).exponent == NOT_COVERED
    assert classify("2rp", 3, 1 + 32).exponent == NOT_COVERED  # v2(t-1) = 5 < 6


def test_ppr_even_rows():
    # v2(t) < 0 rows
    assert classify("ppr-even", 3, F(1, 8)).exponent == 0
    assert classify("ppr-even", 3, F(1, 16)).exponent == 2
    # toric rows
    assert classify("ppr-even", 3, F(4)).exponent == 1
    assert classify("ppr-even", 3, F(5)).exponent == 1  # v2(1-t) = 2


def test_ppr_even_symmetry(rng):
    """The exponent is symmetric under t <-> 1 - t."""
    for _ in range(150):
        num = rng.randint(-2**9, 2**9)
        den = rng.randint(1, 2**9)
        t = F(num, den)
        if t in (0, 1):
            continue
        for r in (3, 5, 7):
            a = classify("ppr-even", r, t).exponent
            b = classify("ppr-even", r, 1 - t).exponent
            assert a == b, (t, r)


def test_trichotomy_exhaustive(rng):
    """Exactly one of v2(t) > 0, v2(1-t) > 0, v2(t) < 0; classify never falls through."""
    for _ in range(300):
        t = F(rng.randint(-2**10, 2**10), rng.randint(1, 2**10))
        if t in (0, 1):
            continue
        cases = [v2(t) > 0, v2(1 - t) > 0, v2(t) < 0]
        assert sum(cases) == 1, t
        assert classify("ppr-even", 3, t).exponent in (0, 1, 2)
        assert classify("35p", None, t).exponent in (0, 1, 2)


def test_35p_rows():
    assert classify("35p", None, F(8)).exponent == 0       # v2(t) = 3
    assert classify("35p", None, F(4)).exponent == 2       # v2(t) = 2
    assert classify("35p", None, F(-31)).exponent == 0     # v2(1-t) = 5
    assert classify("35p", None, F(-3)).exponent == 2      # v2(1-t) = 2
    # principal series for the cube-root case, supercuspidal for the fifth-root case
    assert classify("35p", None, F(4)).inertial_type == PRINCIPAL_SERIES
    assert classify("35p", None, F(-3)).inertial_type == SUPERCUSPIDAL


def test_ppr_odd_modes():
    t = F(1, 16)  # v2(t) = -4
    assert classify("ppr-odd", 3, t, TABLE_AS_PRINTED).exponent == 2
    assert classify("ppr-odd", 3, t, ORACLE_CORRECTED).exponent == 0
    t2 = F(1, 32)  # v2(t) = -5 = 1 mod 3 = -2 mod 3
    assert classify("ppr-odd", 3, t2, TABLE_AS_PRINTED).exponent == 0
    assert classify("ppr-odd", 3, t2, ORACLE_CORRECTED).exponent == 2


def test_rrp_2rp_modes_agree(rng):
    """For these signatures the printed congruence equals the construction rule."""
    for r in (3, 5, 7):
        for m in range(4, 12):
            for t in (F(2**m), 1 + F(2**m)):
                a = classify("rrp", r, t, TABLE_AS_PRINTED).exponent
                b = classify("rrp", r, t, ORACLE_CORRECTED).exponent
                assert a == b, ("rrp", r, t)
        for m in range(6, 14):
            t = 1 + F(2**m)
            a = classify("2rp", r, t, TABLE_AS_PRINTED).exponent
            b = classify("2rp", r, t, ORACLE_CORRECTED).exponent
            assert a == b, ("2rp", r, t)


def test_remark_consistency_rrp_2rp():
    """Printed congruence classes equal the base-field criterion on a grid."""
    for r in (3, 5, 7):
        for m in range(4, 12):
            t = F(2**m)
            z = t * (t - 1)
            s = z ** ((r - 1) // 2) * (2 * t - 1)
            assert ((m - 4) % r == 0) == field_of_definition(z, s, r)
        for m in range(6, 14):
            t = 1 + F(2**m)
            z = t * (t - 1)
            s = 2 * (t - 1) ** ((r - 1) // 2) * t ** ((r + 1) // 2)
            assert ((m - 6) % r == 0) == field_of_definition(z, s, r)


def test_cross_validate_examples():
    cv = cross_validate("ppr-even", 3, F(1, 8))
    assert cv.printed.exponent == 0 and cv.oracle_exponent == 0 and cv.agree

    cv = cross_validate("ppr-odd", 3, F(1, 16))
    assert cv.printed.exponent == 2 and cv.oracle_exponent == 0
    assert not cv.agree and cv.conflict is not None
    assert cv.pipeline.base_defined is True

    cv = cross_validate("rrp", 3, 16)
    assert cv.printed.exponent == 0 and cv.oracle_exponent == 0 and cv.agree


def test_cross_validate_not_covered():
    with pytest.raises(NotCovered):
        cross_validate("rrp", 3, 6)


def test_ppr_odd_conflict_classes():
    """Printed and oracle rules disagree exactly on the -2 and -4 classes mod r."""
    for r in (3, 5):
        for m in range(4, 4 + 2 * r):
            t = F(1, 2**m)
            printed = classify("ppr-odd", r, t, TABLE_AS_PRINTED).exponent
            oracle = classify("ppr-odd", r, t, ORACLE_CORRECTED).exponent
            vt = -m
            if vt % r == (-2) % r:
                assert (printed, oracle) == (0, 2)
            elif vt % r == (-4) % r:
                assert (printed, oracle) == (2, 0)
            else:
                assert printed == oracle == 2
