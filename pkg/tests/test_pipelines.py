from fractions import Fraction as F

import pytest

from frey2.algebra import v2
from frey2.curves import equation_str, hyper_discriminant
from frey2.errors import HypothesisViolated, PipelineAssertionFailed
from frey2.localfield import AffineVal, TameField
from frey2.pipelines import (
    field_of_definition,
    pipeline_35p,
    pipeline_odd_good_reduction,
    pipeline_ppr_even,
)


@pytest.mark.parametrize("r", [3, 5, 7])
def test_ppr_even_v_neg(r):
    res = pipeline_ppr_even("v_neg", r)
    assert res.integral
    assert res.display_matches
    assert res.factor_consistent
    assert res.disc_val == AffineVal(F(0), 0)
    assert res.fiber_kind == "smooth"
    assert res.field_of_definition == "ramified-degree-r"


def test_ppr_even_v_neg_fiber_r3():
    res = pipeline_ppr_even("v_neg", 3)
    assert equation_str(res.fiber.eq) == "y^2 + y*(x^2) = x"


@pytest.mark.parametrize("r", [3, 5, 7])
def test_ppr_even_v_t_pos(r):
    res = pipeline_ppr_even("v_t_pos", r)
    assert res.integral and res.display_matches and res.factor_consistent
    assert res.fiber_kind == "nodal"
    assert res.node_count == (r + 1) // 2
    assert res.disc_val == AffineVal(F(0), (r + 3) // 2)


def test_ppr_even_v_t_pos_nodes_r3():
    res = pipeline_ppr_even("v_t_pos", 3)
    coords = sorted((p.a, p.b) for p in res.points)
    assert coords == [(0, 0), (1, 0)]


@pytest.mark.parametrize("r", [3, 5, 7])
def test_ppr_even_v_1mt_pos(r):
    res = pipeline_ppr_even("v_1mt_pos", r)
    assert res.integral and res.display_matches and res.factor_consistent
    assert res.fiber_kind == "nodal"
    assert res.node_count == (r - 1) // 2
    assert res.disc_val == AffineVal(F(0), (r - 1) // 2)


def test_ppr_even_v_1mt_pos_single_node_r3():
    res = pipeline_ppr_even("v_1mt_pos", 3)
    assert [(p.a, p.b) for p in res.points] == [(1, 0)]


def test_35p_good_reduction_cases():
    for case in ("v_t_pos", "v_1mt_pos"):
        res = pipeline_35p(case)
        assert res.integral and res.display_matches and res.factor_consistent
        assert res.disc_val == AffineVal(F(0), 0)
        assert res.fiber_kind == "smooth"


def test_35p_toric_case():
    res = pipeline_35p("v_neg")
    assert res.integral and res.display_matches and res.factor_consistent
    assert res.disc_val == AffineVal(F(0), 2)
    assert res.fiber_kind == "nodal"
    assert res.node_count == 2
    assert equation_str(res.fiber.eq) == "y^2 + y*(x^3 + 1) = x + 1"
    assert all(p.field.k == 2 for p in res.points)


def test_unknown_cases_rejected():
    with pytest.raises(ValueError):
        pipeline_ppr_even("nope", 3)
    with pytest.raises(ValueError):
        pipeline_35p("nope")


def test_odd_good_worked_instance():
    res = pipeline_odd_good_reduction(1, F(7, 4), 3)
    L = TameField(3)
    E = res.model
    # y^2 + y = x^3 - 3x - 2
    assert E.Q.cs == (L.one,)
    assert E.P.cs == (
        L.from_rational(-2),
        L.from_rational(-3),
        L.zero,
        L.one,
    )
    assert hyper_discriminant(E) == L.from_rational(405)
    assert res.disc_val == 0
    assert res.fiber_kind == "smooth"
    assert equation_str(res.fiber.eq) == "y^2 + y = x^3 + x"
    assert res.base_defined is True
    assert any("delta = -1" in n for n in res.notes)


def test_odd_good_base_field_examples():
    # Remark criterion: v2(s'^2) + 4 = 0 mod r
    assert field_of_definition(1, F(-7, 4), 3) is True
    assert field_of_definition(1, F(7, 8), 3) is False
    assert field_of_definition(1, F(7, 8), 5) is False  # v2(s) = -3: -2 mod 5 != 0
    res = pipeline_odd_good_reduction(1, F(7, 8), 3)
    assert res.base_defined is False
    assert res.field_of_definition == "ramified-degree-r"
    assert res.fiber_kind == "smooth"


def test_odd_good_from_rrp_instance():
    # t = 16: z = t(t-1), s = (t(t-1))^((r-1)/2) (2t-1), r = 3
    t = F(16)
    z = t * (t - 1)
    s = z * (2 * t - 1)
    assert v2(z) == 4
    res = pipeline_odd_good_reduction(z, s, 3)
    assert res.base_defined is True
    assert res.fiber_kind == "smooth"


def test_hypothesis_violated():
    with pytest.raises(HypothesisViolated):
        pipeline_odd_good_reduction(1, F(1), 3)  # v2(s^2)+4 = 4 > 0
    with pytest.raises(HypothesisViolated):
        field_of_definition(1, 3, 5)


GRID = [
    ("C_minus", 3), ("C_minus", 5), ("C_minus", 7),
    ("H_rr", 3), ("H_rr", 5), ("H_rr", 7),
    ("H_2r", 3), ("H_2r", 5), ("H_2r", 7),
]


def _grid_params(source, r):
    if source == "C_minus":
        for m in range(4, 10):
            t = F(1, 2**m)
            yield t, F(1), 2 - 4 * t
    elif source == "H_rr":
        for m in range(4, 10):
            t = F(2**m)
            z = t * (t - 1)
            yield t, z, z ** ((r - 1) // 2) * (2 * t - 1)
    else:
        for m in range(6, 12):
            t = 1 + F(2**m)
            z = t * (t - 1)
            yield t, z, 2 * (t - 1) ** ((r - 1) // 2) * t ** ((r + 1) // 2)


@pytest.mark.parametrize("source,r", GRID)
def test_odd_good_grid(source, r):
    for t, z, s in _grid_params(source, r):
        res = pipeline_odd_good_reduction(z, s, r)
        assert res.integral
        assert res.disc_val == 0
        assert res.fiber_kind == "smooth"
        assert res.base_defined == field_of_definition(z, s, r)


def test_assertion_failure_is_loud(monkeypatch):
    import frey2.pipelines as pl

    real = pl._czs_disc

    def wrong(r, z, s):
        return real(r, z, s) * 2

    monkeypatch.setattr(pl, "_czs_disc", wrong)
    with pytest.raises(PipelineAssertionFailed):
        pipeline_odd_good_reduction(1, F(7, 4), 3)
