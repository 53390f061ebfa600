import itertools
from fractions import Fraction as F

import pytest
import sympy

from mzvren.birkhoff import CharacterTable, zeta_ems
from mzvren.genfun import (
    BernoulliCache,
    bernoulli,
    coefficient_from_value,
    factorized_closed,
    generating_series,
    riemann_zeta_negative,
    theorem_report,
    theorem_rhs_symbolic,
    theorem_word_counterexamples,
    value_from_coefficient,
    verify_theorem,
    z_ems_closed,
    zeta_ems_closed,
    zeta_ems_recurrence,
)
from mzvren.quasishuffle import Letter
from mzvren.series import MultiSeries, compose_linear


def zeta_oracle(k):
    return F(str(sympy.zeta(-k)))


def sympy_closed(r, D):
    """Oracle: expand the product formula with sympy and read off coefficients."""
    ts = sympy.symbols(f"t1:{r + 1}")
    s = sympy.Symbol("s")
    factor = sympy.series((s - (sympy.exp(s) - 1)) / (s * (sympy.exp(s) - 1)), s, 0, D + 1).removeO()
    expr = 1
    for i in range(r):
        expr *= factor.subs(s, sum(ts[i:]))
    poly = sympy.Poly(sympy.expand(expr), *ts)
    terms = {}
    for exps, c in poly.terms():
        if sum(exps) <= D:
            terms[exps] = F(int(c.p), int(c.q))
    return MultiSeries(r, D, terms)


def test_bernoulli_convention():
    assert bernoulli(0) == 1
    assert bernoulli(1) == F(1, 2)
    assert bernoulli(2) == F(1, 6)
    assert all(bernoulli(n) == 0 for n in range(3, 30, 2))
    assert [bernoulli(n) for n in range(2, 20)] == [F(str(sympy.bernoulli(n))) for n in range(2, 20)]
    fresh = BernoulliCache()
    assert fresh(12) == F(-691, 2730)


def test_riemann_values():
    assert riemann_zeta_negative(0) == F(-1, 2)
    assert riemann_zeta_negative(1) == F(-1, 12)
    assert [riemann_zeta_negative(k) for k in range(21)] == [zeta_oracle(k) for k in range(21)]


def test_coefficient_convention_roundtrip():
    for ks in [(0,), (3,), (1, 2), (2, 0, 1)]:
        assert value_from_coefficient(coefficient_from_value(F(7, 3), ks), ks) == F(7, 3)


def test_closed_depth_one():
    z1 = z_ems_closed(1, 5)
    assert z1.coeff((0,)) == F(-1, 2)
    assert z1.coeff((1,)) == F(1, 12)
    assert zeta_ems_closed((1,)) == F(-1, 12)


@pytest.mark.parametrize("r,D", [(1, 8), (2, 5), (3, 4)])
def test_closed_matches_sympy(r, D):
    assert z_ems_closed(r, D) == sympy_closed(r, D)


def test_closed_values():
    assert z_ems_closed(2, 0).coeff((0, 0)) == F(1, 4)
    assert zeta_ems_closed((0,)) == F(-1, 2)
    assert zeta_ems_closed((2,)) == 0
    assert zeta_ems_closed((0, 0)) == F(1, 4)


def test_recurrence_values():
    assert zeta_ems_recurrence((0, 0)) == F(1, 4)
    assert zeta_ems_recurrence((0, 1)) == F(1, 12)
    assert zeta_ems_recurrence((2,)) == 0
    with pytest.raises(ValueError):
        zeta_ems_recurrence(())


def test_remark_factorization_two_variables():
    D = 5
    z1 = z_ems_closed(1, D)
    lhs = z_ems_closed(2, D)
    t1 = MultiSeries.variable(2, D, 1)
    t2 = MultiSeries.variable(2, D, 2)
    assert lhs == compose_linear(z1, t2) * compose_linear(z1, t1 + t2)


@pytest.mark.parametrize("r", range(1, 5))
def test_factorization_to_degree_six(r):
    assert z_ems_closed(r, 6) == factorized_closed(r, 6)
    assert generating_series(r, 6, zeta_ems_recurrence) == z_ems_closed(r, 6)


def test_three_routes_agree_small():
    table = CharacterTable()
    for r in (1, 2, 3):
        for ks in itertools.product(range(3), repeat=r):
            a = zeta_ems(ks, table)
            assert a == zeta_ems_closed(ks) == zeta_ems_recurrence(ks)


def L(*forms):
    return tuple(Letter.form(f) for f in forms)


def test_theorem_rows_depth_two():
    rows = theorem_rhs_symbolic(2).rows
    expected = [L({1: 1, 2: 1}, {2: 1}), L({2: 1}, {1: 1, 2: 1}), L({1: 1, 2: 2})]
    assert sorted(rows) == sorted(expected)
    assert theorem_rhs_symbolic(2).render_rows() == ["Z*(t1+t2, t2)", "Z*(t2, t1+t2)", "Z*(t1+2t2)"]


def test_theorem_rows_depth_one_and_counts():
    assert theorem_rhs_symbolic(1).render_rows() == ["Z*(t1)"]
    assert [len(theorem_rhs_symbolic(r)) for r in range(1, 5)] == [1, 3, 13, 75]
    rows3 = theorem_rhs_symbolic(3).rows
    assert [row for row in rows3 if len(row) == 1] == [L({1: 1, 2: 2, 3: 3})]


def test_theorem_word_identity():
    assert theorem_word_counterexamples(2, 4) == []
    assert theorem_word_counterexamples(3, 3) == []


def test_theorem_word_identity_detects_missing_row(monkeypatch):
    from mzvren import genfun

    broken = genfun.TheoremExpansion(2, genfun.theorem_rhs_symbolic(2).rows[:-1])
    monkeypatch.setattr(genfun, "theorem_rhs_symbolic", lambda r: broken)
    assert genfun.theorem_word_counterexamples(2, 2) != []


@pytest.mark.parametrize("r,D", [(1, 3), (2, 4), (3, 3)])
def test_verify_theorem(r, D):
    assert verify_theorem(r, D)
    rep = theorem_report(r, D)
    assert rep.factorization and rep.birkhoff_agreement and rep.stuffle and rep.word_identity
