from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fewham.bounds import (ExactComparison, IndeterminateError, conjecture_bound_compare,
                           corollary_factored, corollary_identity_check, family_count, family_order,
                           lll_condition, lll_condition_detail, lll_min_d0, lll_verify_parameters,
                           theorem2_comparison, theorem2_inequality, as_float)
from fewham.errors import PreconditionError


def _g(d: float, base: float = math.e) -> float:
    return d / (4 * math.sqrt(d) * math.log(8 * d * d, base) + 1)


def test_family_closed_form():
    assert family_order(5, 0) == 26
    assert family_count(5, 0) == 27648
    assert family_count(6, 1) == 2 * math.factorial(5) ** 4 * math.factorial(4)


@pytest.mark.parametrize("d,k", [(5, 0), (5, 3), (6, 0), (7, 3), (9, 2)])
def test_conjecture_compare_matches_floats(d, k):
    n = family_order(d, k)
    # compare logarithms in floating point as an independent check
    lhs = math.log(family_count(d, k))
    rhs = 2 * math.log(d - 1) + n / (d + 1) * math.log(math.factorial(d - 2))
    got = conjecture_bound_compare(d, k)
    assert got.verdict == ("<" if lhs < rhs else ">")
    assert str(got) == got.verdict


def test_conjecture_compare_preconditions():
    with pytest.raises(PreconditionError):
        conjecture_bound_compare(4)
    with pytest.raises(PreconditionError):
        conjecture_bound_compare(5, -1)


@settings(max_examples=50)
@given(st.integers(5, 120))
def test_degree_inequality_agrees_with_exact_rationals(d):
    left = Fraction(2 * (d - 1) ** (d - 4)) ** (d + 1)
    right = Fraction(math.factorial(d - 2)) ** (2 * d - 2)
    assert theorem2_inequality(d) == (left < right)
    assert theorem2_comparison(d).left == left


def test_exact_comparison_verdicts():
    assert ExactComparison(1, 2).verdict == "<"
    assert ExactComparison(2, 2).verdict == "="
    assert ExactComparison(3, 2).verdict == ">"


@pytest.mark.parametrize("d", [5, 6, 7])
def test_corollary_forms(d):
    assert corollary_identity_check(d, 50)
    for k in range(10):
        assert corollary_factored(d, k) == family_count(d, k)


def test_corollary_only_small_degrees():
    with pytest.raises(PreconditionError):
        corollary_factored(8, 0)


@pytest.mark.parametrize("d,eps", [(100, 1), (10**4, 1), (7000, 1), (500, "0.5"), (40000, "0.5")])
def test_lll_condition_matches_floats(d, eps):
    v = lll_condition_detail(d, eps)
    assert v.holds == (1 / float(eps) < _g(d))
    lo, hi = (as_float(x) for x in v.right)
    assert lo <= _g(d) * (1 + 1e-12) and _g(d) * (1 - 1e-12) <= hi


def test_lll_condition_examples():
    assert lll_condition(100, 1) is False
    assert lll_condition(10**4, 1) is True


@pytest.mark.parametrize("eps", [1, "0.5", "0.1"])
def test_min_degree_is_certified(eps):
    m = lll_min_d0(eps)
    assert m.at_d0.holds and not m.below.holds
    # float cross-check away from the boundary
    assert 1 / float(eps) < _g(m.d0 + 1)
    assert 1 / float(eps) > _g(m.d0 - 2)


def test_min_degree_other_bases():
    for base, b in (("2", 2), ("10", 10)):
        m = lll_min_d0(1, base)
        assert 1 < _g(m.d0 + 1, b) and 1 > _g(m.d0 - 2, b)
    with pytest.raises(PreconditionError):
        lll_condition(10, 1, "7")


def test_lll_eps_range():
    with pytest.raises(PreconditionError):
        lll_condition(10, 0)
    with pytest.raises(PreconditionError):
        lll_condition(10, "1.5")


@pytest.mark.parametrize("eps", [1, "0.5"])
def test_lll_parameters_hold_above_d0(eps):
    d0 = lll_min_d0(eps).d0
    for d in (d0, d0 + 1, 2 * d0, 10 * d0):
        chk = lll_verify_parameters(d, eps)
        assert chk.edge.holds and chk.vertex.holds and bool(chk)


def test_lll_parameters_fail_for_small_degree():
    chk = lll_verify_parameters(5, 1)
    assert chk.edge.holds and not chk.vertex.holds


def test_lll_parameter_matches_floats():
    d, eps = 6092, 1.0
    x, y, p = 1 / (4 * d), 1 / (2 * d * d), 1 / (4 * math.sqrt(d))
    edge = p * p < x * (1 - x) ** 2 * (1 - y) ** (2 * d - 2)
    vertex = (1 - p) ** (d * eps - 1) < y * (1 - x) ** (2 * d - 2) * (1 - y) ** ((d - 2) ** 2)
    chk = lll_verify_parameters(d, 1)
    assert (chk.edge.holds, chk.vertex.holds) == (edge, vertex)


def test_equal_sides_are_indeterminate():
    from mpmath import iv

    from fewham import bounds

    # sqrt(2)^2 vs 2 straddles at every precision
    with pytest.raises(IndeterminateError):
        bounds._decide_less(lambda: (iv.sqrt(iv.mpf(2)) ** 2, iv.mpf(2)), "equal sides")
