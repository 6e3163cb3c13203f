from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hallforge import fplinalg as fl
from hallforge.exactnum import LaurentPoly, QFunc, specialize
from hallforge.qcalc import (
    QSeries,
    check_leibniz_polynomiality,
    check_phi_definition,
    check_q_leibniz,
    check_well_known,
    complete_symmetric,
    elementary_symmetric,
    exp_q,
    exp_q_inverse,
    phi_nu,
    q_binomial,
    q_derivative,
    q_factorial,
    q_int,
)

q = LaurentPoly.q()
small = st.integers(-4, 4)
series = st.lists(small, min_size=7, max_size=7).map(lambda cs: QSeries(cs, 6))


def test_q_int_and_factorial():
    assert q_int(3) == 1 + q + q ** 2
    assert q_int(0) == LaurentPoly()
    assert q_factorial(3, 2) == 1 * 3 * 7
    assert q_int(4, Fraction(1, 2)) == Fraction(15, 8)


@pytest.mark.parametrize("n", range(6))
@pytest.mark.parametrize("p", [2, 3])
def test_q_binomial_counts_subspaces(n, p):
    # oracle: enumerate subspaces of F_p^n directly
    for k in range(n + 1):
        assert q_binomial(n, k, p) == sum(1 for _ in fl.rref_subspaces(n, k, p))


@given(st.integers(1, 9), st.integers(1, 9))
def test_q_pascal_both_ways(n, k):
    lhs = q_binomial(n, k)
    assert lhs == q_binomial(n - 1, k - 1) + q ** k * q_binomial(n - 1, k)
    assert lhs == q ** (n - k) * q_binomial(n - 1, k - 1) + q_binomial(n - 1, k)


@given(st.integers(0, 8), st.integers(0, 8))
def test_q_binomial_symmetry_and_classical_limit(n, k):
    if k <= n:
        assert q_binomial(n, k) == q_binomial(n, n - k)
    else:
        assert not q_binomial(n, k)
    assert specialize(q_binomial(n, k), 1) == (comb(n, k) if k <= n else 0)


@given(st.lists(small, max_size=5), st.integers(0, 5))
def test_symmetric_functions_generating_identity(xs, r):
    # sum_j (-1)^j e_j h_{r-j} = 0 for r > 0
    total = sum((-1) ** j * elementary_symmetric(j, xs) * complete_symmetric(r - j, xs) for j in range(r + 1))
    assert total == (1 if r == 0 else 0)


def test_exp_q_inverse_is_inverse():
    for qv in (None, 2, Fraction(3, 2)):
        e = exp_q(8, qv)
        assert e * exp_q_inverse(8, qv) == QSeries.one(8)
        assert e.inverse() == exp_q_inverse(8, qv)


def test_exp_q_is_eigenfunction_of_q_derivative():
    # D_q exp_q = exp_q, truncated one degree lower
    e = exp_q(7)
    assert q_derivative(e, 1) == e.truncate(6)


@given(series, series, st.integers(0, 3))
def test_q_leibniz_random_pairs(f, g, j):
    assert check_q_leibniz(f, g, j)
    assert check_q_leibniz(f, g, j, 3)


@pytest.mark.parametrize("nu", range(-4, 5))
def test_phi_definition_symbolic(nu):
    assert check_phi_definition(nu, 10)


def test_phi_nu_small_cases():
    assert phi_nu(0, 5) == QSeries.one(5)
    qq = QFunc.q()
    assert phi_nu(1, 3) == QSeries([1, qq - 1], 3)


@pytest.mark.parametrize("n", range(6))
def test_well_known_expansions(n):
    assert check_well_known(n, 8)
    assert check_well_known(n, 8, 2)


@pytest.mark.parametrize("j", range(4))
def test_leibniz_polynomiality(j):
    assert check_leibniz_polynomiality(j, 8)


def test_series_truncation_mismatch_raises():
    with pytest.raises(ValueError):
        QSeries([1], 3) + QSeries([1], 4)
