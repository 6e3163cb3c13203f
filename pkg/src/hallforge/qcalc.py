"""q-numbers, Gaussian binomials and truncated one-variable power series.

Functions take an optional ``q``.  Left as ``None`` it is the formal variable:
polynomial-valued functions then return :class:`LaurentPoly`, series-valued
ones carry :class:`QFunc` coefficients (``1/[n]_q!`` is not a Laurent
polynomial).  Passing an integer or Fraction specializes everything.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import List, Sequence

from .exactnum import LaurentPoly, QFunc

__all__ = [
    "QSeries",
    "q_int",
    "q_factorial",
    "q_binomial",
    "q_derivative",
    "exp_q",
    "exp_q_inverse",
    "phi_nu",
    "check_q_leibniz",
    "check_phi_definition",
    "check_well_known",
    "check_leibniz_polynomiality",
    "elementary_symmetric",
    "complete_symmetric",
]


def _poly_q(q):
    return LaurentPoly.q() if q is None else q


def _series_q(q):
    return QFunc.q() if q is None else q


def _one_like(q):
    if isinstance(q, LaurentPoly):
        return LaurentPoly.const(1)
    if isinstance(q, QFunc):
        return QFunc(1)
    return Fraction(1)


@lru_cache(maxsize=None)
def _q_int_sym(n: int) -> LaurentPoly:
    return LaurentPoly({e: 1 for e in range(n)})


def q_int(n: int, q=None):
    """[n]_q = 1 + q + ... + q^(n-1)."""
    if n < 0:
        raise ValueError("q_int needs n >= 0")
    if q is None:
        return _q_int_sym(n)
    total, p = 0 * _one_like(q), _one_like(q)
    for _ in range(n):
        total = total + p
        p = p * q
    return total


def q_factorial(n: int, q=None):
    out = _one_like(_poly_q(q))
    for k in range(1, n + 1):
        out = out * q_int(k, q)
    return out


@lru_cache(maxsize=None)
def _q_binom_sym(n: int, k: int) -> LaurentPoly:
    # q-Pascal: [n,k] = [n-1,k-1] + q^k [n-1,k]
    if k < 0 or k > n:
        return LaurentPoly()
    if k == 0 or k == n:
        return LaurentPoly.const(1)
    return _q_binom_sym(n - 1, k - 1) + LaurentPoly.monomial(1, k) * _q_binom_sym(n - 1, k)


def q_binomial(n: int, k: int, q=None):
    """Gaussian binomial; zero outside 0 <= k <= n."""
    if n < 0:
        raise ValueError("q_binomial needs n >= 0")
    p = _q_binom_sym(n, k)
    if q is None:
        return p
    return _eval_poly(p, q)


def _eval_poly(p: LaurentPoly, q):
    """Evaluate a Laurent polynomial at any scalar q (rational or symbolic)."""
    out = 0 * _one_like(q)
    for e, c in p.terms():
        out = out + c * q ** e
    return out


def elementary_symmetric(s: int, xs: Sequence):
    """e_s(xs), zero if s < 0 or s > len(xs)."""
    e = [Fraction(1)] + [Fraction(0)] * len(xs)
    for i, x in enumerate(xs):
        for k in range(i + 1, 0, -1):
            e[k] = e[k] + e[k - 1] * x
    return e[s] if 0 <= s <= len(xs) else Fraction(0)


def complete_symmetric(s: int, xs: Sequence):
    if s < 0:
        return Fraction(0)
    h = [Fraction(1)] + [Fraction(0)] * s
    for x in xs:
        for k in range(1, s + 1):
            h[k] = h[k] + h[k - 1] * x
    return h[s]


class QSeries:
    """Truncated power series sum_{n<=order} c_n x^n with exact coefficients."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Sequence, order: int):
        if order < 0:
            raise ValueError("order must be non-negative")
        cs = list(coeffs[: order + 1])
        cs += [Fraction(0)] * (order + 1 - len(cs))
        self.coeffs: List = [Fraction(c) if isinstance(c, int) else c for c in cs]
        self.order = order

    @classmethod
    def monomial(cls, k: int, order: int, coeff=1) -> "QSeries":
        cs = [Fraction(0)] * (order + 1)
        if k <= order:
            cs[k] = coeff
        return cls(cs, order)

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls.monomial(0, order)

    def __getitem__(self, n: int):
        return self.coeffs[n] if 0 <= n <= self.order else Fraction(0)

    def truncate(self, order: int) -> "QSeries":
        return QSeries(self.coeffs, order)

    def _check(self, other: "QSeries"):
        if self.order != other.order:
            raise ValueError(f"truncation mismatch: {self.order} vs {other.order}")

    def __add__(self, other):
        if isinstance(other, QSeries):
            self._check(other)
            return QSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)
        return self + QSeries.monomial(0, self.order, other)

    __radd__ = __add__

    def __neg__(self):
        return QSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return QSeries([c * other for c in self.coeffs], self.order)
        self._check(other)
        n = self.order
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return QSeries(out, n)

    __rmul__ = __mul__

    def inverse(self) -> "QSeries":
        c0 = self.coeffs[0]
        if not c0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv0 = 1 / c0
        out = [inv0]
        for n in range(1, self.order + 1):
            s = Fraction(0)
            for k in range(1, n + 1):
                if self.coeffs[k]:
                    s = s + self.coeffs[k] * out[n - k]
            out.append(-s * inv0)
        return QSeries(out, self.order)

    def scale_var(self, c) -> "QSeries":
        """f(c x)."""
        out, p = [], Fraction(1)
        for a in self.coeffs:
            out.append(a * p)
            p = p * c
        return QSeries(out, self.order)

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.order == other.order and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __repr__(self):
        terms = [f"({c})*x^{n}" for n, c in enumerate(self.coeffs) if c]
        return f"QSeries[{self.order}](" + (" + ".join(terms) or "0") + ")"


def q_derivative(f: QSeries, j: int, q=None) -> QSeries:
    """D_q^{(j)} f, using D^{(j)} x^a = [a choose j]_q x^{a-j}."""
    if j < 0 or j > f.order:
        raise ValueError(f"derivative order {j} exceeds truncation {f.order}")
    out = []
    for a in range(j, f.order + 1):
        c = f.coeffs[a]
        out.append(c * q_binomial(a, j, q) if c else Fraction(0))
    return QSeries(out, f.order - j)


def exp_q(order: int, q=None) -> QSeries:
    q = _series_q(q)
    out, fact = [], _one_like(q)
    for n in range(order + 1):
        if n:
            fact = fact * q_int(n, q)
        out.append(1 / fact)
    return QSeries(out, order)


def exp_q_inverse(order: int, q=None) -> QSeries:
    """Closed form sum (-1)^n q^C(n,2) x^n / [n]_q!."""
    q = _series_q(q)
    e = exp_q(order, q)
    return QSeries([(-1) ** n * q ** comb(n, 2) * c for n, c in enumerate(e.coeffs)], order)


def phi_nu(nu: int, order: int, q=None) -> QSeries:
    """Closed-form product for exp_q(t)^{-1} exp_q(q^nu t)."""
    q = _series_q(q)
    out = QSeries.one(order)
    if nu >= 0:
        for r in range(nu):
            out = out * QSeries([1, q ** r * (q - 1)], order)
    else:
        for r in range(1, -nu + 1):
            out = out * QSeries([1, q ** (-r) * (q - 1)], order).inverse()
    return out


def check_q_leibniz(f: QSeries, g: QSeries, j: int, q=None) -> bool:
    f._check(g)
    q = _series_q(q)
    lhs = q_derivative(f * g, j, q)
    n = f.order - j
    rhs = QSeries([], n)
    for s in range(j + 1):
        a = q_derivative(f, j - s, q).scale_var(q ** s).truncate(n)
        b = q_derivative(g, s, q).truncate(n)
        rhs = rhs + a * b
    return lhs == rhs


def check_phi_definition(nu: int, order: int, q=None) -> bool:
    q = _series_q(q)
    e = exp_q(order, q)
    lhs = e.inverse() * e.scale_var(q ** nu)
    return lhs == phi_nu(nu, order, q)


def check_well_known(n: int, order: int, q=None) -> bool:
    q = _series_q(q)
    prod = QSeries.one(order)
    for r in range(n + 1):
        prod = prod * QSeries([1, q ** r], order)
    rhs = QSeries([q ** comb(s, 2) * q_binomial(n + 1, s, q) for s in range(order + 1)], order)
    if prod != rhs:
        return False
    prod = QSeries.one(order)
    for r in range(n + 1):
        prod = prod * QSeries([1, -(q ** r)], order).inverse()
    rhs = QSeries([q_binomial(s + n, s, q) for s in range(order + 1)], order)
    return prod == rhs


def check_leibniz_polynomiality(j: int, order: int, q=None) -> bool:
    """For f = 1+(q-1)t, prod_{s<=j} f(q^s x) * D^{(j)}(f^{-1}) has no terms above degree j."""
    q = _series_q(q)
    f = QSeries([1, q - 1], order)
    d = q_derivative(f.inverse(), j, q)
    prod = QSeries.one(d.order)
    for s in range(j + 1):
        prod = prod * f.scale_var(q ** s).truncate(d.order)
    w = prod * d
    return all(not c for c in w.coeffs[j + 1:])
