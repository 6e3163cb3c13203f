"""Exact scalars: rationals, Laurent polynomials in ``q`` and rational functions in ``q``.

Three scalar kinds are used throughout the package:

* :class:`fractions.Fraction` -- specialized values (``q`` replaced by a prime power);
* :class:`LaurentPoly` -- elements of ``Q[q, q^-1]``;
* :class:`QFunc` -- quotients ``f / prod Phi_d(q)^e_d`` with ``f`` a Laurent polynomial
  and ``Phi_d`` the cyclotomic polynomials.

Every denominator met in Hall-algebra and q-series identities is a product of
``q``-numbers, ``q^j - 1`` factors and powers of ``q``, so keeping denominators
in factored cyclotomic form gives a canonical representation without any
polynomial gcd.

Rationals embed into both symbolic kinds as constants.  Going the other way
(symbolic to rational) only happens through :func:`specialize`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC
from typing import Dict, Iterable, Mapping, Tuple, Union

__all__ = [
    "InexactDivisionError",
    "LaurentPoly",
    "QFunc",
    "Scalar",
    "as_fraction",
    "is_zero",
    "q_symbol",
    "scalar_arith",
    "specialize",
]


class InexactDivisionError(ArithmeticError):
    """Raised when a symbolic division has no exact result in the target ring."""


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    raise TypeError(f"not a rational number: {x!r}")


def _is_rational(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


class LaurentPoly:
    """Sparse Laurent polynomial in ``q`` with rational coefficients.

    Immutable; zero coefficients are never stored.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Union[Mapping[int, object], Iterable[Tuple[int, object]], None] = None):
        c: Dict[int, Fraction] = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
            for e, v in items:
                v = as_fraction(v)
                if v:
                    e = int(e)
                    s = c.get(e, 0) + v
                    if s:
                        c[e] = s
                    else:
                        c.pop(e, None)
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: Dict[int, Fraction]) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def q(cls) -> "LaurentPoly":
        return cls._raw({1: Fraction(1)})

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        c = as_fraction(c)
        return cls._raw({0: c} if c else {})

    @classmethod
    def monomial(cls, c, e: int) -> "LaurentPoly":
        c = as_fraction(c)
        return cls._raw({int(e): c} if c else {})

    # -- inspection -------------------------------------------------------
    @property
    def coeffs(self) -> Dict[int, Fraction]:
        return dict(self._c)

    def coefficient(self, e: int) -> Fraction:
        return self._c.get(e, Fraction(0))

    def terms(self):
        return sorted(self._c.items())

    def degree(self) -> int:
        if not self._c:
            raise ValueError("degree of the zero polynomial")
        return max(self._c)

    def valuation(self) -> int:
        if not self._c:
            raise ValueError("valuation of the zero polynomial")
        return min(self._c)

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def is_constant(self) -> bool:
        return not self._c or (len(self._c) == 1 and 0 in self._c)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._c.get(0, Fraction(0))

    def __bool__(self) -> bool:
        return bool(self._c)

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, LaurentPoly):
            return other
        if _is_rational(other):
            return LaurentPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, QFunc):
            return NotImplemented
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c = dict(self._c)
        for e, v in other._c.items():
            s = c.get(e, 0) + v
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -v for e, v in self._c.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, QFunc):
            return NotImplemented
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, QFunc):
            return NotImplemented
        if _is_rational(other):
            f = as_fraction(other)
            if not f:
                return LaurentPoly._raw({})
            return LaurentPoly._raw({e: v * f for e, v in self._c.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        c: Dict[int, Fraction] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                s = c.get(e, 0) + v1 * v2
                if s:
                    c[e] = s
                else:
                    c.pop(e, None)
        return LaurentPoly._raw(c)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if not self.is_monomial():
                raise InexactDivisionError(f"negative power of non-monomial {self}")
            (e, v), = self._c.items()
            return LaurentPoly._raw({e * n: Fraction(1) / v ** (-n)})
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def divmod_poly(self, other: "LaurentPoly"):
        """Long division after clearing negative exponents; returns (quotient, remainder)."""
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        a_shift = min(self._c) if self._c else 0
        b_shift = min(other._c)
        a = {e - a_shift: v for e, v in self._c.items()}
        b = {e - b_shift: v for e, v in other._c.items()}
        db = max(b)
        lead = b[db]
        quot: Dict[int, Fraction] = {}
        rem = dict(a)
        while rem and max(rem) >= db:
            top = max(rem)
            coef = rem[top] / lead
            sh = top - db
            quot[sh] = coef
            for e, v in b.items():
                k = e + sh
                s = rem.get(k, 0) - coef * v
                if s:
                    rem[k] = s
                else:
                    rem.pop(k, None)
        shift = a_shift - b_shift
        q = LaurentPoly._raw({e + shift: v for e, v in quot.items()})
        r = LaurentPoly._raw({e + a_shift: v for e, v in rem.items()})
        return q, r

    def exact_div(self, other) -> "LaurentPoly":
        if _is_rational(other):
            f = as_fraction(other)
            if not f:
                raise ZeroDivisionError("division by zero")
            return LaurentPoly._raw({e: v / f for e, v in self._c.items()})
        if not isinstance(other, LaurentPoly):
            raise TypeError(f"cannot divide LaurentPoly by {type(other).__name__}")
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        if other.is_monomial():
            (e0, v0), = other._c.items()
            return LaurentPoly._raw({e - e0: v / v0 for e, v in self._c.items()})
        q, r = self.divmod_poly(other)
        if r:
            raise InexactDivisionError(f"({self}) is not divisible by ({other})")
        return q

    def __truediv__(self, other):
        if isinstance(other, QFunc):
            return NotImplemented
        if not (_is_rational(other) or isinstance(other, LaurentPoly)):
            return NotImplemented
        return self.exact_div(other)

    def __rtruediv__(self, other):
        if not _is_rational(other):
            return NotImplemented
        return LaurentPoly.const(other).exact_div(self)

    # -- comparison / hashing --------------------------------------------
    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        if _is_rational(other):
            f = as_fraction(other)
            return self._c == ({0: f} if f else {})
        if isinstance(other, QFunc):
            return other == self
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # -- evaluation ------------------------------------------------------
    def __call__(self, q_value):
        return specialize(self, q_value)

    def substitute_power(self, k: int) -> "LaurentPoly":
        """Return p(q^k)."""
        if k == 0:
            return LaurentPoly.const(sum(self._c.values(), Fraction(0)))
        return LaurentPoly._raw({e * k: v for e, v in self._c.items()})

    # -- rendering -------------------------------------------------------
    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e, v in sorted(self._c.items()):
            neg = v < 0
            a = -v if neg else v
            if e == 0:
                body = str(a)
            else:
                mono = "q" if e == 1 else f"q^{e}"
                body = mono if a == 1 else f"{a}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"LaurentPoly({self})"


# ---------------------------------------------------------------------------
# cyclotomic machinery


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> LaurentPoly:
    """The d-th cyclotomic polynomial in q."""
    if d < 1:
        raise ValueError("cyclotomic index must be positive")
    p = LaurentPoly({d: 1, 0: -1})
    for e in range(1, d):
        if d % e == 0:
            p = p.exact_div(cyclotomic(e))
    return p


def _try_divide(p: LaurentPoly, d: int):
    q, r = p.divmod_poly(cyclotomic(d))
    return None if r else q


def factor_cyclotomic(p: LaurentPoly):
    """Write ``p = c * q^k * prod Phi_d^e_d``.

    Returns ``(c, k, {d: e_d})``; raises :class:`InexactDivisionError` if ``p``
    has a non-cyclotomic factor.
    """
    if not p:
        raise ZeroDivisionError("cannot factor zero")
    k = p.valuation()
    rest = p.exact_div(LaurentPoly.monomial(1, k))
    exps: Dict[int, int] = {}
    deg = rest.degree()
    d = 1
    while deg > 0:
        # deg Phi_d = phi(d) <= d, so trying d up to a generous bound terminates
        if d > 4 * deg + 8:
            raise InexactDivisionError(f"{p} is not a product of cyclotomic polynomials")
        quo = _try_divide(rest, d)
        if quo is None:
            d += 1
            continue
        exps[d] = exps.get(d, 0) + 1
        rest = quo
        deg = rest.degree()
    return rest.constant_value(), k, exps


class QFunc:
    """Rational function ``num / prod_d Phi_d(q)^e_d`` in lowest terms."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den: Mapping[int, int] | None = None):
        if isinstance(num, QFunc):
            self.num, self.den, self._hash = num.num, dict(num.den), None
            if den:
                raise TypeError("QFunc numerator cannot carry a denominator here")
            return
        if _is_rational(num):
            num = LaurentPoly.const(num)
        if not isinstance(num, LaurentPoly):
            raise TypeError(f"bad numerator {num!r}")
        den = {d: e for d, e in (den or {}).items() if e}
        if any(e < 0 for e in den.values()):
            raise ValueError("denominator exponents must be non-negative")
        self.num, self.den = self._reduce(num, den)
        self._hash = None

    @staticmethod
    def _reduce(num: LaurentPoly, den: Dict[int, int]):
        if not num:
            return num, {}
        out = {}
        for d, e in den.items():
            while e:
                quo = _try_divide(num, d)
                if quo is None:
                    break
                num = quo
                e -= 1
            if e:
                out[d] = e
        return num, out

    @classmethod
    def q(cls) -> "QFunc":
        return cls(LaurentPoly.q())

    @classmethod
    def _raw(cls, num, den):
        obj = cls.__new__(cls)
        obj.num, obj.den, obj._hash = num, den, None
        return obj

    def denominator(self) -> LaurentPoly:
        out = LaurentPoly.const(1)
        for d, e in self.den.items():
            out = out * cyclotomic(d) ** e
        return out

    def is_laurent(self) -> bool:
        return not self.den

    def to_laurent(self) -> LaurentPoly:
        if self.den:
            raise InexactDivisionError(f"{self} is not a Laurent polynomial")
        return self.num

    def __bool__(self):
        return bool(self.num)

    @staticmethod
    def _coerce(other):
        if isinstance(other, QFunc):
            return other
        if isinstance(other, LaurentPoly):
            return QFunc._raw(other, {})
        if _is_rational(other):
            return QFunc._raw(LaurentPoly.const(other), {})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        den = dict(self.den)
        for d, e in other.den.items():
            if e > den.get(d, 0):
                den[d] = e
        a = self.num
        for d, e in den.items():
            extra = e - self.den.get(d, 0)
            if extra:
                a = a * cyclotomic(d) ** extra
        b = other.num
        for d, e in den.items():
            extra = e - other.den.get(d, 0)
            if extra:
                b = b * cyclotomic(d) ** extra
        num, den = self._reduce(a + b, den)
        return QFunc._raw(num, den)

    __radd__ = __add__

    def __neg__(self):
        return QFunc._raw(-self.num, dict(self.den))

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return QFunc._raw(LaurentPoly(), {})
        den = dict(self.den)
        for d, e in other.den.items():
            den[d] = den.get(d, 0) + e
        num, den = self._reduce(self.num * other.num, den)
        return QFunc._raw(num, den)

    __rmul__ = __mul__

    def inverse(self) -> "QFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        c, k, exps = factor_cyclotomic(self.num)
        num = LaurentPoly.monomial(Fraction(1) / c, -k)
        for d, e in self.den.items():
            num = num * cyclotomic(d) ** e
        return QFunc._raw(num, exps)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        num = self.num ** n
        den = {d: e * n for d, e in self.den.items()}
        return QFunc._raw(num, den)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            if not self.den:
                self._hash = hash(self.num)
            else:
                self._hash = hash((self.num, frozenset(self.den.items())))
        return self._hash

    def __call__(self, q_value):
        return specialize(self, q_value)

    def substitute_power(self, k: int) -> "QFunc":
        """Return f(q^k) for k >= 1."""
        if k < 1:
            raise ValueError("substitute_power needs k >= 1")
        num = self.num.substitute_power(k)
        den: Dict[int, int] = {}
        # Phi_d(q^k) = prod of Phi_{d*m} over m | k with gcd condition; expand via q^{dk}-1
        out = QFunc._raw(num, {})
        for d, e in self.den.items():
            out = out / (QFunc._raw(cyclotomic(d).substitute_power(k), {}) ** e)
        return out

    def __str__(self):
        if not self.den:
            return str(self.num)
        den = " * ".join(
            (f"Phi{d}" if e == 1 else f"Phi{d}^{e}") for d, e in sorted(self.den.items())
        )
        return f"({self.num}) / ({den})"

    def __repr__(self):
        return f"QFunc({self})"


Scalar = Union[Fraction, LaurentPoly, QFunc]


def q_symbol(kind: str = "laurent"):
    """The formal variable q as a LaurentPoly (``kind='laurent'``) or QFunc."""
    if kind == "laurent":
        return LaurentPoly.q()
    if kind == "qfunc":
        return QFunc.q()
    raise ValueError(f"unknown symbolic kind {kind!r}")


def is_zero(x) -> bool:
    return not x


def specialize(p, q_value) -> Fraction:
    """Substitute a nonzero rational for q."""
    qv = as_fraction(q_value)
    if not qv:
        raise ZeroDivisionError("cannot specialize at q = 0")
    if _is_rational(p):
        return as_fraction(p)
    if isinstance(p, LaurentPoly):
        return sum((v * qv ** e for e, v in p._c.items()), Fraction(0))
    if isinstance(p, QFunc):
        den = specialize(p.denominator(), qv)
        if not den:
            raise ZeroDivisionError(f"denominator of {p} vanishes at q = {qv}")
        return specialize(p.num, qv) / den
    raise TypeError(f"cannot specialize {type(p).__name__}")


_OPS = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
}


def scalar_arith(a, b, op: str):
    """Apply ``op`` in {add, sub, mul, div} to two scalars exactly."""
    if op in _OPS:
        return _OPS[op](a, b)
    if op != "div":
        raise ValueError(f"unknown op {op!r}")
    if not b:
        raise ZeroDivisionError("division by zero")
    if _is_rational(a) and _is_rational(b):
        return as_fraction(a) / as_fraction(b)
    if isinstance(a, QFunc) or isinstance(b, QFunc):
        return QFunc._coerce(a) / QFunc._coerce(b)
    if isinstance(a, LaurentPoly) or isinstance(b, LaurentPoly):
        return LaurentPoly._coerce(a).exact_div(b if isinstance(b, LaurentPoly) else as_fraction(b))
    raise TypeError(f"unsupported operands {type(a).__name__}, {type(b).__name__}")
