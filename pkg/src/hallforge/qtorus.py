"""Quantum plane series, quantum dilogarithms and the integration map.

A :class:`QPlaneSeries` is a truncated sum ``sum c_mn x0^m x1^n`` kept in normal
order (every x0 to the left of every x1) in the algebra with
``x1 x0 = q^e x0 x1``.  Coefficients are exact scalars; with ``q`` left formal
they are :class:`QFunc` values so the dilogarithm identities are checked as
identities of rational functions, degree by degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, List, Mapping, Sequence, Tuple

from .exactnum import QFunc
from .qcalc import QSeries, q_factorial

Mono = Tuple[int, int]


class TorusError(ValueError):
    pass


@dataclass(frozen=True)
class TorusParams:
    a0: int
    a1: int
    d0: int = 1
    d1: int = 1

    def __post_init__(self):
        if min(self.a0, self.a1, self.d0, self.d1) < 1:
            raise TorusError("a_i and d_i must be positive")
        if self.a0 * self.d0 != self.a1 * self.d1:
            raise TorusError(f"not symmetrizable: a0*d0 = {self.a0 * self.d0} != a1*d1 = {self.a1 * self.d1}")

    @property
    def exponent(self) -> int:
        """Exponent e in x1 x0 = q^e x0 x1 coming from the Ringel form: a0*d0 = a1*d1."""
        return self.a0 * self.d0

    @property
    def product_exponent(self) -> int:
        """a0*a1; equal to :attr:`exponent` exactly when d0 = a1."""
        return self.a0 * self.a1

    def relation_exponent(self, relation: str = "ringel") -> int:
        if relation == "ringel":
            return self.exponent
        if relation == "product":
            return self.product_exponent
        raise TorusError(f"unknown relation convention {relation!r}")

    @classmethod
    def from_dict(cls, d: Mapping) -> "TorusParams":
        return cls(int(d["a0"]), int(d["a1"]), int(d.get("d0", 1)), int(d.get("d1", 1)))


class QPlaneSeries:
    __slots__ = ("terms", "e", "trunc", "q")

    def __init__(self, terms: Mapping[Mono, object], e: int, trunc: int, q=None):
        self.e = int(e)
        self.trunc = int(trunc)
        self.q = QFunc.q() if q is None else q
        self.terms: Dict[Mono, object] = {
            (int(m), int(n)): c for (m, n), c in terms.items() if c and m + n <= trunc
        }

    def like(self, terms: Mapping[Mono, object]) -> "QPlaneSeries":
        return QPlaneSeries(terms, self.e, self.trunc, self.q)

    def one(self) -> "QPlaneSeries":
        return self.like({(0, 0): 1})

    @classmethod
    def monomial(cls, m: int, n: int, e: int, trunc: int, coeff=1, q=None) -> "QPlaneSeries":
        return cls({(m, n): coeff}, e, trunc, q)

    def _check(self, other: "QPlaneSeries"):
        if (self.e, self.trunc) != (other.e, other.trunc) or self.q != other.q:
            raise TorusError("series live in different quantum planes")

    def __add__(self, other):
        if not isinstance(other, QPlaneSeries):
            other = self.one() * other
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return self.like(out)

    __radd__ = __add__

    def __neg__(self):
        return self.like({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, QPlaneSeries):
            return self.like({k: v * other for k, v in self.terms.items()})
        return qplane_product(self, other)

    def __rmul__(self, other):
        return self.like({k: other * v for k, v in self.terms.items()})

    def __pow__(self, n: int):
        out = self.one()
        for _ in range(n):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, QPlaneSeries):
            return NotImplemented
        return not (self - other).terms

    def coefficient(self, m: int, n: int):
        return self.terms.get((m, n), Fraction(0))

    def constant(self):
        return self.terms.get((0, 0), Fraction(0))

    def min_degree(self) -> int:
        return min((m + n for m, n in self.terms), default=self.trunc + 1)

    def inverse(self) -> "QPlaneSeries":
        c0 = self.constant()
        if not c0:
            raise ZeroDivisionError("series has no invertible constant term")
        y = self * (1 / c0) - self.one()
        out, term = self.one(), self.one()
        while True:
            term = -(term * y)
            if not term:
                break
            out = out + term
        return out * (1 / c0)

    def __repr__(self):
        items = sorted(self.terms.items())
        return " + ".join(f"({c})x0^{m}x1^{n}" for (m, n), c in items) or "0"


def qplane_product(f: QPlaneSeries, g: QPlaneSeries) -> QPlaneSeries:
    """Normal-order using x1^b x0^c = q^{e b c} x0^c x1^b."""
    f._check(g)
    q, e, trunc = f.q, f.e, f.trunc
    powers: Dict[int, object] = {}
    out: Dict[Mono, object] = {}
    for (a, b), u in f.terms.items():
        for (c, d), v in g.terms.items():
            if a + b + c + d > trunc:
                continue
            k = e * b * c
            w = powers.get(k)
            if w is None:
                w = powers[k] = q ** k
            key = (a + c, b + d)
            out[key] = out.get(key, 0) + u * v * w
    return f.like(out)


def substitute(coeffs: Sequence, arg: QPlaneSeries) -> QPlaneSeries:
    """sum_n coeffs[n] arg^n; ``arg`` must have zero constant term."""
    if arg.constant():
        raise TorusError("argument has a nonzero constant term")
    out = arg.like({})
    pw = arg.one()
    for c in coeffs:
        if not pw:
            break
        if c:
            out = out + pw * c
        pw = pw * arg
    return out


def _dilog_coeffs(q_param, order: int, inverse: bool = False) -> List:
    # E_q(t) = sum t^n / ((q-1)^n [n]_q!); inverse: sum (-1)^n q^C(n,2) t^n / ((q-1)^n [n]_q!)
    out = []
    for n in range(order + 1):
        c = 1 / ((q_param - 1) ** n * q_factorial(n, q_param))
        if inverse:
            c = (-1) ** n * q_param ** comb(n, 2) * c
        out.append(c)
    return out


def dilog_E(q_param, arg: QPlaneSeries, inverse: bool = False) -> QPlaneSeries:
    """E_{q_param}(arg) = exp_{q_param}(arg / (q_param - 1)), or its inverse."""
    if arg.constant():
        raise TorusError("dilogarithm argument has a nonzero constant term")
    order = arg.trunc // max(arg.min_degree(), 1)
    return substitute(_dilog_coeffs(q_param, order, inverse), arg)


def commutator(x: QPlaneSeries, y: QPlaneSeries, x_inv=None, y_inv=None) -> QPlaneSeries:
    """[x, y] = x^-1 y x y^-1."""
    x_inv = x.inverse() if x_inv is None else x_inv
    y_inv = y.inverse() if y_inv is None else y_inv
    return x_inv * y * x * y_inv


@dataclass
class DilogReport:
    ok: bool
    case: int
    trunc: int
    first_failing_degree: int | None
    details: Dict

    def __bool__(self):
        return self.ok


def _first_failing_degree(diff: QPlaneSeries):
    return min((m + n for m, n in diff.terms), default=None)


def dilog_sides(params: TorusParams, trunc: int, q=None, relation: str = "ringel"):
    """Both sides of the rank-2 dilogarithm identity for a0*a1 in {1, 2, 3}."""
    case = params.a0 * params.a1
    if case not in (1, 2, 3):
        raise TorusError(f"no dilogarithm identity for a0*a1 = {case}")
    q = QFunc.q() if q is None else q
    q0, q1 = q ** params.d0, q ** params.d1
    p0, p1 = q0 ** comb(params.a0, 2), q1 ** comb(params.a1, 2)
    e = params.relation_exponent(relation)

    def mono(m, n, c=1):
        return QPlaneSeries.monomial(m, n, e, trunc, c, q)

    x0, x1 = mono(1, 0), mono(0, 1)
    E0, E1 = dilog_E(q0, x0), dilog_E(q1, x1)
    lhs = commutator(E0, E1, dilog_E(q0, x0, inverse=True), dilog_E(q1, x1, inverse=True))
    a0, a1 = params.a0, params.a1
    if case == 1:
        factors = [(q1, mono(1, 1))]
    elif case == 2:
        factors = [(q1, mono(a0, 1, p0)), (q0, mono(1, a1, p1))]
    else:
        factors = [
            (q1, mono(a0, 1, p0)),
            (q0, mono(2, a1, q0 * p1)),
            (q1, mono(a0, 2, p0 * q1)),
            (q0, mono(1, a1, p1)),
        ]
    rhs = lhs.one()
    for qp, arg in factors:
        rhs = rhs * dilog_E(qp, arg)
    return lhs, rhs, {"E0": E0, "E1": E1}


def dilog_identity_check(params: TorusParams, trunc: int = 8, q=None, relation: str = "ringel") -> DilogReport:
    lhs, rhs, parts = dilog_sides(params, trunc, q, relation)
    diff = lhs - rhs
    e = params.relation_exponent(relation)
    details: Dict = {"exponent": e}
    ok = not diff
    if params.a0 * params.a1 == 1:
        # pentagon form: E(x1) E(x0) = E(x0) E(x0 x1) E(x1)
        E0, E1 = parts["E0"], parts["E1"]
        q1 = (QFunc.q() if q is None else q) ** params.d1
        mid = dilog_E(q1, QPlaneSeries.monomial(1, 1, e, trunc, 1, E0.q))
        pent = E1 * E0 - E0 * mid * E1
        details["pentagon_form"] = not pent
        ok = ok and not pent
    return DilogReport(ok, params.a0 * params.a1, trunc, _first_failing_degree(diff), details)


# ---------------------------------------------------------------------------
# integration map


def integrate(x, scenario=None):
    """[M] -> t^{|M|} / |Aut M|.

    Rank-2 categories land in the quantum plane, written in the normal-ordered
    basis; rank-1 categories (single vertex, Jordan) land in one-variable series.
    """
    alg = x.alg
    cat = alg.cat
    q = cat.q
    rank = cat.rank()
    if rank == 1:
        # t^{n alpha} = q^{(alpha, alpha) C(n, 2)} x^n with x = t^alpha
        order = alg.bound[0]
        d = cat.euler((1,), (1,))
        coeffs = [Fraction(0)] * (order + 1)
        for k, v in x.terms.items():
            n = alg.dim(k)[0]
            coeffs[n] = coeffs[n] + v * q ** (d * comb(n, 2)) / cat.aut(k)
        return QSeries(coeffs, order)
    if rank != 2:
        raise TorusError("integration is implemented for rank 1 and rank 2 only")
    i0, i1 = _rank2_indices(cat)
    s0, s1 = _unit(i0, 2), _unit(i1, 2)
    e01, e10 = cat.euler(s0, s1), cat.euler(s1, s0)
    d0, d1 = cat.euler(s0, s0), cat.euler(s1, s1)
    # x1 x0 = <a0,a1>/<a1,a0> x0 x1 with <a,b> = q^{euler(a,b)}
    e = e01 - e10
    trunc = sum(alg.bound)
    out: Dict[Mono, object] = {}
    for k, v in x.terms.items():
        d = alg.dim(k)
        m, n = d[i0], d[i1]
        # t^{m a0 + n a1} = q^{d0 C(m,2) + d1 C(n,2) + m n euler(a0,a1)} x0^m x1^n
        w = q ** (d0 * comb(m, 2) + d1 * comb(n, 2) + m * n * e01)
        out[(m, n)] = out.get((m, n), 0) + v * w / cat.aut(k)
    return QPlaneSeries(out, e, trunc, q)


def _unit(i: int, r: int) -> Tuple[int, ...]:
    return tuple(1 if j == i else 0 for j in range(r))


def _rank2_indices(cat) -> Tuple[int, int]:
    """Coordinates of (alpha_0, alpha_1), where Ext(S_1, S_0) may be nonzero."""
    if cat.euler((1, 0), (0, 1)) < 0:
        return 1, 0
    return 0, 1


def integrate_homomorphism_check(alg) -> Tuple[bool, List[str]]:
    """Exhaustive check of int(xy) = int(x) int(y) on basis classes within the bound."""
    bad = []
    classes = alg.all_classes()
    ints = {k: integrate(alg.basis(k)) for k in classes}
    for a in classes:
        for b in classes:
            lhs = integrate(alg.basis(a) * alg.basis(b))
            rhs = ints[a] * ints[b]
            if isinstance(rhs, QPlaneSeries):
                rhs = _clip(rhs, alg, a, b)
            if lhs != rhs:
                bad.append(f"{alg.cat.label(a)} * {alg.cat.label(b)}")
    return not bad, bad


def _clip(s: QPlaneSeries, alg, a, b) -> QPlaneSeries:
    # the Hall product drops classes beyond the componentwise bound
    i0, i1 = _rank2_indices(alg.cat)
    bound = alg.bound
    return s.like({(m, n): c for (m, n), c in s.terms.items() if m <= bound[i0] and n <= bound[i1]})


# ---------------------------------------------------------------------------
# Jordan category generating functions


def jordan_gl_identity_check(r: int) -> bool:
    """(sum_lambda t^|lambda| / a_lambda(q)) (sum_s (-1)^s q^C(s,2) t^s / |GL(s,q)|) = 1 up to t^r."""
    from .jordansym import aut_order_jordan, partitions

    q = QFunc.q()
    left = QSeries([sum((1 / QFunc(aut_order_jordan(lam)) for lam in partitions(n)), QFunc(0))
                    for n in range(r + 1)], r)
    right = QSeries([(-1) ** s * q ** comb(s, 2) / QFunc(aut_order_jordan((1,) * s)) for s in range(r + 1)], r)
    return left * right == QSeries.one(r)
