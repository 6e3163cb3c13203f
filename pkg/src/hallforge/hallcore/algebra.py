"""Truncated completed Hall algebras.

Elements are finite sums over isomorphism classes whose dimension vectors lie
below a fixed componentwise bound; products drop everything above the bound.
Because the structure constants respect the K_0 grading, this truncation is a
quotient by an ideal, so identities can be checked exactly degree by degree.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from ..qcalc import phi_nu


def _fits(d: Sequence[int], bound: Sequence[int]) -> bool:
    return all(x <= b for x, b in zip(d, bound))


class HallAlgebra:
    """H_A truncated at ``bound`` (componentwise on dimension vectors)."""

    def __init__(self, category, bound: Sequence[int]):
        self.cat = category
        self.bound = tuple(int(b) for b in bound)
        if len(self.bound) != category.rank():
            raise ValueError(f"truncation {self.bound} does not match rank {category.rank()}")
        self._dims = {}

    # -- construction ----------------------------------------------------
    def dim(self, key) -> Tuple[int, ...]:
        d = self._dims.get(key)
        if d is None:
            d = self._dims[key] = tuple(self.cat.dim(key))
        return d

    def fits(self, key) -> bool:
        return _fits(self.dim(key), self.bound)

    def element(self, terms: Mapping | None = None) -> "HallElement":
        return HallElement(self, terms or {})

    def zero(self) -> "HallElement":
        return HallElement(self, {})

    def one(self) -> "HallElement":
        return HallElement(self, {self.cat.zero: Fraction(1)})

    def basis(self, key, coeff=1) -> "HallElement":
        return HallElement(self, {key: coeff})

    def __getitem__(self, label: str) -> "HallElement":
        return self.basis(self.cat.parse(label))

    def all_dims(self) -> Iterable[Tuple[int, ...]]:
        return product(*(range(b + 1) for b in self.bound))

    def all_classes(self) -> List:
        out = []
        for d in self.all_dims():
            out.extend(self.cat.classes_of_dim(d))
        return out

    # -- products --------------------------------------------------------
    def multiply(self, x: "HallElement", y: "HallElement") -> "HallElement":
        if x.alg is not self or y.alg is not self:
            raise ValueError("elements belong to different Hall algebras")
        out: Dict = {}
        bound = self.bound
        for m, a in x.terms.items():
            dm = self.dim(m)
            for n, b in y.terms.items():
                dn = self.dim(n)
                if any(u + v > c for u, v, c in zip(dm, dn, bound)):
                    continue
                ab = a * b
                for k, f in self.cat.hall_numbers(m, n).items():
                    out[k] = out.get(k, 0) + ab * f
        return HallElement(self, out)

    def power(self, x: "HallElement", n: int) -> "HallElement":
        out = self.one()
        for _ in range(n):
            out = out * x
        return out

    def inverse(self, x: "HallElement") -> "HallElement":
        """Inverse of c*[0] + (positive degree part) by a truncated geometric series."""
        c0 = x.terms.get(self.cat.zero, 0)
        if not c0:
            raise ZeroDivisionError("element has no invertible constant term")
        y = x * (1 / c0) - self.one()
        out = self.one()
        term = self.one()
        while True:
            term = -(term * y)
            if not term:
                break
            out = out + term
        return out * (1 / c0)

    def commutator(self, x, y) -> "HallElement":
        """[x, y] = x^-1 y x y^-1."""
        return self.inverse(x) * y * x * self.inverse(y)

    # -- exponentials ----------------------------------------------------
    def exp_all(self) -> "HallElement":
        return HallElement(self, {k: Fraction(1) for k in self.all_classes()})

    def exp_class(self, key) -> "HallElement":
        """exp_{q_E}([E]) as the sum of the classes [E^a]."""
        out = {self.cat.zero: Fraction(1)}
        cur = key
        while self.fits(cur):
            out[cur] = Fraction(1)
            cur = self.cat.add(cur, key)
            if cur == key:
                break
        return HallElement(self, out)

    def exp_where(self, predicate) -> "HallElement":
        """Sum of all classes satisfying ``predicate`` (e.g. membership in a subcategory)."""
        return HallElement(self, {k: Fraction(1) for k in self.all_classes() if predicate(k)})

    def series_in(self, x: "HallElement", coeffs: Sequence) -> "HallElement":
        """sum_n coeffs[n] x^n, stopping once x^n vanishes at this truncation."""
        out = self.zero()
        pw = self.one()
        for c in coeffs:
            if not pw:
                break
            if c:
                out = out + pw * c
            pw = pw * x
        return out

    def phi(self, nu: int, x: "HallElement", qe, scale=1) -> "HallElement":
        """Phi_nu(scale * x, q_E) evaluated on a positive-degree element x."""
        order = self.max_power(x)
        ser = phi_nu(nu, order, qe)
        return self.series_in(x, [c * scale ** n for n, c in enumerate(ser.coeffs)])

    def max_power(self, x: "HallElement") -> int:
        """Largest n with x^n possibly nonzero at this truncation (x of positive degree)."""
        mins = None
        for k in x.terms:
            d = self.dim(k)
            if not any(d):
                raise ValueError("element has a constant term")
            s = sum(d)
            mins = s if mins is None else min(mins, s)
        if mins is None:
            return 0
        return sum(self.bound) // mins

    def ad(self, x, y, qs: Sequence) -> "HallElement":
        """(ad_{(q_0..q_r)} x)(y): compose y -> x y - q_i y x."""
        for qi in qs:
            y = x * y - (y * x) * qi
        return y

    def ad_star(self, x, y, qs: Sequence) -> "HallElement":
        for qi in qs:
            y = y * x - (x * y) * qi
        return y


class HallElement:
    """Sparse Scalar-valued function on isomorphism classes, truncated."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: HallAlgebra, terms: Mapping):
        self.alg = alg
        self.terms = {k: v for k, v in terms.items() if v and alg.fits(k)}

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        if not isinstance(other, HallElement):
            return self + self.alg.one() * other
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return HallElement(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return HallElement(self.alg, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, HallElement):
            return self.alg.multiply(self, other)
        return HallElement(self.alg, {k: v * other for k, v in self.terms.items()})

    def __rmul__(self, other):
        return HallElement(self.alg, {k: other * v for k, v in self.terms.items()})

    def __pow__(self, n: int):
        return self.alg.power(self, n)

    def coefficient(self, key):
        return self.terms.get(key, Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, HallElement):
            return NotImplemented
        return not (self - other).terms

    def homogeneous(self, gamma) -> "HallElement":
        gamma = tuple(gamma)
        return HallElement(self.alg, {k: v for k, v in self.terms.items() if self.alg.dim(k) == gamma})

    def support_labels(self, limit: int = 10) -> List[str]:
        keys = sorted(self.terms, key=lambda k: (self.alg.dim(k), str(k)))
        return [self.alg.cat.label(k) for k in keys[:limit]]

    def __repr__(self):
        items = sorted(self.terms.items(), key=lambda kv: (self.alg.dim(kv[0]), str(kv[0])))
        body = " + ".join(f"({v})[{self.alg.cat.label(k)}]" for k, v in items)
        return body or "0"


class TensorElement:
    """Sparse function on pairs of classes, truncated by total degree |A| + |B|."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: HallAlgebra, terms: Mapping):
        self.alg = alg
        bound = alg.bound
        self.terms = {
            (a, b): v
            for (a, b), v in terms.items()
            if v and all(x + y <= c for x, y, c in zip(alg.dim(a), alg.dim(b), bound))
        }

    @classmethod
    def tensor(cls, x: HallElement, y: HallElement) -> "TensorElement":
        out = {}
        for a, u in x.terms.items():
            for b, v in y.terms.items():
                out[(a, b)] = u * v
        return cls(x.alg, out)

    def __add__(self, other: "TensorElement"):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return TensorElement(self.alg, out)

    def __sub__(self, other: "TensorElement"):
        return self + TensorElement(self.alg, {k: -v for k, v in other.terms.items()})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return not (self - other).terms

    def support_labels(self, limit: int = 10) -> List[str]:
        lab = self.alg.cat.label
        keys = sorted(self.terms, key=lambda k: (self.alg.dim(k[0]), self.alg.dim(k[1]), str(k)))
        return [f"{lab(a)} (x) {lab(b)}" for a, b in keys[:limit]]
