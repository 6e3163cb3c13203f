"""Writing indecomposable classes as noncommutative polynomials in the simples.

The recursion peels off the degree-gamma component of Exp, which is a single
ordered monomial in the simples (source-order factorization), and subtracts
the decomposable classes of the same dimension.  Each decomposable class is an
ordered product of divided powers of its summands, in an order where earlier
summands have no Ext to, and receive no Hom from, later ones.
"""

from __future__ import annotations

from fractions import Fraction
from graphlib import CycleError, TopologicalSorter
from typing import Dict, List, Tuple

from ..qcalc import q_factorial
from .algebra import HallAlgebra, HallElement

Word = Tuple[str, ...]
Poly = Dict[Word, object]


def poly_add(a: Poly, b: Poly, scale=1) -> Poly:
    out = dict(a)
    for w, c in b.items():
        s = out.get(w, 0) + c * scale
        if s:
            out[w] = s
        else:
            out.pop(w, None)
    return out


def poly_mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for w1, c1 in a.items():
        for w2, c2 in b.items():
            w = w1 + w2
            s = out.get(w, 0) + c1 * c2
            if s:
                out[w] = s
            else:
                out.pop(w, None)
    return out


def poly_pow(a: Poly, n: int) -> Poly:
    out: Poly = {(): Fraction(1)}
    for _ in range(n):
        out = poly_mul(out, a)
    return out


def evaluate(alg: HallAlgebra, poly: Poly) -> HallElement:
    cat = alg.cat
    out = alg.zero()
    for word, c in poly.items():
        t = alg.one()
        for lab in word:
            t = t * alg.basis(cat.parse(lab))
        out = out + t * c
    return out


def render(poly: Poly) -> str:
    if not poly:
        return "0"
    parts = []
    for w, c in sorted(poly.items(), key=lambda kv: (len(kv[0]), kv[0])):
        mono = "".join(f"[{x}]" for x in w) or "1"
        parts.append(f"({c}){mono}")
    return " + ".join(parts)


class SimpleExpander:
    def __init__(self, alg: HallAlgebra):
        self.alg = alg
        self.cat = alg.cat
        self._memo: Dict = {}
        self.simple_labels = [self.cat.label(s) for s in self.cat.simples()]

    def exp_component(self, gamma) -> Poly:
        # Exp|_gamma = prod_i [S_i^{gamma_i}] = prod_i [S_i]^{gamma_i} / [gamma_i]_{q_i}!
        cat = self.cat
        poly: Poly = {(): Fraction(1)}
        simples = cat.simples()
        for s, lab in zip(simples, self.simple_labels):
            a = sum(gamma[i] for i, x in enumerate(cat.dim(s)) if x)
            qs = cat.end_q(s)
            poly = poly_mul(poly, {(lab,) * a: 1 / q_factorial(a, qs)})
        return poly

    def order_summands(self, keys: List) -> List:
        cat = self.cat
        ts = TopologicalSorter()
        for i in keys:
            ts.add(i)
            for j in keys:
                if i != j and (cat.hom(j, i) or cat.ext(i, j)):
                    ts.add(i, j)
        try:
            return list(ts.static_order())
        except CycleError as exc:
            raise ValueError("summands admit no directed order") from exc

    def expand(self, key) -> Poly:
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        cat = self.cat
        gamma = cat.dim(key)
        summands = [(ind, m) for ind, m in self._summands(key)]
        if len(summands) == 1 and summands[0][1] == 1:
            poly = self._expand_indecomposable(key, gamma)
        else:
            order = self.order_summands([ind for ind, _ in summands])
            mult = dict(summands)
            poly = {(): Fraction(1)}
            for ind in order:
                m = mult[ind]
                qe = cat.end_q(ind)
                poly = poly_mul(poly, poly_pow(self.expand(ind), m))
                poly = {w: c / q_factorial(m, qe) for w, c in poly.items()}
        self._memo[key] = poly
        return poly

    def _summands(self, key):
        cat = self.cat
        out = []
        for ind in cat.indecomposables():
            i = next(k for k, x in enumerate(ind) if x)
            if key[i]:
                out.append((ind, key[i]))
        return out

    def _expand_indecomposable(self, key, gamma) -> Poly:
        cat = self.cat
        if key in cat.simples():
            return {(cat.label(key),): Fraction(1)}
        poly = self.exp_component(gamma)
        for other in cat.classes_of_dim(gamma):
            if other == key:
                continue
            if sum(other) == 1:
                raise ValueError(f"two indecomposables share dimension vector {gamma}")
            poly = poly_add(poly, self.expand(other), scale=-1)
        return poly


def express_in_simples(alg: HallAlgebra, label: str):
    """Return (polynomial in simples, round-trip ok) for the class named ``label``."""
    exp = SimpleExpander(alg)
    key = alg.cat.parse(label)
    poly = exp.expand(key)
    ok = evaluate(alg, poly) == alg.basis(key)
    return poly, ok
