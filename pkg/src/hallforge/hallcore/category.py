"""Finitary categories as seen by the Hall algebra: classes, gradings and Hall numbers.

A category object exposes

* ``zero`` and ``add(a, b)`` on class keys (direct sum),
* ``dim(key)``: the class in K_0^+ as an integer tuple,
* ``classes_of_dim(gamma)``,
* ``hall_numbers(M, N)``: ``{K: F^K_{MN}}``,
* ``subobject_counts(C, delta)``: ``{(A, B): F^C_{A,B}}`` with ``|B| = delta``,
* ``aut(key)``, ``hom(a, b)``, ``ext(a, b)`` (the latter two as dimensions over the base field),
* ``euler(gamma, delta)``: the Euler form on dimension vectors,
* ``q``: the base field size as a Scalar, and ``simples()`` in source order.

Keys are hashable and never interpreted by the algebra layer.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from ..exactnum import QFunc
from ..qcalc import q_binomial
from ..repfield.scenario import QuiverScenario


class Category:
    name = "category"
    hereditary = True

    def label(self, key) -> str:
        return str(key)

    def is_semisimple(self, key) -> bool:
        raise NotImplementedError

    def simple_multiplicities(self, key) -> List[Tuple[object, int]]:
        """For a semisimple class, pairs (simple key, multiplicity)."""
        raise NotImplementedError

    def end_q(self, simple_key):
        return self.q ** self.hom(simple_key, simple_key)

    def euler(self, a, b) -> int:
        """dim Hom - dim Ext^1 on dimension vectors."""
        raise NotImplementedError


class QuiverCategory(Category):
    """Representations of a quiver over F_p, with brute-force Hall numbers."""

    def __init__(self, scenario: QuiverScenario):
        self.scenario = scenario
        self.table = scenario.table
        self.spec = scenario.spec
        self.name = scenario.name
        self.q = Fraction(scenario.p)
        self.zero = self.table.zero_class()
        self.hereditary = self.spec.hereditary
        self._hall: Dict = {}
        self._lock = threading.Lock()

    @property
    def p(self) -> int:
        return self.spec.p

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def dim(self, key):
        return self.table.class_dim(key)

    def rank(self) -> int:
        return len(self.spec.vertices)

    def classes_of_dim(self, gamma):
        return self.table.classes_of_dim(gamma)

    def key(self, label: str, mult: int = 1):
        return self.table.class_of(label, mult)

    def parse(self, text: str):
        return self.table.parse_class(text)

    def label(self, key) -> str:
        return self.table.class_label(key)

    def indecomposables(self) -> List[tuple]:
        return [self.table.class_of(lab) for lab in self.table.labels]

    def simples(self) -> List[tuple]:
        return [self.table.class_of(lab) for lab in self.scenario.simple_labels()]

    def hall_numbers(self, M, N) -> Dict[tuple, Fraction]:
        key = (M, N)
        hit = self._hall.get(key)
        if hit is not None:
            return hit
        dn = self.dim(N)
        gamma = tuple(x + y for x, y in zip(self.dim(M), dn))
        out = {}
        for K in self.classes_of_dim(gamma):
            c = self.table.subobject_counts(K, dn).get((M, N), 0)
            if c:
                out[K] = Fraction(c)
        with self._lock:
            self._hall[key] = out
        return out

    def subobject_counts(self, C, delta):
        return self.table.subobject_counts(C, delta)

    def aut(self, key) -> Fraction:
        return Fraction(self.table.aut_order(key))

    def euler(self, a, b) -> int:
        return self.spec.euler(a, b)

    def ext_classes_with_middle(self, M, N, K) -> int:
        return self.table.ext_classes_with_middle(M, N, K)

    def hom(self, a, b) -> int:
        return self.table.hom_classes(a, b)

    def ext(self, a, b) -> int:
        return self.table.ext_classes(a, b)

    def is_semisimple(self, key) -> bool:
        return self.table.is_semisimple(key)

    def simple_multiplicities(self, key):
        out = []
        for i, m in enumerate(key):
            if m:
                c = [0] * len(key)
                c[i] = 1
                out.append((tuple(c), m))
        return out


class SingleVertexSymbolic(Category):
    """Finite-dimensional vector spaces over F_q, with q formal or specialized.

    Keys are 1-tuples ``(n,)``; Hall numbers are Gaussian binomials.
    """

    name = "single_vertex_symbolic"

    def __init__(self, q=None):
        self._qarg = q
        self.q = QFunc.q() if q is None else Fraction(q)
        self.zero = (0,)
        if q is not None:
            self.name = f"single_vertex_q{q}"

    def add(self, a, b):
        return (a[0] + b[0],)

    def dim(self, key):
        return key

    def rank(self) -> int:
        return 1

    def classes_of_dim(self, gamma):
        return [tuple(gamma)]

    def key(self, label: str = "S", mult: int = 1):
        return (mult,)

    def label(self, key) -> str:
        n = key[0]
        return "0" if n == 0 else ("S" if n == 1 else f"S^{n}")

    def parse(self, text: str):
        text = text.strip()
        if text in ("", "0"):
            return (0,)
        lab, _, m = text.partition("^")
        return (int(m) if m else 1,)

    def indecomposables(self):
        return [(1,)]

    def simples(self):
        return [(1,)]

    def hall_numbers(self, M, N):
        n = M[0] + N[0]
        return {(n,): q_binomial(n, N[0], self._qarg)}

    def subobject_counts(self, C, delta):
        n, k = C[0], delta[0]
        if k > n:
            return {}
        qb = q_binomial(n, k, self._qarg)
        return {((n - k,), (k,)): qb}

    def aut(self, key):
        n = key[0]
        out = self.q ** 0
        for i in range(n):
            out = out * (self.q ** n - self.q ** i)
        return out

    def euler(self, a, b) -> int:
        return a[0] * b[0]

    def hom(self, a, b) -> int:
        return a[0] * b[0]

    def ext(self, a, b) -> int:
        return 0

    def ext_classes_with_middle(self, M, N, K) -> int:
        return int(K == self.add(M, N))

    def is_semisimple(self, key) -> bool:
        return True

    def simple_multiplicities(self, key):
        return [((1,), key[0])] if key[0] else []
