"""Indecomposable tables, Krull-Schmidt decomposition and class-level Hall numbers."""

from __future__ import annotations

import threading
from collections import Counter
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .. import fplinalg as fl
from .quiver import (
    QuiverSpec,
    Representation,
    ScenarioError,
    cocycle_basis,
    direct_sum,
    ext_dim,
    hom_dim,
    iter_span,
    iter_subreps,
    middle_term,
)

IsoClass = Tuple[int, ...]
"""Multiplicity vector over the indecomposables of a table."""


def _solve_rational(H: Sequence[Sequence[int]], b: Sequence[int]) -> List[Fraction]:
    n = len(H)
    m = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(H, b)]
    for c in range(n):
        piv = next(i for i in range(c, n) if m[i][c])
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [row[n] for row in m]


def _det_nonzero(H) -> bool:
    n = len(H)
    m = [[Fraction(x) for x in row] for row in H]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return False
        m[c], m[piv] = m[piv], m[c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return True


class IndecomposableTable:
    """Complete list of indecomposables for a quiver, with Hom/Ext tables."""

    def __init__(self, spec: QuiverSpec, entries: Sequence[Tuple[str, Representation]]):
        self.spec = spec
        self.labels: Tuple[str, ...] = tuple(lab for lab, _ in entries)
        self.reps: Tuple[Representation, ...] = tuple(r for _, r in entries)
        if len(set(self.labels)) != len(self.labels):
            raise ScenarioError("duplicate indecomposable labels")
        self.dims: Tuple[Tuple[int, ...], ...] = tuple(r.dims for r in self.reps)
        n = len(self.reps)
        self.hom = tuple(tuple(hom_dim(a, b) for b in self.reps) for a in self.reps)
        self.ext = tuple(tuple(ext_dim(a, b) for b in self.reps) for a in self.reps)
        if not _det_nonzero(self.hom):
            raise ScenarioError("Hom matrix of the indecomposable table is singular")
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        # X_i is projective at v when hom(X_i, Y) = dim Y_v for every table entry
        self.projective_at: List[int | None] = []
        for i in range(n):
            hit = None
            for vi in range(len(spec.vertices)):
                if all(self.hom[i][j] == self.dims[j][vi] for j in range(n)):
                    hit = vi
                    break
            self.projective_at.append(hit)
        self.end_dims = tuple(self.hom[i][i] for i in range(n))
        self._memo: Dict = {}
        self._lock = threading.Lock()

    def __len__(self):
        return len(self.reps)

    # -- classes ---------------------------------------------------------
    def class_of(self, label: str, mult: int = 1) -> IsoClass:
        c = [0] * len(self)
        c[self.index[label]] = mult
        return tuple(c)

    def zero_class(self) -> IsoClass:
        return (0,) * len(self)

    def class_dim(self, c: IsoClass) -> Tuple[int, ...]:
        out = [0] * len(self.spec.vertices)
        for m, d in zip(c, self.dims):
            if m:
                for i, x in enumerate(d):
                    out[i] += m * x
        return tuple(out)

    def class_label(self, c: IsoClass) -> str:
        parts = []
        for lab, m in zip(self.labels, c):
            if m == 1:
                parts.append(lab)
            elif m > 1:
                parts.append(f"{lab}^{m}")
        return "+".join(parts) if parts else "0"

    def parse_class(self, text: str) -> IsoClass:
        c = [0] * len(self)
        text = text.strip()
        if text in ("", "0"):
            return tuple(c)
        for part in text.split("+"):
            part = part.strip()
            lab, _, m = part.partition("^")
            if lab not in self.index:
                raise ScenarioError(f"unknown indecomposable {lab!r}")
            c[self.index[lab]] += int(m) if m else 1
        return tuple(c)

    def class_rep(self, c: IsoClass) -> Representation:
        parts = []
        for r, m in zip(self.reps, c):
            parts.extend([r] * m)
        if not parts:
            return Representation.zero_maps(self.spec, {})
        return direct_sum(parts)

    def classes_of_dim(self, gamma: Sequence[int]) -> List[IsoClass]:
        """All multisets of indecomposables with total dimension vector gamma."""
        gamma = tuple(gamma)
        key = ("classes", gamma)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        n = len(self)
        out: List[IsoClass] = []
        cur = [0] * n

        def rec(i, rest):
            if i == n:
                if not any(rest):
                    out.append(tuple(cur))
                return
            d = self.dims[i]
            m = 0
            while all(r - m * x >= 0 for r, x in zip(rest, d)):
                cur[i] = m
                rec(i + 1, tuple(r - m * x for r, x in zip(rest, d)))
                m += 1
                if not any(d):
                    break
            cur[i] = 0

        rec(0, gamma)
        self._memo[key] = out
        return out

    def is_semisimple(self, c: IsoClass) -> bool:
        return all(m == 0 or sum(self.dims[i]) == 1 for i, m in enumerate(c))

    # -- decomposition ---------------------------------------------------
    def decompose(self, X: Representation) -> IsoClass:
        key = X.key()
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        b = []
        for i, r in enumerate(self.reps):
            pv = self.projective_at[i]
            b.append(X.dims[pv] if pv is not None else hom_dim(r, X))
        sol = _solve_rational(self.hom, b)
        if any(s.denominator != 1 or s < 0 for s in sol):
            raise ScenarioError(
                f"representation with dims {X.dims} does not decompose over the table "
                f"(incomplete table?): {sol}"
            )
        c = tuple(int(s) for s in sol)
        if self.class_dim(c) != X.dims:
            raise ScenarioError(f"decomposition {c} has the wrong dimension vector")
        # Hom out of X must match too; this catches tables missing an indecomposable
        for j, r in enumerate(self.reps):
            if hom_dim(X, r) != sum(m * self.hom[i][j] for i, m in enumerate(c) if m):
                raise ScenarioError(
                    f"representation with dims {X.dims} does not decompose over the table "
                    f"(incomplete table?)"
                )
        with self._lock:
            self._memo[key] = c
        return c

    # -- class-level homological data ------------------------------------
    def hom_classes(self, a: IsoClass, b: IsoClass) -> int:
        return sum(x * y * self.hom[i][j] for i, x in enumerate(a) if x for j, y in enumerate(b) if y)

    def ext_classes(self, a: IsoClass, b: IsoClass) -> int:
        return sum(x * y * self.ext[i][j] for i, x in enumerate(a) if x for j, y in enumerate(b) if y)

    def aut_order(self, c: IsoClass) -> int:
        """|Aut| for a direct sum of indecomposables with End/rad = F_p."""
        p = self.spec.p
        end = self.hom_classes(c, c)
        out = p ** (end - sum(m * m for m in c))
        for m in c:
            out *= fl.gl_order(m, p)
        return out

    # -- Hall numbers ----------------------------------------------------
    def subobject_counts(self, K: IsoClass, delta: Sequence[int]) -> Counter:
        """Counter over (quotient class, sub class) for subobjects of K of dimension delta."""
        key = ("sub", K, tuple(delta))
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        rep = self.class_rep(K)
        cnt: Counter = Counter()
        for U in iter_subreps(rep, delta):
            cnt[(self.decompose(U.quotient()), self.decompose(U.sub()))] += 1
        with self._lock:
            self._memo[key] = cnt
        return cnt

    def hall_number(self, M: IsoClass, N: IsoClass, K: IsoClass) -> int:
        """F^K_{MN}: subobjects U of K with U ~ N and K/U ~ M."""
        dm, dn, dk = self.class_dim(M), self.class_dim(N), self.class_dim(K)
        if tuple(x + y for x, y in zip(dm, dn)) != dk:
            return 0
        return self.subobject_counts(K, dn).get((M, N), 0)

    def ext_classes_with_middle(self, M: IsoClass, N: IsoClass, K: IsoClass) -> int:
        """|Ext^1(M, N)_K| by enumerating cocycles and classifying middle terms."""
        Mr, Nr = self.class_rep(M), self.class_rep(N)
        z, rk = cocycle_basis(Mr, Nr)
        width = sum(Nr.dim(a.target) * Mr.dim(a.source) for a in self.spec.arrows)
        hits = 0
        for c in iter_span(z, self.spec.p, width):
            if self.decompose(middle_term(Mr, Nr, c)) == K:
                hits += 1
        size = self.spec.p ** rk
        if hits % size:
            raise AssertionError("middle-term class is not constant on coboundary cosets")
        return hits // size


def dims_leq(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def dims_below(bound: Sequence[int]) -> Iterable[Tuple[int, ...]]:
    return product(*(range(b + 1) for b in bound))
