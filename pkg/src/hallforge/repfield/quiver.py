"""Quivers with relations and their representations over F_p.

Conventions
-----------
* A representation assigns a column space ``F_p^{dims[v]}`` to each vertex and
  a ``dims[target] x dims[source]`` matrix to each arrow.
* Paths in relations are listed in traversal order: ``["a12", "a24"]`` is the
  composite ``a24 . a12``.
* ``vertices`` must be a source order: every arrow goes from an earlier vertex
  to a later one.
* Extensions ``0 -> N -> K -> M -> 0`` are realised with ``K_v = N_v + M_v``
  (N coordinates first) and block arrows ``[[N_a, c_a], [0, M_a]]``.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Iterator, List, Mapping, Sequence, Tuple

from .. import fplinalg as fl
from ..fplinalg import Matrix


class ScenarioError(ValueError):
    """Malformed quiver or representation data."""


class CapExceeded(RuntimeError):
    """An enumeration would exceed the configured size caps."""


DEFAULT_DIM_CAP = {2: 8, 3: 8}
DEFAULT_END_CAP = {2: 14, 3: 9}


def _override():
    raw = os.environ.get("HALL_FORGE_CAP_OVERRIDE")
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise ScenarioError(f"HALL_FORGE_CAP_OVERRIDE must be an integer, got {raw!r}")


def dim_cap(p: int) -> int:
    o = _override()
    return o if o is not None else DEFAULT_DIM_CAP.get(p, 5)


def end_cap(p: int) -> int:
    o = _override()
    return o if o is not None else DEFAULT_END_CAP.get(p, 6)


@dataclass(frozen=True)
class Arrow:
    source: str
    target: str
    label: str


@dataclass(frozen=True)
class QuiverSpec:
    vertices: Tuple[str, ...]
    arrows: Tuple[Arrow, ...]
    relations: Tuple[Tuple[Tuple[int, Tuple[str, ...]], ...], ...]
    p: int
    _arrow_by_label: Dict[str, Arrow] = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.p < 2 or any(self.p % d == 0 for d in range(2, int(self.p ** 0.5) + 1)):
            raise ScenarioError(f"field size {self.p} is not a prime")
        if len(set(self.vertices)) != len(self.vertices):
            raise ScenarioError("duplicate vertex ids")
        pos = {v: i for i, v in enumerate(self.vertices)}
        by_label = {}
        for a in self.arrows:
            if a.source not in pos or a.target not in pos:
                raise ScenarioError(f"arrow {a.label} uses an unknown vertex")
            if a.label in by_label:
                raise ScenarioError(f"duplicate arrow label {a.label}")
            if pos[a.source] >= pos[a.target]:
                raise ScenarioError(
                    f"vertex order is not a source order: arrow {a.label} runs "
                    f"{a.source} -> {a.target}"
                )
            by_label[a.label] = a
        object.__setattr__(self, "_arrow_by_label", by_label)
        for rel in self.relations:
            ends = set()
            for _, path in rel:
                if not path:
                    raise ScenarioError("empty path in relation")
                for lab in path:
                    if lab not in by_label:
                        raise ScenarioError(f"relation uses unknown arrow {lab}")
                for a, b in zip(path, path[1:]):
                    if by_label[a].target != by_label[b].source:
                        raise ScenarioError(f"path {path} is not composable")
                ends.add((by_label[path[0]].source, by_label[path[-1]].target))
            if len(ends) != 1:
                raise ScenarioError("relation paths have different endpoints")

    @classmethod
    def from_dict(cls, d: Mapping, p: int) -> "QuiverSpec":
        try:
            verts = tuple(str(v) for v in d["vertices"])
            arrows = tuple(Arrow(str(s), str(t), str(l)) for s, t, l in d.get("arrows", []))
            rels = []
            for rel in d.get("relations", []):
                rels.append(tuple((int(c) % p, tuple(str(x) for x in path)) for c, path in rel))
        except (KeyError, TypeError, ValueError) as exc:
            raise ScenarioError(f"bad quiver description: {exc}") from exc
        return cls(verts, arrows, tuple(rels), int(p))

    def arrow(self, label: str) -> Arrow:
        return self._arrow_by_label[label]

    @property
    def hereditary(self) -> bool:
        return not self.relations

    def index(self, v: str) -> int:
        return self.vertices.index(v)

    def dimvec(self, dims: Mapping[str, int]) -> Tuple[int, ...]:
        return tuple(int(dims.get(v, 0)) for v in self.vertices)

    def euler(self, a: Sequence[int], b: Sequence[int]) -> int:
        """Ringel form sum a_v b_v - sum_{arrows} a_s b_t (hereditary case)."""
        pos = {v: i for i, v in enumerate(self.vertices)}
        out = sum(x * y for x, y in zip(a, b))
        for ar in self.arrows:
            out -= a[pos[ar.source]] * b[pos[ar.target]]
        return out

    def simple(self, v: str) -> "Representation":
        dims = {w: (1 if w == v else 0) for w in self.vertices}
        return Representation.zero_maps(self, dims)


class Representation:
    """A representation of a QuiverSpec; immutable and hashable."""

    __slots__ = ("spec", "dims", "mats", "_key")

    def __init__(self, spec: QuiverSpec, dims: Mapping[str, int], mats: Mapping[str, Sequence], check: bool = True):
        self.spec = spec
        self.dims = spec.dimvec(dims)
        p = spec.p
        out = {}
        for a in spec.arrows:
            shape = (self.dim(a.target), self.dim(a.source))
            raw = mats.get(a.label)
            if raw is None:
                out[a.label] = fl.zeros(*shape)
            else:
                try:
                    out[a.label] = fl.as_matrix(raw, p, shape)
                except ValueError as exc:
                    raise ScenarioError(f"arrow {a.label}: {exc}") from exc
        self.mats: Dict[str, Matrix] = out
        self._key = None
        if check and spec.relations:
            for rel in spec.relations:
                if any(any(row) for row in self.eval_relation(rel)):
                    raise ScenarioError("representation violates a relation")

    @classmethod
    def zero_maps(cls, spec: QuiverSpec, dims: Mapping[str, int]) -> "Representation":
        return cls(spec, dims, {}, check=False)

    def dim(self, v: str) -> int:
        return self.dims[self.spec.index(v)]

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def key(self):
        if self._key is None:
            self._key = (self.dims, tuple(self.mats[a.label] for a in self.spec.arrows))
        return self._key

    def __eq__(self, other):
        return isinstance(other, Representation) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Representation(dims={self.dims})"

    def path_matrix(self, path: Sequence[str]) -> Matrix:
        p = self.spec.p
        first = self.spec.arrow(path[0])
        m = fl.identity(self.dim(first.source))
        for lab in path:
            a = self.spec.arrow(lab)
            m = fl.mat_mul(self.mats[lab], m, p, cols=self.dim(first.source))
        return m

    def eval_relation(self, rel) -> Matrix:
        p = self.spec.p
        _, path0 = rel[0]
        s = self.dim(self.spec.arrow(path0[0]).source)
        t = self.dim(self.spec.arrow(path0[-1]).target)
        acc = [[0] * s for _ in range(t)]
        for c, path in rel:
            m = self.path_matrix(path)
            for i in range(t):
                for j in range(s):
                    acc[i][j] = (acc[i][j] + c * m[i][j]) % p
        return tuple(tuple(r) for r in acc)

    def to_dict(self) -> dict:
        return {
            "dim": {v: d for v, d in zip(self.spec.vertices, self.dims)},
            "matrices": {k: [list(r) for r in m] for k, m in self.mats.items()},
        }


def direct_sum(reps: Sequence[Representation]) -> Representation:
    if not reps:
        raise ValueError("direct_sum of nothing; use Representation.zero_maps")
    spec = reps[0].spec
    dims = {v: sum(r.dim(v) for r in reps) for v in spec.vertices}
    mats = {}
    for a in spec.arrows:
        rows = []
        col_off = 0
        total_cols = dims[a.source]
        for r in reps:
            m = r.mats[a.label]
            c = r.dim(a.source)
            for row in m:
                rows.append((0,) * col_off + tuple(row) + (0,) * (total_cols - col_off - c))
            col_off += c
        mats[a.label] = tuple(rows)
    return Representation(spec, dims, mats, check=False)


def change_basis(rep: Representation, g: Mapping[str, Matrix]) -> Representation:
    """Conjugate arrow matrices by invertible g_v: M_a -> g_t M_a g_s^{-1}."""
    p = rep.spec.p
    inv = {v: fl.inverse(g[v], p) for v in rep.spec.vertices if rep.dim(v)}
    mats = {}
    for a in rep.spec.arrows:
        m = rep.mats[a.label]
        if rep.dim(a.source) and rep.dim(a.target):
            m = fl.mat_mul(fl.mat_mul(g[a.target], m, p), inv[a.source], p)
        mats[a.label] = m
    dims = dict(zip(rep.spec.vertices, rep.dims))
    return Representation(rep.spec, dims, mats, check=False)


def random_invertible(n: int, p: int, rng: random.Random) -> Matrix:
    while True:
        m = tuple(tuple(rng.randrange(p) for _ in range(n)) for _ in range(n))
        if fl.is_invertible(m, p):
            return m


def random_conjugate(rep: Representation, rng: random.Random) -> Representation:
    g = {v: random_invertible(d, rep.spec.p, rng) for v, d in zip(rep.spec.vertices, rep.dims)}
    return change_basis(rep, g)


# ---------------------------------------------------------------------------
# Hom and Ext


def _coboundary_rows(M: Representation, N: Representation):
    """Matrix of delta: (+)_v Hom(M_v, N_v) -> (+)_a Hom(M_s, N_t), as rows; also its width."""
    spec = M.spec
    offs, width = {}, 0
    for v in spec.vertices:
        offs[v] = width
        width += N.dim(v) * M.dim(v)
    rows = []
    for a in spec.arrows:
        s, t = a.source, a.target
        ms, nt, ns, mt = M.dim(s), N.dim(t), N.dim(s), M.dim(t)
        Na, Ma = N.mats[a.label], M.mats[a.label]
        for i in range(nt):
            for j in range(ms):
                row = [0] * width
                # (N_a f_s)[i][j] = sum_k N_a[i][k] f_s[k][j]
                for k in range(ns):
                    if Na[i][k]:
                        row[offs[s] + k * ms + j] += Na[i][k]
                # -(f_t M_a)[i][j] = -sum_k f_t[i][k] M_a[k][j]
                for k in range(mt):
                    if Ma[k][j]:
                        row[offs[t] + i * mt + k] -= Ma[k][j]
                rows.append(row)
    return rows, width, offs


def hom_space(M: Representation, N: Representation) -> List[Dict[str, Matrix]]:
    """Basis of Hom(M, N) as dicts vertex -> dims(N_v) x dims(M_v) matrix."""
    if M.spec is not N.spec and M.spec != N.spec:
        raise ScenarioError("representations of different quivers")
    p = M.spec.p
    rows, width, offs = _coboundary_rows(M, N)
    basis = []
    for vec in fl.nullspace(rows, p, width):
        f = {}
        for v in M.spec.vertices:
            n, m = N.dim(v), M.dim(v)
            o = offs[v]
            f[v] = tuple(tuple(vec[o + i * m + j] for j in range(m)) for i in range(n))
        basis.append(f)
    return basis


def hom_dim(M: Representation, N: Representation) -> int:
    if M.spec != N.spec:
        raise ScenarioError("representations of different quivers")
    rows, width, _ = _coboundary_rows(M, N)
    return width - fl.rank(rows, M.spec.p, width)


def _cochain_layout(M: Representation, N: Representation):
    offs, width = {}, 0
    for a in M.spec.arrows:
        offs[a.label] = width
        width += N.dim(a.target) * M.dim(a.source)
    return offs, width


def _relation_rows(M: Representation, N: Representation, offs, width):
    """Linear conditions on a cochain c so that the block middle term satisfies the relations."""
    spec, p = M.spec, M.spec.p
    rows = []
    for rel in spec.relations:
        _, path0 = rel[0]
        s0 = spec.arrow(path0[0]).source
        t0 = spec.arrow(path0[-1]).target
        acc: Dict[Tuple[int, int], List[int]] = {}
        for coef, path in rel:
            for i, lab in enumerate(path):
                a = spec.arrow(lab)
                L = N.path_matrix(path[i + 1:]) if i + 1 < len(path) else fl.identity(N.dim(a.target))
                R = M.path_matrix(path[:i]) if i > 0 else fl.identity(M.dim(a.source))
                ms = M.dim(a.source)
                for r in range(N.dim(t0)):
                    for col in range(M.dim(s0)):
                        row = acc.setdefault((r, col), [0] * width)
                        for x in range(N.dim(a.target)):
                            lx = L[r][x]
                            if not lx:
                                continue
                            for y in range(ms):
                                ry = R[y][col]
                                if ry:
                                    idx = offs[lab] + x * ms + y
                                    row[idx] = (row[idx] + coef * lx * ry) % p
        rows.extend(acc.values())
    return rows


def cocycle_basis(M: Representation, N: Representation) -> Tuple[List[Tuple[int, ...]], int]:
    """Basis of the cocycle space Z(M, N) and the rank of the coboundary map."""
    p = M.spec.p
    offs, width = _cochain_layout(M, N)
    if M.spec.relations:
        z = fl.nullspace(_relation_rows(M, N, offs, width), p, width)
    else:
        z = [tuple(1 if i == j else 0 for i in range(width)) for j in range(width)]
    rows, w0, _ = _coboundary_rows(M, N)
    rk = fl.rank(rows, p, w0)
    return z, rk


def ext_dim_cocycle(M: Representation, N: Representation) -> int:
    z, rk = cocycle_basis(M, N)
    return len(z) - rk


def ext_dim_euler(M: Representation, N: Representation) -> int:
    if not M.spec.hereditary:
        raise ScenarioError("Euler-form Ext path needs a quiver without relations")
    return hom_dim(M, N) - M.spec.euler(M.dims, N.dims)


def ext_dim(M: Representation, N: Representation) -> int:
    """dim Ext^1(M, N); hereditary quivers cross-check the Euler and cocycle paths."""
    e = ext_dim_cocycle(M, N)
    if M.spec.hereditary:
        e2 = ext_dim_euler(M, N)
        if e != e2:
            raise AssertionError(f"Ext paths disagree: cocycle {e}, Euler {e2}")
    return e


def middle_term(M: Representation, N: Representation, cochain: Sequence[int]) -> Representation:
    spec = M.spec
    offs, _ = _cochain_layout(M, N)
    dims = {v: N.dim(v) + M.dim(v) for v in spec.vertices}
    mats = {}
    for a in spec.arrows:
        s, t = a.source, a.target
        ns, ms, nt, mt = N.dim(s), M.dim(s), N.dim(t), M.dim(t)
        o = offs[a.label]
        rows = []
        for i in range(nt):
            rows.append(tuple(N.mats[a.label][i]) + tuple(cochain[o + i * ms + j] for j in range(ms)))
        for i in range(mt):
            rows.append((0,) * ns + tuple(M.mats[a.label][i]))
        mats[a.label] = tuple(rows)
    return Representation(spec, dims, mats, check=False)


def iter_span(basis: Sequence[Sequence[int]], p: int, width: int) -> Iterator[Tuple[int, ...]]:
    for coeffs in product(range(p), repeat=len(basis)):
        v = [0] * width
        for c, b in zip(coeffs, basis):
            if c:
                for i, x in enumerate(b):
                    if x:
                        v[i] = (v[i] + c * x) % p
        yield tuple(v)


# ---------------------------------------------------------------------------
# endomorphisms and automorphisms


def aut_order_bruteforce(M: Representation) -> int:
    """Count invertible elements of End(M) by enumerating the endomorphism space."""
    p = M.spec.p
    basis = hom_space(M, M)
    if len(basis) > end_cap(p):
        raise CapExceeded(f"End has dimension {len(basis)} > cap {end_cap(p)} at p={p}")
    verts = [v for v in M.spec.vertices if M.dim(v)]
    count = 0
    for coeffs in product(range(p), repeat=len(basis)):
        ok = True
        for v in verts:
            n = M.dim(v)
            m = [[0] * n for _ in range(n)]
            for c, f in zip(coeffs, basis):
                if c:
                    fv = f[v]
                    for i in range(n):
                        for j in range(n):
                            m[i][j] += c * fv[i][j]
            if not fl.is_invertible(tuple(tuple(x % p for x in r) for r in m), p):
                ok = False
                break
        if ok:
            count += 1
    return count


# ---------------------------------------------------------------------------
# subrepresentations


class Subrep:
    """A subrepresentation U of K, given by RREF bases per vertex."""

    __slots__ = ("K", "bases", "pivots")

    def __init__(self, K: Representation, bases, pivots):
        self.K, self.bases, self.pivots = K, bases, pivots

    def sub(self) -> Representation:
        K, spec = self.K, self.K.spec
        p = spec.p
        vidx = {v: i for i, v in enumerate(spec.vertices)}
        dims = {v: len(self.bases[vidx[v]]) for v in spec.vertices}
        mats = {}
        for a in spec.arrows:
            Bs = self.bases[vidx[a.source]]
            Pt = self.pivots[vidx[a.target]]
            Ka = K.mats[a.label]
            cols = []
            for b in Bs:
                w = fl.mat_vec(Ka, b, p)
                cols.append([w[pc] for pc in Pt])
            mats[a.label] = tuple(tuple(c[i] for c in cols) for i in range(len(Pt))) if cols else fl.zeros(len(Pt), 0)
        return Representation(spec, dims, mats, check=False)

    def quotient(self) -> Representation:
        K, spec = self.K, self.K.spec
        p = spec.p
        vidx = {v: i for i, v in enumerate(spec.vertices)}
        comp = []
        for i, v in enumerate(spec.vertices):
            piv = set(self.pivots[i])
            comp.append([c for c in range(K.dims[i]) if c not in piv])
        dims = {v: len(comp[vidx[v]]) for v in spec.vertices}
        mats = {}
        for a in spec.arrows:
            si, ti = vidx[a.source], vidx[a.target]
            Ka = K.mats[a.label]
            Bt, Pt = self.bases[ti], self.pivots[ti]
            cols = []
            for c in comp[si]:
                w = [Ka[r][c] for r in range(K.dims[ti])]
                w = fl.reduce_mod_subspace(w, Bt, Pt, p)
                cols.append([w[x] for x in comp[ti]])
            nt = len(comp[ti])
            mats[a.label] = tuple(tuple(col[i] for col in cols) for i in range(nt)) if cols else fl.zeros(nt, 0)
        return Representation(spec, dims, mats, check=False)


def iter_subreps(K: Representation, delta: Sequence[int]) -> Iterator[Subrep]:
    """All subrepresentations of K with dimension vector delta."""
    spec, p = K.spec, K.spec.p
    n = len(spec.vertices)
    if any(d < 0 or d > k for d, k in zip(delta, K.dims)):
        return
    if K.total_dim > dim_cap(p):
        raise CapExceeded(f"subobject enumeration in total dimension {K.total_dim} > cap {dim_cap(p)} at p={p}")
    vidx = {v: i for i, v in enumerate(spec.vertices)}
    out_arrows = [[a for a in spec.arrows if a.source == v] for v in spec.vertices]
    bases: List = [None] * n
    pivots: List = [None] * n

    def allowed(i):
        # {x in K_v : K_a x in U_t for every arrow a: v -> t}
        dv = K.dims[i]
        rows = []
        for a in out_arrows[i]:
            ti = vidx[a.target]
            Ka = K.mats[a.label]
            Bt, Pt = bases[ti], pivots[ti]
            nonpiv = [c for c in range(K.dims[ti]) if c not in set(Pt)]
            if not nonpiv:
                continue
            images = []
            for j in range(dv):
                w = [Ka[r][j] for r in range(K.dims[ti])]
                w = fl.reduce_mod_subspace(w, Bt, Pt, p)
                images.append([w[c] for c in nonpiv])
            for r in range(len(nonpiv)):
                rows.append([images[j][r] for j in range(dv)])
        if not rows:
            return [tuple(1 if x == y else 0 for x in range(dv)) for y in range(dv)]
        return fl.nullspace(rows, p, dv)

    def rec(i):
        if i < 0:
            yield Subrep(K, tuple(bases), tuple(pivots))
            return
        W = allowed(i)
        for B, P in fl.subspaces_within(tuple(W), delta[i], p, K.dims[i]):
            bases[i], pivots[i] = B, P
            yield from rec(i - 1)

    yield from rec(n - 1)


def count_subreps(K: Representation, delta: Sequence[int]) -> int:
    return sum(1 for _ in iter_subreps(K, delta))
