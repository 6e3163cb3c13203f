"""Grothendieck-group combinatorics of hereditary categories.

A :class:`ValuedGraphSpec` is the Euler form ``C_ij = (alpha_i, alpha_j)`` in the
basis of simples plus the position of each simple in a source order, so
``C_ij = 0`` whenever i comes after j in that order.  Vectors are integer tuples
in the alpha basis and act as columns.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence, Tuple

Vector = Tuple[int, ...]
Matrix = Tuple[Tuple[int, ...], ...]

DEFAULT_DEPTH = 50


class RootError(ValueError):
    pass


# ---------------------------------------------------------------------------
# small exact matrix helpers


def _inverse(m: Sequence[Sequence[int]]) -> List[List[Fraction]]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            raise RootError("Euler matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def _mul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def _integral(m, what: str) -> Matrix:
    out = []
    for row in m:
        r = []
        for x in row:
            x = Fraction(x)
            if x.denominator != 1:
                raise RootError(f"{what} is not integral")
            r.append(int(x))
        out.append(tuple(r))
    return tuple(out)


def apply(m: Matrix, v: Sequence[int]) -> Vector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def in_k0_plus(v: Sequence[int]) -> bool:
    return all(x >= 0 for x in v) and any(v)


# ---------------------------------------------------------------------------
# specs


@dataclass(frozen=True)
class ValuedGraphSpec:
    """Euler form of a hereditary category with r simples.

    ``order[i]`` is the position of simple i in the source order; the default
    is the basis order itself.
    """

    d: Tuple[int, ...]
    euler: Matrix
    order: Tuple[int, ...] = ()
    name: str = "valued"
    a: Tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        r = len(self.d)
        if len(self.euler) != r or any(len(row) != r for row in self.euler):
            raise RootError("Euler matrix must be r x r")
        if not self.order:
            object.__setattr__(self, "order", tuple(range(r)))
        if sorted(self.order) != list(range(r)):
            raise RootError(f"order {self.order} is not a permutation of 0..{r - 1}")
        for i in range(r):
            if self.euler[i][i] != self.d[i] or self.d[i] <= 0:
                raise RootError(f"diagonal entry {i} must equal d_{i} > 0")
            for j in range(r):
                if i != j and self.order[i] > self.order[j] and self.euler[i][j]:
                    raise RootError(
                        f"(alpha_{i}, alpha_{j}) = {self.euler[i][j]} but simple {i} comes later in the source order"
                    )
                if i != j and self.euler[i][j] > 0:
                    raise RootError("off-diagonal Euler entries of simples are -dim Ext and cannot be positive")
                if self.euler[i][j] % self.d[i] or self.euler[i][j] % self.d[j]:
                    raise RootError(f"(alpha_{i}, alpha_{j}) is not divisible by d_{i} and d_{j}")

    @property
    def rank(self) -> int:
        return len(self.d)

    @classmethod
    def rank2(cls, a0: int, a1: int, d0: int = 1, d1: int = 1, name: str | None = None) -> "ValuedGraphSpec":
        """Two simples with Ext(S_1, S_0) of dimension a_i over End S_i; basis (alpha_0, alpha_1)."""
        if min(a0, a1, d0, d1) < 1:
            raise RootError("a_i, d_i must be positive")
        if a0 * d0 != a1 * d1:
            raise RootError(f"a0*d0 = {a0 * d0} differs from a1*d1 = {a1 * d1}")
        c = ((d0, 0), (-a0 * d0, d1))
        return cls((d0, d1), c, (1, 0), name or f"rank2_{a0}_{a1}", (a0, a1))

    @classmethod
    def from_dict(cls, d: Mapping) -> "ValuedGraphSpec":
        try:
            if "a0" in d:
                return cls.rank2(int(d["a0"]), int(d["a1"]), int(d.get("d0", 1)), int(d.get("d1", 1)), d.get("name"))
            dd = tuple(int(x) for x in d["d"])
            euler = tuple(tuple(int(x) for x in row) for row in d["euler"])
            if "rank" in d and int(d["rank"]) != len(dd):
                raise RootError("rank does not match the length of d")
            order = tuple(int(x) for x in d.get("order", range(len(dd))))
            return cls(dd, euler, order, str(d.get("name", "valued")))
        except (KeyError, TypeError) as exc:
            raise RootError(f"bad root spec: {exc}") from exc

    @classmethod
    def from_quiver(cls, spec) -> "ValuedGraphSpec":
        """Euler form of a quiver spec (simply laced, vertices already in source order)."""
        r = len(spec.vertices)
        unit = [tuple(int(i == j) for j in range(r)) for i in range(r)]
        euler = tuple(tuple(spec.euler(unit[i], unit[j]) for j in range(r)) for i in range(r))
        return cls((1,) * r, euler, tuple(range(r)), getattr(spec, "name", "quiver"))

    def form(self, a: Sequence[int], b: Sequence[int]) -> int:
        return sum(a[i] * self.euler[i][j] * b[j] for i in range(self.rank) for j in range(self.rank))


# ---------------------------------------------------------------------------
# Coxeter transformation and its orbits


def coxeter_matrix(spec: ValuedGraphSpec) -> Matrix:
    """-C^{-1} C^T."""
    cinv = _inverse(spec.euler)
    ct = [list(col) for col in zip(*spec.euler)]
    return _integral([[-x for x in row] for row in _mul(cinv, ct)], "-C^-1 C^T")


def coxeter_inverse(spec: ValuedGraphSpec) -> Matrix:
    return _integral(_inverse(coxeter_matrix(spec)), "inverse Coxeter matrix")


def coxeter_power(spec: ValuedGraphSpec, k: int) -> Matrix:
    r = spec.rank
    out = [[int(i == j) for j in range(r)] for i in range(r)]
    step = coxeter_matrix(spec) if k >= 0 else coxeter_inverse(spec)
    for _ in range(abs(k)):
        out = _mul(step, out)
    return tuple(tuple(row) for row in out)


def gamma_bases(spec: ValuedGraphSpec) -> Tuple[List[Vector], List[Vector]]:
    """(gamma_{-i}) with (gamma_{-i}, alpha_j) = d_i delta_ij and (gamma_i) with (alpha_j, gamma_i) = d_i delta_ij."""
    cinv = _inverse(spec.euler)
    r = spec.rank
    minus = _integral([[spec.d[i] * cinv[i][j] for j in range(r)] for i in range(r)], "gamma_-")
    plus = _integral([[cinv[j][i] * spec.d[i] for j in range(r)] for i in range(r)], "gamma_+")
    return list(minus), list(plus)


@dataclass
class Orbit:
    index: int
    vectors: List[Vector]
    status: str  # "terminated" (left K0+) or "depth"


def _orbits(spec: ValuedGraphSpec, depth: int, sign: int) -> List[Orbit]:
    minus, plus = gamma_bases(spec)
    seeds = minus if sign < 0 else plus
    step = coxeter_inverse(spec) if sign < 0 else coxeter_matrix(spec)
    out = []
    for i, v in enumerate(seeds):
        vecs = []
        status = "depth"
        for _ in range(depth + 1):
            if not in_k0_plus(v):
                status = "terminated"
                break
            vecs.append(v)
            v = apply(step, v)
        out.append(Orbit(i, vecs, status))
    return out


@dataclass
class GammaOrbits:
    minus: List[Orbit]
    plus: List[Orbit]

    @property
    def gamma_minus(self) -> List[Vector]:
        return _flatten(self.minus)

    @property
    def gamma_plus(self) -> List[Vector]:
        return _flatten(self.plus)

    @property
    def terminated(self) -> bool:
        return all(o.status == "terminated" for o in self.minus + self.plus)


def _flatten(orbits: Sequence[Orbit]) -> List[Vector]:
    seen, out = set(), []
    for o in orbits:
        for v in o.vectors:
            if v not in seen:
                seen.add(v)
                out.append(v)
    return out


def gamma_orbits(spec: ValuedGraphSpec, depth: int = DEFAULT_DEPTH) -> GammaOrbits:
    """c^{-k}(gamma_{-i}) and c^k(gamma_i) for k <= depth, kept while in K0+."""
    return GammaOrbits(_orbits(spec, depth, -1), _orbits(spec, depth, +1))


def finite_type_test(spec: ValuedGraphSpec, depth: int = DEFAULT_DEPTH) -> str:
    """'finite' if all orbits leave K0+ and Gamma+ = Gamma-; 'infinite' if an orbit
    hits depth while the two sets stay disjoint; 'undecided' otherwise."""
    g = gamma_orbits(spec, depth)
    plus, minus = set(g.gamma_plus), set(g.gamma_minus)
    if g.terminated:
        return "finite" if plus == minus else "undecided"
    if not plus & minus:
        return "infinite"
    return "undecided"


def is_finite_type(spec: ValuedGraphSpec, depth: int = DEFAULT_DEPTH) -> bool:
    return finite_type_test(spec, depth) == "finite"


# ---------------------------------------------------------------------------
# normal order


@dataclass(frozen=True)
class Labelled:
    vector: Vector
    index: int
    k: int


def _labelled(orbits: Sequence[Orbit]) -> List[Labelled]:
    out = []
    for o in orbits:
        for k, v in enumerate(o.vectors):
            out.append(Labelled(v, o.index, k))
    return out


def normal_order(spec: ValuedGraphSpec, side: str = "minus", depth: int = DEFAULT_DEPTH) -> List[Labelled]:
    """Gamma_- sorted by (k, later source position first); Gamma_+ by (k, earlier source position first).

    On the preprojective side a product of exponentials is taken left to right
    in this order; on the preinjective side right to left.
    """
    g = gamma_orbits(spec, depth)
    pos = spec.order
    if side == "minus":
        items = _labelled(g.minus)
        items.sort(key=lambda t: (t.k, -pos[t.index]))
    elif side == "plus":
        items = _labelled(g.plus)
        items.sort(key=lambda t: (t.k, pos[t.index]))
    else:
        raise RootError(f"side must be 'minus' or 'plus', not {side!r}")
    seen, out = set(), []
    for t in items:
        if t.vector not in seen:
            seen.add(t.vector)
            out.append(t)
    return out


def exp_factor_sequence(spec: ValuedGraphSpec, side: str = "minus", depth: int = DEFAULT_DEPTH) -> List[Vector]:
    """Dimension vectors in the left-to-right order of the exponential factorization."""
    vecs = [t.vector for t in normal_order(spec, side, depth)]
    return vecs if side == "minus" else vecs[::-1]


# ---------------------------------------------------------------------------
# rank 2: beta sequence and Chebyshev forms


def beta_sequence(a0: int, a1: int, n_min: int, n_max: int) -> Dict[int, Vector]:
    """beta_{n+1} + beta_{n-1} = a_n beta_n with beta_0 = alpha_0, beta_{-1} = -alpha_1."""
    a = (a0, a1)
    beta: Dict[int, Vector] = {0: (1, 0), -1: (0, -1)}
    for n in range(0, n_max):
        an = a[n % 2]
        beta[n + 1] = tuple(an * x - y for x, y in zip(beta[n], beta[n - 1]))
    for n in range(-1, n_min, -1):
        an = a[n % 2]
        beta[n - 1] = tuple(an * x - y for x, y in zip(beta[n], beta[n + 1]))
    return {n: beta[n] for n in range(n_min, n_max + 1)}


def chebyshev_u(n: int, x) -> Fraction:
    if n < -1:
        raise ValueError("U_n is only used for n >= -1")
    prev, cur = Fraction(0), Fraction(1)
    if n == -1:
        return prev
    for _ in range(n):
        prev, cur = cur, 2 * x * cur - prev
    return cur


def _u_any(n: int, x) -> Fraction:
    # extend by U_{-n-2} = -U_n
    if n >= -1:
        return chebyshev_u(n, x)
    return -chebyshev_u(-n - 2, x)


def chebyshev_lambda_mu(n: int, t) -> Tuple[Fraction, Fraction]:
    """(lambda_n(t), mu_n(t)) = (U_{n-1}(t/2-1), U_n(t/2-1) + U_{n-1}(t/2-1))."""
    x = Fraction(t) / 2 - 1
    lam = _u_any(n - 1, x)
    return lam, _u_any(n, x) + lam


def beta_closed_form(a0: int, a1: int, r: int) -> Vector:
    """beta_r = a_{r+1} lambda_{floor((r+1)/2)} alpha_{r+1} + mu_{floor(r/2)} alpha_r (indices mod 2)."""
    t = a0 * a1
    a = (a0, a1)
    lam, _ = chebyshev_lambda_mu((r + 1) // 2, t)
    _, mu = chebyshev_lambda_mu(r // 2, t)
    out = [Fraction(0), Fraction(0)]
    out[(r + 1) % 2] += a[(r + 1) % 2] * lam
    out[r % 2] += mu
    return tuple(_integral([out], "beta")[0])


def beta_closed_form_check(a0: int, a1: int, r_max: int = 12) -> bool:
    seq = beta_sequence(a0, a1, -r_max, r_max)
    return all(beta_closed_form(a0, a1, r) == seq[r] for r in range(-r_max, r_max + 1))


# ---------------------------------------------------------------------------
# Hom and Ext between preprojectives


def preproj_dims(spec: ValuedGraphSpec, i: int, k: int, j: int, r: int) -> Tuple[int, int]:
    """(dim Hom(E_{gamma_{-i,-k}}, E_{gamma_{-j,-r}}), dim Ext^1(E_{gamma_{-j,-r}}, E_{gamma_{-i,-k}})).

    Both are Euler-form values: (gamma_{-i}, c^{k-r} gamma_{-j}) and
    (gamma_{-i}, c^{k+1-r} gamma_{-j}); the second is only meaningful for r > k
    and is reported as 0 when r = k.
    """
    if r < k:
        raise RootError("preproj_dims needs r >= k")
    minus, _ = gamma_bases(spec)
    gi, gj = minus[i], minus[j]
    hom = spec.form(gi, apply(coxeter_power(spec, k - r), gj))
    ext = spec.form(gi, apply(coxeter_power(spec, k + 1 - r), gj)) if r > k else 0
    return hom, ext


def preprojective_vector(spec: ValuedGraphSpec, i: int, k: int) -> Vector:
    minus, _ = gamma_bases(spec)
    return apply(coxeter_power(spec, -k), minus[i])


def rank2_chebyshev_dims(a0: int, a1: int, r: int, s: int) -> Tuple[int, int]:
    """dim over End P_r of Hom(P_r, P_s) and Ext^1(P_s, P_r) from the Chebyshev table (r <= s)."""
    t = a0 * a1
    a = (a0, a1)
    if (s - r) % 2 == 0:
        _, hom = chebyshev_lambda_mu((s - r) // 2, t)
        _, ext = chebyshev_lambda_mu((s - r) // 2 - 1, t) if s > r else (0, Fraction(0))
        return int(hom), int(ext)
    lam_h, _ = chebyshev_lambda_mu((s + 1 - r) // 2, t)
    lam_e, _ = chebyshev_lambda_mu((s - r - 1) // 2, t)
    return int(a[r % 2] * lam_h), int(a[r % 2] * lam_e)


def rank2_table_check(a0: int, a1: int, d0: int, d1: int, s_max: int = 8) -> List[str]:
    """Compare preproj_dims with the Chebyshev table for P_{2n+i} = gamma_{-i,-n}; returns mismatches."""
    spec = ValuedGraphSpec.rank2(a0, a1, d0, d1)
    d = (d0, d1)
    bad = []
    status = finite_type_test(spec, 2 * s_max)
    minus = gamma_orbits(spec, s_max).minus
    length = {o.index: len(o.vectors) for o in minus}
    for r in range(s_max + 1):
        for s in range(r, s_max + 1):
            i, k = r % 2, r // 2
            j, l = s % 2, s // 2
            if k >= length[i] or l >= length[j]:
                continue
            hom, ext = preproj_dims(spec, i, k, j, l)
            th, te = rank2_chebyshev_dims(a0, a1, r, s)
            if (hom, ext) != (d[i] * th, d[i] * te if s > r else 0):
                bad.append(f"P{r},P{s}: {(hom, ext)} vs {(d[i] * th, d[i] * te)} ({status})")
    return bad


def coxeter_sends_gamma(spec: ValuedGraphSpec) -> bool:
    """c(gamma_{-i}) = -gamma_i for all i."""
    c = coxeter_matrix(spec)
    minus, plus = gamma_bases(spec)
    return all(apply(c, m) == tuple(-x for x in p) for m, p in zip(minus, plus))


def determinant(m: Sequence[Sequence[int]]) -> Fraction:
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


# ---------------------------------------------------------------------------
# cross-checks against explicit representations


def indecomposable_with_dim(cat, vector: Sequence[int]):
    hits = [k for k in cat.indecomposables() if tuple(cat.dim(k)) == tuple(vector)]
    if len(hits) != 1:
        raise RootError(f"expected one indecomposable of dimension {tuple(vector)}, found {len(hits)}")
    return hits[0]


def normal_order_property_check(cat, spec: ValuedGraphSpec, side: str = "minus") -> List[str]:
    """Earlier M, later N: Ext(M, N) = 0 = Hom(N, M) on Gamma_-, Ext(N, M) = 0 = Hom(M, N) on Gamma_+."""
    keys = [indecomposable_with_dim(cat, t.vector) for t in normal_order(spec, side)]
    bad = []
    for a in range(len(keys)):
        for b in range(a + 1, len(keys)):
            m, n = keys[a], keys[b]
            if side == "minus":
                ok = cat.ext(m, n) == 0 and cat.hom(n, m) == 0
            else:
                ok = cat.ext(n, m) == 0 and cat.hom(m, n) == 0
            if not ok:
                bad.append(f"{cat.label(m)} < {cat.label(n)}")
    return bad


def preproj_dims_crosscheck(cat, spec: ValuedGraphSpec) -> List[str]:
    """preproj_dims against Hom/Ext computed on explicit representations."""
    minus = gamma_orbits(spec).minus
    bad = []
    for oi in minus:
        for k, vi in enumerate(oi.vectors):
            for oj in minus:
                for r, vj in enumerate(oj.vectors):
                    if r < k:
                        continue
                    hom, ext = preproj_dims(spec, oi.index, k, oj.index, r)
                    a, b = indecomposable_with_dim(cat, vi), indecomposable_with_dim(cat, vj)
                    want = (cat.hom(a, b), cat.ext(b, a) if r > k else 0)
                    if (hom, ext) != want:
                        bad.append(f"gamma(-{oi.index},-{k}) vs gamma(-{oj.index},-{r}): {(hom, ext)} != {want}")
    return bad


def normal_order_factorization_check(alg, spec: ValuedGraphSpec, side: str = "minus"):
    """Exp equals the ordered product of exp([E_gamma]) over Gamma_- (or Gamma_+), for finite type."""
    from .hallcore.checks import _compare, exp_product

    if not is_finite_type(spec):
        raise RootError("the ordered factorization covers all of Exp only in finite type")
    keys = [indecomposable_with_dim(alg.cat, v) for v in exp_factor_sequence(spec, side)]
    return _compare(alg.exp_all(), exp_product(alg, keys), order=[alg.cat.label(k) for k in keys])
