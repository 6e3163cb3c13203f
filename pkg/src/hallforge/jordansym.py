"""The Jordan category: nilpotent operators over F_p, Hall numbers and symmetric functions.

The module I_lambda is F_p^{|lambda|} with a nilpotent operator in Jordan form,
one block per part.  Hall numbers count invariant subspaces by the Jordan types
of sub and quotient.  Hall-Littlewood polynomials are computed from the
symmetrization formula by antisymmetrizing ``x^lambda prod_{i<j} (x_i - q x_j)``
and dividing by the Vandermonde determinant, which turns each surviving
alternant into a Schur polynomial.
"""

from __future__ import annotations

import threading
from collections import Counter, defaultdict
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import comb
from typing import Dict, Iterator, List, Mapping, Sequence, Tuple

from . import fplinalg as fl
from .exactnum import LaurentPoly, QFunc, specialize
from .hallcore.algebra import HallAlgebra
from .hallcore.category import Category
from .qcalc import q_factorial
from .repfield.quiver import CapExceeded, _override

Partition = Tuple[int, ...]

JORDAN_LENGTH_CAP = {2: 5, 3: 4}
UNIT_ENUM_CAP = 2 ** 16
HL_VARS_CAP = 7


# ---------------------------------------------------------------------------
# partitions


def partitions(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """Partitions of n in reverse lexicographic order, as weakly decreasing tuples."""
    if n == 0:
        yield ()
        return
    top = n if max_part is None else min(n, max_part)
    for k in range(top, 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def as_partition(parts: Sequence[int]) -> Partition:
    out = tuple(sorted((int(x) for x in parts if int(x)), reverse=True))
    if any(x < 0 for x in out):
        raise ValueError(f"negative part in {parts!r}")
    return out


def parse_partition(text: str) -> Partition:
    text = text.strip().strip("()")
    if not text or text in ("0", "empty"):
        return ()
    return as_partition(int(x) for x in text.split(","))


def multiplicities(lam: Sequence[int]) -> Dict[int, int]:
    return dict(Counter(lam))


def n_of_lambda(lam: Sequence[int]) -> int:
    return sum(i * x for i, x in enumerate(lam))


def union(a: Partition, b: Partition) -> Partition:
    return tuple(sorted(a + b, reverse=True))


# ---------------------------------------------------------------------------
# automorphisms


def aut_order_jordan(lam: Sequence[int], q=None):
    """q^{sum_{i,j} (min(i,j) - delta_ij) a_i a_j} prod_i |GL(a_i, q)| with lambda = (1^a_1 2^a_2 ...)."""
    qq = LaurentPoly.q() if q is None else q
    a = multiplicities(lam)
    e = sum((min(i, j) - (i == j)) * a[i] * a[j] for i in a for j in a)
    out = qq ** e
    for m in a.values():
        for i in range(m):
            out = out * (qq ** m - qq ** i)
    return out


def nilpotent_matrix(lam: Sequence[int]) -> fl.Matrix:
    """Jordan form: inside a block with basis e_s..e_{s+k-1}, e_{s+i} -> e_{s+i-1}."""
    n = sum(lam)
    rows = [[0] * n for _ in range(n)]
    s = 0
    for k in lam:
        for i in range(1, k):
            rows[s + i - 1][s + i] = 1
        s += k
    return tuple(tuple(r) for r in rows)


def _type_from_ranks(ranks: Sequence[int]) -> Partition:
    # blocks of size >= j: ranks[j-1] - ranks[j]
    ge = [ranks[j - 1] - ranks[j] for j in range(1, len(ranks))]
    parts = []
    for j, c in enumerate(ge, start=1):
        nxt = ge[j] if j < len(ge) else 0
        parts += [j] * (c - nxt)
    return as_partition(parts)


def jordan_type(A: fl.Matrix, p: int) -> Partition:
    n = len(A)
    ranks = [n]
    P = fl.identity(n)
    while ranks[-1]:
        P = fl.mat_mul(A, P, p)
        ranks.append(fl.rank(P, p, n))
    return _type_from_ranks(ranks)


def _apply(A: fl.Matrix, v: Sequence[int], p: int) -> Tuple[int, ...]:
    return fl.mat_vec(A, v, p)


def _sub_and_quotient_types(A: fl.Matrix, U: fl.Matrix, p: int) -> Tuple[Partition, Partition]:
    n = len(A)
    k = len(U)
    sub_ranks, quo_ranks = [k], [n - k]
    imgs = list(U)
    full = [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    while sub_ranks[-1] or quo_ranks[-1]:
        imgs = [_apply(A, v, p) for v in imgs]
        full = [_apply(A, v, p) for v in full]
        sub_ranks.append(fl.rank(imgs, p, n) if imgs else 0)
        quo_ranks.append(fl.rank(list(full) + list(U), p, n) - k)
    return _type_from_ranks(sub_ranks), _type_from_ranks(quo_ranks)


def _is_invariant(A: fl.Matrix, U: fl.Matrix, p: int) -> bool:
    n = len(A)
    k = len(U)
    return all(fl.rank(list(U) + [_apply(A, u, p)], p, n) == k for u in U)


def _length_cap(p: int) -> int:
    o = _override()
    return o if o is not None else JORDAN_LENGTH_CAP.get(p, 3)


_TABLE: Dict[Tuple[Partition, int], Counter] = {}
_TABLE_LOCK = threading.Lock()


def subobject_table(lam: Partition, p: int) -> Counter:
    """Counter over (quotient type, sub type) of invariant subspaces of I_lambda."""
    lam = as_partition(lam)
    key = (lam, p)
    hit = _TABLE.get(key)
    if hit is not None:
        return hit
    n = sum(lam)
    if n > _length_cap(p):
        raise CapExceeded(f"|lambda| = {n} exceeds the Jordan cap {_length_cap(p)} at p={p}")
    A = nilpotent_matrix(lam)
    out: Counter = Counter()
    for k in range(n + 1):
        for U in fl.rref_subspaces(n, k, p):
            if _is_invariant(A, U, p):
                sub, quo = _sub_and_quotient_types(A, U, p)
                out[(quo, sub)] += 1
    with _TABLE_LOCK:
        _TABLE[key] = out
    return out


def hall_number_jordan(mu: Sequence[int], nu: Sequence[int], lam: Sequence[int], p: int = 2) -> int:
    """Number of invariant subspaces U of I_lambda with U of type nu and I_lambda/U of type mu."""
    mu, nu, lam = as_partition(mu), as_partition(nu), as_partition(lam)
    if sum(mu) + sum(nu) != sum(lam):
        return 0
    return subobject_table(lam, p)[(mu, nu)]


# ---------------------------------------------------------------------------
# Hom, Ext, Aut by linear algebra


def _commutation_rows(V: fl.Matrix, W: fl.Matrix) -> Tuple[List[List[int]], int]:
    # unknown X (w x v), row-major; equations W X - X V = 0
    v, w = len(V), len(W)
    rows = []
    for i in range(w):
        for j in range(v):
            r = [0] * (w * v)
            for k in range(w):
                if W[i][k]:
                    r[k * v + j] += W[i][k]
            for k in range(v):
                if V[k][j]:
                    r[i * v + k] -= V[k][j]
            rows.append(r)
    return rows, w * v


def hom_basis_jordan(mu: Sequence[int], nu: Sequence[int], p: int) -> List[fl.Matrix]:
    V, W = nilpotent_matrix(as_partition(mu)), nilpotent_matrix(as_partition(nu))
    v, w = len(V), len(W)
    if not v or not w:
        return []
    rows, width = _commutation_rows(V, W)
    out = []
    for vec in fl.nullspace(rows, p, width):
        out.append(tuple(tuple(vec[i * v + j] for j in range(v)) for i in range(w)))
    return out


def hom_dim_jordan(mu: Sequence[int], nu: Sequence[int], p: int = 2) -> int:
    return len(hom_basis_jordan(mu, nu, p))


def hom_dim_closed(mu: Sequence[int], nu: Sequence[int]) -> int:
    return sum(min(a, b) for a in mu for b in nu)


def extension_counts(mu: Sequence[int], nu: Sequence[int], p: int = 2) -> Tuple[Counter, int]:
    """Middle-term types over all cocycles c: I_mu -> I_nu, and the size of the coboundary space.

    The middle term of c is the block operator [[N_nu, c], [0, N_mu]].
    """
    mu, nu = as_partition(mu), as_partition(nu)
    M, N = nilpotent_matrix(mu), nilpotent_matrix(nu)
    m, n = len(M), len(N)
    if m * n and p ** (m * n) > UNIT_ENUM_CAP:
        raise CapExceeded(f"{p}^{m * n} cocycles exceed the enumeration cap")
    counts: Counter = Counter()
    for vals in product(range(p), repeat=m * n):
        A = [[0] * (m + n) for _ in range(m + n)]
        for i in range(n):
            for j in range(n):
                A[i][j] = N[i][j]
        for i in range(m):
            for j in range(m):
                A[n + i][n + j] = M[i][j]
        for i in range(n):
            for j in range(m):
                A[i][n + j] = vals[i * m + j]
        counts[jordan_type(tuple(tuple(r) for r in A), p)] += 1
    boundaries = p ** (m * n - hom_dim_jordan(mu, nu, p)) if m * n else 1
    return counts, boundaries


def ext_dim_jordan(mu: Sequence[int], nu: Sequence[int], p: int = 2) -> int:
    """dim Ext^1(I_mu, I_nu): the cokernel of f -> N_nu f - f N_mu on all linear maps."""
    m, n = sum(mu), sum(nu)
    if not m * n:
        return 0
    rows, width = _commutation_rows(nilpotent_matrix(as_partition(mu)), nilpotent_matrix(as_partition(nu)))
    return width - fl.rank(rows, p, width)


def aut_order_bruteforce_jordan(lam: Sequence[int], p: int = 2) -> int:
    """Count invertible elements of End(I_lambda) by enumeration."""
    lam = as_partition(lam)
    basis = hom_basis_jordan(lam, lam, p)
    n = sum(lam)
    if not n:
        return 1
    if p ** len(basis) > UNIT_ENUM_CAP and _override() is None:
        raise CapExceeded(f"End(I_{lam}) has {p}^{len(basis)} elements, above the enumeration cap")
    count = 0
    for coeffs in product(range(p), repeat=len(basis)):
        X = [[0] * n for _ in range(n)]
        for c, B in zip(coeffs, basis):
            if c:
                for i in range(n):
                    for j in range(n):
                        X[i][j] = (X[i][j] + c * B[i][j]) % p
        if fl.rank(X, p, n) == n:
            count += 1
    return count


def riedtmann_check_jordan(max_total: int = 4, p: int = 2) -> Tuple[bool, List[str]]:
    """F^lambda_{mu nu} = |Ext(mu,nu)_lambda| |Aut lambda| / (|Aut mu| |Aut nu| |Hom(mu,nu)|)."""
    bad = []
    for total in range(max_total + 1):
        for a in range(total + 1):
            for mu in partitions(a):
                for nu in partitions(total - a):
                    counts, bnd = extension_counts(mu, nu, p)
                    hom = p ** hom_dim_jordan(mu, nu, p)
                    for lam in partitions(total):
                        rhs = Fraction(counts[lam], bnd) * aut_order_jordan(lam, p)
                        rhs /= aut_order_jordan(mu, p) * aut_order_jordan(nu, p) * hom
                        if hall_number_jordan(mu, nu, lam, p) != rhs:
                            bad.append(f"{mu},{nu}->{lam}")
    return not bad, bad


# ---------------------------------------------------------------------------
# the Jordan category as a Hall algebra input


class JordanCategory(Category):
    """Nilpotent k[x]-modules over F_p; keys are partitions."""

    def __init__(self, p: int = 2):
        self.p = int(p)
        self.q = Fraction(self.p)
        self.zero: Partition = ()
        self.name = f"jordan_p{self.p}"
        self._hall: Dict = {}

    def add(self, a, b):
        return union(a, b)

    def dim(self, key):
        return (sum(key),)

    def rank(self) -> int:
        return 1

    def classes_of_dim(self, gamma):
        return list(partitions(gamma[0]))

    def label(self, key) -> str:
        return "(" + ",".join(map(str, key)) + ")" if key else "0"

    def parse(self, text: str):
        return parse_partition(text)

    def key(self, label: str, mult: int = 1):
        return parse_partition(label) * mult

    def indecomposables(self):
        raise NotImplementedError("infinitely many indecomposables")

    def simples(self):
        return [(1,)]

    def hall_numbers(self, M, N):
        hit = self._hall.get((M, N))
        if hit is not None:
            return hit
        out = {}
        for lam in partitions(sum(M) + sum(N)):
            c = hall_number_jordan(M, N, lam, self.p)
            if c:
                out[lam] = Fraction(c)
        self._hall[(M, N)] = out
        return out

    def subobject_counts(self, C, delta):
        return {k: v for k, v in subobject_table(C, self.p).items() if sum(k[1]) == delta[0]}

    def aut(self, key):
        return Fraction(aut_order_jordan(key, self.p))

    def hom(self, a, b) -> int:
        return hom_dim_closed(a, b)

    def ext(self, a, b) -> int:
        return hom_dim_closed(a, b)

    def euler(self, a, b) -> int:
        return 0

    def is_semisimple(self, key) -> bool:
        return all(x == 1 for x in key)

    def simple_multiplicities(self, key):
        return [((1,), len(key))] if key else []


def steinitz_inverse(alg: HallAlgebra):
    """sum_r (-1)^r q^C(r,2) [I_(1^r)]."""
    q = alg.cat.q
    return alg.element({(1,) * r: (-1) ** r * q ** comb(r, 2) for r in range(alg.bound[0] + 1)})


def steinitz_inverse_check(order: int, p: int = 2) -> bool:
    alg = HallAlgebra(JordanCategory(p), (order,))
    e, inv = alg.exp_all(), steinitz_inverse(alg)
    return e * inv == alg.one() and inv * e == alg.one()


# ---------------------------------------------------------------------------
# symmetric polynomials


class SymPoly:
    """Symmetric polynomial in x_1..x_n, stored as a sparse exponent map."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Tuple[int, ...], object], check: bool = True):
        self.n = int(n)
        self.terms = {tuple(a): c for a, c in terms.items() if c}
        if any(len(a) != self.n for a in self.terms):
            raise ValueError("exponent vector of the wrong length")
        if check and not self.is_symmetric():
            raise ValueError("polynomial is not symmetric")

    def is_symmetric(self) -> bool:
        orbits = defaultdict(dict)
        for a, c in self.terms.items():
            orbits[tuple(sorted(a, reverse=True))][a] = c
        for lead, members in orbits.items():
            c0 = members[next(iter(members))]
            if len(members) != _orbit_size(lead) or any(c != c0 for c in members.values()):
                return False
        return True

    @classmethod
    def from_monomial_basis(cls, n: int, coeffs: Mapping[Partition, object]) -> "SymPoly":
        terms = {}
        for nu, c in coeffs.items():
            if c:
                for a in _orbit(nu, n):
                    terms[a] = c
        return cls(n, terms, check=False)

    def monomial_coefficients(self) -> Dict[Partition, object]:
        out = {}
        for a, c in self.terms.items():
            lead = tuple(x for x in sorted(a, reverse=True) if x)
            out[lead] = c
        return out

    @classmethod
    def zero(cls, n: int) -> "SymPoly":
        return cls(n, {}, check=False)

    @classmethod
    def one(cls, n: int) -> "SymPoly":
        return cls(n, {(0,) * n: Fraction(1)}, check=False)

    @classmethod
    def elementary(cls, r: int, n: int) -> "SymPoly":
        if r > n:
            return cls.zero(n)
        return cls.from_monomial_basis(n, {(1,) * r: Fraction(1)})

    @classmethod
    def complete(cls, r: int, n: int) -> "SymPoly":
        return cls.from_monomial_basis(n, {nu: Fraction(1) for nu in partitions(r) if len(nu) <= n})

    def _check(self, other: "SymPoly"):
        if self.n != other.n:
            raise ValueError("different numbers of variables")

    def __add__(self, other: "SymPoly") -> "SymPoly":
        self._check(other)
        out = dict(self.terms)
        for a, c in other.terms.items():
            out[a] = out.get(a, 0) + c
        return SymPoly(self.n, out, check=False)

    def __neg__(self):
        return SymPoly(self.n, {a: -c for a, c in self.terms.items()}, check=False)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SymPoly":
        return SymPoly(self.n, {a: c * v for a, v in self.terms.items()}, check=False)

    def __mul__(self, other):
        if not isinstance(other, SymPoly):
            return self.scale(other)
        self._check(other)
        out: Dict = {}
        for a, u in self.terms.items():
            for b, v in other.terms.items():
                k = tuple(x + y for x, y in zip(a, b))
                out[k] = out.get(k, 0) + u * v
        return SymPoly(self.n, out, check=False)

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, SymPoly):
            return NotImplemented
        return self.n == other.n and not (self - other).terms

    def map_coefficients(self, fn) -> "SymPoly":
        return SymPoly(self.n, {a: fn(c) for a, c in self.terms.items()}, check=False)

    def specialize(self, q_value) -> "SymPoly":
        return self.map_coefficients(lambda c: specialize(c, q_value))

    def __repr__(self):
        return f"SymPoly({self.n}, {self.monomial_coefficients()})"


def _orbit(nu: Partition, n: int) -> List[Tuple[int, ...]]:
    padded = tuple(nu) + (0,) * (n - len(nu))
    if len(padded) > n:
        return []
    return list(set(permutations(padded)))


def _orbit_size(lead: Tuple[int, ...]) -> int:
    from math import factorial

    out = factorial(len(lead))
    for m in Counter(lead).values():
        out //= factorial(m)
    return out


@lru_cache(maxsize=None)
def kostka(shape: Partition, content: Partition) -> int:
    """Number of semistandard tableaux of the given shape and content."""
    if sum(shape) != sum(content):
        return 0
    if not content:
        return 1
    k = content[-1]
    rest = content[:-1]
    # remove a horizontal strip of size k holding the largest entries
    total = 0
    for inner in _horizontal_strips_removed(shape, k):
        total += kostka(inner, rest)
    return total


def _horizontal_strips_removed(shape: Partition, k: int) -> Iterator[Partition]:
    rows = len(shape)
    cur = list(shape)

    def rec(i: int, left: int):
        if i == rows:
            if left == 0:
                yield as_partition(cur)
            return
        lo = shape[i + 1] if i + 1 < rows else 0
        for take in range(0, min(left, shape[i] - lo) + 1):
            cur[i] = shape[i] - take
            yield from rec(i + 1, left - take)
        cur[i] = shape[i]

    yield from rec(0, k)


@lru_cache(maxsize=None)
def _vandermonde_numerator(n: int) -> Dict[Tuple[int, ...], Dict[int, int]]:
    """prod_{i<j} (x_i - q x_j) as exponent vector -> {power of q: integer coefficient}."""
    f: Dict = {(0,) * n: {0: 1}}
    for i in range(n):
        for j in range(i + 1, n):
            g: Dict = defaultdict(lambda: defaultdict(int))
            for a, poly in f.items():
                b = list(a)
                b[i] += 1
                tgt = g[tuple(b)]
                for k, c in poly.items():
                    tgt[k] += c
                b = list(a)
                b[j] += 1
                tgt = g[tuple(b)]
                for k, c in poly.items():
                    tgt[k + 1] -= c
            f = {}
            for a, poly in g.items():
                poly = {k: c for k, c in poly.items() if c}
                if poly:
                    f[a] = poly
    return f


def _sort_sign(a: Sequence[int]) -> Tuple[Tuple[int, ...], int]:
    # sign of the permutation sorting a into decreasing order (entries distinct)
    idx = sorted(range(len(a)), key=lambda i: -a[i])
    sign = 1
    seen = [False] * len(a)
    for i in range(len(a)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = idx[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return tuple(a[i] for i in idx), sign


@lru_cache(maxsize=None)
def _hall_littlewood_m(lam: Partition, n: int) -> Tuple[Tuple[Partition, LaurentPoly], ...]:
    padded = tuple(lam) + (0,) * (n - len(lam))
    delta = tuple(range(n - 1, -1, -1))
    alt: Dict[Tuple[int, ...], Dict[int, int]] = defaultdict(lambda: defaultdict(int))
    for a, poly in _vandermonde_numerator(n).items():
        b = tuple(x + y for x, y in zip(a, padded))
        if len(set(b)) < n:
            continue
        srt, sign = _sort_sign(b)
        tgt = alt[srt]
        for k, c in poly.items():
            tgt[k] += sign * c
    # alternant a_{mu + delta} / Vandermonde = s_mu = sum_nu K_{mu nu} m_nu
    out: Dict[Partition, LaurentPoly] = defaultdict(LaurentPoly)
    size = sum(lam)
    for srt, poly in alt.items():
        coeff = LaurentPoly({k: c for k, c in poly.items() if c})
        if not coeff:
            continue
        mu = as_partition(x - d for x, d in zip(srt, delta))
        for nu in partitions(size):
            if len(nu) <= n:
                kk = kostka(mu, nu)
                if kk:
                    out[nu] = out[nu] + coeff * kk
    norm = LaurentPoly.const(1)
    for m in Counter(padded).values():
        norm = norm * q_factorial(m)
    return tuple((nu, c.exact_div(norm)) for nu, c in out.items() if c)


def hall_littlewood(lam: Sequence[int], n_vars: int, q=None) -> SymPoly:
    """P_lambda(x_1..x_n; q); symbolic in q unless a value is given."""
    lam = as_partition(lam)
    if n_vars < len(lam):
        raise ValueError(f"need at least {len(lam)} variables for {lam}")
    if n_vars > HL_VARS_CAP and _override() is None:
        raise CapExceeded(f"n_vars = {n_vars} exceeds the symmetrization cap {HL_VARS_CAP}")
    coeffs = dict(_hall_littlewood_m(lam, n_vars))
    if q is not None:
        coeffs = {nu: specialize(c, q) for nu, c in coeffs.items()}
    return SymPoly.from_monomial_basis(n_vars, coeffs)


def hl_identity_check(r: int, n_vars: int) -> bool:
    """sum_{lambda |- r} q^{n(lambda)} P_lambda = h_r in n_vars variables, symbolic in q."""
    total = SymPoly.zero(n_vars)
    for lam in partitions(r):
        if len(lam) <= n_vars:
            total = total + hall_littlewood(lam, n_vars).scale(LaurentPoly.monomial(1, n_of_lambda(lam)))
    return total == SymPoly.complete(r, n_vars)


def phi_image(lam: Sequence[int], n_vars: int, p: int) -> SymPoly:
    """Phi([I_lambda]) = q^{-n(lambda)} P_lambda(x; 1/q) at q = p; zero if lambda is too long."""
    lam = as_partition(lam)
    if len(lam) > n_vars:
        return SymPoly.zero(n_vars)
    return hall_littlewood(lam, n_vars, Fraction(1, p)).scale(Fraction(1, p ** n_of_lambda(lam)))


def phi_hom_check(mu: Sequence[int], nu: Sequence[int], n_vars: int | None = None, p: int = 2) -> bool:
    mu, nu = as_partition(mu), as_partition(nu)
    total = sum(mu) + sum(nu)
    n = total if n_vars is None else n_vars
    n = max(n, 1)
    lhs = phi_image(mu, n, p) * phi_image(nu, n, p)
    rhs = SymPoly.zero(n)
    for lam in partitions(total):
        c = hall_number_jordan(mu, nu, lam, p)
        if c:
            rhs = rhs + phi_image(lam, n, p).scale(c)
    return lhs == rhs


def alt_sum_identity_check(r: int) -> bool:
    """sum_{s=0}^r prod_{j<=s} (1-q^j)^{-1} sum_{lambda |- r-s} a_lambda(q)^{-1} = 0 for r > 0."""
    q = QFunc.q()
    total = QFunc(0)
    for s in range(r + 1):
        pref = QFunc(1)
        for j in range(1, s + 1):
            pref = pref / (1 - q ** j)
        inner = QFunc(0)
        for lam in partitions(r - s):
            inner = inner + 1 / QFunc(aut_order_jordan(lam))
        total = total + pref * inner
    return not total if r > 0 else total == 1
