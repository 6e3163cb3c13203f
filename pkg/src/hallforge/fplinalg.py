"""Dense linear algebra over prime fields F_p.

Matrices are tuples of row tuples of ints in ``range(p)``.  Vectors are tuples.
Everything here is small (dimension well under 20), so plain Python loops are
used throughout.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Iterator, List, Sequence, Tuple

Matrix = Tuple[Tuple[int, ...], ...]
Vector = Tuple[int, ...]


def zeros(rows: int, cols: int) -> Matrix:
    return tuple((0,) * cols for _ in range(rows))


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def as_matrix(rows: Sequence[Sequence[int]], p: int, shape: Tuple[int, int] | None = None) -> Matrix:
    m = tuple(tuple(int(x) % p for x in r) for r in rows)
    if shape is not None:
        r, c = shape
        if r == 0 or c == 0:
            return zeros(r, c)
        if len(m) != r or any(len(row) != c for row in m):
            raise ValueError(f"expected a {r}x{c} matrix, got {[len(row) for row in m]}")
    return m


def ncols(m: Matrix, default: int = 0) -> int:
    return len(m[0]) if m else default


def mat_mul(a: Matrix, b: Matrix, p: int, cols: int = 0) -> Matrix:
    """a (r x k) times b (k x c); ``cols`` gives c when b has no rows."""
    cols = len(b[0]) if b else cols
    if not a:
        return ()
    if not b:
        return tuple((0,) * cols for _ in a)
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) % p for col in bt) for row in a)


def mat_vec(a: Matrix, v: Vector, p: int) -> Vector:
    return tuple(sum(x * y for x, y in zip(row, v)) % p for row in a)


def transpose(m: Matrix, cols: int = 0) -> Matrix:
    if not m:
        return tuple(() for _ in range(cols))
    return tuple(zip(*m))


def rref(rows: Sequence[Sequence[int]], p: int, width: int | None = None):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    if width is None:
        width = len(m[0]) if m else 0
    pivots: List[int] = []
    r = 0
    for c in range(width):
        if r == len(m):
            break
        piv = next((i for i in range(r, len(m)) if m[i][c] % p), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] % p:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in m[:r]), tuple(pivots)


def rank(rows: Sequence[Sequence[int]], p: int, width: int | None = None) -> int:
    return len(rref(rows, p, width)[1])


def nullspace(rows: Sequence[Sequence[int]], p: int, width: int) -> List[Vector]:
    """Basis of {x : A x = 0} for A given by ``rows`` (each of length ``width``)."""
    red, pivots = rref(rows, p, width)
    free = [c for c in range(width) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * width
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = (-row[f]) % p
        basis.append(tuple(v))
    return basis


def inverse(m: Matrix, p: int) -> Matrix:
    n = len(m)
    aug = [list(row) + list(e) for row, e in zip(m, identity(n))]
    red, pivots = rref(aug, p, 2 * n)
    if pivots[:n] != tuple(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(row[n:]) for row in red[:n])


def is_invertible(m: Matrix, p: int) -> bool:
    return rank(m, p, len(m)) == len(m)


def gl_order(n: int, p: int) -> int:
    out = 1
    for i in range(n):
        out *= p ** n - p ** i
    return out


def reduce_mod_subspace(v: Sequence[int], basis: Matrix, pivots: Sequence[int], p: int) -> List[int]:
    """Subtract the component of v along an RREF basis; result vanishes at pivots."""
    w = list(v)
    for row, pc in zip(basis, pivots):
        f = w[pc]
        if f:
            w = [(x - f * y) % p for x, y in zip(w, row)]
    return w


def rref_subspaces(n: int, k: int, p: int) -> Iterator[Matrix]:
    """All k-dimensional subspaces of F_p^n as RREF basis matrices."""
    if k == 0:
        yield ()
        return
    for pivots in combinations(range(n), k):
        slots = []
        for r, pc in enumerate(pivots):
            for c in range(pc + 1, n):
                if c not in pivots:
                    slots.append((r, c))
        for vals in product(range(p), repeat=len(slots)):
            rows = [[0] * n for _ in range(k)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), v in zip(slots, vals):
                rows[r][c] = v
            yield tuple(tuple(r) for r in rows)


def count_subspaces(n: int, k: int, p: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def subspaces_within(basis: Matrix, k: int, p: int, n: int) -> Iterator[Tuple[Matrix, Tuple[int, ...]]]:
    """k-dimensional subspaces of span(basis) inside F_p^n, as (RREF rows, pivots)."""
    m = len(basis)
    if k > m:
        return
    if k == 0:
        yield (), ()
        return
    for coords in rref_subspaces(m, k, p):
        rows = [
            tuple(sum(c * b[j] for c, b in zip(crow, basis)) % p for j in range(n))
            for crow in coords
        ]
        yield rref(rows, p, n)
