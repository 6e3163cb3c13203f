from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hallforge import fplinalg as fl


def _matrices(n, p):
    return st.lists(st.lists(st.integers(0, p - 1), min_size=n, max_size=n), min_size=n, max_size=n).map(
        lambda rows: tuple(tuple(r) for r in rows)
    )


@pytest.mark.parametrize("n,p", [(1, 2), (2, 2), (2, 3), (3, 2)])
def test_gl_order_by_enumeration(n, p):
    count = 0
    for entries in product(range(p), repeat=n * n):
        m = tuple(tuple(entries[i * n:(i + 1) * n]) for i in range(n))
        count += fl.is_invertible(m, p)
    assert count == fl.gl_order(n, p)


@given(_matrices(3, 5))
def test_inverse_roundtrip(m):
    if fl.is_invertible(m, 5):
        assert fl.mat_mul(m, fl.inverse(m, 5), 5) == fl.identity(3)
    else:
        with pytest.raises(ZeroDivisionError):
            fl.inverse(m, 5)


@given(_matrices(3, 3))
def test_rank_nullity(m):
    ker = fl.nullspace(m, 3, 3)
    assert fl.rank(m, 3) + len(ker) == 3
    for v in ker:
        assert fl.mat_vec(m, v, 3) == (0, 0, 0)


@pytest.mark.parametrize("n,p", [(3, 2), (3, 3), (4, 2)])
def test_subspace_count_matches_enumeration(n, p):
    for k in range(n + 1):
        subs = list(fl.rref_subspaces(n, k, p))
        assert len(subs) == len(set(subs)) == fl.count_subspaces(n, k, p)
