import random
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hallforge import fplinalg as fl
from hallforge.repfield import (
    CapExceeded,
    QuiverSpec,
    Representation,
    ScenarioError,
    a2_dict,
    an_dict,
    aut_order_bruteforce,
    bound_square_dict,
    count_subreps,
    direct_sum,
    ext_dim_cocycle,
    ext_dim_euler,
    hom_dim,
    load_bundled,
    random_conjugate,
    scenario_from_dict,
    single_vertex_dict,
)
from hallforge.repfield.quiver import dim_cap


@pytest.fixture(scope="module")
def a2():
    return scenario_from_dict(a2_dict(2))


@pytest.fixture(scope="module")
def a3():
    return scenario_from_dict(an_dict(3, 2))


def _invariant(rep, subspaces):
    """Naive invariance test for a family of subspaces (one per vertex)."""
    p = rep.spec.p
    for a in rep.spec.arrows:
        src = subspaces[a.source]
        tgt = subspaces[a.target]
        n_t = rep.dim(a.target)
        for v in src:
            w = fl.mat_vec(rep.mats[a.label], v, p) if n_t else ()
            if n_t and fl.rank(list(tgt) + [w], p, n_t) != len(tgt):
                return False
    return True


def _naive_subrep_count(rep, delta):
    verts = rep.spec.vertices
    choices = [list(fl.rref_subspaces(rep.dim(v), d, rep.spec.p)) for v, d in zip(verts, delta)]
    if any(d > rep.dim(v) for v, d in zip(verts, delta)):
        return 0
    return sum(_invariant(rep, dict(zip(verts, combo))) for combo in product(*choices))


def test_a2_table_shape(a2):
    t = a2.table
    assert t.labels == ("S0", "S1", "E")
    assert a2.simple_labels() == ["S1", "S0"]
    assert t.ext[t.index["S1"]][t.index["S0"]] == 1
    assert t.ext[t.index["S0"]][t.index["S1"]] == 0


def test_a2_hall_numbers(a2):
    t = a2.table
    s0, s1, e = (t.class_of(x) for x in ("S0", "S1", "E"))
    both = t.parse_class("S0+S1")
    assert t.hall_number(s1, s0, e) == 1
    assert t.hall_number(s0, s1, e) == 0
    assert t.hall_number(s0, s1, both) == 1
    assert t.hall_number(s1, s0, both) == 1


@pytest.mark.parametrize("label", ["S0+S1", "E", "E+S0", "E+S1", "S0^2+S1"])
def test_subrep_count_matches_naive(a2, label):
    t = a2.table
    K = t.parse_class(label)
    rep = t.class_rep(K)
    dk = t.class_dim(K)
    for delta in product(*(range(d + 1) for d in dk)):
        assert count_subreps(rep, delta) == _naive_subrep_count(rep, delta)


@pytest.mark.parametrize("label", ["S0", "E", "S0+S1", "E+S0", "E+S1", "S0^2", "E^2"])
def test_aut_formula_matches_bruteforce(a2, label):
    t = a2.table
    c = t.parse_class(label)
    assert aut_order_bruteforce(t.class_rep(c)) == t.aut_order(c)


def test_ext_cocycle_agrees_with_euler_on_a3(a3):
    reps = a3.table.reps
    for m in reps:
        for n in reps:
            assert ext_dim_cocycle(m, n) == ext_dim_euler(m, n)


@given(st.integers(0, 10 ** 6))
def test_hom_dim_and_decomposition_are_basis_free(seed):
    s = scenario_from_dict(an_dict(3, 3))
    t = s.table
    rng = random.Random(seed)
    parts = [rng.choice(t.reps) for _ in range(rng.randint(1, 3))]
    X = direct_sum(parts)
    Y = random_conjugate(X, rng)
    assert t.decompose(Y) == t.decompose(X)
    for r in t.reps:
        assert hom_dim(r, Y) == hom_dim(r, X)
        assert hom_dim(Y, r) == hom_dim(X, r)


def test_bound_square_table():
    s = scenario_from_dict(bound_square_dict(2))
    assert len(s.table) == 11
    assert not s.spec.hereditary
    t = s.table
    # the full support module is projective-injective: no extensions either way
    full = t.index["E1234"]
    assert all(t.ext[full][j] == 0 and t.ext[j][full] == 0 for j in range(len(t)))


def test_relation_is_enforced():
    d = bound_square_dict(2)
    spec = QuiverSpec.from_dict(d["quiver"], 2)
    with pytest.raises(ScenarioError):
        Representation(spec, {"1": 1, "2": 1, "3": 1, "4": 1}, {"a12": [[1]], "a24": [[1]]})


@pytest.mark.parametrize(
    "quiver, p, msg",
    [
        ({"vertices": ["0", "1"], "arrows": [["1", "0", "a"]]}, 2, "source order"),
        ({"vertices": ["0", "1"], "arrows": [["0", "1", "a"]]}, 4, "prime"),
        ({"vertices": ["0", "0"], "arrows": []}, 2, "duplicate"),
        ({"vertices": ["0", "1"], "arrows": [["0", "2", "a"]]}, 2, "unknown vertex"),
    ],
)
def test_bad_quivers_rejected(quiver, p, msg):
    with pytest.raises(ScenarioError, match=msg):
        QuiverSpec.from_dict(quiver, p)


def test_incomplete_table_is_detected():
    d = a2_dict(2)
    d["indecomposables"] = d["indecomposables"][:2]
    s = scenario_from_dict(d)
    t = s.table
    with pytest.raises(ScenarioError, match="incomplete"):
        # the non-split extension of S1 by S0 is E, missing from the table
        t.ext_classes_with_middle(t.class_of("S1"), t.class_of("S0"), t.parse_class("S0+S1"))


def test_bundled_fixtures_load():
    for name in ("single_vertex", "A2", "A3", "A4", "bound_square"):
        s = load_bundled(name)
        assert s.p == 2
    assert load_bundled("A2", p=3).p == 3


def test_cap_override(monkeypatch):
    assert dim_cap(2) == 8
    monkeypatch.setenv("HALL_FORGE_CAP_OVERRIDE", "11")
    assert dim_cap(2) == 11
    monkeypatch.setenv("HALL_FORGE_CAP_OVERRIDE", "lots")
    with pytest.raises(ScenarioError):
        dim_cap(2)


def test_single_vertex_counts_subspaces():
    s = scenario_from_dict(single_vertex_dict(3))
    t = s.table
    rep = t.class_rep(t.parse_class("S^3"))
    assert count_subreps(rep, (1,)) == fl.count_subspaces(3, 1, 3) == 13
