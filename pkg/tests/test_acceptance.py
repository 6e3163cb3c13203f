"""Acceptance suite: one test per criterion, each at its stated scale and tolerance.

Every criterion is exact, so "tolerance" means zero: checks compare exact
rationals or exact Laurent polynomials in q.  The summary at the end of the
pytest run prints one ``criterion N: PASS/FAIL`` line per criterion.
"""

import time

import pytest

from hallforge.cli import run_config
from hallforge.hallcore import HallAlgebra, QuiverCategory, conjugation_check, express_in_simples
from hallforge.hallcore.simples import evaluate
from hallforge.qtorus import TorusParams, dilog_identity_check
from hallforge.repfield import load_bundled
from hallforge.rootcox import ValuedGraphSpec, gamma_orbits


def run(cfg):
    """Run one config through the tool, require every check to pass, return {check: details}."""
    report, code = run_config(cfg, timing=False)
    for rec in report["checks"]:
        assert rec["status"] == "pass", (cfg.get("scenario", cfg.get("kind")), rec)
    assert code == 0
    return {rec["name"]: rec["details"] for rec in report["checks"]}


def quiver(scenario, trunc, checks, p=2, **extra):
    return dict(kind="quiver", scenario=scenario, truncation=trunc, p=p, checks=checks, **extra)


@pytest.mark.criterion(1)
def test_reineke_inversion():
    start = time.perf_counter()
    for p in (2, 3):
        run(quiver("single_vertex", [6], ["reineke_inverse"], p=p))
    run(quiver("single_vertex", [6], ["reineke_inverse"], q_mode="symbolic"))
    run(quiver("A2", [4, 4], ["reineke_inverse"]))
    run(quiver("A3", [2, 2, 2], ["reineke_inverse"]))
    run(dict(kind="jordan", p=2, truncation=[4], checks=["reineke_inverse"]))
    elapsed = time.perf_counter() - start
    print(f"reineke inversion total {elapsed:.1f}s")
    assert elapsed < 60


@pytest.mark.criterion(2)
def test_riedtmann():
    for name in ("A2", "single_vertex"):
        d = run(quiver(name, [4] * (2 if name == "A2" else 1), [{"name": "riedtmann", "options": {"max_total": 4}}]))
        assert d["riedtmann"]["triples"] > 0


@pytest.mark.criterion(3)
def test_pentagon_identities():
    for p in (2, 3):
        run(quiver("A2", [4, 4], ["a2_pentagon"], p=p))
    d = run(quiver("bound_square", [2, 2, 2, 2], ["exp_sequence"]))
    assert len(d["exp_sequence"]["lhs"]) == 11
    run(quiver("A4", [2, 2, 2, 2], [{"name": "an_pentagonal_pair", "options": {"split": 2}}]))


@pytest.mark.criterion(4)
def test_quantum_dilogarithm():
    for case, (a0, a1, d0, d1) in {1: (1, 1, 1, 1), 2: (2, 1, 1, 2), 3: (3, 1, 1, 3)}.items():
        d = run(dict(kind="torus", q_mode="symbolic", a0=a0, a1=a1, d0=d0, d1=d1, truncation=8,
                     checks=["dilog_identity"]))["dilog_identity"]
        assert d["case"] == case and d["trunc"] >= 8
        if case == 1:
            assert d["pentagon_form"]
    # The exponent a0*a1 agrees with the Hall algebra whenever d0 = a1;
    # otherwise the minimal failing degree is reported rather than hidden.
    for a0, a1, d0, d1 in [(1, 1, 1, 1), (2, 1, 1, 2), (3, 1, 1, 3), (2, 1, 2, 4), (1, 1, 2, 2)]:
        params = TorusParams(a0, a1, d0, d1)
        assert dilog_identity_check(params, 8).ok
        product = dilog_identity_check(params, 6, relation="product")
        if d0 == a1:
            assert product.ok
        else:
            assert not product.ok and product.first_failing_degree == 2


@pytest.mark.criterion(5)
def test_serre_and_fundamental_relations():
    for name, trunc in (("A2", [3, 3]), ("A3", [2, 2, 2])):
        for p in (2, 3):
            d = run(quiver(name, trunc, ["serre", "fundamental_relations"], p=p))
            n_simple = len(trunc)
            assert len(d["serre"]["checked"]) == n_simple * (n_simple - 1) // 2
            assert d["fundamental_relations"]["checked"]


@pytest.mark.criterion(6)
def test_conjugation():
    pairs = [["S0", "S1"], ["S1", "S0"], ["E", "S0"], ["E", "S1"]]
    d = run(quiver("A2", [4, 4], [{"name": "conjugation", "options": {"pairs": pairs}}]))["conjugation"]
    assert len(d["checked"]) == 4 and not d["skipped"]
    # every E here is projective or injective, so some closed form must stay in H
    alg = HallAlgebra(QuiverCategory(load_bundled("A2", 2)), (4, 4))
    for e, m in pairs:
        res = conjugation_check(alg, e, m)
        assert res.ok and res.details["polynomial"], (e, m, res.details)
        assert all(res.details["polynomial"].values())


@pytest.mark.criterion(7)
def test_coproduct_green_coassociativity():
    run(quiver("single_vertex", [5], ["coproduct_exp"]))
    run(quiver("single_vertex", [5], ["coproduct_exp"], q_mode="symbolic"))
    run(quiver("A2", [3, 3], ["coproduct_exp"]))
    d = run(quiver("A2", [2, 2], ["green", "coassociativity"]))
    assert d["green"]["pairs"] > 0


@pytest.mark.criterion(8)
def test_coxeter_combinatorics():
    for a0a1 in (1, 2, 3, 4, 6):
        spec = ValuedGraphSpec.rank2(a0a1, 1, 1, a0a1)
        g = gamma_orbits(spec, 30)
        if a0a1 < 4:
            assert set(g.gamma_plus) == set(g.gamma_minus)
        else:
            assert not set(g.gamma_plus) & set(g.gamma_minus)
        run(dict(kind="valued-rank2", a0=a0a1, a1=1, d0=1, d1=a0a1,
                 checks=["finite_type", {"name": "beta_closed_form", "options": {"r_max": 12}}, "coxeter_gamma"]))
    a3 = ValuedGraphSpec.from_quiver(load_bundled("A3", 2).spec)
    g = gamma_orbits(a3, 30)
    assert set(g.gamma_plus) == set(g.gamma_minus)
    run(quiver("A2", [2, 2], ["preprojective_dims", "finite_type"]))
    run(quiver("A3", [1, 1, 1], ["preprojective_dims", "finite_type"]))


@pytest.mark.criterion(9)
def test_jordan_and_symmetric_functions():
    checks = [
        {"name": "hl_identity", "options": {"r_max": 6}},
        {"name": "phi_hom", "options": {"max_total": 4}},
        {"name": "alt_sum_identity", "options": {"r_max": 5}},
        "jordan_aut",
        "steinitz_inverse",
        {"name": "jordan_gl_identity", "options": {"r_max": 5}},
    ]
    d = run(dict(kind="jordan", p=2, truncation=[4], checks=checks))
    assert not d["jordan_aut"]["capped"]


@pytest.mark.criterion(10)
def test_q_calculus():
    run(dict(kind="torus", q_mode="symbolic", a0=1, a1=1, truncation=8, checks=[
        {"name": "q_leibniz", "options": {"j_max": 3, "pairs": 50}},
        {"name": "phi_definition", "options": {"nu_max": 4, "order": 10}},
        {"name": "well_known", "options": {"n_max": 5}},
        "leibniz_polynomiality",
    ]))
    run(quiver("A2", [2, 2], [{"name": "key_identities", "options": {"r_max": 3, "samples": 4}}]))


@pytest.mark.criterion(11)
def test_composition_algebra():
    for name, n in (("A2", 2), ("A3", 3)):
        scen = load_bundled(name, 2)
        alg = HallAlgebra(QuiverCategory(scen), (1,) * n)
        for label in scen.table.labels:
            poly, ok = express_in_simples(alg, label)
            assert ok, label
            # round trip: the expression evaluates back to the basis element
            assert evaluate(alg, poly) == alg.basis(alg.cat.parse(label))
