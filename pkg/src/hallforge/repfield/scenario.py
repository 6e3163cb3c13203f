"""Quiver scenarios: JSON loading and builders for the shipped fixtures."""

from __future__ import annotations

import json
from importlib import resources
from typing import Dict, List, Mapping

from .quiver import QuiverSpec, Representation, ScenarioError
from .table import IndecomposableTable


class QuiverScenario:
    """A quiver over F_p together with its complete indecomposable table."""

    def __init__(self, name: str, spec: QuiverSpec, table: IndecomposableTable, raw: Mapping | None = None):
        self.name = name
        self.spec = spec
        self.table = table
        self.raw = dict(raw or {})

    @property
    def p(self) -> int:
        return self.spec.p

    def simple_label(self, v: str) -> str:
        target = tuple(1 if w == v else 0 for w in self.spec.vertices)
        for lab, d in zip(self.table.labels, self.table.dims):
            if d == target:
                return lab
        raise ScenarioError(f"no simple at vertex {v}")

    def simple_labels(self) -> List[str]:
        """Simples in source order."""
        return [self.simple_label(v) for v in self.spec.vertices]

    def with_p(self, p: int) -> "QuiverScenario":
        raw = dict(self.raw)
        raw["p"] = p
        return scenario_from_dict(raw)


def scenario_from_dict(d: Mapping) -> QuiverScenario:
    try:
        p = int(d["p"])
        spec = QuiverSpec.from_dict(d["quiver"], p)
        entries = []
        for e in d["indecomposables"]:
            rep = Representation(spec, {str(k): int(v) for k, v in e["dim"].items()}, e.get("matrices", {}))
            entries.append((str(e["label"]), rep))
    except (KeyError, TypeError) as exc:
        raise ScenarioError(f"bad scenario: missing or malformed field {exc}") from exc
    table = IndecomposableTable(spec, entries)
    return QuiverScenario(str(d.get("name", "quiver")), spec, table, d)


def load_bundled(name: str, p: int | None = None) -> QuiverScenario:
    text = resources.files("hallforge.scenarios").joinpath(f"{name}.json").read_text()
    d = json.loads(text)
    if d.get("kind", "quiver") != "quiver":
        raise ScenarioError(f"bundled scenario {name} is not a quiver scenario")
    if p is not None:
        d["p"] = p
    return scenario_from_dict(d)


# ---------------------------------------------------------------------------
# builders


def _thin(label: str, support, arrows) -> Dict:
    return {
        "label": label,
        "dim": {v: 1 for v in support},
        "matrices": {lab: [[1]] for s, t, lab in arrows if s in support and t in support},
    }


def single_vertex_dict(p: int = 2) -> Dict:
    return {
        "kind": "quiver",
        "name": "single_vertex",
        "quiver": {"vertices": ["0"], "arrows": [], "relations": []},
        "p": p,
        "indecomposables": [{"label": "S", "dim": {"0": 1}}],
    }


def a2_dict(p: int = 2) -> Dict:
    """A2 with the arrow 1 -> 0; S0 is the projective simple."""
    arrows = [["1", "0", "a"]]
    return {
        "kind": "quiver",
        "name": "A2",
        "quiver": {"vertices": ["1", "0"], "arrows": arrows, "relations": []},
        "p": p,
        "indecomposables": [
            {"label": "S0", "dim": {"0": 1}},
            {"label": "S1", "dim": {"1": 1}},
            _thin("E", ["1", "0"], arrows),
        ],
    }


def an_dict(n: int, p: int = 2) -> Dict:
    """Linear quiver 1 -> 2 -> ... -> n with the interval modules E_{j,k}."""
    verts = [str(i) for i in range(1, n + 1)]
    arrows = [[str(i), str(i + 1), f"a{i}"] for i in range(1, n)]
    inds = []
    for j in range(1, n + 1):
        for k in range(j, n + 1):
            label = f"S{j}" if j == k else f"E{j}{k}"
            inds.append(_thin(label, [str(i) for i in range(j, k + 1)], arrows))
    return {
        "kind": "quiver",
        "name": f"A{n}",
        "quiver": {"vertices": verts, "arrows": arrows, "relations": []},
        "p": p,
        "indecomposables": inds,
    }


BOUND_SUPPORTS = ["4", "24", "34", "234", "2", "3", "1234", "123", "12", "13", "1"]


def bound_square_dict(p: int = 2) -> Dict:
    """Commutative square 1 -> {2, 3} -> 4 with a34 a13 = a24 a12."""
    arrows = [["1", "2", "a12"], ["1", "3", "a13"], ["2", "4", "a24"], ["3", "4", "a34"]]
    return {
        "kind": "quiver",
        "name": "bound_square",
        "quiver": {
            "vertices": ["1", "2", "3", "4"],
            "arrows": arrows,
            "relations": [[[1, ["a13", "a34"]], [-1, ["a12", "a24"]]]],
        },
        "p": p,
        "indecomposables": [_thin(f"E{s}", list(s), arrows) for s in BOUND_SUPPORTS],
        "pentagon": {
            "lhs": [f"E{s}" for s in BOUND_SUPPORTS],
            "rhs": ["E1", "E2", "E3", "E4"],
        },
    }
