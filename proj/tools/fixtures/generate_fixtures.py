#!/usr/bin/env python3
"""Regenerates the JSON model fixtures under fixtures/.

Gaussian fixtures use a fixed numpy seed so the output is reproducible.
Run from the repository root: python3 tools/fixtures/generate_fixtures.py
"""
import itertools
import json
import math
import pathlib

import numpy as np

OUT = pathlib.Path(__file__).resolve().parents[2] / "fixtures"


def binary_vars(labels):
    return [{"label": l, "domain": [0, 1]} for l in labels]


def table(scope_len, f):
    return [float(f(*bits)) for bits in itertools.product([0, 1], repeat=scope_len)]


def write(name, doc):
    OUT.mkdir(exist_ok=True)
    (OUT / name).write_text(json.dumps(doc, indent=2) + "\n")


def graph_model(labels, edges):
    return {"format_version": 1, "variables": binary_vars(labels),
            "graph": {"edges": [list(e) for e in edges]}}


V6 = [f"V{i}" for i in range(1, 7)]


def two_paths_potential(a12, a23, a45, a56, a13=None):
    inter = [
        {"scope": ["V2"], "table": table(1, lambda v2: a12 * v2)},
        {"scope": ["V1", "V2"], "table": table(2, lambda v1, v2: a12 * v1 * v2)},
        {"scope": ["V2", "V3"], "table": table(2, lambda v2, v3: a23 * v2 * v3)},
        {"scope": ["V4", "V5"], "table": table(2, lambda v4, v5: a45 * v4 * v5)},
        {"scope": ["V5", "V6"], "table": table(2, lambda v5, v6: a56 * v5 * v6)},
    ]
    if a13 is not None:
        inter.append({"scope": ["V1", "V3"], "table": table(2, lambda v1, v3: a13 * v1 * v3)})
    return {"interactions": inter}


def cancelling_a13(a12, a23):
    """Value of the V1-V3 coupling that cancels the innovation on {V1, V3}."""
    return (math.log(math.exp(-2 * a12 - a23) + 1) - math.log(math.exp(-2 * a12) + 1)
            - math.log(math.exp(-a23 - a12) + 1) + math.log(math.exp(-a12) + 1))


DAMAGE_EDGES = [
    (1, 9), (1, 10), (1, 2),
    (2, 3), (2, 6), (2, 4), (2, 5),
    (6, 23), (6, 8),
    (4, 8), (4, 24), (4, 5),
    (3, 11), (3, 12), (3, 21), (3, 8),
    (5, 13), (5, 22), (5, 7),
    (13, 4),
    (7, 14), (7, 15), (7, 16), (7, 17), (7, 8),
    (8, 18), (8, 19), (8, 20),
]
DAMAGE_LABELS = [f"X{i}" for i in range(1, 25)]


def damage_precision(rng):
    n = 24
    p = np.zeros((n, n))
    for a, b in DAMAGE_EDGES:
        x = rng.uniform(0.2, 0.6) * rng.choice([-1.0, 1.0])
        p[a - 1, b - 1] = p[b - 1, a - 1] = x
    for i in range(n):
        p[i, i] = 1.0 + np.abs(p[i]).sum()
    return p


def gaussian_model(labels, mean, prec):
    return {"format_version": 1, "variables": [{"label": l} for l in labels],
            "gaussian": {"mean": [float(x) for x in mean],
                         "precision": [float(x) for x in np.asarray(prec).reshape(-1)]}}


def main():
    # ten-vertex graph used for the boundary / clique tests
    write("ten_vertex_graph.json", graph_model(
        [f"V{i}" for i in range(1, 11)],
        [("V1", "V3"), ("V1", "V4"), ("V1", "V5"), ("V2", "V4"), ("V3", "V4"), ("V3", "V5"),
         ("V5", "V4"), ("V6", "V4"), ("V7", "V9"), ("V7", "V10"), ("V8", "V10")]))

    e5 = [("V1", "V2"), ("V2", "V3"), ("V4", "V5"), ("V5", "V6")]
    write("two_paths_graph.json", graph_model(V6, e5))
    write("two_paths_graph_v1v3.json", graph_model(V6, e5 + [("V1", "V3")]))

    # unnormalized potential with th12 (1 + v1) v2
    th = {"12": 0.7, "13": -1.2, "23": 0.4, "45": 1.5, "56": -0.8}
    write("two_blocks_unnormalized.json", {
        "format_version": 1, "variables": binary_vars(V6),
        "potential": {"interactions": [
            {"scope": ["V1", "V2"], "table": table(2, lambda v1, v2: th["12"] * (1 + v1) * v2)},
            {"scope": ["V1", "V3"], "table": table(2, lambda v1, v3: th["13"] * v1 * v3)},
            {"scope": ["V2", "V3"], "table": table(2, lambda v2, v3: th["23"] * v2 * v3)},
            {"scope": ["V4", "V5"], "table": table(2, lambda v4, v5: th["45"] * v4 * v5)},
            {"scope": ["V5", "V6"], "table": table(2, lambda v5, v6: th["56"] * v5 * v6)},
        ]}})

    write("two_paths_potential.json", {"format_version": 1, "variables": binary_vars(V6),
                                 "potential": two_paths_potential(1.0, 1.0, 1.0, 1.0)})
    write("two_paths_potential_v1v3.json", {"format_version": 1, "variables": binary_vars(V6),
                                    "potential": two_paths_potential(1.0, 1.0, 1.0, 1.0, a13=1.0)})
    members = []
    for a12, a23, a45, a56 in [(1.0, 1.0, 1.0, 1.0), (0.5, -1.5, 2.0, -0.7), (-2.0, 0.8, -1.0, 1.3)]:
        members.append(two_paths_potential(a12, a23, a45, a56, a13=cancelling_a13(a12, a23)))
    write("two_paths_cancelling_family.json", {"format_version": 1, "variables": binary_vars(V6),
                                        "potential_family": {"members": members}})

    # V3 and V4 only interact with each other: eliminating them is parametrically collapsible
    write("isolated_elimination.json", {
        "format_version": 1, "variables": binary_vars(["V1", "V2", "V3", "V4"]),
        "potential": {"interactions": [
            {"scope": ["V1", "V2"], "table": table(2, lambda a, b: 0.9 * a * b)},
            {"scope": ["V3", "V4"], "table": table(2, lambda a, b: -1.1 * a * b)},
            {"scope": ["V1"], "table": table(1, lambda a: 0.3 * a)},
        ]}})

    # ternary domain, unnormalized
    write("ternary_chain.json", {
        "format_version": 1,
        "variables": [{"label": "A", "domain": [0, 1, 2]}, {"label": "B", "domain": [-1, 0, 1]},
                      {"label": "C", "domain": [0, 1, 2]}],
        "potential": {"interactions": [
            {"scope": ["A", "B"], "table": [0.1, -0.3, 0.5, 0.2, 0.0, -0.4, 0.7, 0.3, -0.2]},
            {"scope": ["C", "B"], "table": [0.4, 0.1, -0.6, 0.0, 0.2, 0.9, -0.5, 0.3, 0.8]},
        ]}})

    write("damage_graph.json", graph_model(
        DAMAGE_LABELS, [(f"X{a}", f"X{b}") for a, b in DAMAGE_EDGES]))

    rng = np.random.default_rng(20261015)
    prec = damage_precision(rng)
    mean = rng.normal(size=24)
    write("damage_gaussian.json", gaussian_model(DAMAGE_LABELS, mean, prec))

    # tune the X2-X4 entry so the marginal precision vanishes there
    drop = [5, 7, 13, 14, 15, 16, 17, 22, 23]
    z = [i - 1 for i in drop]
    a = [i for i in range(24) if i not in z]
    gamma = prec[np.ix_(a, z)] @ np.linalg.solve(prec[np.ix_(z, z)], prec[np.ix_(z, a)])
    i2, i4 = a.index(1), a.index(3)
    tuned = prec.copy()
    tuned[1, 3] = tuned[3, 1] = gamma[i2, i4]
    assert np.all(np.linalg.eigvalsh(tuned) > 0)
    write("damage_gaussian_tuned.json", gaussian_model(DAMAGE_LABELS, mean, tuned))

    write("identity_gaussian.json", gaussian_model(["Y1", "Y2", "Y3", "Y4"], [1.0, -2.0, 0.5, 3.0], np.eye(4)))


if __name__ == "__main__":
    main()
