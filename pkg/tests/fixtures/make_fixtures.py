"""Writes the worked-example fixtures.

Every graph here is drawn by hand with ``from_edges``; nothing is computed
by the algebra code, so the fixtures stay an independent oracle.  Run from
the repository root: ``python3 tests/fixtures/make_fixtures.py``.
"""

import json
from pathlib import Path

from feynhopf.graph import from_edges

OUT = Path(__file__).parent
S, F, A = "s", "f", "a"


def sg(g, spec):
    d = g.to_json()
    d["spec"] = [spec]
    return d


def mono(*graphs):
    return {"monomial": list(graphs)}


def pair(g, spec, kept, inner_spec):
    return {"outer": sg(g, spec), "inner_kept_edges": kept, "inner_spec": inner_spec}


def vertex(types, spec=0):
    return from_edges([spec], [], [(0, t) for t in types])


# ---------------------------------------------------------------- phi^3

bubble = from_edges([0, 0], [(0, 1, S), (0, 1, S)], [(0, S), (1, S)])
# one-loop bubble with a crossed two-point vertex of spec k on one line
def crossed_loop(k):
    return from_edges([0, 0, k], [(0, 2, S), (2, 1, S), (0, 1, S)], [(0, S), (1, S)])

# two-loop self-energy: a bubble inserted on one line of a bubble
G = from_edges([0, 0, 0, 0], [(0, 1, S), (0, 2, S), (2, 3, S), (2, 3, S), (3, 1, S)], [(0, S), (1, S)])
# one-loop vertex graph with a crossed spec-1 vertex on edge 0-1, and with a bubble there
tri1 = from_edges([0, 0, 0, 1], [(0, 3, S), (3, 1, S), (1, 2, S), (2, 0, S)], [(0, S), (1, S), (2, S)])
tri_b = from_edges([0, 0, 0, 0, 0], [(0, 3, S), (3, 4, S), (3, 4, S), (4, 1, S), (1, 2, S), (2, 0, S)],
                   [(0, S), (1, S), (2, S)])
# two sites on the two lines of a bubble: crossed spec 1 and crossed spec 0
two_site = from_edges([0, 0, 1, 0], [(0, 2, S), (2, 1, S), (0, 3, S), (3, 1, S)], [(0, S), (1, S)])
# the same with one site (or both) replaced by a bubble
two_site_b0 = from_edges([0, 0, 1, 0, 0], [(0, 2, S), (2, 1, S), (0, 3, S), (3, 4, S), (3, 4, S), (4, 1, S)],
                         [(0, S), (1, S)])
two_site_b1 = from_edges([0, 0, 0, 0, 0], [(0, 2, S), (2, 4, S), (2, 4, S), (4, 1, S), (0, 3, S), (3, 1, S)],
                         [(0, S), (1, S)])
two_site_bb = from_edges([0] * 6, [(0, 2, S), (2, 4, S), (2, 4, S), (4, 1, S), (0, 3, S), (3, 5, S), (3, 5, S),
                                   (5, 1, S)], [(0, S), (1, S)])

v3 = vertex([S, S, S])
res0 = vertex([S, S], 0)
res1 = vertex([S, S], 1)

phi3 = {
    "theory": "phi3",
    "insertion": {"x": sg(bubble, 1), "y": sg(crossed_loop(1), 0),
                  "expected": [{"coeff": 2, "graph": sg(G, 0)}]},
    "coproduct": {
        "x": sg(G, 0),
        "expected": [
            {"coeff": 1, "left": mono(sg(G, 0)), "right": mono(sg(res0, 0))},
            {"coeff": 1, "left": mono(*[sg(v3, 0)] * 4), "right": mono(sg(G, 0))},
            {"coeff": 1, "left": mono(sg(bubble, 0), sg(v3, 0), sg(v3, 0)), "right": mono(sg(crossed_loop(0), 0))},
            {"coeff": 1, "left": mono(sg(bubble, 1), sg(v3, 0), sg(v3, 0)), "right": mono(sg(crossed_loop(1), 0))},
        ],
    },
    "ext_insert": {
        "a": mono(sg(bubble, 1)),
        "b": mono(sg(tri1, 0), sg(crossed_loop(1), 0)),
        "expected": [
            {"coeff": 2, "monomial": mono(sg(tri_b, 0), sg(crossed_loop(1), 0))},
            {"coeff": 2, "monomial": mono(sg(tri1, 0), sg(G, 0))},
        ],
    },
    "ext_insert_product": {
        "a": mono(sg(bubble, 1), sg(bubble, 0)),
        "b": mono(sg(two_site, 0)),
        "expected": [{"coeff": 4, "monomial": mono(sg(two_site_bb, 0))}],
    },
    "star": {
        "a": mono(sg(bubble, 1), sg(bubble, 0)),
        "b": mono(sg(two_site, 0)),
        "expected": [
            {"coeff": 1, "monomial": mono(sg(two_site, 0), sg(bubble, 1), sg(bubble, 0))},
            {"coeff": 4, "monomial": mono(sg(two_site_bb, 0))},
            {"coeff": 2, "monomial": mono(sg(two_site_b0, 0), sg(bubble, 1))},
            {"coeff": 2, "monomial": mono(sg(two_site_b1, 0), sg(bubble, 0))},
        ],
    },
}

# the product on pairs: p = (G, its inner bubble with spec 1); q has an inner
# bubble and two inequivalent free crossed spec-0 sites (vertices 4 and 5)
Q = from_edges([0] * 6, [(0, 4, S), (4, 1, S), (0, 5, S), (5, 2, S), (2, 3, S), (2, 3, S), (3, 1, S)],
               [(0, S), (1, S)])
# G (vertices a, b, c, d numbered 4/5, 6, 7, 8) replaces vertex 4 or vertex 5
R4 = from_edges([0] * 9, [(0, 4, S), (6, 1, S), (0, 5, S), (5, 2, S), (2, 3, S), (2, 3, S), (3, 1, S),
                          (4, 6, S), (4, 7, S), (7, 8, S), (7, 8, S), (8, 6, S)], [(0, S), (1, S)])
R5 = from_edges([0] * 9, [(0, 4, S), (4, 1, S), (0, 5, S), (6, 2, S), (2, 3, S), (2, 3, S), (3, 1, S),
                          (5, 6, S), (5, 7, S), (7, 8, S), (7, 8, S), (8, 6, S)], [(0, S), (1, S)])
phi3["odot"] = {
    "p": pair(G, 0, [4, 6], [0, 0, 1]),
    "q": pair(Q, 1, [8, 10], [0, 0, 0, 0, 0]),
    "expected": [
        {"coeff": 2, "pair": pair(R4, 1, [8, 10, 18, 20], [0, 0, 0, 0, 0, 0, 1])},
        {"coeff": 2, "pair": pair(R5, 1, [8, 10, 18, 20], [0, 0, 0, 0, 0, 0, 1])},
    ],
}

# ---------------------------------------------------------------- QED (unoriented fermion f, photon a)

se = from_edges([0, 0], [(0, 1, F), (0, 1, A)], [(0, F), (1, F)])
# one-loop fermion self-energy with a crossed fermion vertex of spec k on its fermion line
def se_crossed(k):
    return from_edges([0, 0, k], [(0, 2, F), (2, 1, F), (0, 1, A)], [(0, F), (1, F)])

# the two-loop rainbow: a self-energy nested inside another
rainbow = from_edges([0, 0, 0, 0], [(0, 2, F), (2, 3, F), (3, 1, F), (0, 1, A), (2, 3, A)], [(0, F), (1, F)])
qv = vertex([A, F, F])
fres1 = vertex([F, F], 1)

qed = {
    "theory": "qed",
    "insertion": {"x": sg(se, 1), "y": sg(se_crossed(1), 0),
                  "expected": [{"coeff": 2, "graph": sg(rainbow, 0)}]},
    "coproduct": {
        "x": sg(rainbow, 1),
        "expected": [
            {"coeff": 1, "left": mono(*[sg(qv, 0)] * 4), "right": mono(sg(rainbow, 1))},
            {"coeff": 1, "left": mono(sg(rainbow, 1)), "right": mono(sg(fres1, 1))},
            {"coeff": 1, "left": mono(sg(se, 0), sg(qv, 0), sg(qv, 0)), "right": mono(sg(se_crossed(0), 1))},
            {"coeff": 1, "left": mono(sg(se, 1), sg(qv, 0), sg(qv, 0)), "right": mono(sg(se_crossed(1), 1))},
        ],
    },
}

for name, doc in (("phi3_examples.json", phi3), ("qed_examples.json", qed)):
    (OUT / name).write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n")
