import pytest

from feynhopf.graph import (
    GraphError,
    NotInTheory,
    are_isomorphic,
    canon,
    contract,
    covering_subgraphs,
    from_edges,
    residue,
    skeleton,
    to_dot,
    validate,
)

S = "s"
bubble = from_edges([0, 0], [(0, 1, S), (0, 1, S)], [(0, S), (1, S)])
G = from_edges([0, 0, 0, 0], [(0, 1, S), (0, 2, S), (2, 3, S), (2, 3, S), (3, 1, S)], [(0, S), (1, S)])


def test_counts():
    assert bubble.n_vertices == 2 and bubble.n_half_edges == 6
    assert bubble.loop_number() == 1
    assert G.loop_number() == 2
    assert bubble.ext_signature() == (S, S)


def test_1pi():
    assert bubble.is_1pi() and G.is_1pi()
    chain = from_edges([0, 0, 0, 0], [(0, 1, S), (0, 1, S), (1, 2, S), (2, 3, S), (2, 3, S)], [(0, S), (3, S)])
    assert chain.is_connected() and not chain.is_1pi()


def test_validate_json_round_trip(phi3):
    g = validate(G.to_json(), phi3)
    assert g == G


@pytest.mark.parametrize("mutate", [
    lambda d: d.update(sigma=d["sigma"][:-1]),
    lambda d: d.update(incidence=[9] * len(d["incidence"])),
    lambda d: d["sigma"].__setitem__(0, 2),
    lambda d: d.pop("sigma"),
    lambda d: d.update(vertex_specs=[1, 0, 0, 0]),
])
def test_validate_rejects(phi3, mutate):
    d = G.to_json()
    mutate(d)
    with pytest.raises(GraphError):
        validate(d, phi3)


def test_rejects_wrong_valence(phi3):
    four = from_edges([0], [], [(0, S)] * 4)
    with pytest.raises(GraphError):
        validate(four, phi3)


def test_canon_invariant_under_relabeling():
    # G with vertices renamed 0->3, 1->2, 2->1, 3->0 and edges listed in another order
    G2 = from_edges([0, 0, 0, 0], [(0, 2, S), (3, 2, S), (1, 0, S), (3, 1, S), (0, 1, S)], [(3, S), (2, S)])
    assert canon(G) == canon(G2)
    assert are_isomorphic(G, G2)
    assert not are_isomorphic(G, bubble)


def test_canon_sees_specs():
    c0 = from_edges([0, 0, 0], [(0, 2, S), (2, 1, S), (0, 1, S)], [(0, S), (1, S)])
    c1 = from_edges([0, 0, 1], [(0, 2, S), (2, 1, S), (0, 1, S)], [(0, S), (1, S)])
    assert canon(c0) != canon(c1)


def test_contraction_and_residue(phi3):
    sub = [c for c in covering_subgraphs(G) if len(c.kept) == 2 and c.loop_number() == 1]
    inner = [c for c in sub if G.incidence[sorted(c.kept)[0]] == 2]
    q = contract(G, inner[0], phi3, {2: 1})
    assert q.n_vertices == 3 and q.loop_number() == 1
    r = residue(G, phi3)
    assert r.n_vertices == 1 and r.ext_signature() == (S, S)
    assert skeleton(G).n_vertices == 4 and not skeleton(G).internal_pairs


def test_contraction_outside_theory(phi3):
    # the cycle through both outer vertices leaves a four-valent vertex
    cyc = [c for c in covering_subgraphs(G) if len(c.kept) == 4 and c.loop_number() == 1]
    with pytest.raises(NotInTheory):
        contract(G, cyc[0], phi3)


def test_dot():
    text = to_dot(bubble)
    assert text.startswith("graph G {") and text.count("--") == 4
