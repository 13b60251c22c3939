import random

from hypothesis import given, settings
from hypothesis import strategies as st

from feynhopf.canon import canonical_labeling, nauty_labeling, python_labeling
from feynhopf.graph import Graph, labeling


def relabel(g: Graph, rng: random.Random) -> Graph:
    vp = list(range(g.n_vertices))
    hp = list(range(g.n_half_edges))
    rng.shuffle(vp)
    rng.shuffle(hp)
    return g.relabel(tuple(vp), tuple(hp))


def test_key_invariant_under_relabeling(phi3_corpus1, qed_corpus1):
    rng = random.Random(7)
    for corpus in (phi3_corpus1, qed_corpus1):
        for sg in corpus.graphs:
            g = sg.graph
            assert labeling(g).key == labeling(relabel(g, rng)).key


def test_labeling_gives_canonical_form(phi3_corpus1):
    rng = random.Random(3)
    for sg in phi3_corpus1.graphs[:60]:
        g = sg.graph
        h = relabel(g, rng)
        a, b = labeling(g), labeling(h)
        assert g.relabel(a.vperm, a.hperm) == h.relabel(b.vperm, b.hperm)


def _classes(graphs, fn):
    out = {}
    for i, g in enumerate(graphs):
        lab = fn([(0, k) for k in g.vspec], [(1, t) for t in g.types], g.sigma, g.incidence)
        out.setdefault(lab.key, []).append(i)
    return sorted(sorted(v) for v in out.values())


def test_python_search_agrees_with_nauty(phi3_corpus1, qed_corpus1):
    rng = random.Random(11)
    for corpus in (phi3_corpus1, qed_corpus1):
        gs = [sg.graph for sg in corpus.graphs]
        gs = gs + [relabel(g, rng) for g in gs]
        assert _classes(gs, python_labeling) == _classes(gs, nauty_labeling)


def test_dispatch_uses_nauty():
    a = canonical_labeling([0], [0, 0], (1, 0), (0, 0))
    b = nauty_labeling([0], [0, 0], (1, 0), (0, 0))
    assert a == b


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_random_multigraphs(data):
    # random multigraphs with loops and legs; nauty and the pure search agree
    nv = data.draw(st.integers(1, 4))
    nh = data.draw(st.integers(0, 8))
    inc = tuple(data.draw(st.lists(st.integers(0, nv - 1), min_size=nh, max_size=nh)))
    order = data.draw(st.permutations(range(nh)))
    sigma = list(range(nh))
    npairs = data.draw(st.integers(0, nh // 2))
    for i in range(npairs):
        a, b = order[2 * i], order[2 * i + 1]
        sigma[a], sigma[b] = b, a
    g = Graph(tuple([0] * nv), tuple(["s"] * nh), tuple(sigma), inc)
    h = relabel(g, random.Random(data.draw(st.integers(0, 1000))))
    args = lambda x: ([(0, k) for k in x.vspec], [(1, t) for t in x.types], x.sigma, x.incidence)  # noqa: E731
    assert nauty_labeling(*args(g)).key == nauty_labeling(*args(h)).key
    assert python_labeling(*args(g)).key == python_labeling(*args(h)).key
