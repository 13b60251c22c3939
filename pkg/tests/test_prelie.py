import itertools

from conftest import expected_graphs, graph, load_examples

from feynhopf.algebra import LinComb
from feynhopf.prelie import bracket, check_jacobi, check_prelie, insert, insert_at
from feynhopf.specified import SpecifiedGraph
from feynhopf.theory import load_theory


def test_worked_insertions():
    for name in ("phi3", "qed"):
        ex = load_examples(name)
        T = load_theory(ex["theory"])
        i = ex["insertion"]
        r = insert(graph(i["x"], T), graph(i["y"], T))
        assert r == expected_graphs(i["expected"], T)
        assert [c for _, c in r] == [2]


def test_no_matching_site_gives_zero(phi3):
    ex = load_examples("phi3")
    x = graph(ex["insertion"]["x"], phi3)  # spec 1 bubble
    y = graph(ex["coproduct"]["x"], phi3)  # only three-valent sites and no crossed-1 vertex
    assert insert(x, y) == LinComb()


def test_insert_at_sums_to_insert(phi3_corpus1):
    gs = phi3_corpus1.graphs
    for x, y in itertools.islice(itertools.product(gs, gs), 400):
        total = LinComb.sum(insert_at(x, v, y) for v in range(y.graph.n_vertices))
        assert total == insert(x, y)


def test_result_keeps_target_spec(phi3_corpus1):
    gs = phi3_corpus1.graphs
    for x, y in itertools.islice(itertools.product(gs, gs), 400):
        for z, _ in insert(x, y):
            assert z.spec == y.spec
            assert z.degree == x.degree + y.degree


def test_bilinear(phi3_corpus1):
    gs = phi3_corpus1.graphs[:12]
    a = LinComb.of(gs[3]) + 2 * LinComb.of(gs[5])
    for y in gs:
        assert insert(a, y) == insert(gs[3], y) + 2 * insert(gs[5], y)
        assert bracket(a, y) == -bracket(y, a)


def test_laws_on_one_loop(qed_corpus1):
    gs = [g for g in qed_corpus1.graphs if g.graph.n_vertices <= 3]
    for a, b, c in itertools.islice(itertools.product(gs, gs, gs), 1500):
        assert check_prelie(a, b, c)
        assert check_jacobi(a, b, c)


def test_self_loop_target():
    # the presets have no self-loops, but gluing must handle a loop at the site
    from feynhopf.graph import from_edges

    y = SpecifiedGraph(from_edges([0, 0], [(0, 0, "s"), (0, 1, "s")], [(0, "s"), (1, "s"), (1, "s")]), (0,))
    x = SpecifiedGraph(from_edges([0, 0], [(0, 1, "s"), (0, 1, "s")], [(0, "s"), (0, "s"), (1, "s"), (1, "s")]), (0,))
    r = insert_at(x, 0, y)
    assert sum(c for _, c in r) == 24
    assert all(z.graph.n_half_edges == x.graph.n_half_edges + y.graph.n_half_edges - 4 for z, _ in r)
