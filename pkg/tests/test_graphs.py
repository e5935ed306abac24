import itertools
from collections import Counter

import networkx as nx
import pytest

from toric_split.errors import InputError
from toric_split.graphs import (
    GraphReport,
    SimpleGraph,
    a_numbers,
    build_tubing_complex,
    compare_graphs,
    compatible,
    lambda_g,
    phi_map,
    row_element,
    sa,
    tubes,
    verify_graph_corollary,
)
from toric_split.lambdamap import is_characteristic, row_space
from toric_split.subsets import mask_of, members

P4 = SimpleGraph.path(4)
CLAW = SimpleGraph.star(3)
K2 = SimpleGraph.complete(2)


def _oracle_face_counts(g):
    """Brute force: tubes via networkx, tubings as cliques of the compatibility graph."""
    nxg = nx.Graph()
    nxg.add_nodes_from(range(1, g.nodes + 1))
    nxg.add_edges_from(g.edges)
    nodes = list(nxg.nodes)
    ts = [frozenset(c) for r in range(1, len(nodes)) for c in itertools.combinations(nodes, r)
          if nx.is_connected(nxg.subgraph(c))]

    def ok(a, b):
        if a <= b or b <= a:
            return True
        return not (a & b) and not any(nxg.has_edge(x, y) for x in a for y in b)

    comp = nx.Graph()
    comp.add_nodes_from(range(len(ts)))
    comp.add_edges_from((i, j) for i, j in itertools.combinations(range(len(ts)), 2) if ok(ts[i], ts[j]))
    counts = Counter(len(c) for c in nx.enumerate_all_cliques(comp))
    return len(ts), tuple(counts[k] for k in sorted(counts))


@pytest.mark.parametrize("g", [P4, CLAW, K2, SimpleGraph.path(3), SimpleGraph.complete(4),
                               SimpleGraph.from_edges(5, [(1, 2), (2, 3), (3, 1), (3, 4), (4, 5)])])
def test_tubing_complex_against_oracle(g):
    ntubes, f = _oracle_face_counts(g)
    assert len(tubes(g)) == ntubes
    assert build_tubing_complex(g).f_vector() == f


def test_tubes_examples():
    assert [members(t) for t in tubes(P4)] == [(1,), (2,), (3,), (4,), (1, 2), (2, 3), (3, 4), (1, 2, 3), (2, 3, 4)]
    claw = [members(t) for t in tubes(CLAW)]
    assert len(claw) == 10
    assert sum(1 for t in claw if len(t) == 2) == 3 and all(1 in t for t in claw if len(t) > 1)
    assert [members(t) for t in tubes(K2)] == [(1,), (2,)]
    with pytest.raises(InputError):
        tubes(SimpleGraph.from_edges(4, [(1, 2), (3, 4)]))


def test_tubing_complex_examples():
    assert build_tubing_complex(P4).f_vector() == (9, 21, 14)
    pentagon = build_tubing_complex(SimpleGraph.path(3))
    assert pentagon.f_vector() == (5, 5)
    degrees = Counter(v for f in pentagon.faces_of_size(2) for v in members(f))
    assert set(degrees.values()) == {2}
    k2 = build_tubing_complex(K2)
    assert k2.f_vector() == (2,)
    assert not compatible(K2, 0b01, 0b10)


def test_lambda_g_columns():
    lam = lambda_g(P4)
    ts = tubes(P4)
    col = {members(t): lam.column(j + 1) for j, t in enumerate(ts)}
    assert col[(1,)] == mask_of([1])
    assert col[(2, 3, 4)] == mask_of([1])
    assert col[(3, 4)] == mask_of([1, 2])
    for g in (P4, CLAW, K2, SimpleGraph.complete(4)):
        assert is_characteristic(lambda_g(g), build_tubing_complex(g))


def test_a_numbers():
    assert a_numbers(P4) == [1, 3, 2]
    assert a_numbers(CLAW) == [1, 3, 2]
    assert a_numbers(K2) == [1, 1]
    assert sa(P4, []) == 1
    assert sa(P4, [2]) == 0
    assert sa(K2) == -1 and sa(P4) == 2 and sa(CLAW) == 2
    for g in (P4, CLAW, SimpleGraph.path(5), SimpleGraph.complete(5)):
        a = a_numbers(g)
        assert a[0] == 1
        assert all(a[i] == 0 for i in range(len(a)) if 2 * i > g.nodes)


def test_phi_map_examples():
    assert phi_map(P4, []) == 0
    assert phi_map(P4, [1]) == mask_of([1, 4])
    assert phi_map(P4, [1, 2]) == mask_of([1, 2])


@pytest.mark.parametrize("g", [P4, CLAW, SimpleGraph.path(5)])
def test_phi_bijection_and_parity(g):
    lam = lambda_g(g)
    images = {phi_map(g, s) for s in range(1 << g.n)}
    assert len(images) == 1 << g.n
    assert all(bin(t).count("1") % 2 == 0 for t in images)
    rows = {row_element(g, s, lam) for s in range(1 << g.n)}
    assert rows == set(row_space(lam))


def test_verify_examples():
    r = verify_graph_corollary(P4, 3)
    assert r.verdict == "PASS", r.failures
    assert r.betti[:3] == [1, 3, 2]
    assert r.cells == {"rzk": 55808, "quotient": 872, "kernel": 64}
    assert len(r.summands) == 8 and all(s.ok for s in r.summands)
    assert GraphReport.from_json(r.to_json()) == r
    k2 = verify_graph_corollary(K2, 3)
    assert k2.verdict == "PASS" and k2.betti == [1, 1]
    with pytest.raises(InputError):
        verify_graph_corollary(K2, 2)


def test_compare():
    c = compare_graphs(P4, CLAW, 3)
    assert c.verdict == "EQUIVALENT"
    assert c.first.sphere_multiset == c.second.sphere_multiset == {1: 1, 2: 3, 3: 2}
    assert compare_graphs(P4, K2, 3).verdict == "NOT-EQUIVALENT"


def test_graph_json():
    assert SimpleGraph.from_json(P4.to_json()) == P4
    g = SimpleGraph.from_json({"nodes": 3, "edges": [[1, 2], [2, 3]], "distinguished": 2})
    assert g.coordinates == (1, 3)
    with pytest.raises(InputError):
        SimpleGraph.from_json({"nodes": 3, "edges": [[1, 4]]})
