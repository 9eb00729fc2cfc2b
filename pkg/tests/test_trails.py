import math
from collections import Counter
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heappoly.core import Digraph, complete_hypergraph, cycle_graph
from heappoly.linalg import matrix_powers
from heappoly.oracles import eulerian_digraph_catalog
from heappoly.trails import (
    Circuit,
    NotInsertable,
    Walk,
    arborescence_count,
    best_count,
    closed_walks,
    cs_preimage,
    cycle_sequence,
    cycles,
    edgegons,
    eulerian_circuits,
    eulerian_trails,
    insert,
)

K3 = complete_hypergraph(2, 3)
K4 = complete_hypergraph(2, 4)
CATALOG = eulerian_digraph_catalog(6)


def test_walk_from_steps_and_checks():
    w = Walk.from_steps(1, ((0, 1, 2), (2, 2, 3), (1, 3, 1)))
    assert w.vertices == (1, 2, 3, 1)
    assert w.is_closed() and w.is_trail()
    w.check(K3)
    with pytest.raises(ValueError):
        Walk.from_steps(1, ((0, 2, 1),))


def test_cycles_and_edgegons_of_k4():
    cyc = cycles(K4)
    assert Counter(len(c) for c in cyc) == {3: 8, 4: 6}
    assert all(c.is_cycle() for c in cyc)
    assert len(edgegons(K4)) == 6 and all(g.is_edgegon() for g in edgegons(K4))


def test_circuit_is_rotation_invariant():
    w = Walk.from_steps(1, ((0, 1, 2), (2, 2, 3), (1, 3, 1)))
    assert Circuit.of(w) == Circuit.of(w.rotate_to(3))


def test_cycle_sequence_example():
    # 1-2-3-1 followed by 1-2 and back on the same edge
    w = Walk.from_steps(1, ((0, 1, 2), (2, 2, 3), (1, 3, 1), (0, 1, 2), (0, 2, 1)))
    cs = cycle_sequence(w)
    assert [len(c) for c in cs] == [3, 2]
    assert cs[1].is_edgegon()


@given(st.integers(1, 7), st.data())
@settings(max_examples=60)
def test_cycle_sequence_partitions_steps(length, data):
    ws = closed_walks(K4, length, 1)
    if not ws:
        return
    w = data.draw(st.sampled_from(ws))
    cs = cycle_sequence(w)
    assert Counter(s for c in cs for s in c.key) == Counter(w.steps())
    assert all(c.is_cycle() for c in cs)
    assert cs_preimage(cs, u=1, trails=False) == w


def test_insert_rules():
    tri = Walk.from_steps(1, ((0, 1, 2), (2, 2, 3), (1, 3, 1)))
    dig = Walk.from_steps(2, ((0, 2, 1), (0, 1, 2)))
    with pytest.raises(NotInsertable):
        insert(dig, tri)  # first vertex of tri on dig is 1, not 2
    with pytest.raises(NotInsertable):
        insert(dig.rotate_to(1), tri)  # shares edge 0
    w = insert(dig.rotate_to(1), tri, trails=False)
    assert w.vertices == (1, 2, 1, 2, 3, 1)


@pytest.mark.parametrize("D", CATALOG, ids=lambda D: str(D.arcs))
def test_trail_counts_and_preimages(D):
    circ = eulerian_circuits(D)
    assert len(circ) == best_count(D)
    for e in range(len(D.arcs)):
        ws = eulerian_trails(D, e=e)
        assert len(ws) == len(circ)
        for w in ws:
            assert w.edges[-1] == e
            assert cs_preimage(cycle_sequence(w), e=e) == w
    for u in D.support():
        assert len(eulerian_trails(D, u=u)) == D.indegree(u) * len(circ)


def _brute_arborescences(D: Digraph, root: int) -> int:
    verts = [v for v in D.support() if v != root]
    out_arcs = {v: [i for i, (a, _) in enumerate(D.arcs) if a == v] for v in verts}
    total = 0
    for choice in product(*(out_arcs[v] for v in verts)):
        nxt = {v: D.arcs[i][1] for v, i in zip(verts, choice)}
        ok = True
        for v in verts:
            seen = set()
            while v != root:
                if v in seen:
                    ok = False
                    break
                seen.add(v)
                v = nxt[v]
            if not ok:
                break
        total += ok
    return total


@pytest.mark.parametrize("D", CATALOG[:25], ids=lambda D: str(D.arcs))
def test_matrix_tree_against_brute_force(D):
    for root in D.support():
        assert arborescence_count(D) == _brute_arborescences(D, root)


def test_best_on_doubled_triangle():
    D = Digraph(3, ((1, 2), (2, 3), (3, 1), (1, 2), (2, 3), (3, 1)))
    # labelled parallel arcs: two choices out of 2 and out of 3, every indegree 2
    tau = _brute_arborescences(D, 1)
    assert tau == 4
    assert len(eulerian_circuits(D)) == best_count(D) == tau * math.factorial(1) ** 3


@pytest.mark.parametrize("G", [K3, K4, cycle_graph(5)], ids=["K3", "K4", "C5"])
def test_closed_walks_match_matrix_powers(G):
    P = matrix_powers(G.adjacency(), 6)
    for d in range(7):
        for u in range(1, G.n + 1):
            assert len(closed_walks(G, d, u)) == P[d][u - 1][u - 1]


def test_undirected_eulerian_trails():
    # the triangle traversed in either direction
    ws = eulerian_trails(K3, e=0)
    assert len(ws) == 2
    assert len(eulerian_circuits(K3)) == 2


def test_anchor_validation():
    with pytest.raises(ValueError):
        eulerian_trails(K3, u=7)
    with pytest.raises(ValueError):
        eulerian_trails(K3, e=3)
