from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heappoly.core import (
    Digraph,
    HostParseError,
    MultiHypergraph,
    SimpleHypergraph,
    automorphism_count,
    brute_automorphisms,
    brute_isomorphic,
    canonical_key,
    complete_hypergraph,
    count_copies,
    digraph_key,
    format_host,
    graph_catalog,
    orientations,
    parse_host,
)


def test_parse_host_with_comments():
    H = parse_host("# K3\n2 3\n1 2  # first\n\n3 2\n1 3\n")
    assert H == SimpleHypergraph(2, 3, ((1, 2), (1, 3), (2, 3)))


def test_parse_host_numbers_edges_in_sorted_order():
    H = parse_host("3 4\n1 2 4\n3 2 1\n")
    assert H.edges == ((1, 2, 3), (1, 2, 4))


@pytest.mark.parametrize(
    "text",
    ["", "2\n", "2 3\n1 2 3\n", "2 3\n1 4\n", "2 3\n1 1\n", "2 3\n1 x\n", "2 3\n1 2\n2 1\n", "1 3\n"],
)
def test_parse_host_rejects(text):
    with pytest.raises(HostParseError):
        parse_host(text)


def test_parse_host_multigraph():
    X = parse_host("3 3\n1 2 3\n1 2 3\n3 1 2\n", multigraph=True)
    assert X.multiplicities() == {(1, 2, 3): 3}


edge_lists = st.integers(2, 5).flatmap(
    lambda n: st.lists(st.sampled_from(list(combinations(range(1, n + 1), 2))), unique=True).map(
        lambda es: SimpleHypergraph(2, n, tuple(es))
    )
)


@given(edge_lists)
def test_format_parse_round_trip(H):
    assert parse_host(format_host(H)) == H


def test_six_parallel_copies():
    X = MultiHypergraph(3, 3, ((1, 2, 3),) * 6)
    flat, mult, M = X.flatten()
    assert flat.edges == ((1, 2, 3),)
    assert mult == {(1, 2, 3): 6}
    assert M == 720
    assert X.is_veblen()


def test_veblen_and_components():
    X = MultiHypergraph(2, 5, ((1, 2), (1, 2), (3, 4), (4, 5), (3, 5)))
    assert X.is_veblen()
    assert X.components() == [(1, 2), (3, 4, 5)]
    assert not MultiHypergraph(2, 3, ((1, 2), (2, 3))).is_veblen()


@st.composite
def small_multigraphs(draw, k=2):
    n = draw(st.integers(k, 4))
    pool = list(combinations(range(1, n + 1), k))
    edges = draw(st.lists(st.sampled_from(pool), min_size=1, max_size=5))
    return MultiHypergraph(k, n, tuple(edges))


@given(small_multigraphs(), small_multigraphs())
@settings(max_examples=300)
def test_canonical_key_matches_brute_force(X, Y):
    assert (canonical_key(X) == canonical_key(Y)) == brute_isomorphic(X, Y)


@given(small_multigraphs(), st.permutations(range(1, 5)))
def test_canonical_key_is_label_invariant(X, perm):
    f = {v: perm[v - 1] for v in range(1, 5)}
    Y = MultiHypergraph(X.k, 4, tuple(tuple(f[v] for v in e) for e in X.edges))
    assert canonical_key(X) == canonical_key(Y)


@given(small_multigraphs())
@settings(max_examples=200)
def test_automorphisms_match_brute_force(X):
    assert automorphism_count(X) == brute_automorphisms(X)


@given(small_multigraphs(k=3))
@settings(max_examples=100)
def test_hypergraph_automorphisms(X):
    assert automorphism_count(X) == brute_automorphisms(X)


def test_automorphisms_respect_multiplicity():
    # 3 copies of 123 and 6 of 124: only 1 <-> 2 survives
    G = MultiHypergraph.from_counts(3, 4, {(1, 2, 3): 3, (1, 2, 4): 6})
    assert automorphism_count(G) == 2
    assert automorphism_count(G.flatten()[0].as_multi()) == 4


def _copies_brute(X: SimpleHypergraph, Y: SimpleHypergraph) -> int:
    m = len(X.edges)
    return sum(1 for sub in combinations(Y.edges, m) if brute_isomorphic(X.as_multi(), MultiHypergraph(Y.k, Y.n, sub)))


@pytest.mark.parametrize(
    "X",
    [
        SimpleHypergraph(2, 3, ((1, 2), (1, 3), (2, 3))),
        SimpleHypergraph(2, 3, ((1, 2), (2, 3))),
        SimpleHypergraph(2, 4, ((1, 2), (2, 3), (3, 4), (1, 4))),
        SimpleHypergraph(2, 4, ((1, 2), (3, 4))),
    ],
)
def test_count_copies_in_k5(X):
    Y = complete_hypergraph(2, 5)
    assert count_copies(X, Y) == _copies_brute(X, Y)


def test_count_copies_hyper():
    pair = SimpleHypergraph(3, 4, ((1, 2, 3), (1, 2, 4)))
    assert count_copies(pair, complete_hypergraph(3, 4)) == 6
    assert count_copies(pair, complete_hypergraph(3, 5)) == _copies_brute(pair, complete_hypergraph(3, 5))


def test_graph_catalog_sizes():
    # numbers of graphs on n unlabelled vertices
    assert [len(graph_catalog(n)) for n in range(1, 6)] == [1, 2, 4, 11, 34]


def test_orientations():
    K3 = complete_hypergraph(2, 3)
    ors = orientations(K3)
    assert len(ors) == 8
    assert sum(D.is_eulerian() for D in ors) == 2


def test_digraph_basics():
    D = Digraph(3, ((1, 2), (2, 3), (3, 1), (1, 2), (2, 1)))
    assert D.indegree(2) == 2 and D.outdegree(2) == 2
    assert D.is_eulerian()
    assert not Digraph(3, ((1, 2), (2, 3))).is_balanced()
    with pytest.raises(ValueError):
        Digraph(2, ((1, 1),))


def test_digraph_key_separates_directions():
    a = Digraph(3, ((1, 2), (2, 3), (3, 1)))
    b = Digraph(3, ((2, 1), (3, 2), (1, 3)))
    c = Digraph(3, ((1, 2), (2, 1), (1, 3), (3, 1)))
    d = Digraph(3, ((1, 2), (2, 1), (2, 3), (3, 2)))
    assert digraph_key(a) == digraph_key(b)
    assert digraph_key(c) == digraph_key(d)
    assert digraph_key(a) != digraph_key(c)
