from fractions import Fraction
from itertools import combinations_with_replacement

import pytest

from heappoly.core import Digraph, SimpleHypergraph, complete_hypergraph, digraph_key, graph_catalog
from heappoly.hyper import bundle, coefficients
from heappoly.oracles import (
    InstanceTooLarge,
    bijection_report,
    decomposition_pyramid_count,
    eulerian_digraph_catalog,
    kocay_check,
    raw_partitions,
    raw_rootings,
    recount,
    resultant_small,
    resultant_value,
)
from heappoly.rank2 import charpoly_det
from heappoly.trails import eulerian_trails

EDGE3 = SimpleHypergraph(3, 3, ((1, 2, 3),))


def test_resultant_single_edge():
    assert resultant_small(EDGE3) == [0, 0, 0, -1, 0, 0, 3, 0, 0, -3, 0, 0, 1]
    assert resultant_small(EDGE3)[::-1] == coefficients(EDGE3, 12, "kocay")


@pytest.mark.parametrize("n", [1, 2, 3])
def test_resultant_without_edges(n):
    N = n * 2 ** (n - 1)
    assert resultant_small(SimpleHypergraph(3, n, ())) == [0] * N + [1]


def test_resultant_eigen_identity_roots():
    # t^3 (t^3 - 1)^3 vanishes exactly at 0 and the cube roots of unity among small integers
    p = resultant_small(EDGE3)
    value = lambda t: sum(c * t ** i for i, c in enumerate(p))
    assert value(0) == 0 and value(1) == 0
    assert value(2) == 2 ** 3 * 7 ** 3


@pytest.mark.parametrize("G", graph_catalog(3), ids=lambda G: str(G.edges))
def test_rank2_resultant_is_the_determinant(G):
    assert resultant_small(G) == [Fraction(c) for c in charpoly_det(G)]


def test_resultant_scaling_law():
    for a, b in ((2, 1), (3, 2), (7, -3)):
        assert resultant_value(EDGE3, 3 * a, 3 * b) == 3 ** 12 * resultant_value(EDGE3, a, b)


def test_resultant_rejects_large_instances():
    with pytest.raises(InstanceTooLarge):
        resultant_small(complete_hypergraph(3, 4))


def test_raw_rootings_of_triple_edge():
    out = raw_rootings(bundle(3, 3, {(1, 2, 3): 3}))
    assert out["raw_assignments"] == 6
    assert out["tuples"] == 1
    assert out["class_sizes"] == [1]


def test_raw_partitions_of_six_parallel_edges():
    out = raw_partitions(bundle(3, 3, {(1, 2, 3): 6}))
    three = (((1, 2, 3), 3),)
    # 20 ways to pick a 3-set, each unordered split counted twice
    assert out[(three, three)]["raw"] == 20 // 2
    assert out[(three, three)]["alpha"] == 2
    assert out[((((1, 2, 3), 6),),)] == {"raw": 1, "alpha": 1}


def test_alpha_forced_by_nine_parallel_edges():
    three = (((1, 2, 3), 3),)
    out = raw_partitions(bundle(3, 3, {(1, 2, 3): 9}))
    assert out[(three, three, three)] == {"raw": 280, "alpha": 6}
    k = kocay_check(EDGE3, [bundle(3, 3, {(1, 2, 3): 3})] * 3)
    assert k["nu"] == 6 and k["ok"]


@pytest.mark.parametrize("checkpoint,params", [
    ("rootings", {"X": bundle(3, 3, {(1, 2, 3): 3})}),
    ("rootings", {"X": bundle(3, 4, {(1, 2, 3): 3, (1, 2, 4): 3})}),
    ("rootings", {"X": bundle(2, 3, {(1, 2): 2, (2, 3): 2, (1, 3): 2})}),
    ("partitions", {"X": bundle(3, 3, {(1, 2, 3): 6})}),
    ("partitions", {"X": bundle(2, 4, {(1, 2): 2, (2, 3): 2, (3, 4): 2, (1, 4): 2})}),
    ("round-trips", {"max_arcs": 6}),
])
def test_recount_checkpoints(checkpoint, params):
    rep = recount(checkpoint, **params)
    assert rep.ok, rep.failures
    assert rep.checks > 0


def test_unknown_checkpoint():
    with pytest.raises(ValueError):
        recount("nope")


def _brute_eulerian_classes(max_arcs: int):
    keys = set()
    for a in range(2, max_arcs + 1):
        n = a
        arcs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
        for combo in combinations_with_replacement(arcs, a):
            D = Digraph(n, combo)
            if D.is_eulerian():
                keys.add(digraph_key(D))
    return keys


def test_digraph_catalog_is_complete_to_six_arcs():
    cat = eulerian_digraph_catalog(6)
    assert len({digraph_key(D) for D in cat}) == len(cat)
    assert {digraph_key(D) for D in cat} == _brute_eulerian_classes(6)


def test_decomposition_pyramids_on_bowtie():
    # two digons glued at 1: tau = 1 and (2 - 1)! = 1, so a single Eulerian circuit
    D = Digraph(3, ((1, 2), (2, 1), (1, 3), (3, 1)))
    for e in range(4):
        assert decomposition_pyramid_count(D, e=e) == len(eulerian_trails(D, e=e)) == 1
    # either digon can sit on top at the shared vertex
    assert decomposition_pyramid_count(D, u=1) == len(eulerian_trails(D, u=1)) == 2
    assert decomposition_pyramid_count(D, u=2) == 1


def test_bijection_report_on_catalog():
    for D in eulerian_digraph_catalog(6):
        rep = bijection_report(D)
        assert rep.ok, rep.failures
