"""Named verification suites behind ``heappoly verify``.

Each suite returns a list of reports, one per identity checked.
"""

from __future__ import annotations

import random
from collections import Counter
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable, Dict, List

from .core import SimpleHypergraph, canonical_key, complete_hypergraph, cycle_graph, graph_catalog, relabel_compact
from .heaps import (circuit_concurrent, heaps_table, iter_heaps, pyramid_sum, pyramid_to_walk, to_series,
                    trivial_sum, walk_to_pyramid)
from .hyper import (METHODS, bundle, coefficients, decompositions, delta, edge_variable_coefficient,
                    enumerate_infragraphs, factorized_weight, root_series)
from .hyper import phi_tilde as hyper_phi_tilde
from .linalg import matrix_powers
from .oracles import (Report, best_report, bijection_report, eulerian_digraph_catalog, kocay_check, raw_delta,
                      raw_partitions, raw_rootings, resultant_small, resultant_value)
from .rank2 import (charpoly_det, charpoly_harary_sachs, jacobi_quotient, phi_tilde, pyramid_counts, rank2_system,
                    walk_counts)
from .series import TruncatedSeries
from .trails import closed_walks

EDGE3 = SimpleHypergraph(3, 3, ((1, 2, 3),))
TWO_EDGE = SimpleHypergraph(3, 4, ((1, 2, 3), (1, 2, 4)))
K3 = complete_hypergraph(2, 3)
K4 = complete_hypergraph(2, 4)


def random_graphs(n: int, count: int, seed: int = 2024) -> List[SimpleHypergraph]:
    rng = random.Random(seed)
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    return [SimpleHypergraph(2, n, tuple(p for p in pairs if rng.random() < 0.5)) for _ in range(count)]


def small_graph_catalog() -> List[SimpleHypergraph]:
    """Every simple graph on <= 5 vertices up to isomorphism, padded to 5 vertices (34 classes)."""
    return graph_catalog(5)


# ---------------------------------------------------------------------------


def suite_k4_ledger() -> List[Report]:
    S = rank2_system(K4)
    trivial = trivial_sum(S, grade_cap=4)
    heaps4 = [H for H in iter_heaps(S, 4) if sum(len(p) for p in H.labels) == 4]
    shapes = Counter()
    for H in heaps4:
        if len(H) == 1:
            shapes["cycle"] += 1
        elif H.labels[0] == H.labels[1]:
            shapes["same edgegon twice"] += 1
        elif circuit_concurrent(H.labels[0], H.labels[1]):
            shapes["adjacent edgegons"] += 1
        else:
            shapes["disjoint edgegons"] += 1
    pyr = pyramid_sum(S, grade_cap=4, mode="inverse")
    lg = -phi_tilde(K4, 4).log()

    r1 = Report("K4 trivial heaps at grade 4: (-1)*2*3 + 3 = -3")
    four_cycles = sum(1 for p in S.pieces if len(p) == 4)
    edge_pairs = sum(1 for H in heaps4 if len(H) == 2 and not circuit_concurrent(H.labels[0], H.labels[1]))
    r1.check(four_cycles == 6 and edge_pairs == 3, f"directed 4-cycles {four_cycles}, disjoint edge pairs {edge_pairs}")
    r1.check(trivial[4] == -3 == -four_cycles + edge_pairs, f"trivial sum {trivial[4]}")
    r1.check(charpoly_det(K4)[0] == -3, "determinant constant term")

    r2 = Report("K4 log series at t^-4: 1/1*2*3 + 1/2*6 + 1/2*2*12 = 21")
    pyr_shapes = Counter()
    for H in heaps4:
        if H.is_pyramid():
            key = "cycle" if len(H) == 1 else ("same edgegon twice" if H.labels[0] == H.labels[1] else "adjacent edgegons")
            pyr_shapes[key] += Fraction(1, len(H))
    r2.check(dict(pyr_shapes) == {"cycle": 6, "same edgegon twice": 3, "adjacent edgegons": 12},
             f"pyramid shapes {dict(pyr_shapes)}")
    r2.check(pyr[4] == 21 == lg[4], f"pyramid sum {pyr[4]}, -log phi {lg[4]}")

    r3 = Report("K4 all heaps at grade 4: 6 + 6 + 2*12 + 3 = 39")
    expect = {"cycle": 6, "same edgegon twice": 6, "adjacent edgegons": 24, "disjoint edgegons": 3}
    r3.check(dict(shapes) == expect, f"heap shapes {dict(shapes)}")
    r3.check(len(heaps4) == 39 and heaps_table(S, 4)[4] == 39, f"heap count {len(heaps4)}")
    r3.check((1 / trivial)[4] == 39, "inverse of the trivial sum")
    return [r1, r2, r3]


def suite_rank2_oracle() -> List[Report]:
    r1 = Report("elementary-subgraph formula = determinant, graphs on <= 5 vertices")
    cat = small_graph_catalog()
    r1.check(len(cat) == 34, f"catalog has {len(cat)} classes")
    for G in cat:
        r1.check(charpoly_harary_sachs(G) == charpoly_det(G), f"{G.edges}")
    r2 = Report("elementary-subgraph formula = determinant, 200 random 6-vertex graphs")
    for G in random_graphs(6, 200):
        r2.check(charpoly_harary_sachs(G) == charpoly_det(G), f"{G.edges}")
    return [r1, r2]


def suite_jacobi(D: int = 8) -> List[Report]:
    r1 = Report(f"vertex quotient phi(G-u)/phi(G) = closed walks at u, d <= {D}")
    for G in small_graph_catalog():
        P = matrix_powers(G.adjacency(), D)
        for u in range(1, G.n + 1):
            q = jacobi_quotient(G, vertex=u, order=D)
            r1.check([q[d] for d in range(D + 1)] == [P[d][u - 1][u - 1] for d in range(D + 1)], f"{G.edges} u={u}")
    r2 = Report(f"edge quotient phi(G-e)/phi(G) = pyramids with top on e, d <= {D}")
    for G in (K3, K4, cycle_graph(5)):
        for e in range(len(G.edges)):
            q = jacobi_quotient(G, edge=e, order=D)
            r2.check([q[d] for d in range(D + 1)] == pyramid_counts(G, e, D), f"{G.edges} e={e}")
    return [r1, r2]


def suite_bijections(max_arcs: int = 8) -> List[Report]:
    cat = eulerian_digraph_catalog(max_arcs)
    rep = Report(f"trails, circuits and decomposition pyramids, {len(cat)} Eulerian digraphs with <= {max_arcs} arcs")
    for D in cat:
        sub = bijection_report(D)
        rep.checks += sub.checks
        rep.failures.extend(sub.failures)
    walks = Report("closed walks <-> pyramids on K3 and K4, lengths <= 6")
    for G in (K3, K4):
        for d in range(1, 7):
            for u in range(1, G.n + 1):
                ws = closed_walks(G, d, u)
                pyrs = [walk_to_pyramid(w) for w in ws]
                walks.check(len(set(pyrs)) == len(ws), f"{G.edges} d={d} u={u}: not injective")
                for w, P in zip(ws, pyrs):
                    walks.check(pyramid_to_walk(P, u=u, trails=False) == w, f"round trip {w.edges}")
    return [rep, walks]


def suite_best(max_arcs: int = 8) -> List[Report]:
    rep = Report(f"enumerated Eulerian circuits = tau * prod (indeg - 1)!, <= {max_arcs} arcs")
    for D in eulerian_digraph_catalog(max_arcs):
        sub = best_report(D)
        rep.checks += sub.checks
        rep.failures.extend(sub.failures)
    return [rep]


def _agree(rep: Report, H: SimpleHypergraph, d_max: int, expect=None) -> None:
    vals = {m: coefficients(H, d_max, m) for m in METHODS}
    ref = vals["kocay"]
    rep.check(all(v == ref for v in vals.values()), f"{H.edges}: routes disagree {vals}")
    if expect is not None:
        rep.check(ref == expect, f"{H.edges}: {ref} vs oracle {expect}")


def suite_three_route() -> List[Report]:
    r1 = Report("three routes agree: single 3-edge host, d <= 12")
    _agree(r1, EDGE3, 12)
    r2 = Report("three routes agree: {123},{124}, d <= 8")
    _agree(r2, TWO_EDGE, 8)
    r3 = Report("three routes agree with the determinant: k=2 hosts on <= 5 vertices, all d")
    for G in small_graph_catalog():
        _agree(r3, G, G.n, [Fraction(c) for c in reversed(charpoly_det(G))])
    return [r1, r2, r3]


def suite_single_edge() -> List[Report]:
    res = resultant_small(EDGE3)
    r1 = Report("single 3-edge host: codegrees 0..12 = Macaulay resultant t^12 - 3t^9 + 3t^6 - t^3")
    r1.check(res == [0, 0, 0, -1, 0, 0, 3, 0, 0, -3, 0, 0, 1], f"resultant {res}")
    co = coefficients(EDGE3, 12, "kocay")
    r1.check(co == res[::-1], f"kocay route {co}")
    r1.check([co[d] for d in (0, 3, 6, 9, 12)] == [1, -3, 3, -1, 0], "codegree vector")
    r2 = Report("Delta vanishes on the 15- and 18-edge infragraphs of the single 3-edge host")
    for m in (15, 18):
        r2.check(delta(3, bundle(3, 3, {(1, 2, 3): m})) == 0, f"Delta(3, {m}e) != 0")
    r3 = Report("resultant scaling: res(t F) = t^N res(F), N = 12")
    for a, b in ((2, 1), (3, 2), (5, -1)):
        # t F_I - F_H at (a, b) scaled by s: (s a, s b)
        base = resultant_value(EDGE3, a, b)
        r3.check(resultant_value(EDGE3, 2 * a, 2 * b) == 2 ** 12 * base, f"scaling at {(a, b)}")
    return [r1, r2, r3]


def _parallel_bundles():
    for k, sizes in ((3, (3, 6, 9)), (2, (2, 4, 6, 8))):
        for m in sizes:
            yield bundle(k, k, {tuple(range(1, k + 1)): m})


def _kocay_hosts() -> List[SimpleHypergraph]:
    return [EDGE3, TWO_EDGE, K3, SimpleHypergraph(2, 3, ((1, 2), (2, 3))), cycle_graph(4),
            SimpleHypergraph(3, 5, ((1, 2, 3), (3, 4, 5)))]


def suite_kocay() -> List[Report]:
    r1 = Report("raw set-partition recount of decompositions and alpha, parallel bundles <= 9 edges")
    for X in _parallel_bundles():
        raw = raw_partitions(X)
        lib = {tuple(sorted(S.parts)): S.alpha for S in decompositions(X)}
        r1.check(set(raw) == set(lib), f"{len(X.edges)} edges: classes differ")
        for shape, info in raw.items():
            r1.check(lib.get(shape) == info["alpha"], f"{len(X.edges)} edges {shape}: {lib.get(shape)} vs {info}")
    nine = raw_partitions(bundle(3, 3, {(1, 2, 3): 9}))
    three = (((1, 2, 3), 3),)
    r2 = Report("9 parallel edges split 3+3+3 forces alpha = 6")
    r2.check(nine[(three, three, three)]["alpha"] == 6, f"{nine.get((three, three, three))}")
    six = raw_partitions(bundle(3, 3, {(1, 2, 3): 6}))
    r2.check(six[(three, three)] == {"raw": 10, "alpha": 2}, f"6 edges split 3+3: {six.get((three, three))}")

    r3 = Report("Kocay's lemma on hosts with <= 4 edges, up to 3 parts")
    for H in _kocay_hosts():
        cands = {}
        for X in enumerate_infragraphs(H, 2 * H.k, connected_only=True):
            if X.size:
                G = relabel_compact(X.to_multi())
                cands.setdefault(canonical_key(G), G)
        comps = list(cands.values())
        for r in (1, 2, 3):
            for combo in combinations_with_replacement(range(len(comps)), r):
                parts = [comps[i] for i in combo]
                if sum(len(p.edges) for p in parts) > 3 * H.k:
                    continue
                out = kocay_check(H, parts)
                r3.check(out["ok"], f"{H.edges} parts {[p.edges for p in parts]}: {out}")
    return [r1, r2, r3]


def suite_factorization() -> List[Report]:
    cases = [
        ("digon + digon at k=2", bundle(2, 3, {(1, 2): 2}), bundle(2, 3, {(2, 3): 2}), 2),
        ("3e + 3e at k=3", bundle(3, 5, {(1, 2, 3): 3}), bundle(3, 5, {(3, 4, 5): 3}), 3),
    ]
    r1 = Report("C of a cut-vertex gluing factorises, checked against raw rootings")
    r2 = Report("w_n of a gluing = ((k-1)^(1-n) - 1) w_n w_n, n = 3..6, checked against raw partitions")
    for label, X1, X2, u in cases:
        X = bundle(X1.k, X1.n, {**X1.multiplicities(), **X2.multiplicities()})
        for n in range(3, 7):
            out = factorized_weight(X1, X2, u, n)
            lhs, rhs = out["lemma"]
            r1.check(lhs == rhs == raw_rootings(X)["C"], f"{label}: C {lhs} vs {rhs}")
            lhs, rhs = out["prop"]
            direct = -raw_delta(n, X)
            factor = Fraction(X.k - 1) ** (1 - n) - 1
            r2.check(lhs == rhs == direct, f"{label} n={n}: {lhs} vs {rhs} vs raw {direct}")
            r2.check(direct == factor * raw_delta(n, X1) * raw_delta(n, X2), f"{label} n={n}: raw factor")
    return [r1, r2]


def _substitution_checks(rep: Report, H: SimpleHypergraph, d_max: int) -> None:
    m = len(H.edges)
    for d in range(d_max + 1):
        P = edge_variable_coefficient(H, d)
        rep.check(P.evaluate() == coefficients(H, d, "kocay")[d], f"{H.edges} d={d}: all-ones evaluation")
        for i in range(m):
            Hi = H.delete_edge(i)
            keep = [j for j in range(m) if j != i]
            zeroed = P.substitute({i: 0}).drop_variables(keep)
            rep.check(zeroed == edge_variable_coefficient(Hi, d, n=H.n), f"{H.edges} d={d} e{i + 1}=0")


def suite_edge_vars() -> List[Report]:
    r1 = Report("zeroing an edge variable = deleting the edge: K3")
    _substitution_checks(r1, K3, 3)
    for i in range(3):
        path = K3.delete_edge(i)
        r1.check(coefficients(path, 3, "kocay") == [Fraction(c) for c in reversed(charpoly_det(path))],
                 f"path host e{i + 1}")
    r2 = Report("zeroing an edge variable = deleting the edge: {123},{124}")
    _substitution_checks(r2, TWO_EDGE, 9)
    return [r1, r2]


def suite_root_series(order: int = 9) -> List[Report]:
    out = []
    for label, H in (("single 3-edge host", EDGE3), ("{123},{124}", TWO_EDGE)):
        rep = Report(f"formal root = class sum = trivial-heap sum to order {order}: {label}")
        root = hyper_phi_tilde(H, order).root((H.k - 1) ** H.n)
        direct = root_series(H, order, "harary_sachs")
        heaps = root_series(H, order, "trivial_heaps")
        rep.check(root == direct == heaps, f"{root} / {direct} / {heaps}")
        rep.check(root_series(H, order, "all") == root, "combined check")
        out.append(rep)
    out[0].check(root_series(EDGE3, order, "root")[3] == Fraction(-3, 8), "t^-3 coefficient -3/8")
    return out


def suite_viennot(order: int = 8) -> List[Report]:
    r1 = Report(f"sum over heaps = 1 / sum over trivial heaps, order {order}")
    r2 = Report(f"heaps with maximal pieces in M = N(not M) / N, order {order}")
    r3 = Report(f"-log N = sum over pyramids of 1/|P|, order {order}")
    for G in (K3, K4):
        S = rank2_system(G)
        N = trivial_sum(S, grade_cap=order)
        r1.check(N == phi_tilde(G, order), f"{G.edges}: trivial sum != phi~")
        r1.check(to_series(heaps_table(S, order), order) * N == TruncatedSeries.one(order), f"{G.edges}")
        for e in range(len(G.edges)):
            M = lambda c, e=e: e in c.edge_set()
            r2.check(pyramid_sum(S, M, order) == trivial_sum(S, M, order) / N, f"{G.edges} e={e}")
        for u in range(1, G.n + 1):
            M = lambda c, u=u: u in c.vertex_set()
            r2.check(pyramid_sum(S, M, order) == trivial_sum(S, M, order) / N, f"{G.edges} u={u}")
            walks = walk_counts(G, vertex=u, D=order)
            r2.check([pyramid_sum(S, M, order)[d] for d in range(order + 1)] == walks, f"{G.edges} walks at {u}")
        r3.check(-N.log() == pyramid_sum(S, grade_cap=order, mode="inverse"), f"{G.edges}")
    return [r1, r2, r3]


SUITES: Dict[str, Callable[[], List[Report]]] = {
    "k4-ledger": suite_k4_ledger,
    "rank2-oracle": suite_rank2_oracle,
    "jacobi": suite_jacobi,
    "bijections": suite_bijections,
    "best": suite_best,
    "three-route": suite_three_route,
    "single-edge": suite_single_edge,
    "kocay": suite_kocay,
    "factorization": suite_factorization,
    "edge-vars": suite_edge_vars,
    "root-series": suite_root_series,
    "viennot": suite_viennot,
}
