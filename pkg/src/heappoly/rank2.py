"""Rank-2 characteristic polynomials, closed walks and the Jacobi quotients."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .core import SimpleHypergraph
from .heaps import PieceSystem, circuit_system, heaps_table
from .linalg import bareiss_det, interpolate, matrix_powers
from .series import DEFAULT_ORDER, TruncatedSeries, normalize_phi
from .trails import Circuit, closed_walks, cycles, edgegons, eulerian_circuits


def _require_graph(G: SimpleHypergraph) -> None:
    if G.k != 2:
        raise ValueError("rank-2 graph expected")


def charpoly_det(G: SimpleHypergraph) -> List[int]:
    """det(tI - A) in ascending powers of t, from exact determinants at t = 0..n."""
    _require_graph(G)
    A = G.adjacency()
    n = G.n
    xs = list(range(n + 1))
    ys = [bareiss_det([[(x if i == j else 0) - A[i][j] for j in range(n)] for i in range(n)]) for x in xs]
    coeffs = interpolate(xs, ys)
    assert all(c.denominator == 1 for c in coeffs)
    return [int(c) for c in coeffs]


# ---------------------------------------------------------------------------
# Harary-Sachs


def undirected_cycles(G: SimpleHypergraph) -> List[Tuple[frozenset, frozenset]]:
    """Each cycle of length >= 3 once, as (vertex set, edge-id set)."""
    seen = set()
    out = []
    for c in cycles(G):
        key = (frozenset(c.vertex_set()), frozenset(c.edge_set()))
        if key not in seen:
            seen.add(key)
            out.append(key)
    return out


def elementary_subgraphs(G: SimpleHypergraph):
    """Yield (vertices covered, components, long cycles) for every elementary subgraph."""
    comps = [(frozenset(e), False) for e in G.edges] + [(vs, True) for vs, _ in undirected_cycles(G)]

    def rec(i: int, used: frozenset, c: int, z: int):
        yield len(used), c, z
        for j in range(i, len(comps)):
            vs, long = comps[j]
            if not vs & used:
                yield from rec(j + 1, used | vs, c + 1, z + long)

    yield from rec(0, frozenset(), 0, 0)


def charpoly_harary_sachs(G: SimpleHypergraph) -> List[int]:
    """[t^(n-d)] = sum over elementary subgraphs on d vertices of (-1)^c 2^z."""
    _require_graph(G)
    coeffs = [0] * (G.n + 1)
    for d, c, z in elementary_subgraphs(G):
        coeffs[G.n - d] += (-1) ** c * 2 ** z
    return coeffs


def phi_tilde(G: SimpleHypergraph, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    return normalize_phi(charpoly_det(G), G.n, order)


# ---------------------------------------------------------------------------
# pieces, walks, quotients


def rank2_pieces(G: SimpleHypergraph) -> List[Circuit]:
    """Cycles of length >= 3 in both orientations plus one edgegon per edge."""
    _require_graph(G)
    return sorted(cycles(G) + edgegons(G))


def rank2_system(G: SimpleHypergraph) -> PieceSystem:
    return circuit_system(rank2_pieces(G))


def _edge_id(G: SimpleHypergraph, e) -> int:
    if isinstance(e, int):
        if not 0 <= e < len(G.edges):
            raise ValueError("anchor not in host")
        return e
    try:
        return G.edge_index(e)
    except ValueError:
        raise ValueError("anchor not in host") from None


def pyramid_counts(G: SimpleHypergraph, e, D: int) -> List[int]:
    """|p^e_d| for d = 0..D: pyramids whose top piece contains edge e (empty heap at d = 0)."""
    eid = _edge_id(G, e)
    table = heaps_table(rank2_system(G), D, lambda c: eid in c.edge_set(), pyramids=True)
    return [int(table.get(d, 0)) for d in range(D + 1)]


def walk_counts(G: SimpleHypergraph, anchor: Optional[object] = None, D: int = 8, vertex: Optional[int] = None,
                edge=None) -> List[int]:
    """Closed-walk counts by length.

    Vertex anchors and the unanchored total are computed from matrix powers and
    by explicit enumeration, which must agree.  Edge anchors return pyramid
    counts (see ``raw_edge_walk_counts`` for the literal walk count).
    """
    _require_graph(G)
    if edge is not None:
        return pyramid_counts(G, edge, D)
    A = G.adjacency()
    P = matrix_powers(A, D)
    if vertex is not None:
        if not 1 <= vertex <= G.n:
            raise ValueError("anchor not in host")
        by_power = [P[d][vertex - 1][vertex - 1] for d in range(D + 1)]
        by_enum = [len(closed_walks(G, d, vertex)) for d in range(D + 1)]
    else:
        by_power = [sum(P[d][i][i] for i in range(G.n)) for d in range(D + 1)]
        by_enum = [len(closed_walks(G, d)) for d in range(D + 1)]
    if by_power != by_enum:
        raise AssertionError(f"walk counts disagree: {by_power} vs {by_enum}")
    return by_power


def raw_edge_walk_counts(G: SimpleHypergraph, e, D: int) -> List[int]:
    """Closed walks whose last step traverses edge e in either direction."""
    eid = _edge_id(G, e)
    out = [1]
    for d in range(1, D + 1):
        out.append(sum(1 for w in closed_walks(G, d) if w.edges[-1] == eid))
    return out


def jacobi_quotient(G: SimpleHypergraph, vertex: Optional[int] = None, edge=None,
                    order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """phi~(G - x) / phi~(G): vertex deletion drops u, edge deletion keeps all vertices."""
    _require_graph(G)
    if (vertex is None) == (edge is None):
        raise ValueError("give exactly one of vertex, edge")
    if vertex is not None:
        if not 1 <= vertex <= G.n:
            raise ValueError("anchor not in host")
        H = G.delete_vertex(vertex)
    else:
        H = G.delete_edge(_edge_id(G, edge))
    return phi_tilde(H, order) / phi_tilde(G, order)


def infragraph_log_form(G: SimpleHypergraph, order: int) -> TruncatedSeries:
    """sum over connected Eulerian multigraphs X on G of t^-|E| |circuits(X)| / M_X."""
    from .hyper import enumerate_infragraphs

    out: Dict[int, Fraction] = {}
    for X in enumerate_infragraphs(G, order, connected_only=True):
        if X.size == 0:
            continue
        M = X.to_multi()
        circ = len(eulerian_circuits(M))
        out[X.size] = out.get(X.size, Fraction(0)) + Fraction(circ, X.M)
    return TruncatedSeries(out, order)


def log_walk_identity(G: SimpleHypergraph, order: int = DEFAULT_ORDER) -> Tuple[TruncatedSeries, TruncatedSeries]:
    """(-log phi~, sum_d w_d/d t^-d)."""
    _require_graph(G)
    lhs = -phi_tilde(G, order).log()
    P = matrix_powers(G.adjacency(), order) if G.n else [[[]]] * (order + 1)
    rhs = TruncatedSeries({d: Fraction(sum(P[d][i][i] for i in range(G.n)), d) for d in range(1, order + 1)}, order)
    return lhs, rhs
