"""Multi-hypergraphs, digraphs, host files, canonical forms and copy counting."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

Edge = Tuple[int, ...]
Arc = Tuple[int, int]


class HostParseError(ValueError):
    pass


def _check_edge(e: Sequence[int], k: int, n: int) -> Edge:
    e = tuple(sorted(int(v) for v in e))
    if len(e) != k:
        raise ValueError(f"edge {e} does not have {k} vertices")
    if len(set(e)) != k:
        raise ValueError(f"edge {e} has repeated vertices")
    if e[0] < 1 or e[-1] > n:
        raise ValueError(f"edge {e} has a vertex outside 1..{n}")
    return e


def _components(n: int, blocks: Iterable[Sequence[int]]) -> List[Tuple[int, ...]]:
    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    touched = set()
    for b in blocks:
        b = list(b)
        touched.update(b)
        for v in b[1:]:
            ra, rb = find(b[0]), find(v)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: Dict[int, List[int]] = {}
    for v in sorted(touched):
        groups.setdefault(find(v), []).append(v)
    return sorted(tuple(g) for g in groups.values())


@dataclass(frozen=True)
class MultiHypergraph:
    """Rank-k multi-hypergraph on vertices 1..n; edge identity is the position in ``edges``."""

    k: int
    n: int
    edges: Tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("rank must be at least 2")
        object.__setattr__(self, "edges", tuple(_check_edge(e, self.k, self.n) for e in self.edges))

    @classmethod
    def from_counts(cls, k: int, n: int, counts: Dict[Edge, int]) -> "MultiHypergraph":
        edges = []
        for e in sorted(counts):
            edges.extend([e] * counts[e])
        return cls(k, n, tuple(edges))

    def multiplicities(self) -> Dict[Edge, int]:
        return dict(sorted(Counter(self.edges).items()))

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def degrees(self) -> Dict[int, int]:
        deg = {v: 0 for v in range(1, self.n + 1)}
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return deg

    def support(self) -> Tuple[int, ...]:
        return tuple(sorted({v for e in self.edges for v in e}))

    def flatten(self) -> Tuple["SimpleHypergraph", Dict[Edge, int], int]:
        mult = self.multiplicities()
        M = math.prod(math.factorial(m) for m in mult.values())
        return SimpleHypergraph(self.k, self.n, tuple(mult)), mult, M

    def components(self) -> List[Tuple[int, ...]]:
        return _components(self.n, self.edges)

    def is_veblen(self) -> bool:
        return all(d % self.k == 0 for d in self.degrees().values())

    def veblen_check(self) -> Tuple[bool, List[Tuple[int, ...]]]:
        return self.is_veblen(), self.components()

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def restrict(self, vertices: Iterable[int]) -> "MultiHypergraph":
        vs = set(vertices)
        return MultiHypergraph(self.k, self.n, tuple(e for e in self.edges if set(e) <= vs))


@dataclass(frozen=True)
class SimpleHypergraph:
    """Rank-k hypergraph without parallel edges; edges are kept sorted."""

    k: int
    n: int
    edges: Tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("rank must be at least 2")
        es = tuple(sorted(_check_edge(e, self.k, self.n) for e in self.edges))
        if len(set(es)) != len(es):
            raise ValueError("simple hypergraph has a repeated edge")
        object.__setattr__(self, "edges", es)

    def as_multi(self) -> MultiHypergraph:
        return MultiHypergraph(self.k, self.n, self.edges)

    def edge_index(self, e: Sequence[int]) -> int:
        return self.edges.index(tuple(sorted(e)))

    def degrees(self) -> Dict[int, int]:
        return self.as_multi().degrees()

    def support(self) -> Tuple[int, ...]:
        return self.as_multi().support()

    def components(self) -> List[Tuple[int, ...]]:
        return _components(self.n, self.edges)

    def delete_vertex(self, u: int) -> "SimpleHypergraph":
        """Remove u and relabel the remaining vertices to 1..n-1."""
        relabel = lambda v: v if v < u else v - 1
        return SimpleHypergraph(self.k, self.n - 1, tuple(tuple(relabel(v) for v in e) for e in self.edges if u not in e))

    def delete_edge(self, i: int) -> "SimpleHypergraph":
        """Spanning subgraph without edge number i (0-based); vertices unchanged."""
        return SimpleHypergraph(self.k, self.n, self.edges[:i] + self.edges[i + 1:])

    def adjacency(self) -> List[List[int]]:
        if self.k != 2:
            raise ValueError("adjacency matrix needs rank 2")
        A = [[0] * self.n for _ in range(self.n)]
        for a, b in self.edges:
            A[a - 1][b - 1] = A[b - 1][a - 1] = 1
        return A


@dataclass(frozen=True)
class Digraph:
    """Multi-digraph on 1..n; arc identity is the position in ``arcs``."""

    n: int
    arcs: Tuple[Arc, ...] = ()

    def __post_init__(self):
        arcs = tuple((int(a), int(b)) for a, b in self.arcs)
        for a, b in arcs:
            if a == b:
                raise ValueError("loops are not allowed")
            if not (1 <= a <= self.n and 1 <= b <= self.n):
                raise ValueError(f"arc {(a, b)} outside 1..{self.n}")
        object.__setattr__(self, "arcs", arcs)

    def indegree(self, v: int) -> int:
        return sum(1 for _, b in self.arcs if b == v)

    def outdegree(self, v: int) -> int:
        return sum(1 for a, _ in self.arcs if a == v)

    def support(self) -> Tuple[int, ...]:
        return tuple(sorted({v for a in self.arcs for v in a}))

    def is_balanced(self) -> bool:
        return all(self.indegree(v) == self.outdegree(v) for v in range(1, self.n + 1))

    def is_connected(self) -> bool:
        return len(_components(self.n, self.arcs)) <= 1

    def is_eulerian(self) -> bool:
        """Balanced and weakly connected on its non-isolated vertices, with at least one arc."""
        return bool(self.arcs) and self.is_balanced() and self.is_connected()

    def multiplicities(self) -> Dict[Arc, int]:
        return dict(sorted(Counter(self.arcs).items()))


# ---------------------------------------------------------------------------
# host files


def parse_host(text: str, multigraph: bool = False):
    """Parse the ``k n`` + one-edge-per-line format.

    Edges of a simple host are numbered in sorted order, whatever the line order.

    Duplicate edges are an error unless ``multigraph`` is set, in which case a
    MultiHypergraph with those multiplicities is returned.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append((lineno, [int(x) for x in line.split()]))
        except ValueError:
            raise HostParseError(f"line {lineno}: non-integer token") from None
    if not rows:
        raise HostParseError("empty host file")
    lineno, head = rows[0]
    if len(head) != 2:
        raise HostParseError(f"line {lineno}: header must be 'k n'")
    k, n = head
    if k < 2 or n < 0:
        raise HostParseError(f"line {lineno}: need k >= 2 and n >= 0")
    edges = []
    for lineno, row in rows[1:]:
        if len(row) != k:
            raise HostParseError(f"line {lineno}: expected {k} vertices, got {len(row)}")
        try:
            edges.append(_check_edge(row, k, n))
        except ValueError as exc:
            raise HostParseError(f"line {lineno}: {exc}") from None
    if multigraph:
        return MultiHypergraph(k, n, tuple(edges))
    seen = set()
    for e in edges:
        if e in seen:
            raise HostParseError(f"duplicate edge {e} in a simple host")
        seen.add(e)
    return SimpleHypergraph(k, n, tuple(edges))


def read_host(path: str | Path, multigraph: bool = False):
    return parse_host(Path(path).read_text(encoding="utf-8"), multigraph)


def format_host(h) -> str:
    lines = [f"{h.k} {h.n}"] + [" ".join(map(str, e)) for e in h.edges]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# orientations


def orientations(X) -> List[Digraph]:
    """All 2^|E| orientations; bit i of the index reverses edge i (default tail = smaller end)."""
    if X.k != 2:
        raise ValueError("orientations need rank 2")
    out = []
    m = len(X.edges)
    for mask in range(1 << m):
        arcs = tuple((b, a) if mask >> i & 1 else (a, b) for i, (a, b) in enumerate(X.edges))
        out.append(Digraph(X.n, arcs))
    return out


# ---------------------------------------------------------------------------
# canonical forms


def _refine(verts: Sequence[int], color: Dict[int, int], incid: Dict[int, list]) -> Dict[int, int]:
    """Colour refinement until stable.  Colours are ranks of label-free signatures."""
    while True:
        sig = {}
        for v in verts:
            nb = sorted((role, mult, tuple(sorted(color[w] for w in others))) for role, mult, others in incid[v])
            sig[v] = (color[v], tuple(nb))
        ranks = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        new = {v: ranks[sig[v]] for v in verts}
        if len(set(new.values())) == len(set(color[v] for v in verts)):
            return new
        color = new


def _search(verts, color, incid, encode):
    """Individualisation-refinement; returns (min encoding, number of leaves attaining it)."""
    color = _refine(verts, color, incid)
    cells: Dict[int, List[int]] = {}
    for v in verts:
        cells.setdefault(color[v], []).append(v)
    target = None
    for c in sorted(cells):
        if len(cells[c]) > 1:
            target = cells[c]
            break
    if target is None:
        return encode(color), 1
    best, count = None, 0
    for v in target:
        c2 = {w: 2 * color[w] + (0 if w == v else 1) for w in verts}
        enc, cnt = _search(verts, c2, incid, encode)
        if best is None or enc < best:
            best, count = enc, cnt
        elif enc == best:
            count += cnt
    return best, count


def _hyper_search(X: MultiHypergraph, vertex_colors: Optional[Dict[int, int]] = None):
    mult = X.multiplicities()
    verts = list(X.support())
    incid: Dict[int, list] = {v: [] for v in verts}
    for e, m in mult.items():
        for v in e:
            incid[v].append((0, m, tuple(w for w in e if w != v)))
    color = {v: (vertex_colors or {}).get(v, 0) for v in verts}

    def encode(col):
        return (X.k, len(verts), tuple(sorted(col[v] for v in verts)) if vertex_colors else (),
                tuple(sorted((tuple(sorted(col[v] for v in e)), m) for e, m in mult.items())))

    return _search(verts, color, incid, encode)


def canonical_key(X: MultiHypergraph) -> bytes:
    """Equal for isomorphic multi-hypergraphs (isolated vertices ignored)."""
    return repr(_hyper_search(X)[0]).encode()


def vertex_fixed_key(X: MultiHypergraph) -> bytes:
    """Equal exactly when the multiplicity functions coincide on a fixed vertex set."""
    return repr((X.k, X.n, tuple(sorted(X.multiplicities().items())))).encode()


def automorphism_count(X: MultiHypergraph) -> int:
    """Vertex permutations of the support preserving every edge multiplicity.

    Permutations of edges inside a parallel class are not counted.
    """
    if not X.edges:
        return 1
    return _hyper_search(X)[1]


def digraph_key(D: Digraph) -> bytes:
    mult = D.multiplicities()
    verts = list(D.support())
    incid: Dict[int, list] = {v: [] for v in verts}
    for (a, b), m in mult.items():
        incid[a].append((0, m, (b,)))
        incid[b].append((1, m, (a,)))

    def encode(col):
        return (len(verts), tuple(sorted(((col[a], col[b]), m) for (a, b), m in mult.items())))

    return repr(_search(verts, {v: 0 for v in verts}, incid, encode)[0]).encode()


# ---------------------------------------------------------------------------
# copy counting


def count_embeddings(X: SimpleHypergraph, Y: SimpleHypergraph) -> int:
    """Injective maps of supp(X) into V(Y) sending edges of X to edges of Y."""
    if X.k != Y.k:
        return 0
    xs = list(X.support())
    if not xs:
        return 1
    ys = set(Y.edges)
    # order vertices so that edges close as early as possible
    order: List[int] = []
    adj = {v: set() for v in xs}
    for e in X.edges:
        for v in e:
            adj[v].update(w for w in e if w != v)
    remaining = set(xs)
    while remaining:
        v = max(remaining, key=lambda w: (len(adj[w] & set(order)), len(adj[w]), -w))
        order.append(v)
        remaining.discard(v)
    pos = {v: i for i, v in enumerate(order)}
    closing: List[List[Edge]] = [[] for _ in order]
    for e in X.edges:
        closing[max(pos[v] for v in e)].append(e)
    image: Dict[int, int] = {}
    used = set()

    def rec(i: int) -> int:
        if i == len(order):
            return 1
        total = 0
        for y in range(1, Y.n + 1):
            if y in used:
                continue
            image[order[i]] = y
            if all(tuple(sorted(image[v] for v in e)) in ys for e in closing[i]):
                used.add(y)
                total += rec(i + 1)
                used.discard(y)
            del image[order[i]]
        return total

    return rec(0)


def count_copies(X: SimpleHypergraph, Y: SimpleHypergraph) -> int:
    """Number of subgraphs of Y isomorphic to X (the bracket [Y over X])."""
    emb = count_embeddings(X, Y)
    aut = automorphism_count(X.as_multi())
    assert emb % aut == 0
    return emb // aut


def relabel_compact(X: MultiHypergraph) -> MultiHypergraph:
    """Drop isolated vertices, relabelling the support to 1..|supp|."""
    sup = X.support()
    idx = {v: i + 1 for i, v in enumerate(sup)}
    return MultiHypergraph(X.k, len(sup), tuple(tuple(idx[v] for v in e) for e in X.edges))


def brute_isomorphic(X: MultiHypergraph, Y: MultiHypergraph) -> bool:
    """Isomorphism by trying every bijection of supports (test oracle)."""
    from itertools import permutations

    if X.k != Y.k:
        return False
    sx, sy = X.support(), Y.support()
    if len(sx) != len(sy) or len(X.edges) != len(Y.edges):
        return False
    mx, my = X.multiplicities(), Y.multiplicities()
    for p in permutations(sy):
        f = dict(zip(sx, p))
        if all(my.get(tuple(sorted(f[v] for v in e)), 0) == m for e, m in mx.items()):
            return True
    return False


def brute_automorphisms(X: MultiHypergraph) -> int:
    from itertools import permutations

    sx = X.support()
    mx = X.multiplicities()
    return sum(
        all(mx.get(tuple(sorted(f[v] for v in e)), 0) == m for e, m in mx.items())
        for f in (dict(zip(sx, p)) for p in permutations(sx))
    )


def complete_hypergraph(k: int, n: int) -> SimpleHypergraph:
    from itertools import combinations

    return SimpleHypergraph(k, n, tuple(combinations(range(1, n + 1), k)))


def cycle_graph(n: int) -> SimpleHypergraph:
    return SimpleHypergraph(2, n, tuple(tuple(sorted((i, i % n + 1))) for i in range(1, n + 1)))


def graphs_on(n: int) -> Iterator[SimpleHypergraph]:
    """Every labelled simple graph on n vertices."""
    from itertools import combinations

    pairs = list(combinations(range(1, n + 1), 2))
    for mask in range(1 << len(pairs)):
        yield SimpleHypergraph(2, n, tuple(p for i, p in enumerate(pairs) if mask >> i & 1))


def graph_catalog(n: int) -> List[SimpleHypergraph]:
    """One representative per isomorphism class of simple graphs on n vertices."""
    seen = {}
    for g in graphs_on(n):
        key = canonical_key(g.as_multi()) + bytes([len(g.support())])
        seen.setdefault(key, g)
    return list(seen.values())
