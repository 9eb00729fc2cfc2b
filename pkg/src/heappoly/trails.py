"""Walks, closed trails, circuits, cycle sequences and Eulerian enumeration.

Graphs are either ``Digraph`` (arc ids = positions) or rank-2 ``MultiHypergraph`` /
``SimpleHypergraph`` (edge ids = positions, traversable both ways).  A walk is
stored as its vertex sequence plus edge sequence; a step is the triple
(edge id, tail, head).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple, Union

from .core import Digraph, MultiHypergraph, SimpleHypergraph
from .linalg import laplacian_minor_det

Step = Tuple[int, int, int]
Graph = Union[Digraph, MultiHypergraph, SimpleHypergraph]


class NotInsertable(ValueError):
    pass


@dataclass(frozen=True)
class Walk:
    vertices: Tuple[int, ...]
    edges: Tuple[int, ...] = ()
    directed: bool = False

    def __post_init__(self):
        if len(self.vertices) != len(self.edges) + 1:
            raise ValueError("a walk alternates vertices and edges")

    @classmethod
    def from_steps(cls, start: int, steps: Sequence[Step], directed: bool = False) -> "Walk":
        vs = [start]
        for e, a, b in steps:
            if a != vs[-1]:
                raise ValueError("steps do not chain")
            vs.append(b)
        return cls(tuple(vs), tuple(s[0] for s in steps), directed)

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    def steps(self) -> Tuple[Step, ...]:
        v = self.vertices
        return tuple((e, v[i], v[i + 1]) for i, e in enumerate(self.edges))

    def is_closed(self) -> bool:
        return self.vertices[0] == self.vertices[-1]

    def is_trail(self) -> bool:
        return len(set(self.edges)) == len(self.edges)

    def vertex_set(self) -> Set[int]:
        return set(self.vertices)

    def edge_set(self) -> Set[int]:
        return set(self.edges)

    def __add__(self, other: "Walk") -> "Walk":
        if self.end != other.start:
            raise ValueError("walks do not meet")
        return Walk(self.vertices + other.vertices[1:], self.edges + other.edges, self.directed)

    def segment(self, i: int, j: int) -> "Walk":
        """Sub-walk from vertex position i to vertex position j."""
        return Walk(self.vertices[i:j + 1], self.edges[i:j], self.directed)

    def rotate_to(self, v: int) -> "Walk":
        """Cyclic rotation of a closed walk starting at the first visit of v."""
        i = self.vertices.index(v)
        return self.segment(i, len(self)) + self.segment(0, i)

    def check(self, G: Graph) -> None:
        ends = graph_edges(G)
        for e, a, b in self.steps():
            x, y = ends[e]
            if (a, b) != (x, y) and (is_directed(G) or (a, b) != (y, x)):
                raise ValueError(f"step {(e, a, b)} not incident")


@dataclass(frozen=True, order=True)
class Circuit:
    """A closed trail up to cyclic rotation, keyed by its minimal step rotation."""

    key: Tuple[Step, ...]
    directed: bool = False

    @classmethod
    def of(cls, w: Walk) -> "Circuit":
        if not w.is_closed() or not w.edges:
            raise ValueError("circuits come from closed walks of positive length")
        s = w.steps()
        return cls(min(s[i:] + s[:i] for i in range(len(s))), w.directed)

    def __len__(self) -> int:
        return len(self.key)

    @property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(s[1] for s in self.key)

    def vertex_set(self) -> Set[int]:
        return {s[1] for s in self.key}

    def edge_set(self) -> Set[int]:
        return {s[0] for s in self.key}

    def is_cycle(self) -> bool:
        vs = self.vertices
        return len(set(vs)) == len(vs)

    def is_edgegon(self) -> bool:
        return len(self.key) == 2 and self.key[0][0] == self.key[1][0]

    def walk(self) -> Walk:
        return Walk.from_steps(self.key[0][1], self.key, self.directed)

    def at(self, v: int) -> Walk:
        """The rotation starting (and ending) at v."""
        if v not in self.vertex_set():
            raise ValueError(f"vertex {v} not on circuit")
        return self.walk().rotate_to(v)

    def ending_with(self, e: int) -> Walk:
        """The rotation whose last step uses edge e."""
        s = self.key
        for i, st in enumerate(s):
            if st[0] == e:
                rot = s[i + 1:] + s[:i + 1]
                return Walk.from_steps(rot[0][1], rot, self.directed)
        raise ValueError(f"edge {e} not on circuit")


# ---------------------------------------------------------------------------
# graph adapters


def is_directed(G: Graph) -> bool:
    return isinstance(G, Digraph)


def graph_edges(G: Graph) -> Tuple[Tuple[int, int], ...]:
    if isinstance(G, Digraph):
        return G.arcs
    if G.k != 2:
        raise ValueError("walks live on rank-2 graphs or digraphs")
    return G.edges


def moves(G: Graph) -> Dict[int, List[Tuple[int, int]]]:
    """vertex -> [(edge id, other end)] in ascending edge id."""
    out: Dict[int, List[Tuple[int, int]]] = {v: [] for v in range(1, G.n + 1)}
    for e, (a, b) in enumerate(graph_edges(G)):
        out[a].append((e, b))
        if not is_directed(G):
            out[b].append((e, a))
    for v in out:
        out[v].sort()
    return out


def is_eulerian(G: Graph) -> bool:
    ends = graph_edges(G)
    if not ends:
        return False
    if is_directed(G):
        return G.is_eulerian()
    X = G if isinstance(G, MultiHypergraph) else G.as_multi()
    return X.is_veblen() and X.is_connected()


# ---------------------------------------------------------------------------
# cycle sequences and insertion


def first_simple_closed(w: Walk) -> Tuple[int, int]:
    """Positions (s, t) of the first simple closed sub-walk: t minimal with v_t repeated."""
    seen: Dict[int, int] = {}
    for t, v in enumerate(w.vertices):
        if v in seen:
            return seen[v], t
        seen[v] = t
    raise ValueError("walk has no closed sub-walk")


def cycle_sequence(w: Walk) -> Tuple[Circuit, ...]:
    """Repeatedly extract the first simple closed sub-walk."""
    if not w.is_closed():
        raise ValueError("cycle sequence needs a closed walk")
    out = []
    cur = w
    while cur.edges:
        s, t = first_simple_closed(cur)
        out.append(Circuit.of(cur.segment(s, t)))
        cur = cur.segment(0, s) + cur.segment(t, len(cur))
    return tuple(out)


def insert(w1: Walk, w2: Walk, trails: bool = True) -> Walk:
    """w1 . w2: splice closed w1 into closed w2 at the first vertex of w2 lying on w1.

    Requires w1 to start at that vertex; for trails the edge sets must be disjoint.
    """
    if not (w1.is_closed() and w2.is_closed()):
        raise NotInsertable("insertion needs closed walks")
    if trails and w1.edge_set() & w2.edge_set():
        raise NotInsertable("walks share an edge")
    vs = w1.vertex_set()
    j = next((i for i, v in enumerate(w2.vertices) if v in vs), None)
    if j is None:
        raise NotInsertable("walks share no vertex")
    if w2.vertices[j] != w1.start:
        raise NotInsertable("first common vertex is not the start of the inserted walk")
    return w2.segment(0, j) + w1 + w2.segment(j, len(w2))


def insert_circuit(beta: Circuit, w: Walk, trails: bool = True) -> Walk:
    """beta . w: beta rotated to the first vertex of w on beta, then inserted."""
    vs = beta.vertex_set()
    j = next((i for i, v in enumerate(w.vertices) if v in vs), None)
    if j is None:
        raise NotInsertable("circuit shares no vertex with the walk")
    return insert(beta.at(w.vertices[j]), w, trails)


def anchor_head(beta: Circuit, e: int) -> int:
    return beta.ending_with(e).end


def cs_preimage(b: Sequence[Circuit], e: Optional[int] = None, u: Optional[int] = None,
                trails: bool = True) -> Optional[Walk]:
    """The closed walk ending at e (or at u) whose cycle sequence is b, if one exists."""
    if not b:
        return None
    if (e is None) == (u is None):
        raise ValueError("give exactly one of e, u")
    last = b[-1]
    if e is not None:
        if e not in last.edge_set():
            return None
        w = last.ending_with(e)
    else:
        if u not in last.vertex_set():
            return None
        w = last.at(u)
    for i in range(len(b) - 2, -1, -1):
        try:
            w = insert_circuit(b[i], w, trails)
        except NotInsertable:
            return None
        if cycle_sequence(w) != tuple(b[i:]):
            return None
    return w


# ---------------------------------------------------------------------------
# enumeration


def _closed_trails_from(G: Graph, start: int, nedges: Optional[int]) -> Iterator[Tuple[Step, ...]]:
    """Closed trails at ``start`` using exactly ``nedges`` edges (all edges if None)."""
    mv = moves(G)
    total = len(graph_edges(G)) if nedges is None else nedges
    used: Set[int] = set()
    path: List[Step] = []

    def rec(v: int):
        if len(path) == total:
            if v == start:
                yield tuple(path)
            return
        for e, w in mv[v]:
            if e not in used:
                used.add(e)
                path.append((e, v, w))
                yield from rec(w)
                path.pop()
                used.discard(e)

    yield from rec(start)


def eulerian_trails(G: Graph, u: Optional[int] = None, e: Optional[int] = None) -> List[Walk]:
    """Eulerian trails: all of them, those at u, or those ending with edge e."""
    directed = is_directed(G)
    ends = graph_edges(G)
    if u is not None and not (1 <= u <= G.n and any(u in arc for arc in ends)):
        raise ValueError("anchor vertex not in graph")
    if e is not None and not 0 <= e < len(ends):
        raise ValueError("anchor edge not in graph")
    if not is_eulerian(G):
        return []
    starts = [u] if u is not None else sorted({v for arc in ends for v in arc})
    out = []
    for s in starts:
        for steps in _closed_trails_from(G, s, None):
            if e is None or steps[-1][0] == e:
                out.append(Walk.from_steps(s, steps, directed))
    return out


def eulerian_circuits(G: Graph) -> List[Circuit]:
    if not is_eulerian(G):
        return []
    s = min(v for arc in graph_edges(G) for v in arc)
    return sorted({Circuit.of(w) for w in eulerian_trails(G, u=s)})


def cycles(G: Graph) -> List[Circuit]:
    """All cycles (closed trails without repeated vertices), as circuits."""
    directed = is_directed(G)
    mv = moves(G)
    found: Set[Circuit] = set()
    for s in range(1, G.n + 1):
        path: List[Step] = []
        on = {s}

        def rec(v: int):
            for e, w in mv[v]:
                if path and e == path[-1][0]:
                    continue
                if w == s and path:
                    found.add(Circuit(min_rotation(tuple(path) + ((e, v, w),)), directed))
                elif w > s and w not in on:
                    on.add(w)
                    path.append((e, v, w))
                    rec(w)
                    path.pop()
                    on.discard(w)

        rec(s)
    return sorted(found)


def edgegons(G: Graph) -> List[Circuit]:
    """One length-2 edgegon per undirected edge."""
    if is_directed(G):
        return []
    return sorted(Circuit(min_rotation(((e, a, b), (e, b, a)))) for e, (a, b) in enumerate(G.edges))


def min_rotation(s: Tuple[Step, ...]) -> Tuple[Step, ...]:
    return min(s[i:] + s[:i] for i in range(len(s)))


def closed_walks(G: Graph, length: int, start: Optional[int] = None) -> List[Walk]:
    """All closed walks of the given length (edges may repeat)."""
    mv = moves(G)
    directed = is_directed(G)
    starts = [start] if start is not None else list(range(1, G.n + 1))
    out = []
    for s in starts:
        path: List[Step] = []

        def rec(v: int):
            if len(path) == length:
                if v == s:
                    out.append(Walk.from_steps(s, tuple(path), directed))
                return
            for e, w in mv[v]:
                path.append((e, v, w))
                rec(w)
                path.pop()

        rec(s)
    return out


def arborescence_count(D: Digraph) -> int:
    """tau(D): arborescences towards any fixed root (root-independent for Eulerian D)."""
    if not D.arcs:
        return 1
    return laplacian_minor_det(D.n, D.arcs, min(D.support()))


def best_count(D: Digraph) -> int:
    """Eulerian circuits by the BEST theorem: tau * prod (indeg - 1)!."""
    if not D.is_eulerian():
        return 0
    return arborescence_count(D) * math.prod(math.factorial(D.indegree(v) - 1) for v in D.support())
