"""Characteristic polynomial coefficients of uniform hypergraphs by counting.

An infragraph of a simple host is a multiplicity vector over the host edges
with every vertex degree divisible by k.  Everything below is built from two
kernels: the associated coefficient C_X (a sum over Eulerian rootings) and
the weight Delta(n, X) (a sum over decompositions of X into connected Veblen
parts).  Internally a multi-hypergraph is a *bundle*: the sorted tuple of
(edge, multiplicity) pairs.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .core import (Digraph, MultiHypergraph, SimpleHypergraph, _components, automorphism_count,
                   canonical_key, count_copies, relabel_compact)
from .heaps import PieceSystem, trivial_table
from .parallel import pmap
from .series import DEFAULT_ORDER, EdgePolynomial, TruncatedSeries
from .trails import arborescence_count, best_count

Edge = Tuple[int, ...]
Bundle = Tuple[Tuple[Edge, int], ...]

METHODS = ("harary_sachs", "kocay", "trivial_heaps")


class InfeasibleError(ValueError):
    pass


def char_degree(k: int, n: int) -> int:
    """N = n (k-1)^(n-1)."""
    return n * (k - 1) ** (n - 1) if n else 0


# ---------------------------------------------------------------------------
# bundles


def bundle_of(X) -> Tuple[int, Bundle]:
    if isinstance(X, Infragraph):
        return X.host.k, X.bundle()
    if isinstance(X, MultiHypergraph):
        return X.k, tuple(sorted(X.multiplicities().items()))
    raise TypeError("expected Infragraph or MultiHypergraph")


def _bundle_degrees(b: Bundle) -> Dict[int, int]:
    deg: Dict[int, int] = {}
    for e, m in b:
        for v in e:
            deg[v] = deg.get(v, 0) + m
    return deg


def _bundle_components(b: Bundle) -> List[Bundle]:
    verts = {v for e, _ in b for v in e}
    if not verts:
        return []
    comps = _components(max(verts), [e for e, _ in b])
    out = []
    for comp in comps:
        cs = set(comp)
        out.append(tuple((e, m) for e, m in b if e[0] in cs))
    return out


def _bundle_multi(k: int, b: Bundle) -> MultiHypergraph:
    n = max((v for e, _ in b for v in e), default=0)
    return MultiHypergraph.from_counts(k, n, dict(b))


def _is_veblen(k: int, b: Bundle) -> bool:
    return all(d % k == 0 for d in _bundle_degrees(b).values())


# ---------------------------------------------------------------------------
# infragraphs


@dataclass(frozen=True)
class Infragraph:
    host: SimpleHypergraph
    m: Tuple[int, ...]

    def __post_init__(self):
        if len(self.m) != len(self.host.edges) or any(x < 0 for x in self.m):
            raise ValueError("multiplicity vector does not match host")

    @property
    def k(self) -> int:
        return self.host.k

    @property
    def size(self) -> int:
        return sum(self.m)

    @property
    def M(self) -> int:
        return math.prod(math.factorial(x) for x in self.m)

    def bundle(self) -> Bundle:
        return tuple(sorted((e, x) for e, x in zip(self.host.edges, self.m) if x))

    def degrees(self) -> Dict[int, int]:
        return _bundle_degrees(self.bundle())

    def support(self) -> Tuple[int, ...]:
        return tuple(sorted(self.degrees()))

    def is_veblen(self) -> bool:
        return _is_veblen(self.k, self.bundle())

    def components(self) -> List["Infragraph"]:
        out = []
        for comp in _bundle_components(self.bundle()):
            edges = dict(comp)
            out.append(Infragraph(self.host, tuple(edges.get(e, 0) for e in self.host.edges)))
        return out

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def to_multi(self) -> MultiHypergraph:
        return MultiHypergraph.from_counts(self.k, self.host.n, dict(self.bundle()))

    def monomial(self) -> Tuple[int, ...]:
        return self.m


def enumerate_infragraphs(H: SimpleHypergraph, d_max: int, connected_only: bool = False,
                          exact: Optional[int] = None) -> List[Infragraph]:
    """All Veblen multiplicity vectors with total at most d_max (or exactly ``exact``).

    The empty infragraph is included unless ``connected_only``.
    """
    if d_max < 0:
        raise InfeasibleError("negative codegree")
    k = H.k
    edges = list(H.edges)
    last_use = {}
    for i, e in enumerate(edges):
        for v in e:
            last_use[v] = i
    closing = [[v for v in e if last_use[v] == i] for i, e in enumerate(edges)]
    out: List[Tuple[int, ...]] = []
    deg = {v: 0 for v in range(1, H.n + 1)}
    vec: List[int] = []

    def rec(i: int, budget: int):
        if i == len(edges):
            if exact is None or d_max - budget == exact:
                out.append(tuple(vec))
            return
        e = edges[i]
        for x in range(budget + 1):
            for v in e:
                deg[v] += x
            if all(deg[v] % k == 0 for v in closing[i]):
                vec.append(x)
                rec(i + 1, budget - x)
                vec.pop()
            for v in e:
                deg[v] -= x

    rec(0, d_max)
    res = [Infragraph(H, v) for v in sorted(out)]
    if connected_only:
        res = [X for X in res if X.size and X.is_connected()]
    return res


# ---------------------------------------------------------------------------
# rootings and the associated coefficient


@dataclass(frozen=True)
class RootingClass:
    """Star counts s[(u, e)] = copies of the parallel class e rooted at u."""

    counts: Tuple[Tuple[Tuple[int, Edge], int], ...]
    size: int
    digraph: Digraph

    def per_vertex(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for (u, _), s in self.counts:
            out[u] = out.get(u, 0) + s
        return out


def _compositions(m: int, parts: int) -> Iterator[Tuple[int, ...]]:
    if parts == 1:
        yield (m,)
        return
    for first in range(m + 1):
        for rest in _compositions(m - first, parts - 1):
            yield (first,) + rest


def rooting_digraph(k: int, counts: Dict[Tuple[int, Edge], int]) -> Digraph:
    n = max((v for (u, e) in counts for v in e), default=0)
    arcs = []
    for (u, e), s in sorted(counts.items()):
        for _ in range(s):
            arcs.extend((u, v) for v in e if v != u)
    return Digraph(n, tuple(arcs))


@lru_cache(maxsize=None)
def _rooting_classes(k: int, b: Bundle) -> Tuple[RootingClass, ...]:
    deg = _bundle_degrees(b)
    if any(d % k for d in deg.values()):
        raise ValueError("rootings need a Veblen hypergraph")
    target = {v: d // k for v, d in deg.items()}
    if any(s < 1 for s in target.values()):
        raise AssertionError("a support vertex would root no star")
    classes = []
    got = {v: 0 for v in deg}
    chosen: Dict[Tuple[int, Edge], int] = {}

    def rec(i: int):
        if i == len(b):
            if got == target:
                size = 1
                for u, s in target.items():
                    size *= math.factorial(s)
                for s in chosen.values():
                    size //= math.factorial(s)
                counts = {key: s for key, s in chosen.items() if s}
                classes.append(RootingClass(tuple(sorted(counts.items())), size, rooting_digraph(k, counts)))
            return
        e, m = b[i]
        for comp in _compositions(m, k):
            if all(got[v] + c <= target[v] for v, c in zip(e, comp)):
                for v, c in zip(e, comp):
                    got[v] += c
                    chosen[(v, e)] = c
                rec(i + 1)
                for v, c in zip(e, comp):
                    got[v] -= c
                    del chosen[(v, e)]

    rec(0)
    return tuple(classes)


def eulerian_rootings(X) -> List[RootingClass]:
    """Equivalence classes of Eulerian rootings of a connected Veblen X, with class sizes."""
    k, b = bundle_of(X)
    if not _is_veblen(k, b):
        raise ValueError("rootings need a Veblen hypergraph")
    if len(_bundle_components(b)) != 1:
        raise ValueError("rootings need a connected hypergraph")
    return [R for R in _rooting_classes(k, b) if R.digraph.is_eulerian()]


@lru_cache(maxsize=None)
def _connected_C(k: int, b: Bundle) -> Fraction:
    by_tau = Fraction(0)
    by_best = Fraction(0)
    for R in _rooting_classes(k, b):
        D = R.digraph
        if not D.is_eulerian():
            continue
        indeg = [D.indegree(v) for v in D.support()]
        by_tau += Fraction(R.size * arborescence_count(D), math.prod(indeg))
        by_best += Fraction(R.size * best_count(D), math.prod(math.factorial(x) for x in indeg))
    if by_tau != by_best:
        raise AssertionError(f"associated coefficient formulas disagree: {by_tau} vs {by_best}")
    return by_tau


def _C(k: int, b: Bundle) -> Fraction:
    out = Fraction(1)
    for comp in _bundle_components(b):
        out *= _connected_C(k, comp)
    return out


def associated_coefficient(X) -> Fraction:
    """C_X, multiplicative over components (C of the empty hypergraph is 1)."""
    k, b = bundle_of(X)
    if not _is_veblen(k, b):
        raise ValueError("associated coefficient needs a Veblen hypergraph")
    return _C(k, b)


# ---------------------------------------------------------------------------
# decompositions and Delta


@dataclass(frozen=True)
class DecompositionClass:
    """A multiset of connected Veblen parts summing to X (one class up to parallel-edge swaps)."""

    parts: Tuple[Bundle, ...]
    alpha: int

    @property
    def c(self) -> int:
        return len(self.parts)


def _sub_bundles(b: Bundle) -> List[Bundle]:
    out = []
    for xs in product(*(range(m + 1) for _, m in b)):
        if any(xs):
            out.append(tuple((e, x) for (e, _), x in zip(b, xs) if x))
    return out


@lru_cache(maxsize=None)
def _connected_parts(k: int, b: Bundle) -> Tuple[Bundle, ...]:
    return tuple(p for p in _sub_bundles(b) if _is_veblen(k, p) and len(_bundle_components(p)) == 1)


def _bundle_sub(a: Bundle, p: Bundle) -> Optional[Bundle]:
    pd = dict(p)
    out = []
    for e, m in a:
        r = m - pd.pop(e, 0)
        if r < 0:
            return None
        if r:
            out.append((e, r))
    return None if pd else tuple(out)


@lru_cache(maxsize=None)
def _decompositions(k: int, b: Bundle) -> Tuple[DecompositionClass, ...]:
    parts = _connected_parts(k, b)
    out = []

    def rec(rest: Bundle, max_i: int, chosen: List[Bundle]):
        if not rest:
            alpha = math.prod(math.factorial(c) for c in Counter(chosen).values())
            out.append(DecompositionClass(tuple(chosen), alpha))
            return
        for i in range(max_i, -1, -1):
            r = _bundle_sub(rest, parts[i])
            if r is not None:
                chosen.append(parts[i])
                rec(r, i, chosen)
                chosen.pop()

    rec(b, len(parts) - 1, [])
    return tuple(out)


def decompositions(X) -> List[DecompositionClass]:
    k, b = bundle_of(X)
    if not _is_veblen(k, b):
        raise ValueError("decompositions need a Veblen hypergraph")
    return list(_decompositions(k, b))


@lru_cache(maxsize=None)
def _delta(k: int, n: int, b: Bundle) -> Fraction:
    x = -((k - 1) ** n)
    total = Fraction(0)
    for S in _decompositions(k, b):
        cs = Fraction(1)
        for p in S.parts:
            cs *= _connected_C(k, p)
        total += Fraction(x) ** S.c * cs / S.alpha
    return total


def delta(n: int, X) -> Fraction:
    """Delta(n, X) = sum over decomposition classes of (-(k-1)^n)^c C_S / alpha_S."""
    k, b = bundle_of(X)
    if not _is_veblen(k, b):
        raise ValueError("delta needs a Veblen hypergraph")
    return _delta(k, n, b)


# ---------------------------------------------------------------------------
# stacking counts


def _connected_stacking(G: MultiHypergraph, H: SimpleHypergraph) -> Fraction:
    Gc = relabel_compact(G)
    flat = Gc.flatten()[0]
    return Fraction(automorphism_count(flat.as_multi()) * count_copies(flat, H), automorphism_count(Gc))


def stacking_count(G: MultiHypergraph, H: SimpleHypergraph) -> Fraction:
    """(#G in H): placements of the abstract Veblen G as infragraphs of H."""
    if not G.is_veblen():
        raise ValueError("stacking count needs a Veblen hypergraph")
    if G.k != H.k:
        return Fraction(0)
    comps = [relabel_compact(G.restrict(c)) for c in G.components()]
    classes = Counter(canonical_key(c) for c in comps)
    reps = {canonical_key(c): c for c in comps}
    out = Fraction(1)
    for key, mult in classes.items():
        out *= _connected_stacking(reps[key], H) ** mult / math.factorial(mult)
    return out


def direct_stacking_count(G: MultiHypergraph, H: SimpleHypergraph) -> int:
    """|{X in Inf(H) : X isomorphic to G}| by enumeration (connected G)."""
    key = canonical_key(G)
    size = len(G.edges)
    return sum(1 for X in enumerate_infragraphs(H, size, exact=size) if canonical_key(X.to_multi()) == key)


# ---------------------------------------------------------------------------
# the three coefficient routes


def _connected_infragraphs(H: SimpleHypergraph, d_max: int) -> List[Infragraph]:
    return enumerate_infragraphs(H, d_max, connected_only=True)


def _route_kocay(H: SimpleHypergraph, d_max: int, n: int) -> List[Fraction]:
    infs = enumerate_infragraphs(H, d_max)
    vals = pmap(_delta_task, [(H.k, n, X.bundle()) for X in infs])
    out = [Fraction(0)] * (d_max + 1)
    for X, v in zip(infs, vals):
        out[X.size] += v
    return out


def _delta_task(args) -> Fraction:
    k, n, b = args
    return _delta(k, n, b)


def _route_trivial_heaps(H: SimpleHypergraph, d_max: int, n: int) -> List[Fraction]:
    infs = _connected_infragraphs(H, d_max)
    weights = pmap(_delta_task, [(H.k, n, X.bundle()) for X in infs])
    pieces = [X for X, w in zip(infs, weights) if w]
    w = {X: -wt for X, wt in zip(infs, weights) if wt}
    verts = {X: set(X.support()) for X in pieces}
    S = PieceSystem(pieces, lambda a, b: bool(verts[a] & verts[b]), lambda X: X.size, lambda X: w[X])
    table = trivial_table(S, d_max)
    return [Fraction(table.get(d, 0)) for d in range(d_max + 1)]


def _class_profile(H: SimpleHypergraph, d_max: int) -> List[Tuple[int, Fraction, Fraction]]:
    """Connected abstract Veblen classes realised in H: (edges, C, stacking count)."""
    reps: Dict[bytes, Infragraph] = {}
    for X in _connected_infragraphs(H, d_max):
        reps.setdefault(canonical_key(X.to_multi()), X)
    out = []
    for key in sorted(reps):
        X = reps[key]
        G = X.to_multi()
        out.append((X.size, associated_coefficient(X), stacking_count(G, H)))
    return out


def _route_harary_sachs(H: SimpleHypergraph, d_max: int, n: int) -> List[Fraction]:
    x = Fraction(-((H.k - 1) ** n))
    classes = _class_profile(H, d_max)
    out = [Fraction(0)] * (d_max + 1)

    # multisets of connected classes: nu_H = prod of repetition factorials
    def rec(i: int, size: int, c: int, val: Fraction):
        out[size] += x ** c * val
        for j in range(i, len(classes)):
            sz, C, N = classes[j]
            rep, cur_size, cur_val = 0, size, val
            while cur_size + sz <= d_max:
                rep += 1
                cur_size += sz
                cur_val = cur_val * C * N / rep
                rec(j + 1, cur_size, c + rep, cur_val)

    rec(0, 0, 0, Fraction(1))
    return out


_ROUTES = {"harary_sachs": _route_harary_sachs, "kocay": _route_kocay, "trivial_heaps": _route_trivial_heaps}


def coefficients(H: SimpleHypergraph, d_max: int, method: str = "kocay", n: Optional[int] = None) -> List[Fraction]:
    """Codegree coefficients 0..d_max.  ``n`` overrides the exponent in Delta(n, .)
    (the host order by default; 0 gives the root series)."""
    if method not in _ROUTES:
        raise ValueError(f"unknown method {method!r}")
    if d_max < 0:
        raise InfeasibleError("negative codegree")
    return _ROUTES[method](H, d_max, H.n if n is None else n)


def codegree_coefficient(H: SimpleHypergraph, d: int, method: str = "kocay") -> Fraction:
    return coefficients(H, d, method)[d]


def phi_tilde(H: SimpleHypergraph, order: int = DEFAULT_ORDER, method: str = "kocay") -> TruncatedSeries:
    return TruncatedSeries(coefficients(H, order, method), order)


def charpoly(H: SimpleHypergraph, method: str = "kocay") -> List[Fraction]:
    """Full characteristic polynomial in ascending powers of t."""
    N = char_degree(H.k, H.n)
    co = coefficients(H, N, method)
    return [co[N - i] for i in range(N + 1)]


# ---------------------------------------------------------------------------
# edge variables and traces


def edge_variable_coefficient(H: SimpleHypergraph, d: int, n: Optional[int] = None) -> EdgePolynomial:
    """sum over infragraphs X with d edges of e^X Delta(n, X)."""
    nn = H.n if n is None else n
    terms: Dict[Tuple[int, ...], Fraction] = {}
    for X in enumerate_infragraphs(H, d, exact=d):
        v = _delta(H.k, nn, X.bundle())
        if v:
            terms[X.m] = terms.get(X.m, Fraction(0)) + v
    return EdgePolynomial(len(H.edges), terms)


def trace_d(H: SimpleHypergraph, d: int) -> EdgePolynomial:
    """Tr_d = d (k-1)^n sum over connected infragraphs with d edges of e^X C_X."""
    if d < 1:
        raise ValueError("trace needs d >= 1")
    scale = d * (H.k - 1) ** H.n
    terms = {}
    for X in enumerate_infragraphs(H, d, exact=d):
        if X.size and X.is_connected():
            terms[X.m] = scale * associated_coefficient(X)
    return EdgePolynomial(len(H.edges), terms)


def trace_log_series(H: SimpleHypergraph, order: int) -> TruncatedSeries:
    """-sum_d Tr_d(1,...,1)/d t^-d, to compare with log phi~."""
    return TruncatedSeries({d: -trace_d(H, d).evaluate() / d for d in range(1, order + 1)}, order)


# ---------------------------------------------------------------------------
# root series


def root_series(H: SimpleHypergraph, order: int = DEFAULT_ORDER, method: str = "all") -> TruncatedSeries:
    """phi~^(1/(k-1)^n).  With method "all" the formal root, the direct class sum and
    the trivial-heap sum are all computed and must agree."""
    routes = {
        "root": lambda: phi_tilde(H, order).root((H.k - 1) ** H.n),
        "harary_sachs": lambda: TruncatedSeries(coefficients(H, order, "harary_sachs", n=0), order),
        "trivial_heaps": lambda: TruncatedSeries(coefficients(H, order, "trivial_heaps", n=0), order),
    }
    if method != "all":
        return routes[method]()
    results = {name: f() for name, f in routes.items()}
    vals = list(results.values())
    if any(v != vals[0] for v in vals[1:]):
        raise AssertionError(f"root series routes disagree: {results}")
    return vals[0]


# ---------------------------------------------------------------------------
# gluing at a cut vertex


def factorized_weight(X1, X2, u: int, n: int) -> Dict[str, Tuple[Fraction, Fraction]]:
    """Both sides of the cut-vertex identities for X = X1 + X2 glued at u.

    "lemma": C_X against (k-1) (s1 s2 / s) multinomial(s; s1, s2) C_1 C_2.
    "prop" (only when u has degree k in both): w_n(X) against
    ((k-1)^(1-n) - 1) w_n(X1) w_n(X2), where w_n = -Delta(n, .).
    """
    k1, b1 = bundle_of(X1)
    k2, b2 = bundle_of(X2)
    if k1 != k2:
        raise ValueError("ranks differ")
    k = k1
    d1, d2 = _bundle_degrees(b1), _bundle_degrees(b2)
    if set(d1) & set(d2) != {u}:
        raise ValueError("the parts must meet in exactly the given vertex")
    if not (_is_veblen(k, b1) and _is_veblen(k, b2)):
        raise ValueError("parts must be Veblen")
    merged = dict(b1)
    for e, m in b2:
        merged[e] = merged.get(e, 0) + m
    b = tuple(sorted(merged.items()))
    s1, s2 = d1[u] // k, d2[u] // k
    s = s1 + s2
    multinom = math.factorial(s) // (math.factorial(s1) * math.factorial(s2))
    C1, C2 = _C(k, b1), _C(k, b2)
    out = {"lemma": (_C(k, b), (k - 1) * Fraction(s1 * s2, s) * multinom * C1 * C2)}
    if d1[u] == k and d2[u] == k:
        w = lambda bb: -_delta(k, n, bb)
        factor = Fraction(k - 1) ** (1 - n) - 1
        out["prop"] = (w(b), factor * w(b1) * w(b2))
    return out


def clear_caches() -> None:
    """Forget memoised rootings, decompositions and weights (for honest timings)."""
    for f in (_rooting_classes, _connected_C, _connected_parts, _decompositions, _delta):
        f.cache_clear()


def bundle(k: int, n: int, counts: Dict[Sequence[int], int]) -> MultiHypergraph:
    """Convenience constructor: {edge: multiplicity} -> MultiHypergraph."""
    return MultiHypergraph.from_counts(k, n, {tuple(sorted(e)): m for e, m in counts.items()})
