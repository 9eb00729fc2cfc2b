"""Independent brute-force verifiers.

Nothing here reuses the optimised enumeration paths it is meant to check:
resultants come from Macaulay matrices, rootings from raw star tuples,
decompositions from raw set partitions of labelled edge copies, and
decomposition pyramids from acyclic orientations of concurrence graphs.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, permutations, product
from typing import Dict, List, Optional, Sequence, Tuple

from .core import Digraph, MultiHypergraph, SimpleHypergraph, canonical_key, digraph_key
from .heaps import circuit_concurrent, pyramid_to_walk, walk_to_pyramid
from .hyper import (associated_coefficient, decompositions, direct_stacking_count,
                    enumerate_infragraphs, eulerian_rootings)
from .linalg import interpolate, laplacian_minor_det, poly_divmod, rational_det
from .trails import Circuit, best_count, cycles, eulerian_circuits, eulerian_trails

# ---------------------------------------------------------------------------
# Macaulay resultant


class InstanceTooLarge(ValueError):
    pass


def _monomials(n: int, deg: int) -> List[Tuple[int, ...]]:
    out = []
    for combo in combinations_with_replacement(range(n), deg):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


def eigen_system(H: SimpleHypergraph, a, b) -> List[Dict[Tuple[int, ...], Fraction]]:
    """F_i = a x_i^(k-1) - b sum_{e containing i} prod_{j in e, j != i} x_j."""
    n, k = H.n, H.k
    polys = []
    for i in range(n):
        p: Dict[Tuple[int, ...], Fraction] = {}
        mono = [0] * n
        mono[i] = k - 1
        p[tuple(mono)] = Fraction(a)
        for e in H.edges:
            if i + 1 in e:
                mono = [0] * n
                for j in e:
                    if j != i + 1:
                        mono[j - 1] += 1
                key = tuple(mono)
                p[key] = p.get(key, Fraction(0)) - Fraction(b)
        polys.append(p)
    return polys


def _macaulay(polys, n: int, d: int):
    """Macaulay matrix and the index set of its extraneous minor."""
    D = n * (d - 1) + 1
    mons = _monomials(n, D)
    col = {m: i for i, m in enumerate(mons)}
    rows = []
    for m in mons:
        i = next(j for j in range(n) if m[j] >= d)
        shift = list(m)
        shift[i] -= d
        row = [Fraction(0)] * len(mons)
        for pm, c in polys[i].items():
            row[col[tuple(x + y for x, y in zip(pm, shift))]] += c
        rows.append(row)
    extraneous = [i for i, m in enumerate(mons) if sum(1 for x in m if x >= d) >= 2]
    return rows, extraneous


def resultant_value(H: SimpleHypergraph, a, b) -> Fraction:
    """res of the system at numeric (a, b), as det(M) / det(minor); needs a nonzero minor."""
    n, d = H.n, H.k - 1
    rows, ext = _macaulay(eigen_system(H, a, b), n, d)
    minor = rational_det([[rows[i][j] for j in ext] for i in ext])
    if minor == 0:
        raise ZeroDivisionError("extraneous minor vanishes here")
    return rational_det(rows) / minor


def resultant_small(H: SimpleHypergraph, max_monomials: int = 64) -> List[Fraction]:
    """res(t F_I - F_H) in ascending powers of t, by exact Macaulay quotient."""
    n, k = H.n, H.k
    if n == 0:
        return [Fraction(1)]
    d = k - 1
    size = math.comb(n * (d - 1) + 1 + n - 1, n - 1)
    if k not in (2, 3) or n > 3 or size > max_monomials:
        raise InstanceTooLarge("resultant oracle covers n <= 3 and k <= 3 only")
    rows, ext = _macaulay(eigen_system(H, 1, 1), n, d)
    npts = size + 1
    ts = list(range(npts))
    full, minor = [], []
    for t in ts:
        r, e = _macaulay(eigen_system(H, t, 1), n, d)
        full.append(rational_det(r))
        minor.append(rational_det([[r[i][j] for j in e] for i in e]))
    num = interpolate(ts, full)
    den = interpolate(ts, minor) if ext else [Fraction(1)]
    q, r = poly_divmod(num, den)
    if r:
        raise AssertionError("extraneous factor does not divide the Macaulay determinant")
    while len(q) > 1 and q[-1] == 0:
        q.pop()
    N = n * d ** (n - 1)
    if len(q) != N + 1 or q[-1] != 1:
        raise AssertionError(f"resultant has degree {len(q) - 1}, expected monic of degree {N}")
    return q


# ---------------------------------------------------------------------------
# raw rootings


def _star_arcs(root: int, e: Tuple[int, ...]):
    return [(root, v) for v in e if v != root]


def raw_rootings(X: MultiHypergraph) -> Dict[str, object]:
    """Every d-tuple of stars sorted by root, one star per edge copy, every vertex a root.

    Stars on parallel copies with the same root are the same star, so tuples
    are compared as star sequences.  Returns the number of raw Eulerian tuples,
    their grouping into classes, and C computed as sum tau / prod indeg.
    """
    if len(X.edges) > 7:
        raise InstanceTooLarge("raw rooting recount is for at most 7 edges")
    support = set(X.support())
    tuples = set()
    for roots in product(*X.edges):
        if set(roots) != support:
            continue
        stars = sorted(zip(roots, X.edges))
        groups: Dict[int, List] = {}
        for s in stars:
            groups.setdefault(s[0], []).append(s)
        per_root = [sorted(set(permutations(groups[r]))) for r in sorted(groups)]
        for combo in product(*per_root):
            tuples.add(tuple(s for block in combo for s in block))
    eulerian = []
    for tup in tuples:
        arcs = [a for r, e in tup for a in _star_arcs(r, e)]
        D = Digraph(X.n, tuple(arcs))
        if D.is_eulerian():
            eulerian.append((tup, D))
    classes = Counter(tuple(sorted(Counter(tup).items())) for tup, _ in eulerian)
    C = Fraction(0)
    for tup, D in eulerian:
        tau = laplacian_minor_det(D.n, D.arcs, min(D.support()))
        C += Fraction(tau, math.prod(D.indegree(v) for v in D.support()))
    return {"raw_assignments": sum(1 for roots in product(*X.edges) if set(roots) == support),
            "tuples": len(tuples), "eulerian_tuples": len(eulerian),
            "class_sizes": sorted(classes.values()), "C": C}


# ---------------------------------------------------------------------------
# raw set partitions


def _set_partitions(items: List[int]):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in _set_partitions(rest):
        yield [[first]] + p
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1:]


def _bundle_from(X: MultiHypergraph, idxs) -> Tuple:
    return tuple(sorted(Counter(X.edges[i] for i in idxs).items()))


def _connected_veblen(X: MultiHypergraph, idxs) -> bool:
    sub = MultiHypergraph(X.k, X.n, tuple(X.edges[i] for i in idxs))
    return sub.is_veblen() and len(sub.components()) == 1


def raw_partitions(X: MultiHypergraph) -> Dict[Tuple, Dict[str, int]]:
    """Set partitions of the labelled edge copies into connected Veblen blocks,
    grouped by the multiset of block multiplicity vectors.

    For each class: ``raw`` = number of set partitions in it, and
    ``alpha`` = M_X / (raw * prod M_block), the stabiliser count of the class.
    """
    if len(X.edges) > 10:
        raise InstanceTooLarge("raw partition recount is for at most 10 edges")
    M = math.prod(math.factorial(m) for m in X.multiplicities().values())
    valid: Dict[frozenset, bool] = {}
    groups: Dict[Tuple, int] = Counter()
    for p in _set_partitions(list(range(len(X.edges)))):
        ok = True
        for block in p:
            key = frozenset(block)
            if key not in valid:
                valid[key] = _connected_veblen(X, block)
            if not valid[key]:
                ok = False
                break
        if ok:
            groups[tuple(sorted(_bundle_from(X, b) for b in p))] += 1
    out = {}
    for shape, raw in groups.items():
        blocks = math.prod(math.factorial(m) for part in shape for _, m in part)
        assert M % (raw * blocks) == 0
        out[shape] = {"raw": raw, "alpha": M // (raw * blocks)}
    return out


def raw_delta(n: int, X: MultiHypergraph) -> Fraction:
    """Delta(n, X) rebuilt from raw partitions and raw rootings only."""
    k = X.k
    total = Fraction(0)
    for shape, info in raw_partitions(X).items():
        C = Fraction(1)
        for part in shape:
            C *= raw_rootings(MultiHypergraph.from_counts(k, X.n, dict(part)))["C"]
        total += Fraction(-(k - 1) ** n) ** len(shape) * C / info["alpha"]
    return total


# ---------------------------------------------------------------------------
# Kocay's lemma


def kocay_check(host: SimpleHypergraph, components: Sequence[MultiHypergraph]) -> Dict[str, object]:
    """Compare ordered placements of the components with the alpha-weighted class sum.

    ``placements[Y]`` counts tuples (X_1..X_m), X_i an infragraph isomorphic to
    component i, summing to Y; ``weighted[Y]`` = nu_H * sum over decomposition
    classes of Y with the components' shape of 1/alpha.
    """
    keys = [canonical_key(G) for G in components]
    nu = math.prod(math.factorial(c) for c in Counter(keys).values())
    total = sum(len(G.edges) for G in components)
    realisations = []
    for G, key in zip(components, keys):
        size = len(G.edges)
        realisations.append([X.m for X in enumerate_infragraphs(host, size, exact=size)
                             if canonical_key(X.to_multi()) == key])
    placements: Counter = Counter()
    for combo in product(*realisations):
        placements[tuple(map(sum, zip(*combo)))] += 1
    shape = sorted(keys)
    weighted: Dict[Tuple[int, ...], Fraction] = {}
    for Y in enumerate_infragraphs(host, total, exact=total):
        acc = Fraction(0)
        for S in decompositions(Y):
            part_keys = sorted(canonical_key(MultiHypergraph.from_counts(host.k, host.n, dict(p))) for p in S.parts)
            if part_keys == shape:
                acc += Fraction(1, S.alpha)
        if acc:
            weighted[Y.m] = nu * acc
    lhs = math.prod(direct_stacking_count(G, host) for G in components)
    return {"nu": nu, "product": lhs, "placements": dict(placements), "weighted": weighted,
            "ok": {k: Fraction(v) for k, v in placements.items()} == weighted and lhs == sum(placements.values())}


# ---------------------------------------------------------------------------
# Eulerian digraphs and decomposition pyramids


def eulerian_digraph_catalog(max_arcs: int) -> List[Digraph]:
    """Connected Eulerian loopless multi-digraphs with 2..max_arcs arcs, one per isomorphism class.

    Built by repeatedly attaching a directed cycle at one or more existing
    vertices; every connected Eulerian digraph arises this way.
    """
    seen: Dict[bytes, Digraph] = {}
    for L in range(2, max_arcs + 1):
        D = Digraph(L, tuple((i, i % L + 1) for i in range(1, L + 1)))
        seen.setdefault(digraph_key(D), D)
    by_size: Dict[int, List[Digraph]] = {}
    for D in seen.values():
        by_size.setdefault(len(D.arcs), []).append(D)
    for size in range(2, max_arcs + 1):
        for D in list(by_size.get(size, [])):
            for L in range(2, max_arcs - size + 1):
                for cyc in _attach_cycles(D, L):
                    E = Digraph(max(D.n, max(max(a) for a in cyc)), D.arcs + cyc)
                    key = digraph_key(E)
                    if key not in seen:
                        seen[key] = E
                        by_size.setdefault(len(E.arcs), []).append(E)
    return sorted(seen.values(), key=lambda D: (len(D.arcs), D.n, D.arcs))


def _attach_cycles(D: Digraph, L: int):
    old = list(range(1, D.n + 1))
    for pattern in product([0, 1], repeat=L):
        if not pattern[0]:
            continue
        k_old = sum(pattern)
        for olds in permutations(old, k_old):
            it = iter(olds)
            nxt = D.n
            verts = []
            for p in pattern:
                if p:
                    verts.append(next(it))
                else:
                    nxt += 1
                    verts.append(nxt)
            yield tuple((verts[i], verts[(i + 1) % L]) for i in range(L))


def _exact_covers(D: Digraph) -> List[Tuple[Circuit, ...]]:
    cyc = cycles(D)
    full = (1 << len(D.arcs)) - 1
    masks = [sum(1 << e for e in c.edge_set()) for c in cyc]
    out = []

    def rec(covered: int, chosen: List[int]):
        if covered == full:
            out.append(tuple(cyc[i] for i in chosen))
            return
        low = (~covered & (covered + 1)).bit_length() - 1
        for i, m in enumerate(masks):
            if m >> low & 1 and not m & covered:
                chosen.append(i)
                rec(covered | m, chosen)
                chosen.pop()

    rec(0, [])
    return out


def decomposition_pyramid_count(D: Digraph, e: Optional[int] = None, u: Optional[int] = None) -> int:
    """|dp^e| or |dp^u|: pyramids on edge-partitioning cycle sets, top through e or u,
    counted as acyclic orientations of the concurrence graph with a unique sink."""
    total = 0
    for cover in _exact_covers(D):
        m = len(cover)
        pairs = [(i, j) for i in range(m) for j in range(i + 1, m) if circuit_concurrent(cover[i], cover[j])]
        for bits in product([0, 1], repeat=len(pairs)):
            succ = [[] for _ in range(m)]
            for (i, j), bit in zip(pairs, bits):
                a, b = (i, j) if bit else (j, i)
                succ[a].append(b)
            if not _acyclic(succ):
                continue
            sinks = [i for i in range(m) if not succ[i]]
            if len(sinks) != 1:
                continue
            top = cover[sinks[0]]
            if (e is not None and e in top.edge_set()) or (u is not None and u in top.vertex_set()):
                total += 1
    return total


def _acyclic(succ: List[List[int]]) -> bool:
    state = [0] * len(succ)

    def visit(v: int) -> bool:
        state[v] = 1
        for w in succ[v]:
            if state[w] == 1 or (state[w] == 0 and not visit(w)):
                return False
        state[v] = 2
        return True

    return all(state[v] or visit(v) for v in range(len(succ)))


@dataclass
class Report:
    name: str
    checks: int = 0
    failures: List[str] = field(default_factory=list)

    def check(self, ok: bool, msg: str) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(msg)

    @property
    def ok(self) -> bool:
        return not self.failures


def bijection_report(D: Digraph, round_trips: bool = True) -> Report:
    """Trail/pyramid cardinalities, BEST, injectivity and round trips on one digraph."""
    rep = Report(f"digraph {D.arcs}")
    circ = eulerian_circuits(D)
    rep.check(len(circ) == best_count(D), f"{D.arcs}: circuits {len(circ)} vs BEST {best_count(D)}")
    for e in range(len(D.arcs)):
        trails = eulerian_trails(D, e=e)
        pyrs = [walk_to_pyramid(w) for w in trails]
        rep.check(len(trails) == len(circ), f"{D.arcs}: |W^{e}| != |C|")
        rep.check(len(set(pyrs)) == len(trails), f"{D.arcs}: cycle sequences not injective at e={e}")
        rep.check(decomposition_pyramid_count(D, e=e) == len(trails), f"{D.arcs}: |dp^{e}| mismatch")
        for w, P in zip(trails, pyrs):
            rep.check(P.is_pyramid() and e in P.top().edge_set(), f"{D.arcs}: bad pyramid for {w}")
            if round_trips:
                rep.check(pyramid_to_walk(P, e=e) == w, f"{D.arcs}: round trip failed for {w.edges}")
    for u in D.support():
        trails = eulerian_trails(D, u=u)
        rep.check(len(trails) == D.indegree(u) * len(circ), f"{D.arcs}: |W^{u}| != indeg * |C|")
        rep.check(decomposition_pyramid_count(D, u=u) == len(trails), f"{D.arcs}: |dp^{u}| mismatch")
        pyrs = [walk_to_pyramid(w) for w in trails]
        rep.check(len(set(pyrs)) == len(trails), f"{D.arcs}: not injective at u={u}")
        if round_trips:
            for w, P in zip(trails, pyrs):
                rep.check(pyramid_to_walk(P, u=u) == w, f"{D.arcs}: round trip failed at u={u} for {w.edges}")
    return rep


def best_report(D: Digraph) -> Report:
    rep = Report(f"BEST {D.arcs}")
    n_enum = len(eulerian_circuits(D))
    rep.check(n_enum == best_count(D), f"{D.arcs}: enumerated {n_enum} vs BEST {best_count(D)}")
    return rep


# ---------------------------------------------------------------------------
# recount dispatcher


def recount(checkpoint: str, **params) -> Report:
    """Run one named raw-definition recount and diff it against the library."""
    rep = Report(checkpoint)
    if checkpoint == "rootings":
        X: MultiHypergraph = params["X"]
        raw = raw_rootings(X)
        classes = eulerian_rootings(X)
        rep.check(sorted(R.size for R in classes) == raw["class_sizes"],
                  f"class sizes {sorted(R.size for R in classes)} vs raw {raw['class_sizes']}")
        rep.check(raw["C"] == associated_coefficient(X), f"C raw {raw['C']} vs {associated_coefficient(X)}")
    elif checkpoint == "partitions":
        X = params["X"]
        raw = raw_partitions(X)
        lib = {tuple(sorted(S.parts)): S.alpha for S in decompositions(X)}
        rep.check(set(raw) == set(lib), "decomposition classes differ")
        for shape, info in raw.items():
            rep.check(lib.get(shape) == info["alpha"], f"alpha {lib.get(shape)} vs raw {info['alpha']} for {shape}")
    elif checkpoint == "round-trips":
        for D in eulerian_digraph_catalog(params.get("max_arcs", 6)):
            sub = bijection_report(D)
            rep.checks += sub.checks
            rep.failures.extend(sub.failures)
    else:
        raise ValueError(f"unknown checkpoint {checkpoint!r}")
    return rep
