"""Heaps of pieces.

A heap is stored as a tuple of labels plus, for every element, the bitmask of
elements strictly below it.  Heaps are enumerated top-down as sequences of
layers: the first layer is the set of maximal pieces, and every piece of a
later layer is concurrent with some piece of the layer just above it.  That
sequence determines the heap uniquely, which is what makes the weighted sums
below a plain recursion over layers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Dict, Hashable, Iterator, List, Optional, Sequence, Tuple

from .series import TruncatedSeries
from .trails import Circuit, Walk, cycle_sequence, insert_circuit

Concur = Callable[[Any, Any], bool]


def circuit_concurrent(a: Circuit, b: Circuit) -> bool:
    return bool(a.vertex_set() & b.vertex_set())


@dataclass
class PieceSystem:
    """Finite graded piece set with a concurrence relation and piece weights.

    ``grade`` must be positive for every piece; ``weight`` returns a ring
    element (Fraction, EdgePolynomial, ...) and ``one`` is that ring's unit.
    """

    pieces: Sequence[Hashable]
    concur: Concur
    grade: Callable[[Any], int]
    weight: Callable[[Any], Any] = lambda p: Fraction(1)
    one: Any = Fraction(1)
    _nbr: List[int] = field(init=False, repr=False)

    def __post_init__(self):
        self.pieces = list(self.pieces)
        m = len(self.pieces)
        self._grades = [self.grade(p) for p in self.pieces]
        if any(g <= 0 for g in self._grades):
            raise ValueError("pieces need positive grade")
        self._weights = [self.weight(p) for p in self.pieces]
        self._nbr = [0] * m
        for i in range(m):
            for j in range(i, m):
                if self.concur(self.pieces[i], self.pieces[j]):
                    self._nbr[i] |= 1 << j
                    self._nbr[j] |= 1 << i
        for i in range(m):
            if not self._nbr[i] >> i & 1:
                raise ValueError("concurrence must be reflexive")

    def restrict(self, keep: Callable[[Any], bool]) -> "PieceSystem":
        return PieceSystem([p for p in self.pieces if keep(p)], self.concur, self.grade, self.weight, self.one)

    def index(self, p) -> int:
        return self.pieces.index(p)


# ---------------------------------------------------------------------------
# heaps as labelled posets


@dataclass(frozen=True)
class Heap:
    labels: Tuple[Any, ...]
    below: Tuple[int, ...]

    @classmethod
    def from_word(cls, word: Sequence[Any], concur: Concur) -> "Heap":
        """Drop pieces in order (first = bottom)."""
        below: List[int] = []
        for j, p in enumerate(word):
            m = 0
            for i in range(j):
                if concur(word[i], p):
                    m |= (1 << i) | below[i]
            below.append(m)
        return cls(tuple(word), tuple(below))

    def __len__(self) -> int:
        return len(self.labels)

    def less(self, i: int, j: int) -> bool:
        return bool(self.below[j] >> i & 1)

    def maximal(self) -> List[int]:
        covered = 0
        for b in self.below:
            covered |= b
        return [i for i in range(len(self)) if not covered >> i & 1]

    def minimal(self) -> List[int]:
        return [i for i in range(len(self)) if not self.below[i]]

    def covers(self) -> List[Tuple[int, int]]:
        out = []
        for j in range(len(self)):
            for i in range(len(self)):
                if self.less(i, j) and not any(self.less(i, k) and self.less(k, j) for k in range(len(self))):
                    out.append((i, j))
        return out

    def is_pyramid(self) -> bool:
        return len(self.maximal()) == 1

    def is_trivial(self, concur: Concur) -> bool:
        n = len(self)
        return all(not concur(self.labels[i], self.labels[j]) for i in range(n) for j in range(i + 1, n))

    def check(self, concur: Concur) -> None:
        """Both heap axioms."""
        n = len(self)
        for i in range(n):
            for j in range(i + 1, n):
                if concur(self.labels[i], self.labels[j]) and not (self.less(i, j) or self.less(j, i)):
                    raise AssertionError("concurrent pieces incomparable")
        for i, j in self.covers():
            if not concur(self.labels[i], self.labels[j]):
                raise AssertionError("cover between non-concurrent pieces")

    def canonical_word(self) -> Tuple[Any, ...]:
        """Smallest-label-first topological sort."""
        done = 0
        word = []
        n = len(self)
        while len(word) < n:
            avail = [i for i in range(n) if not done >> i & 1 and self.below[i] & ~done == 0]
            i = min(avail, key=lambda x: self.labels[x])
            word.append(self.labels[i])
            done |= 1 << i
        return tuple(word)

    def linear_extension(self) -> List[int]:
        done, order, n = 0, [], len(self)
        while len(order) < n:
            avail = [i for i in range(n) if not done >> i & 1 and self.below[i] & ~done == 0]
            i = min(avail, key=lambda x: self.labels[x])
            order.append(i)
            done |= 1 << i
        return order

    def __eq__(self, other) -> bool:
        return isinstance(other, Heap) and self.canonical_word() == other.canonical_word()

    def __hash__(self) -> int:
        return hash(self.canonical_word())

    def induced(self, elems: Sequence[int], concur: Concur) -> "Heap":
        """Sub-heap on a down-set or up-set, rebuilt from a linear extension."""
        keep = set(elems)
        return Heap.from_word([self.labels[i] for i in self.linear_extension() if i in keep], concur)

    def top(self) -> Any:
        (m,) = self.maximal()
        return self.labels[m]


def compose(H1: Heap, H2: Heap, concur: Concur) -> Heap:
    """H1 o H2: H2 dropped on top of H1."""
    return Heap.from_word([H1.labels[i] for i in H1.linear_extension()] +
                          [H2.labels[i] for i in H2.linear_extension()], concur)


def downset_split(H: Heap, omega: int, concur: Concur) -> Tuple[Heap, Heap]:
    """(down-set of omega, the rest); the first is a pyramid and composes back to H."""
    down = [i for i in range(len(H)) if i == omega or H.less(i, omega)]
    rest = [i for i in range(len(H)) if i not in set(down)]
    return H.induced(down, concur), H.induced(rest, concur)


# ---------------------------------------------------------------------------
# enumeration


def _independent_subsets(cands: List[int], nbr: List[int], grades: List[int], budget: int):
    """Nonempty pairwise non-concurrent subsets of ``cands`` with total grade <= budget."""
    out = []

    def rec(start: int, chosen: List[int], blocked: int, g: int):
        for idx in range(start, len(cands)):
            i = cands[idx]
            if blocked >> i & 1 or g + grades[i] > budget:
                continue
            chosen.append(i)
            out.append((tuple(chosen), g + grades[i]))
            rec(idx + 1, chosen, blocked | nbr[i], g + grades[i])
            chosen.pop()

    rec(0, [], 0, 0)
    return out


def iter_layers(S: PieceSystem, grade_cap: int, top: Optional[Callable[[Any], bool]] = None,
                pyramids: bool = False) -> Iterator[Tuple[Tuple[int, ...], ...]]:
    """Every nonempty heap as its top-down layer sequence of piece indices."""
    m = len(S.pieces)
    allowed = [i for i in range(m) if top is None or top(S.pieces[i])]

    def below(layer, budget):
        cand_mask = 0
        for i in layer:
            cand_mask |= S._nbr[i]
        cands = [i for i in range(m) if cand_mask >> i & 1]
        yield ()
        for nxt, g in _independent_subsets(cands, S._nbr, S._grades, budget):
            for rest in below(nxt, budget - g):
                yield (nxt,) + rest

    for first, g in _independent_subsets(allowed, S._nbr, S._grades, grade_cap):
        if pyramids and len(first) != 1:
            continue
        for rest in below(first, grade_cap - g):
            yield (first,) + rest


def layers_to_heap(S: PieceSystem, layers) -> Heap:
    word = [S.pieces[i] for layer in reversed(layers) for i in layer]
    return Heap.from_word(word, S.concur)


def iter_heaps(S: PieceSystem, grade_cap: int, top=None, pyramids: bool = False) -> Iterator[Heap]:
    for layers in iter_layers(S, grade_cap, top, pyramids):
        yield layers_to_heap(S, layers)


def heap_grade(S: PieceSystem, H: Heap) -> int:
    return sum(S.grade(p) for p in H.labels)


def heap_weight(S: PieceSystem, H: Heap):
    w = S.one
    for p in H.labels:
        w = w * S.weight(p)
    return w


# ---------------------------------------------------------------------------
# weighted sums (graded by total grade, tracked together with the piece count)

Graded = Dict[Tuple[int, int], Any]


def _accumulate(out: Graded, key, value):
    out[key] = out[key] + value if key in out else value


def _layer_weight(S: PieceSystem, layer) -> Any:
    w = S.one
    for i in layer:
        w = w * S._weights[i]
    return w


def _heap_table(S: PieceSystem, grade_cap: int, top_filter, pyramids: bool) -> Graded:
    """(grade, size) -> sum of heap weights, over all heaps including the empty one."""
    m = len(S.pieces)

    @lru_cache(maxsize=None)
    def below(layer: Tuple[int, ...], budget: int) -> Tuple[Tuple[Tuple[int, int], Any], ...]:
        cand_mask = 0
        for i in layer:
            cand_mask |= S._nbr[i]
        cands = [i for i in range(m) if cand_mask >> i & 1]
        acc: Graded = {(0, 0): S.one}
        for nxt, g in _independent_subsets(cands, S._nbr, S._grades, budget):
            w = _layer_weight(S, nxt)
            for (g2, s2), c in below(nxt, budget - g):
                _accumulate(acc, (g + g2, len(nxt) + s2), w * c)
        return tuple(acc.items())

    allowed = [i for i in range(m) if top_filter is None or top_filter(S.pieces[i])]
    acc: Graded = {(0, 0): S.one}
    for first, g in _independent_subsets(allowed, S._nbr, S._grades, grade_cap):
        if pyramids and len(first) != 1:
            continue
        w = _layer_weight(S, first)
        for (g2, s2), c in below(first, grade_cap - g):
            _accumulate(acc, (g + g2, len(first) + s2), w * c)
    return acc


def trivial_table(S: PieceSystem, grade_cap: int, excluded: Optional[Callable[[Any], bool]] = None) -> Dict[int, Any]:
    """grade -> sum over trivial heaps avoiding ``excluded`` of (-1)^|T| w(T)."""
    m = len(S.pieces)
    idx = [i for i in range(m) if excluded is None or not excluded(S.pieces[i])]
    out: Dict[int, Any] = {0: S.one}
    for T, g in _independent_subsets(idx, S._nbr, S._grades, grade_cap):
        w = _layer_weight(S, T)
        _accumulate(out, g, -w if len(T) % 2 else w)
    return out


def heaps_table(S: PieceSystem, grade_cap: int, maximal_in: Optional[Callable[[Any], bool]] = None,
                inverse_size: bool = False, pyramids: bool = False) -> Dict[int, Any]:
    """grade -> sum of w(H) over heaps with every maximal piece in ``maximal_in``.

    ``inverse_size`` weights each heap by 1/|H| and implies pyramids only
    (the empty heap is then left out).
    """
    table = _heap_table(S, grade_cap, maximal_in, pyramids or inverse_size)
    out: Dict[int, Any] = {}
    for (g, s), c in table.items():
        if inverse_size:
            if s == 0:
                continue
            c = c * Fraction(1, s)
        _accumulate(out, g, c)
    return out


def to_series(table: Dict[int, Any], order: int) -> TruncatedSeries:
    return TruncatedSeries({g: c for g, c in table.items() if g <= order}, order)


def trivial_sum(S: PieceSystem, excluded=None, grade_cap: int = 12) -> TruncatedSeries:
    return to_series(trivial_table(S, grade_cap, excluded), grade_cap)


def pyramid_sum(S: PieceSystem, anchor=None, grade_cap: int = 12, mode: str = "count") -> TruncatedSeries:
    """mode "count": heaps whose maximal pieces all satisfy ``anchor``;
    mode "inverse": pyramids with top in ``anchor``, each weighted 1/|P|."""
    if mode not in ("count", "inverse"):
        raise ValueError("mode is 'count' or 'inverse'")
    return to_series(heaps_table(S, grade_cap, anchor, inverse_size=mode == "inverse"), grade_cap)


# ---------------------------------------------------------------------------
# walks and pyramids


def walk_to_pyramid(w: Walk) -> Heap:
    """The pyramid beta_1 o ... o beta_m built from the cycle sequence."""
    return Heap.from_word(list(cycle_sequence(w)), circuit_concurrent)


def pyramid_to_walk(P: Heap, e: Optional[int] = None, u: Optional[int] = None, trails: bool = True) -> Walk:
    """Left inverse of ``walk_to_pyramid`` for the anchor edge e or vertex u."""
    if (e is None) == (u is None):
        raise ValueError("give exactly one of e, u")
    if not P.is_pyramid():
        raise ValueError("not a pyramid")
    top = P.top()
    if e is not None:
        base = top.ending_with(e)
    else:
        base = top.at(u)
    x1 = base.end
    return _peel(P, x1, base, trails)


def _peel(P: Heap, x1: int, base: Walk, trails: bool) -> Walk:
    if len(P) == 1:
        return base
    (a,) = P.maximal()
    x = x1
    while P.below[a]:
        lower = [b for b in range(len(P)) if P.less(b, a)]
        reach = set().union(*(P.labels[b].vertex_set() for b in lower))
        walk = P.labels[a].at(x)
        x = next(v for v in walk.vertices if v in reach)
        holders = [b for b in lower if x in P.labels[b].vertex_set()]
        a = next(b for b in holders if not any(P.less(b, c) for c in holders))
    rest = P.induced([i for i in range(len(P)) if i != a], circuit_concurrent)
    return insert_circuit(P.labels[a], _peel(rest, x1, base, trails), trails)


def circuit_system(circuits: Sequence[Circuit], weight=lambda c: Fraction(1)) -> PieceSystem:
    return PieceSystem(list(circuits), circuit_concurrent, len, weight)
