"""Resonance graphs and their structural checks.

A :class:`ResonanceGraph` is built either from a code set (Hamming-1
adjacency) or from the perfect matchings themselves (symmetric difference is
one face).  Vertices are indexed ``0..n-1``; ``labels`` holds the codes or
matchings.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Hashable, Iterable, Optional, Sequence

from .matchings import PerfectMatching
from .model import PlaneGraph

__all__ = [
    "ResonanceGraph",
    "resonance_from_codes",
    "resonance_from_matchings",
    "relabel",
    "graphs_isomorphic",
    "is_median_graph",
    "is_partial_cube_with_n_classes",
    "theta_class_count",
    "is_daisy_cube",
    "downward_closure",
    "PosetView",
    "maximal_codes",
    "p4_daisy_property_holds",
    "p4_path_ok",
]

FROM_CODES = "built-from-codes"
FROM_MATCHINGS = "built-from-matchings"


@dataclass(frozen=True)
class ResonanceGraph:
    labels: tuple[Hashable, ...]
    edges: frozenset[tuple[int, int]]
    provenance: str = FROM_CODES

    @property
    def order(self) -> int:
        return len(self.labels)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in self.labels]
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return tuple(frozenset(s) for s in adj)

    @cached_property
    def index(self) -> dict[Hashable, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def label_edges(self) -> set[frozenset]:
        return {frozenset((self.labels[a], self.labels[b])) for a, b in self.edges}

    @cached_property
    def distances(self) -> tuple[tuple[int, ...], ...]:
        """All-pairs BFS distances; -1 marks unreachable pairs."""
        n = self.order
        rows = []
        for s in range(n):
            d = [-1] * n
            d[s] = 0
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in self.adjacency[x]:
                    if d[y] < 0:
                        d[y] = d[x] + 1
                        queue.append(y)
            rows.append(tuple(d))
        return tuple(rows)

    @property
    def is_connected(self) -> bool:
        return self.order == 0 or all(d >= 0 for d in self.distances[0])

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(len(a) for a in self.adjacency))


def resonance_from_codes(codes: Iterable[str]) -> ResonanceGraph:
    labels = tuple(sorted(set(codes)))
    if not labels:
        raise ValueError("code set is empty")
    idx = {c: i for i, c in enumerate(labels)}
    edges = set()
    for c, i in idx.items():
        for p in range(len(c)):
            d = c[:p] + ("1" if c[p] == "0" else "0") + c[p + 1 :]
            j = idx.get(d)
            if j is not None and i < j:
                edges.add((i, j))
    return ResonanceGraph(labels, frozenset(edges), FROM_CODES)


def resonance_from_matchings(
    graph: PlaneGraph, matchings: Sequence[PerfectMatching]
) -> ResonanceGraph:
    """Join matchings whose symmetric difference is exactly one face's edges."""
    faces = set(graph.face_masks.values())
    labels = tuple(matchings)
    edges = set()
    for i, j in combinations(range(len(labels)), 2):
        if labels[i].mask ^ labels[j].mask in faces:
            edges.add((i, j))
    return ResonanceGraph(labels, frozenset(edges), FROM_MATCHINGS)


def relabel(graph: ResonanceGraph, mapping: dict) -> set[frozenset]:
    """Edge set of ``graph`` with every label sent through ``mapping``."""
    return {frozenset(mapping[x] for x in e) for e in graph.label_edges()}


# ---------------------------------------------------------------------------
# Isomorphism
# ---------------------------------------------------------------------------


def _refine(graphs: Sequence[ResonanceGraph]) -> list[list[int]]:
    """Joint colour refinement seeded by degree and distance profile."""
    seeds = [
        [
            (len(g.adjacency[v]), tuple(sorted(Counter(g.distances[v]).items())))
            for v in range(g.order)
        ]
        for g in graphs
    ]
    palette = {s: k for k, s in enumerate(sorted({s for ss in seeds for s in ss}))}
    colours = [[palette[s] for s in ss] for ss in seeds]
    count = len(palette)
    while True:
        sigs = [
            [(c[v], tuple(sorted(c[w] for w in g.adjacency[v]))) for v in range(g.order)]
            for g, c in zip(graphs, colours)
        ]
        palette = {s: k for k, s in enumerate(sorted({s for ss in sigs for s in ss}))}
        if len(palette) == count:
            return colours
        colours = [[palette[s] for s in ss] for ss in sigs]
        count = len(palette)


def graphs_isomorphic(
    a: ResonanceGraph, b: ResonanceGraph
) -> tuple[bool, Optional[dict[int, int]]]:
    """Exact isomorphism test by backtracking over refined colour classes.

    Returns ``(True, mapping)`` with ``mapping`` sending vertex indices of
    ``a`` to those of ``b``, or ``(False, None)``.
    """
    if a.order != b.order or len(a.edges) != len(b.edges):
        return False, None
    if a.degree_sequence() != b.degree_sequence():
        return False, None
    if a.order == 0:
        return True, {}
    ca, cb = _refine([a, b])
    if Counter(ca) != Counter(cb):
        return False, None

    by_colour: dict[int, list[int]] = {}
    for v, c in enumerate(cb):
        by_colour.setdefault(c, []).append(v)

    # visit a's vertices from the rarest colour outward, keeping each next
    # vertex adjacent to something already placed when possible
    size = Counter(ca)
    start = min(range(a.order), key=lambda v: (size[ca[v]], v))
    order, seen = [], {start}
    frontier = [start]
    while len(order) < a.order:
        if not frontier:
            rest = [v for v in range(a.order) if v not in seen]
            nxt = min(rest, key=lambda v: (size[ca[v]], v))
            seen.add(nxt)
            frontier.append(nxt)
        frontier.sort(key=lambda v: (size[ca[v]], v))
        v = frontier.pop(0)
        order.append(v)
        for w in sorted(a.adjacency[v]):
            if w not in seen:
                seen.add(w)
                frontier.append(w)

    da, db = a.distances, b.distances
    fwd: dict[int, int] = {}
    used: set[int] = set()
    # iterative depth-first search; stack[k] iterates candidates for order[k]
    stack = [iter(by_colour[ca[order[0]]])]
    while stack:
        k = len(stack) - 1
        v = order[k]
        if v in fwd:
            used.discard(fwd.pop(v))
        for w in stack[-1]:
            if w in used:
                continue
            if any(da[v][x] != db[w][fwd[x]] for x in order[:k]):
                continue
            fwd[v] = w
            used.add(w)
            break
        else:
            stack.pop()
            continue
        if len(fwd) == a.order:
            return True, dict(fwd)
        stack.append(iter(by_colour[ca[order[k + 1]]]))
    return False, None


# ---------------------------------------------------------------------------
# Median graphs and partial cubes
# ---------------------------------------------------------------------------


def is_median_graph(g: ResonanceGraph) -> bool:
    """Every vertex triple has exactly one median (definitional check)."""
    if not g.is_connected:
        return False
    n = g.order
    d = g.distances
    interval = [[0] * n for _ in range(n)]
    for u in range(n):
        for v in range(u, n):
            duv = d[u][v]
            mask = 0
            for w in range(n):
                if d[u][w] + d[w][v] == duv:
                    mask |= 1 << w
            interval[u][v] = interval[v][u] = mask
    for u in range(n):
        for v in range(u, n):
            iuv = interval[u][v]
            for w in range(v, n):
                m = iuv & interval[v][w] & interval[u][w]
                if m == 0 or m & (m - 1):
                    return False
    return True


def _hamming(x: str, y: str) -> int:
    return sum(a != b for a, b in zip(x, y))


def theta_class_count(g: ResonanceGraph) -> int:
    """Number of coordinates along which some edge of a code graph flips."""
    used = set()
    for a, b in g.edges:
        x, y = g.labels[a], g.labels[b]
        used.update(p for p in range(len(x)) if x[p] != y[p])
    return len(used)


def is_partial_cube_with_n_classes(g: ResonanceGraph, n: int) -> bool:
    """Codes embed ``g`` isometrically into ``Q_n`` using all ``n`` coordinates."""
    if not g.is_connected:
        return False
    if any(len(c) != n for c in g.labels):
        return False
    d = g.distances
    for u in range(g.order):
        for v in range(u + 1, g.order):
            if d[u][v] != _hamming(g.labels[u], g.labels[v]):
                return False
    return theta_class_count(g) == n


# ---------------------------------------------------------------------------
# Daisy cubes and the bitwise order
# ---------------------------------------------------------------------------


def _leq(x: str, y: str) -> bool:
    return all(a <= b for a, b in zip(x, y))


def downward_closure(codes: Iterable[str]) -> frozenset[str]:
    out: set[str] = set()
    for x in codes:
        ones = [p for p, b in enumerate(x) if b == "1"]
        base = ["0"] * len(x)
        for r in range(len(ones) + 1):
            for sub in combinations(ones, r):
                y = base[:]
                for p in sub:
                    y[p] = "1"
                out.add("".join(y))
    return frozenset(out)


def is_daisy_cube(codes: Iterable[str]) -> bool:
    """Whether the code set is closed downward under the bitwise order."""
    pool = set(codes)
    for x in pool:
        for p, b in enumerate(x):
            if b == "1" and x[:p] + "0" + x[p + 1 :] not in pool:
                return False
    return True


@dataclass(frozen=True)
class PosetView:
    codes: frozenset[str]
    maximal: tuple[str, ...]


def maximal_codes(codes: Iterable[str]) -> PosetView:
    pool = frozenset(codes)
    top = tuple(
        sorted(x for x in pool if not any(x != y and _leq(x, y) for y in pool))
    )
    return PosetView(pool, top)


def p4_daisy_property_holds(g: ResonanceGraph) -> tuple[bool, Optional[tuple[str, ...]]]:
    """Scan every 4-vertex path ``v1 v2 v3 v4`` of a code graph.

    In a hypercube the only common neighbour of ``v1`` and ``v3`` besides
    ``v2`` is ``v1 ^ v2 ^ v3``, so each test is one lookup.  Returns
    ``(True, None)`` or ``(False, path)`` for the first violating path.
    """
    labels = g.labels
    if not labels or not labels[0]:
        return True, None
    ints = [int(c, 2) for c in labels]
    present = set(ints)
    adj = g.adjacency
    for v2 in range(g.order):
        for v3 in sorted(adj[v2]):
            for v1 in sorted(adj[v2]):
                if v1 == v3:
                    continue
                if ints[v1] ^ ints[v2] ^ ints[v3] in present:
                    continue
                for v4 in sorted(adj[v3]):
                    if v4 in (v1, v2):
                        continue
                    if ints[v2] ^ ints[v3] ^ ints[v4] not in present:
                        return False, (labels[v1], labels[v2], labels[v3], labels[v4])
    return True, None


def p4_path_ok(g: ResonanceGraph, path: Sequence[str]) -> bool:
    """Whether a given 4-vertex path of a code graph satisfies the property."""
    v1, v2, v3, v4 = (int(c, 2) for c in path)
    present = {int(c, 2) for c in g.labels}
    return v1 ^ v2 ^ v3 in present or v2 ^ v3 ^ v4 in present
