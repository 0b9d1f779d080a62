"""Brute-force perfect matchings, links and resonant sets.

This layer is deliberately naive: it is the oracle the coding and resonance
modules are checked against, so it only uses definitions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .model import CersError, PlaneGraph, WellOrdering

__all__ = [
    "PerfectMatching",
    "LinkConsistencyError",
    "is_perfect_matching",
    "enumerate_perfect_matchings",
    "link_edges",
    "has_M_link",
    "is_alternating",
    "alternating_faces",
    "ResonantSet",
    "independent_face_sets",
    "maximal_resonant_sets",
    "binary_representation",
]


class LinkConsistencyError(CersError):
    """Exactly one edge of a link is matched; the matching is corrupt."""


@dataclass(frozen=True, order=True)
class PerfectMatching:
    """Edge subset stored as a bit vector over the graph's edge ids."""

    mask: int

    @property
    def edges(self) -> tuple[int, ...]:
        m, out, e = self.mask, [], 0
        while m:
            if m & 1:
                out.append(e)
            m >>= 1
            e += 1
        return tuple(out)

    def __contains__(self, edge: int) -> bool:
        return bool(self.mask >> edge & 1)

    @classmethod
    def from_edges(cls, edges: Iterable[int]) -> "PerfectMatching":
        return cls(sum(1 << e for e in set(edges)))

    def to_json(self) -> list[int]:
        return list(self.edges)


def is_perfect_matching(graph: PlaneGraph, m: PerfectMatching) -> bool:
    cover = [0] * graph.num_vertices
    for e in m.edges:
        if e >= len(graph.edges):
            return False
        for v in graph.edges[e]:
            cover[v] += 1
    return all(c == 1 for c in cover)


def enumerate_perfect_matchings(graph: PlaneGraph) -> list[PerfectMatching]:
    """All perfect matchings, sorted by their sorted edge-id tuples."""
    nv = graph.num_vertices
    covered = [False] * nv
    found: list[int] = []

    def rec(v: int, mask: int):
        while v < nv and covered[v]:
            v += 1
        if v == nv:
            found.append(mask)
            return
        covered[v] = True
        for e in graph.incident[v]:
            a, b = graph.edges[e]
            w = b if a == v else a
            if not covered[w]:
                covered[w] = True
                rec(v + 1, mask | (1 << e))
                covered[w] = False
        covered[v] = False

    rec(0, 0)
    out = [PerfectMatching(m) for m in found]
    out.sort(key=lambda pm: pm.edges)
    return out


def link_edges(graph: PlaneGraph, f: str, g: str) -> tuple[int, int]:
    """The two edges of ``f`` touching (but not equal to) the edge shared with ``g``."""
    e = graph.common_edge(f, g)
    if e is None:
        raise ValueError(f"faces {f!r} and {g!r} are not adjacent")
    cyc = graph.face_cycles[f]
    i = cyc.index(e)
    s = len(cyc)
    return cyc[(i - 1) % s], cyc[(i + 1) % s]


def has_M_link(graph: PlaneGraph, f: str, g: str, m: PerfectMatching) -> bool:
    a, b = link_edges(graph, f, g)
    ina, inb = a in m, b in m
    if ina != inb:
        raise LinkConsistencyError(
            f"exactly one link edge from {f} to {g} lies in the matching"
        )
    return ina


def is_alternating(graph: PlaneGraph, face: str, m: PerfectMatching) -> bool:
    cyc = graph.face_cycles[face]
    bits = [e in m for e in cyc]
    return all(bits[i] != bits[i - 1] for i in range(len(bits)))


def alternating_faces(graph: PlaneGraph, m: PerfectMatching) -> frozenset[str]:
    return frozenset(f for f in graph.face_cycles if is_alternating(graph, f, m))


@dataclass(frozen=True)
class ResonantSet:
    faces: frozenset[str]
    witness: PerfectMatching

    def to_json(self) -> dict:
        return {"faces": sorted(self.faces), "witness": self.witness.to_json()}


def independent_face_sets(graph: PlaneGraph) -> list[frozenset[str]]:
    """Every independent set of the inner dual, including the empty set."""
    ids = tuple(graph.face_cycles)
    adjacent = {frozenset(pair) for pair in graph.shared_edge}
    out = []
    for r in range(len(ids) + 1):
        for combo in combinations(ids, r):
            if not any(frozenset(p) in adjacent for p in combinations(combo, 2)):
                out.append(frozenset(combo))
    return out


def maximal_resonant_sets(
    graph: PlaneGraph, matchings: list[PerfectMatching] | None = None
) -> list[ResonantSet]:
    """Inclusion-maximal resonant sets, each with its first witness.

    Sets come out sorted by their sorted face-id tuples.
    """
    if matchings is None:
        matchings = enumerate_perfect_matchings(graph)
    indep = independent_face_sets(graph)
    witness: dict[frozenset[str], PerfectMatching] = {}
    for m in matchings:
        alt = alternating_faces(graph, m)
        for s in indep:
            if s <= alt and s not in witness:
                witness[s] = m
    maximal = [s for s in witness if not any(s < t for t in witness)]
    maximal.sort(key=lambda s: tuple(sorted(s)))
    return [ResonantSet(s, witness[s]) for s in maximal]


def binary_representation(faces: Iterable[str], ordering: WellOrdering) -> str:
    """Indicator bitstring of a face set along ``ordering``."""
    chosen = set(faces)
    unknown = chosen - set(ordering.order)
    if unknown:
        raise ValueError(f"faces not in ordering: {sorted(unknown)}")
    return "".join("1" if f in chosen else "0" for f in ordering.order)
