"""Binary codes of perfect matchings.

:func:`algorithm1_codes` builds the code set face by face from the regularity
of adjacent triples alone; these are the layered codes.  :func:`code_of_matching` reads a code straight off
a matching through its links; the two must agree, which is what the test
suite checks.

Codes are strings over ``"01"``; character ``k-1`` belongs to face ``F_k`` of
the well-ordering.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

from .matchings import (
    PerfectMatching,
    enumerate_perfect_matchings,
    has_M_link,
    is_perfect_matching,
)
from .model import (
    CersError,
    CersSpec,
    PlaneGraph,
    Regularity,
    WellOrdering,
    build_plane_graph,
    is_well_ordering,
    triple_regularity,
)

__all__ = [
    "BinaryCode",
    "CodeSet",
    "earlier_neighbour",
    "algorithm1_codes",
    "algorithm1_prefixes",
    "code_of_matching",
    "code_map",
    "matching_of_code",
    "zero_pad_closure_holds",
]

BinaryCode = str


@dataclass(frozen=True)
class CodeSet:
    """Sorted, duplicate-free codes aligned to a well-ordering."""

    codes: tuple[BinaryCode, ...]
    ordering: WellOrdering

    def __post_init__(self):
        codes = tuple(sorted(set(self.codes)))
        n = self.ordering.n
        if any(len(c) != n or set(c) - {"0", "1"} for c in codes):
            raise ValueError(f"every code must be a bitstring of length {n}")
        object.__setattr__(self, "codes", codes)

    @property
    def n(self) -> int:
        return self.ordering.n

    def __len__(self):
        return len(self.codes)

    def __iter__(self):
        return iter(self.codes)

    def __contains__(self, code) -> bool:
        return code in self.as_set

    @property
    def as_set(self) -> frozenset[str]:
        return frozenset(self.codes)

    def to_text(self) -> str:
        return "".join(c + "\n" for c in self.codes)

    def to_json(self) -> str:
        return json.dumps({"ordering": list(self.ordering.order), "codes": list(self.codes)})


def earlier_neighbour(spec: CersSpec, ordering: WellOrdering, face: str) -> str:
    """The neighbour of ``face`` with the smallest position."""
    pos = ordering.position
    return min(spec.neighbours(face), key=pos.__getitem__)


def algorithm1_prefixes(spec: CersSpec, ordering: WellOrdering) -> list[frozenset[str]]:
    """Code sets of the prefixes ``G_1, ..., G_n`` produced along the way.

    Entry ``k-1`` holds the codes of the subsystem on ``F_1..F_k``.
    """
    if not is_well_ordering(spec, ordering.order):
        raise CersError(f"{ordering.order} is not a well-ordering of this system")
    graph = build_plane_graph(spec)
    n = ordering.n
    pos = ordering.position
    prefixes = [frozenset({"0", "1"})]
    if n == 1:
        return prefixes
    codes = {"00", "01", "10"}
    prefixes.append(frozenset(codes))
    for k in range(3, n + 1):
        fk = ordering[k]
        fj = earlier_neighbour(spec, ordering, fk)
        j = pos[fj]
        fi = earlier_neighbour(spec, ordering, fj)
        i = pos[fi]
        assert i < j < k, (i, j, k)
        want = "0" if triple_regularity(graph, fi, fj, fk) is Regularity.REGULAR else "1"
        nxt = set()
        for x in codes:
            nxt.add(x + "0")
            if x[j - 1] == want:
                nxt.add(x + "1")
        codes = nxt
        prefixes.append(frozenset(codes))
    return prefixes


def algorithm1_codes(spec: CersSpec, ordering: WellOrdering) -> CodeSet:
    return CodeSet(tuple(algorithm1_prefixes(spec, ordering)[-1]), ordering)


def code_of_matching(
    spec: CersSpec, graph: PlaneGraph, ordering: WellOrdering, m: PerfectMatching
) -> BinaryCode:
    """Read the code of ``m`` from its links.

    Bit ``k >= 2`` is the link from ``F_k`` to its earliest neighbour; bit 1
    is the link from ``F_1`` to ``F_2``.  A lone face gets bit 1 exactly when
    its edge 0 is matched.
    """
    if not is_perfect_matching(graph, m):
        raise CersError("not a perfect matching of the graph")
    if ordering.n == 1:
        return "1" if graph.face_cycles[ordering[1]][0] in m else "0"
    bits = ["1" if has_M_link(graph, ordering[1], ordering[2], m) else "0"]
    for k in range(2, ordering.n + 1):
        fk = ordering[k]
        fj = earlier_neighbour(spec, ordering, fk)
        bits.append("1" if has_M_link(graph, fk, fj, m) else "0")
    return "".join(bits)


def code_map(
    spec: CersSpec,
    ordering: WellOrdering,
    matchings: Iterable[PerfectMatching] | None = None,
) -> dict[PerfectMatching, BinaryCode]:
    graph = build_plane_graph(spec)
    if matchings is None:
        matchings = enumerate_perfect_matchings(graph)
    return {m: code_of_matching(spec, graph, ordering, m) for m in matchings}


def matching_of_code(
    spec: CersSpec, ordering: WellOrdering, code: BinaryCode
) -> PerfectMatching:
    inverse: dict[str, PerfectMatching] = {}
    for m, c in code_map(spec, ordering).items():
        if c in inverse:
            raise CersError(f"code {c} is shared by two matchings")
        inverse[c] = m
    try:
        return inverse[code]
    except KeyError:
        raise CersError(f"code {code} is not the code of any perfect matching") from None


def zero_pad_closure_holds(codes: Iterable[BinaryCode]) -> bool:
    """Whether every prefix of every code, padded with zeros, is present."""
    pool = set(codes)
    for x in pool:
        n = len(x)
        for i in range(1, n):
            if x[:i] + "0" * (n - i) not in pool:
                return False
    return True
