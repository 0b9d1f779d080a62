"""Segment resizing, resonant equivalence and the code-collision search.

The resizing move changes the length of one boundary segment by an even
number of edges.  Segment parities, together with the face tree and the
cyclic order of attachments, are therefore invariant, and any two systems
agreeing on them can be driven to the same graph by shrinking every segment
to its shortest legal length of the right parity.  Equivalence is decided by
comparing the resulting parity canonical forms.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from typing import Iterable, Optional

from .coding import CodeSet, algorithm1_codes
from .generate import enumerate_isomorphism_classes
from .model import (
    CersError,
    CersSpec,
    FaceSpec,
    Regularity,
    _runs,
    adjacent_triples,
    build_plane_graph,
    face_walk,
    rooted_code,
    triple_regularity,
    validate_spec,
    well_order,
)
from .resonance import ResonanceGraph, graphs_isomorphic, resonance_from_codes

__all__ = [
    "TransformationError",
    "SearchBudgetExceeded",
    "segments_of",
    "apply_transformation1",
    "shrink_all_segments",
    "ParitySignature",
    "parity_signature",
    "CanonicalForm",
    "canonical_form",
    "resonantly_equivalent",
    "is_regular_cers",
    "resonance_graph",
    "CodeCollision",
    "find_code_collision_counterexample",
]


class TransformationError(CersError, ValueError):
    """The requested segment resize would not produce a valid CERS."""


class SearchBudgetExceeded(CersError):
    """The counterexample search ran out of its time budget."""


def segments_of(spec: CersSpec, face: str) -> list[tuple[int, int]]:
    """Boundary segments of ``face`` as ``(start index, length)``."""
    fs = spec.by_id[face]
    return _runs(fs.size, spec.attachments(face))


def apply_transformation1(
    spec: CersSpec, face: str, segment_index: int, delta: int
) -> CersSpec:
    """Subdivide (``delta > 0``) or smooth (``delta < 0``) one boundary segment."""
    if delta % 2:
        raise TransformationError(f"delta must be even, got {delta}")
    if face not in spec.by_id:
        raise KeyError(f"unknown face {face!r}")
    segs = segments_of(spec, face)
    if not 0 <= segment_index < len(segs):
        raise TransformationError(f"face {face} has no segment {segment_index}")
    if delta == 0:
        return spec
    fs = spec.by_id[face]
    s = fs.size
    start, length = segs[segment_index]
    if length + delta < 1:
        raise TransformationError(
            f"segment {segment_index} of face {face} has length {length}; "
            f"changing it by {delta} would make it vanish"
        )
    if s + delta < 4:
        raise TransformationError(f"face {face} would shrink below size 4")

    end = start + length - 1  # may exceed s - 1 when the run wraps past 0
    occupied = spec.attachments(face)
    if delta > 0:
        if end < s:
            shift = {i: (i + delta if i > end else i) for i in occupied}
        else:
            shift = {i: i for i in occupied}
    else:
        r = -delta
        if end < s:
            shift = {i: (i - r if i > end else i) for i in occupied}
        else:
            from_tail = min(r, s - start)
            from_head = r - from_tail
            shift = {i: i - from_head for i in occupied}

    faces = []
    for f in spec.faces:
        if f.id == face:
            f = FaceSpec(f.id, s + delta, f.parent, f.parent_edge_index)
        elif f.parent == face:
            f = FaceSpec(f.id, f.size, f.parent, shift[f.parent_edge_index])
        faces.append(f)
    out = CersSpec(tuple(faces))
    report = validate_spec(out)
    if not report.ok:
        raise TransformationError(str(report))
    return out


def _shortest(length: int, face_neighbours: int) -> int:
    if face_neighbours == 0:
        return 4
    if face_neighbours == 1:
        return 3
    return 1 if length % 2 else 2


def shrink_all_segments(spec: CersSpec) -> CersSpec:
    """Shrink every segment to its shortest legal length of the same parity.

    Two specs have equal canonical forms exactly when their shrunk forms are
    isomorphic graphs.
    """
    for face in spec.ids:
        k = 0
        while k < len(segments_of(spec, face)):
            _, length = segments_of(spec, face)[k]
            target = _shortest(length, len(spec.attachments(face)))
            if length > target:
                spec = apply_transformation1(spec, face, k, target - length)
            k += 1
    return spec


@dataclass(frozen=True)
class ParitySignature:
    """Per face: neighbours in counterclockwise order from the lowest-indexed
    shared edge, each paired with the parity of the segment that follows it.
    A face without neighbours is ``((None, 0),)``."""

    faces: dict[str, tuple[tuple[Optional[str], int], ...]]

    def __eq__(self, other):
        return isinstance(other, ParitySignature) and self.faces == other.faces

    def __hash__(self):
        return hash(tuple(sorted(self.faces.items(), key=lambda kv: kv[0])))

    def consistent(self) -> bool:
        """Segment parities plus shared-edge count is even on every face."""
        for seq in self.faces.values():
            shared = sum(1 for nb, _ in seq if nb is not None)
            if (shared + sum(p for _, p in seq)) % 2:
                return False
        return True


def parity_signature(spec: CersSpec) -> ParitySignature:
    out = {}
    for face in spec.ids:
        occ = spec.attachments(face)
        if not occ:
            out[face] = ((None, spec.by_id[face].size % 2),)
            continue
        start = min(occ)
        walk = face_walk(spec, face, start)
        seq = [(occ[start], walk[0] % 2)]
        for k in range(1, len(walk), 2):
            seq.append((walk[k], walk[k + 1] % 2))
        out[face] = tuple(seq)
    return ParitySignature(out)


@dataclass(frozen=True, order=True)
class CanonicalForm:
    code: str

    def __str__(self):
        return self.code


def canonical_form(spec: CersSpec) -> CanonicalForm:
    """Parity code minimized over every root face and both orientations."""
    report = validate_spec(spec)
    if not report.ok:
        raise TransformationError(str(report))
    return CanonicalForm(
        min(
            rooted_code(spec, f, mirrored=m, parity=True)
            for f in spec.ids
            for m in (False, True)
        )
    )


def resonantly_equivalent(g: CersSpec, h: CersSpec) -> bool:
    return canonical_form(g) == canonical_form(h)


def is_regular_cers(spec: CersSpec) -> bool:
    if spec.n <= 2:
        return True
    graph = build_plane_graph(spec)
    return all(
        triple_regularity(graph, *t) is Regularity.REGULAR for t in adjacent_triples(spec)
    )


def resonance_graph(spec: CersSpec) -> tuple[CodeSet, ResonanceGraph]:
    """Layered codes under the default ordering and the graph they span."""
    codes = algorithm1_codes(spec, well_order(spec))
    return codes, resonance_from_codes(codes.codes)


# ---------------------------------------------------------------------------
# Counterexample search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CodeCollision:
    first: CersSpec
    second: CersSpec
    first_codes: CodeSet
    second_codes: CodeSet
    mapping: dict  # vertex map between the two resonance graphs, by code

    def to_dict(self) -> dict:
        return {
            "first": self.first.to_dict(),
            "second": self.second.to_dict(),
            "first_codes": {
                "ordering": list(self.first_codes.ordering.order),
                "codes": list(self.first_codes.codes),
            },
            "second_codes": {
                "ordering": list(self.second_codes.ordering.order),
                "codes": list(self.second_codes.codes),
            },
            "shared_code_set": self.first_codes.codes == self.second_codes.codes,
            "isomorphism": dict(sorted(self.mapping.items())),
            "canonical_forms": [
                canonical_form(self.first).code,
                canonical_form(self.second).code,
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _invariant(g: ResonanceGraph):
    profile = sorted(tuple(sorted(row)) for row in g.distances)
    return g.order, len(g.edges), g.degree_sequence(), tuple(profile)


def _resonance_for(spec):
    return resonance_graph(spec)


def find_code_collision_counterexample(
    max_faces: int,
    allowed_sizes: Iterable[int] = (6,),
    *,
    chains_only: bool = False,
    max_seconds: Optional[float] = None,
    jobs: int = 1,
) -> Optional[CodeCollision]:
    """First pair of non-equivalent systems with isomorphic resonance graphs.

    Face counts are tried in ascending order.  Within a count, resonant
    equivalence classes are taken in generation order and pairs are tested
    in lexicographic order of their class positions, so the answer does not
    depend on ``jobs``.
    """
    deadline = None if max_seconds is None else time.monotonic() + max_seconds
    sizes = tuple(sorted(set(allowed_sizes)))
    by_count: dict[int, list[CersSpec]] = {}
    for spec in enumerate_isomorphism_classes(max_faces, sizes, chains_only=chains_only):
        by_count.setdefault(spec.n, []).append(spec)

    for n in sorted(by_count):
        reps: list[CersSpec] = []
        seen = set()
        for spec in by_count[n]:
            cf = canonical_form(spec)
            if cf not in seen:
                seen.add(cf)
                reps.append(spec)
        if len(reps) < 2:
            continue
        if jobs > 1:
            from concurrent.futures import ProcessPoolExecutor

            with ProcessPoolExecutor(max_workers=jobs) as pool:
                built = list(pool.map(_resonance_for, reps, chunksize=16))
        else:
            built = [_resonance_for(s) for s in reps]
        buckets: dict = {}
        for k, (_, graph) in enumerate(built):
            buckets.setdefault(_invariant(graph), []).append(k)
        for a in range(len(reps)):
            if deadline is not None and time.monotonic() > deadline:
                raise SearchBudgetExceeded(f"budget exhausted at {n} faces")
            ga = built[a][1]
            for b in buckets[_invariant(ga)]:
                if b <= a:
                    continue
                ok, mapping = graphs_isomorphic(ga, built[b][1])
                if ok:
                    gb = built[b][1]
                    return CodeCollision(
                        reps[a],
                        reps[b],
                        built[a][0],
                        built[b][0],
                        {ga.labels[i]: gb.labels[j] for i, j in mapping.items()},
                    )
    return None
