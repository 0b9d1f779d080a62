"""Catacondensed even ring systems: declarative specs and their realization.

A :class:`CersSpec` describes a CERS as a tree of inner faces.  Every face is
an even cycle whose edges are numbered ``0..size-1`` counterclockwise.  The
root face's edge 0 is arbitrary; every other face's edge 0 is the edge it
shares with its parent.  A child sits on its parent's edge
``parent_edge_index``.

Everything here is a pure function of immutable values.
"""

from __future__ import annotations

import enum
import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Iterable, Iterator, Optional

SPEC_FORMAT = "cers-spec-v1"

__all__ = [
    "SPEC_FORMAT",
    "CersError",
    "SpecFormatError",
    "InvalidSpecError",
    "FaceSpec",
    "CersSpec",
    "Violation",
    "ValidationReport",
    "validate_spec",
    "PlaneGraph",
    "build_plane_graph",
    "InnerDual",
    "inner_dual",
    "BoundarySegment",
    "boundary_segments",
    "WellOrdering",
    "well_order",
    "is_well_ordering",
    "terminal_faces",
    "Regularity",
    "triple_distance",
    "triple_regularity",
    "adjacent_triples",
    "edge_distance_oracle",
    "face_walk",
    "rooted_code",
    "isomorphism_code",
]


class CersError(Exception):
    """Base class for domain errors raised by this package."""


class SpecFormatError(CersError, ValueError):
    """The document is not a well-formed cers-spec-v1 document."""


class InvalidSpecError(CersError, ValueError):
    """The document parses but violates a CERS invariant."""

    def __init__(self, violations: Iterable["Violation"]):
        self.violations = tuple(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


@dataclass(frozen=True)
class FaceSpec:
    id: str
    size: int
    parent: Optional[str] = None
    parent_edge_index: Optional[int] = None


@dataclass(frozen=True)
class CersSpec:
    faces: tuple[FaceSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "faces", tuple(self.faces))

    # -- construction helpers -------------------------------------------

    @classmethod
    def from_dict(cls, doc: dict) -> "CersSpec":
        if not isinstance(doc, dict):
            raise SpecFormatError("spec document must be a JSON object")
        if doc.get("format") != SPEC_FORMAT:
            raise SpecFormatError(
                f"missing or unsupported format field (expected {SPEC_FORMAT!r})"
            )
        raw = doc.get("faces")
        if not isinstance(raw, list):
            raise SpecFormatError("'faces' must be an array")
        faces = []
        for k, item in enumerate(raw):
            if not isinstance(item, dict):
                raise SpecFormatError(f"faces[{k}] must be an object")
            fid, size = item.get("id"), item.get("size")
            parent, pei = item.get("parent"), item.get("parent_edge_index")
            if not isinstance(fid, str):
                raise SpecFormatError(f"faces[{k}].id must be a string")
            if not isinstance(size, int) or isinstance(size, bool):
                raise SpecFormatError(f"faces[{k}].size must be an integer")
            if parent is not None and not isinstance(parent, str):
                raise SpecFormatError(f"faces[{k}].parent must be a string or null")
            if pei is not None and (not isinstance(pei, int) or isinstance(pei, bool)):
                raise SpecFormatError(
                    f"faces[{k}].parent_edge_index must be an integer or null"
                )
            faces.append(FaceSpec(fid, size, parent, pei))
        return cls(tuple(faces))

    @classmethod
    def from_json(cls, text: str) -> "CersSpec":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SpecFormatError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(doc)

    @classmethod
    def load(cls, path) -> "CersSpec":
        return cls.from_json(Path(path).read_text())

    def to_dict(self) -> dict:
        return {
            "format": SPEC_FORMAT,
            "faces": [
                {
                    "id": f.id,
                    "size": f.size,
                    "parent": f.parent,
                    "parent_edge_index": f.parent_edge_index,
                }
                for f in self.faces
            ],
        }

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    # -- lookups ----------------------------------------------------------

    @cached_property
    def by_id(self) -> dict[str, FaceSpec]:
        return {f.id: f for f in self.faces}

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(f.id for f in self.faces)

    @property
    def n(self) -> int:
        return len(self.faces)

    @cached_property
    def root(self) -> str:
        roots = [f.id for f in self.faces if f.parent is None]
        if len(roots) != 1:
            raise InvalidSpecError([Violation(None, "spec must have exactly one root")])
        return roots[0]

    @cached_property
    def children(self) -> dict[str, tuple[str, ...]]:
        """Spec children of every face, by ascending attachment index."""
        kids: dict[str, list[FaceSpec]] = {f.id: [] for f in self.faces}
        for f in self.faces:
            if f.parent is not None and f.parent in kids:
                kids[f.parent].append(f)
        return {
            fid: tuple(c.id for c in sorted(cs, key=lambda c: c.parent_edge_index))
            for fid, cs in kids.items()
        }

    @cached_property
    def _attachment_map(self) -> dict[str, dict[int, str]]:
        out = {}
        for f in self.faces:
            occ = {}
            if f.parent is not None:
                occ[0] = f.parent
            for c in self.children[f.id]:
                occ[self.by_id[c].parent_edge_index] = c
            out[f.id] = dict(sorted(occ.items()))
        return out

    def attachments(self, face: str) -> dict[int, str]:
        """Map local edge index of ``face`` -> neighbouring face across it."""
        return self._attachment_map[face]

    def neighbours(self, face: str) -> tuple[str, ...]:
        """Neighbours of ``face`` ordered by the local index of the shared edge."""
        return tuple(self._attachment_map[face].values())

    def local_index(self, face: str, other: str) -> int:
        """Index, on ``face``, of the edge shared with ``other``."""
        for i, g in self.attachments(face).items():
            if g == other:
                return i
        raise ValueError(f"faces {face!r} and {other!r} are not adjacent")


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    face: Optional[str]
    message: str

    def __str__(self):
        return f"face {self.face}: {self.message}" if self.face else self.message


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "ok"
        return "\n".join(str(v) for v in self.violations)


def validate_spec(spec: CersSpec) -> ValidationReport:
    """Collect every violated invariant of ``spec``; never raises."""
    out: list[Violation] = []
    if not spec.faces:
        return ValidationReport((Violation(None, "spec has no faces"),))

    seen: dict[str, FaceSpec] = {}
    for f in spec.faces:
        if f.id in seen:
            out.append(Violation(f.id, "duplicate face id"))
        seen[f.id] = f

    roots = [f for f in spec.faces if f.parent is None]
    if len(roots) != 1:
        out.append(
            Violation(None, f"spec must have exactly one root face, found {len(roots)}")
        )

    for f in spec.faces:
        if f.size % 2:
            out.append(Violation(f.id, f"odd face size {f.size}"))
        if f.size < 4:
            out.append(Violation(f.id, f"face size {f.size} is below 4"))
        if f.parent is None:
            if f.parent_edge_index is not None:
                out.append(Violation(f.id, "root face must not have a parent_edge_index"))
            continue
        if f.parent == f.id:
            out.append(Violation(f.id, "face is its own parent"))
            continue
        if f.parent not in seen:
            out.append(Violation(f.id, f"unknown parent {f.parent!r}"))
            continue
        if f.parent_edge_index is None:
            out.append(Violation(f.id, "child face needs a parent_edge_index"))
            continue
        p = seen[f.parent]
        lo = 0 if p.parent is None else 1
        if not lo <= f.parent_edge_index < p.size:
            if f.parent_edge_index == 0:
                msg = f"parent_edge_index 0 is reserved on non-root parent {p.id}"
            else:
                msg = (
                    f"parent_edge_index {f.parent_edge_index} out of range "
                    f"[{lo}, {p.size - 1}] on parent {p.id}"
                )
            out.append(Violation(f.id, msg))

    # every face must reach the root without revisiting anything
    for f in spec.faces:
        cur, path = f, set()
        while cur is not None and cur.parent is not None:
            if cur.id in path:
                out.append(Violation(f.id, "parent references contain a cycle"))
                break
            path.add(cur.id)
            cur = seen.get(cur.parent)

    # occupied edges of each face: distinct and cyclically non-adjacent
    for p in seen.values():
        occ: list[tuple[int, str]] = []
        if p.parent is not None:
            occ.append((0, p.parent))
        occ += [
            (c.parent_edge_index, c.id)
            for c in spec.faces
            if c.parent == p.id and isinstance(c.parent_edge_index, int)
        ]
        idx = sorted(occ)
        for a in range(len(idx)):
            for b in range(a + 1, len(idx)):
                (i, fa), (j, fb) = idx[a], idx[b]
                if i == j:
                    out.append(
                        Violation(p.id, f"faces {fa} and {fb} share attachment index {i}")
                    )
                elif p.size > 0 and min(j - i, p.size - (j - i)) == 1:
                    out.append(
                        Violation(
                            p.id,
                            f"adjacent attachments create degree-4 vertex "
                            f"(edges {i} and {j}, faces {fa} and {fb})",
                        )
                    )
    return ValidationReport(tuple(out))


def _require_valid(spec: CersSpec) -> None:
    report = validate_spec(spec)
    if not report.ok:
        raise InvalidSpecError(report.violations)


# ---------------------------------------------------------------------------
# Plane graph
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PlaneGraph:
    """Concrete realization of a spec.

    Vertices are ``0..num_vertices-1``; ``edges[e]`` is a sorted vertex pair.
    ``face_cycles[F][i]`` is the edge id of the face's local edge ``i`` and
    ``face_vertices[F][i]`` the vertex where that edge starts (walking
    counterclockwise).
    """

    num_vertices: int
    edges: tuple[tuple[int, int], ...]
    face_cycles: dict[str, tuple[int, ...]]
    face_vertices: dict[str, tuple[int, ...]]
    outer_edges: frozenset[int]
    shared_edge: dict[tuple[str, str], int]

    @property
    def vertices(self) -> range:
        return range(self.num_vertices)

    @cached_property
    def incident(self) -> tuple[tuple[int, ...], ...]:
        inc: list[list[int]] = [[] for _ in range(self.num_vertices)]
        for e, (u, v) in enumerate(self.edges):
            inc[u].append(e)
            inc[v].append(e)
        return tuple(tuple(x) for x in inc)

    def degree(self, v: int) -> int:
        return len(self.incident[v])

    @cached_property
    def face_masks(self) -> dict[str, int]:
        return {f: sum(1 << e for e in cyc) for f, cyc in self.face_cycles.items()}

    def common_edge(self, f: str, g: str) -> Optional[int]:
        e = self.shared_edge.get((f, g))
        return self.shared_edge.get((g, f)) if e is None else e

    def local_index(self, face: str, edge: int) -> int:
        return self.face_cycles[face].index(edge)


@lru_cache(maxsize=4096)
def build_plane_graph(spec: CersSpec) -> PlaneGraph:
    _require_valid(spec)
    edges: list[tuple[int, int]] = []
    edge_id: dict[tuple[int, int], int] = {}

    def add_edge(u, v):
        key = (u, v) if u < v else (v, u)
        if key not in edge_id:
            edge_id[key] = len(edges)
            edges.append(key)
        return edge_id[key]

    face_vertices: dict[str, tuple[int, ...]] = {}
    face_cycles: dict[str, tuple[int, ...]] = {}
    shared: dict[tuple[str, str], int] = {}
    nv = 0

    root = spec.by_id[spec.root]
    queue = deque([root.id])
    while queue:
        fid = queue.popleft()
        f = spec.by_id[fid]
        if f.parent is None:
            ring = list(range(nv, nv + f.size))
            nv += f.size
        else:
            pv = face_vertices[f.parent]
            p = f.parent_edge_index
            psize = len(pv)
            ring = [pv[(p + 1) % psize], pv[p]] + list(range(nv, nv + f.size - 2))
            nv += f.size - 2
        cyc = tuple(add_edge(ring[i], ring[(i + 1) % f.size]) for i in range(f.size))
        face_vertices[fid] = tuple(ring)
        face_cycles[fid] = cyc
        if f.parent is not None:
            shared[(f.parent, fid)] = cyc[0]
        queue.extend(spec.children[fid])

    shared_set = set(shared.values())
    outer = frozenset(e for e in range(len(edges)) if e not in shared_set)
    return PlaneGraph(
        num_vertices=nv,
        edges=tuple(edges),
        face_cycles={f: face_cycles[f] for f in spec.ids},
        face_vertices={f: face_vertices[f] for f in spec.ids},
        outer_edges=outer,
        shared_edge=shared,
    )


# ---------------------------------------------------------------------------
# Inner dual
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InnerDual:
    nodes: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]

    @cached_property
    def adjacency(self) -> dict[str, frozenset[str]]:
        adj: dict[str, set[str]] = {v: set() for v in self.nodes}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return {v: frozenset(s) for v, s in adj.items()}

    def degree(self, v: str) -> int:
        return len(self.adjacency[v])

    def adjacent(self, a: str, b: str) -> bool:
        return b in self.adjacency[a]

    @property
    def is_path(self) -> bool:
        return all(len(s) <= 2 for s in self.adjacency.values())


def inner_dual(spec: CersSpec) -> InnerDual:
    _require_valid(spec)
    edges = tuple((f.parent, f.id) for f in spec.faces if f.parent is not None)
    return InnerDual(spec.ids, edges)


def terminal_faces(spec: CersSpec) -> tuple[str, ...]:
    """Faces of inner-dual degree at most one, in spec order."""
    return tuple(f for f in spec.ids if len(spec.attachments(f)) <= 1)


# ---------------------------------------------------------------------------
# Boundary segments
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundarySegment:
    face: str
    edges: tuple[int, ...]
    start: int  # local index of the first edge

    @property
    def length(self) -> int:
        return len(self.edges)


def _runs(size: int, occupied: Iterable[int]) -> list[tuple[int, int]]:
    """Maximal runs of free local indices as (start, length).

    Ordered by start index in the cyclic order 1, 2, ..., size-1, 0.
    """
    occ = sorted(set(occupied))
    if not occ:
        return [(0, size)]
    runs = []
    for a, b in zip(occ, occ[1:] + [occ[0] + size]):
        if b - a > 1:
            runs.append(((a + 1) % size, b - a - 1))
    runs.sort(key=lambda r: (r[0] - 1) % size)
    return runs


def boundary_segments(graph: PlaneGraph, face: str) -> list[BoundarySegment]:
    if face not in graph.face_cycles:
        raise KeyError(f"unknown face {face!r}")
    cyc = graph.face_cycles[face]
    s = len(cyc)
    occupied = [i for i, e in enumerate(cyc) if e not in graph.outer_edges]
    return [
        BoundarySegment(face, tuple(cyc[(start + t) % s] for t in range(length)), start)
        for start, length in _runs(s, occupied)
    ]


# ---------------------------------------------------------------------------
# Well-orderings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WellOrdering:
    order: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))

    @property
    def n(self) -> int:
        return len(self.order)

    @cached_property
    def position(self) -> dict[str, int]:
        """1-based position of every face."""
        return {f: k for k, f in enumerate(self.order, start=1)}

    def __getitem__(self, k: int) -> str:
        """Face ``F_k`` (1-based)."""
        if k < 1:
            raise IndexError(k)
        return self.order[k - 1]

    def __len__(self):
        return len(self.order)

    def __iter__(self) -> Iterator[str]:
        return iter(self.order)


def is_well_ordering(spec: CersSpec, order: Iterable[str]) -> bool:
    order = tuple(order)
    if sorted(order) != sorted(spec.ids):
        return False
    if len(spec.attachments(order[0])) > 1:
        return False
    seen = {order[0]}
    for f in order[1:]:
        if sum(1 for g in spec.neighbours(f) if g in seen) != 1:
            return False
        seen.add(f)
    return True


def _bfs_order(spec: CersSpec, root: str) -> tuple[str, ...]:
    order, seen = [root], {root}
    queue = deque([root])
    while queue:
        f = queue.popleft()
        for g in spec.neighbours(f):
            if g not in seen:
                seen.add(g)
                order.append(g)
                queue.append(g)
    return tuple(order)


def well_order(spec: CersSpec, root: Optional[str] = None) -> WellOrdering:
    """BFS well-ordering from a terminal face.

    Neighbours of a face are visited by ascending local index of the shared
    edge, which for spec children is their ``parent_edge_index``.  Without
    an explicit root, the terminal face whose rooted structural code is
    smallest is used (first in spec order on ties).
    """
    _require_valid(spec)
    if root is None:
        root = min(terminal_faces(spec), key=lambda f: rooted_code(spec, f))
    elif root not in spec.by_id:
        raise KeyError(f"unknown face {root!r}")
    elif len(spec.attachments(root)) > 1:
        raise ValueError(f"face {root!r} is not terminal")
    return WellOrdering(_bfs_order(spec, root))


# ---------------------------------------------------------------------------
# Adjacent triples and edge distances
# ---------------------------------------------------------------------------


class Regularity(enum.Enum):
    REGULAR = "regular"
    IRREGULAR = "irregular"


def triple_distance(graph: PlaneGraph, fi: str, fj: str, fk: str) -> int:
    """d(e, f) for the triple, measured around the middle face."""
    e = graph.common_edge(fi, fj)
    f = graph.common_edge(fj, fk)
    if fi == fk or e is None or f is None:
        raise ValueError(f"({fi}, {fj}, {fk}) is not an adjacent triple")
    s = len(graph.face_cycles[fj])
    a, b = graph.local_index(fj, e), graph.local_index(fj, f)
    return min(abs(a - b), s - abs(a - b))


def triple_regularity(graph: PlaneGraph, fi: str, fj: str, fk: str) -> Regularity:
    d = triple_distance(graph, fi, fj, fk)
    return Regularity.REGULAR if d % 2 == 0 else Regularity.IRREGULAR


def adjacent_triples(spec: CersSpec) -> Iterator[tuple[str, str, str]]:
    """Every adjacent triple (F, F', F''), with F before F'' in spec order."""
    pos = {f: k for k, f in enumerate(spec.ids)}
    for mid in spec.ids:
        nb = sorted(spec.neighbours(mid), key=pos.__getitem__)
        for a in range(len(nb)):
            for b in range(a + 1, len(nb)):
                yield nb[a], mid, nb[b]


def edge_distance_oracle(graph: PlaneGraph, e: int, f: int) -> int:
    """Exact distance between edges ``e`` and ``f`` in the line graph (BFS)."""
    m = len(graph.edges)
    if not (0 <= e < m and 0 <= f < m):
        raise KeyError(f"unknown edge ({e}, {f})")
    dist = {e: 0}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        if x == f:
            return dist[x]
        for v in graph.edges[x]:
            for y in graph.incident[v]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
    raise ValueError("edges are in different components")


# ---------------------------------------------------------------------------
# Structural codes of rooted face trees
# ---------------------------------------------------------------------------


def face_walk(spec: CersSpec, face: str, start: int, step: int = 1) -> list:
    """Walk once around ``face`` from local edge ``start``.

    Returns an alternating list ``[g0, n1, g1, n2, ..., gm]`` where the ``g``
    are boundary-segment lengths and the ``n`` are the neighbours met on the
    way.  The edge at ``start`` itself is not reported; it is expected to be
    occupied unless the face has no neighbours at all.
    """
    s = spec.by_id[face].size
    occ = spec.attachments(face)
    out: list = []
    gap = 0
    for t in range(1, s):
        i = (start + step * t) % s
        if i in occ:
            out.append(gap)
            out.append(occ[i])
            gap = 0
        else:
            gap += 1
    out.append(gap)
    return out


def _subtree_code(spec, face, entry, step, parity) -> str:
    walk = face_walk(spec, face, entry, step)
    parts = []
    for k, item in enumerate(walk):
        if k % 2 == 0:
            parts.append(str(item % 2 if parity else item))
        else:
            child = item
            parts.append(
                _subtree_code(spec, child, spec.local_index(child, face), step, parity)
            )
    return "[" + ",".join(parts) + "]"


def rooted_code(
    spec: CersSpec, root: str, *, mirrored: bool = False, parity: bool = False
) -> str:
    """Structural code of the face tree rooted at ``root``.

    Each face lists its boundary-segment lengths and child subtrees in the
    order met when walking around it from the edge towards its parent.  The
    root is rotated to its lexicographically least starting neighbour.
    ``mirrored`` walks every face clockwise instead; ``parity`` keeps only
    segment lengths mod 2.
    """
    step = -1 if mirrored else 1
    occ = spec.attachments(root)
    size = spec.by_id[root].size
    if not occ:
        return "R[" + str(size % 2 if parity else size) + "]"
    best = None
    for start, nb in occ.items():
        walk = face_walk(spec, root, start, step)
        head = _subtree_code(spec, nb, spec.local_index(nb, root), step, parity)
        parts = [head]
        for k, item in enumerate(walk):
            if k % 2 == 0:
                parts.append(str(item % 2 if parity else item))
            else:
                parts.append(
                    _subtree_code(spec, item, spec.local_index(item, root), step, parity)
                )
        code = "R[" + ",".join(parts) + "]"
        if best is None or code < best:
            best = code
    return best


def isomorphism_code(spec: CersSpec) -> str:
    """Complete invariant of the realized graph up to isomorphism.

    A 2-connected outerplanar graph has a unique plane embedding up to
    reflection, so minimizing the rooted code over every root and both
    orientations identifies the graph.
    """
    _require_valid(spec)
    return min(
        rooted_code(spec, f, mirrored=m) for f in spec.ids for m in (False, True)
    )
