"""Exhaustive generation of CERS specs within bounds."""

from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Iterable, Iterator, Optional

from .model import CersSpec, FaceSpec, isomorphism_code

__all__ = [
    "normalize_ids",
    "free_positions",
    "enumerate_cers",
    "enumerate_isomorphism_classes",
]


def normalize_ids(spec: CersSpec) -> CersSpec:
    """Rename faces ``F1..Fn`` in BFS order from the root, spec order = BFS order."""
    root = spec.root
    order, queue = [root], deque([root])
    while queue:
        f = queue.popleft()
        for c in spec.children[f]:
            order.append(c)
            queue.append(c)
    name = {f: f"F{k}" for k, f in enumerate(order, start=1)}
    faces = []
    for f in order:
        fs = spec.by_id[f]
        parent = None if fs.parent is None else name[fs.parent]
        faces.append(FaceSpec(name[f], fs.size, parent, fs.parent_edge_index))
    return CersSpec(tuple(faces))


def _position_sets(size: int, is_root: bool, max_children: int) -> Iterator[tuple[int, ...]]:
    """Sets of child attachment indices keeping occupied edges non-adjacent."""
    if is_root:
        cand = list(range(size))
    else:
        cand = list(range(2, size - 1))
    for r in range(0, max_children + 1):
        for combo in combinations(cand, r):
            if any(b - a < 2 for a, b in zip(combo, combo[1:])):
                continue
            if is_root and len(combo) > 1 and combo[0] + size - combo[-1] < 2:
                continue
            yield combo


def _trees(is_root: bool, budget: int, sizes, chains_only: bool):
    """Plane face trees as ``(size, ((index, subtree), ...))`` with face counts."""
    if budget < 1:
        return
    for size in sizes:
        max_children = (2 if is_root else 1) if chains_only else size
        for positions in _position_sets(size, is_root, min(max_children, budget - 1)):
            for kids, used in _forests(positions, budget - 1, sizes, chains_only):
                yield (size, kids), used + 1


def _forests(positions, budget, sizes, chains_only):
    if not positions:
        yield (), 0
        return
    head, rest = positions[0], positions[1:]
    for sub, used in _trees(False, budget - len(rest), sizes, chains_only):
        for tail, used_tail in _forests(rest, budget - used, sizes, chains_only):
            yield ((head, sub),) + tail, used + used_tail


def _tree_to_spec(tree) -> CersSpec:
    faces: list[FaceSpec] = []
    queue = deque([(tree, None, None)])
    while queue:
        (size, kids), parent, index = queue.popleft()
        fid = f"F{len(faces) + 1}"
        faces.append(FaceSpec(fid, size, parent, index))
        for pos, sub in kids:
            queue.append((sub, fid, pos))
    return CersSpec(tuple(faces))


def _size_list(allowed_sizes: Optional[Iterable[int]], max_size: Optional[int]) -> list[int]:
    if allowed_sizes is None:
        if max_size is None:
            raise ValueError("give allowed_sizes or max_size")
        return list(range(4, max_size + 1, 2))
    sizes = sorted(set(allowed_sizes))
    if max_size is not None:
        sizes = [s for s in sizes if s <= max_size]
    if any(s < 4 or s % 2 for s in sizes):
        raise ValueError(f"face sizes must be even and at least 4: {sizes}")
    return sizes


def enumerate_cers(
    max_faces: int,
    allowed_sizes: Optional[Iterable[int]] = (6,),
    max_size: Optional[int] = None,
    *,
    min_faces: int = 1,
    chains_only: bool = False,
) -> Iterator[CersSpec]:
    """Every spec within bounds, once each.

    Specs are taken up to renaming of faces: ids are ``F1..Fn`` in BFS order
    from the root, children by ascending attachment index.  Two specs differ
    when their rooted, embedded face trees (sizes and attachment indices)
    differ, so the same graph appears many times.  Output is sorted by
    face count, then in a fixed generation order.
    """
    sizes = _size_list(allowed_sizes, max_size)
    for n in range(max(1, min_faces), max_faces + 1):
        for tree, used in _trees(True, n, sizes, chains_only):
            if used == n:
                yield _tree_to_spec(tree)


def free_positions(spec: CersSpec, face: str) -> list[int]:
    """Local indices of ``face`` where a new child can attach."""
    fs = spec.by_id[face]
    occ = set(spec.attachments(face))
    s = fs.size
    return [
        i
        for i in range(s)
        if i not in occ and (i - 1) % s not in occ and (i + 1) % s not in occ
    ]


def enumerate_isomorphism_classes(
    max_faces: int,
    allowed_sizes: Optional[Iterable[int]] = (6,),
    max_size: Optional[int] = None,
    *,
    min_faces: int = 1,
    chains_only: bool = False,
) -> Iterator[CersSpec]:
    """One spec per isomorphism class of CERS graphs within bounds.

    Classes with ``k + 1`` faces are grown from those with ``k`` by adding a
    terminal face anywhere it fits; deleting a terminal face from any CERS
    leaves a CERS, so nothing is missed.
    """
    sizes = _size_list(allowed_sizes, max_size)
    level = [CersSpec((FaceSpec("F1", s),)) for s in sizes]
    for n in range(1, max_faces + 1):
        if n >= min_faces:
            yield from level
        if n == max_faces:
            return
        seen: set[str] = set()
        nxt: list[CersSpec] = []
        for spec in level:
            for face in spec.ids:
                if chains_only and len(spec.attachments(face)) > (0 if n == 1 else 1):
                    continue
                for pos in free_positions(spec, face):
                    if spec.by_id[face].parent is not None and pos == 0:
                        continue
                    for s in sizes:
                        grown = normalize_ids(
                            CersSpec(spec.faces + (FaceSpec("new", s, face, pos),))
                        )
                        code = isomorphism_code(grown)
                        if code not in seen:
                            seen.add(code)
                            nxt.append(grown)
        level = nxt
