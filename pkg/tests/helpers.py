"""Independent oracles and strategies shared by the test modules."""

from __future__ import annotations

from itertools import combinations

from hypothesis import strategies as st

from cers.generate import free_positions, normalize_ids
from cers.model import CersSpec, FaceSpec, PlaneGraph


def matchings_by_subsets(graph: PlaneGraph) -> set[frozenset[int]]:
    """Perfect matchings by testing every edge subset of the right size."""
    nv = graph.num_vertices
    if nv % 2:
        return set()
    out = set()
    for combo in combinations(range(len(graph.edges)), nv // 2):
        covered = set()
        ok = True
        for e in combo:
            u, v = graph.edges[e]
            if u in covered or v in covered:
                ok = False
                break
            covered.update((u, v))
        if ok:
            out.add(frozenset(combo))
    return out


def is_bipartite(graph: PlaneGraph) -> bool:
    colour = {}
    for s in graph.vertices:
        if s in colour:
            continue
        colour[s] = 0
        stack = [s]
        while stack:
            x = stack.pop()
            for e in graph.incident[x]:
                a, b = graph.edges[e]
                y = b if a == x else a
                if y not in colour:
                    colour[y] = 1 - colour[x]
                    stack.append(y)
                elif colour[y] == colour[x]:
                    return False
    return True


def is_two_connected(graph: PlaneGraph) -> bool:
    n = graph.num_vertices

    def connected_without(skip):
        alive = [v for v in graph.vertices if v != skip]
        seen = {alive[0]}
        stack = [alive[0]]
        while stack:
            x = stack.pop()
            for e in graph.incident[x]:
                for y in graph.edges[e]:
                    if y != skip and y not in seen:
                        seen.add(y)
                        stack.append(y)
        return len(seen) == len(alive)

    return n >= 3 and connected_without(None) and all(
        connected_without(v) for v in graph.vertices
    )


def all_well_orderings(spec: CersSpec):
    """Every well-ordering, by brute force over terminal starts and extensions."""
    nb = {f: set(spec.neighbours(f)) for f in spec.ids}
    out = []

    def rec(order, placed):
        if len(order) == spec.n:
            out.append(tuple(order))
            return
        for f in spec.ids:
            if f not in placed and len(nb[f] & placed) == 1:
                rec(order + [f], placed | {f})

    for f in spec.ids:
        if len(nb[f]) <= 1:
            rec([f], {f})
    return out


@st.composite
def cers_specs(draw, max_faces=6, sizes=(4, 6, 8, 10)):
    """Random valid specs grown one terminal face at a time."""
    n = draw(st.integers(1, max_faces))
    spec = CersSpec((FaceSpec("F1", draw(st.sampled_from(sizes))),))
    for k in range(2, n + 1):
        options = []
        for face in spec.ids:
            for pos in free_positions(spec, face):
                if spec.by_id[face].parent is not None and pos == 0:
                    continue
                options.append((face, pos))
        face, pos = draw(st.sampled_from(options))
        size = draw(st.sampled_from(sizes))
        spec = CersSpec(spec.faces + (FaceSpec(f"F{k}", size, face, pos),))
    if draw(st.booleans()):
        spec = normalize_ids(spec)
    return spec


def naive_vertex_degrees(spec: CersSpec) -> dict[int, int]:
    """Glue the faces without any validation and count vertex degrees."""
    rings = {}
    edges = set()
    nv = 0
    pending = list(spec.faces)
    while pending:
        f = next(x for x in pending if x.parent is None or x.parent in rings)
        pending.remove(f)
        if f.parent is None:
            ring = list(range(nv, nv + f.size))
            nv += f.size
        else:
            pv = rings[f.parent]
            p = f.parent_edge_index
            ring = [pv[(p + 1) % len(pv)], pv[p]] + list(range(nv, nv + f.size - 2))
            nv += f.size - 2
        rings[f.id] = ring
        for i in range(f.size):
            edges.add(frozenset((ring[i], ring[(i + 1) % f.size])))
    deg = {}
    for e in edges:
        for v in e:
            deg[v] = deg.get(v, 0) + 1
    return deg
