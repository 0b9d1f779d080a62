import pytest
from hypothesis import given, settings

from cers.matchings import (
    LinkConsistencyError,
    PerfectMatching,
    binary_representation,
    enumerate_perfect_matchings,
    has_M_link,
    is_alternating,
    link_edges,
    maximal_resonant_sets,
)
from cers.model import WellOrdering, build_plane_graph, edge_distance_oracle
from cers.molecules import anthracene, hexagon, naphthalene, phenanthrene

from helpers import cers_specs, matchings_by_subsets


@pytest.mark.parametrize(
    "spec, count",
    [(hexagon(), 2), (naphthalene(), 3), (anthracene(), 4), (phenanthrene(), 5)],
)
def test_matching_counts(spec, count):
    g = build_plane_graph(spec)
    found = enumerate_perfect_matchings(g)
    assert len(found) == count
    assert {frozenset(m.edges) for m in found} == matchings_by_subsets(g)


@settings(max_examples=40, deadline=None)
@given(cers_specs(max_faces=3, sizes=(4, 6, 8)))
def test_enumeration_matches_subset_oracle(spec):
    g = build_plane_graph(spec)
    found = enumerate_perfect_matchings(g)
    assert len(found) == len(set(found))
    assert {frozenset(m.edges) for m in found} == matchings_by_subsets(g)


def test_enumeration_order_is_sorted():
    found = enumerate_perfect_matchings(build_plane_graph(phenanthrene()))
    assert [m.edges for m in found] == sorted(m.edges for m in found)


def test_no_perfect_matching_gives_empty_list():
    class Path3:
        num_vertices = 3
        edges = ((0, 1), (1, 2))
        incident = ((0,), (0, 1), (1,))

    assert enumerate_perfect_matchings(Path3()) == []


# -- links -----------------------------------------------------------------


def test_naphthalene_links():
    g = build_plane_graph(naphthalene())
    shared = g.common_edge("F1", "F2")
    a = link_edges(g, "F1", "F2")
    b = link_edges(g, "F2", "F1")
    assert set(a) <= set(g.face_cycles["F1"]) and shared not in a
    assert not set(a) & set(b)
    for e in a + b:
        assert edge_distance_oracle(g, e, shared) == 1


def test_link_edges_need_adjacent_faces():
    g = build_plane_graph(anthracene())
    with pytest.raises(ValueError):
        link_edges(g, "F1", "F3")


def test_has_link_true_and_false():
    g = build_plane_graph(naphthalene())
    ms = enumerate_perfect_matchings(g)
    link = set(link_edges(g, "F1", "F2"))
    with_link = [m for m in ms if link <= set(m.edges)]
    without = [m for m in ms if not link & set(m.edges)]
    assert with_link and without
    assert all(has_M_link(g, "F1", "F2", m) for m in with_link)
    assert not any(has_M_link(g, "F1", "F2", m) for m in without)


def test_half_link_is_a_consistency_error():
    g = build_plane_graph(naphthalene())
    a, _ = link_edges(g, "F1", "F2")
    with pytest.raises(LinkConsistencyError):
        has_M_link(g, "F1", "F2", PerfectMatching.from_edges([a]))


@settings(max_examples=60, deadline=None)
@given(cers_specs(max_faces=5))
def test_link_dichotomy_and_exclusivity(spec):
    g = build_plane_graph(spec)
    for m in enumerate_perfect_matchings(g):
        for f, h in g.shared_edge:
            for x, y in ((f, h), (h, f)):
                hits = sum(e in m for e in link_edges(g, x, y))
                assert hits in (0, 2)
            assert not (has_M_link(g, f, h, m) and has_M_link(g, h, f, m))


# -- alternating faces and resonant sets ----------------------------------


def test_hexagon_matchings_alternate():
    g = build_plane_graph(hexagon())
    assert all(is_alternating(g, "F1", m) for m in enumerate_perfect_matchings(g))


def test_naphthalene_shared_edge_matching():
    g = build_plane_graph(naphthalene())
    shared = g.common_edge("F1", "F2")
    (m,) = [m for m in enumerate_perfect_matchings(g) if shared in m]
    assert is_alternating(g, "F1", m) and is_alternating(g, "F2", m)


def test_face_without_matched_edges_is_not_alternating():
    g = build_plane_graph(hexagon())
    assert not is_alternating(g, "F1", PerfectMatching(0))


def test_resonant_sets_of_hexagon():
    (s,) = maximal_resonant_sets(build_plane_graph(hexagon()))
    assert s.faces == {"F1"}


def test_resonant_sets_of_phenanthrene():
    g = build_plane_graph(phenanthrene())
    sets = maximal_resonant_sets(g)
    assert sorted(sorted(s.faces) for s in sets) == [["F1", "F3"], ["F2"]]
    for s in sets:
        assert all(is_alternating(g, f, s.witness) for f in s.faces)


@settings(max_examples=40, deadline=None)
@given(cers_specs(max_faces=5))
def test_resonant_sets_are_independent_and_witnessed(spec):
    g = build_plane_graph(spec)
    adjacent = {frozenset(p) for p in g.shared_edge}
    for s in maximal_resonant_sets(g):
        assert s.faces
        assert not any(frozenset((a, b)) in adjacent for a in s.faces for b in s.faces)
        assert all(is_alternating(g, f, s.witness) for f in s.faces)


def test_binary_representation():
    wo = WellOrdering(("F1", "F2", "F3"))
    assert binary_representation([], wo) == "000"
    assert binary_representation({"F1", "F3"}, wo) == "101"
    assert binary_representation({"F2"}, wo) == "010"
    with pytest.raises(ValueError):
        binary_representation({"F9"}, wo)
