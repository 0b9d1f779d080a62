import pytest
from hypothesis import given, settings

from cers.coding import (
    CodeSet,
    algorithm1_codes,
    algorithm1_prefixes,
    code_map,
    code_of_matching,
    matching_of_code,
    zero_pad_closure_holds,
)
from cers.matchings import PerfectMatching, enumerate_perfect_matchings, has_M_link
from cers.model import (
    CersError,
    WellOrdering,
    build_plane_graph,
    terminal_faces,
    well_order,
)
from cers.molecules import anthracene, chain, hexagon, naphthalene, phenanthrene

from helpers import all_well_orderings, cers_specs


def codes(spec, root=None):
    return set(algorithm1_codes(spec, well_order(spec, root)).codes)


def test_single_face():
    assert codes(hexagon()) == {"0", "1"}


def test_naphthalene_initial_set():
    assert codes(naphthalene()) == {"00", "01", "10"}


def test_anthracene():
    assert codes(anthracene(), "F1") == {"000", "010", "100", "011"}


def test_phenanthrene():
    assert codes(phenanthrene(), "F1") == {"000", "010", "100", "001", "101"}


def test_invalid_ordering_rejected():
    with pytest.raises(CersError):
        algorithm1_codes(anthracene(), WellOrdering(("F2", "F1", "F3")))


@pytest.mark.parametrize(
    "spec, expected",
    [
        (naphthalene(), {"00", "01", "10"}),
        (anthracene(), {"000", "010", "100", "011"}),
        (phenanthrene(), {"000", "010", "100", "001", "101"}),
    ],
)
def test_codes_of_matchings_are_bijective(spec, expected):
    wo = well_order(spec, "F1")
    cmap = code_map(spec, wo)
    assert len(set(cmap.values())) == len(cmap)
    assert set(cmap.values()) == expected


def test_lone_face_convention():
    spec = hexagon()
    g = build_plane_graph(spec)
    wo = well_order(spec)
    for m in enumerate_perfect_matchings(g):
        expected = "1" if g.face_cycles["F1"][0] in m else "0"
        assert code_of_matching(spec, g, wo, m) == expected


def test_not_a_matching():
    spec = naphthalene()
    with pytest.raises(CersError):
        code_of_matching(spec, build_plane_graph(spec), well_order(spec), PerfectMatching(1))


# -- matching_of_code ------------------------------------------------------


def test_naphthalene_01_has_link_from_second_face():
    spec = naphthalene()
    g = build_plane_graph(spec)
    wo = well_order(spec, "F1")
    m = matching_of_code(spec, wo, "01")
    assert has_M_link(g, "F2", "F1", m)
    assert not has_M_link(g, "F1", "F2", m)


def test_all_zero_code_has_no_links():
    spec = phenanthrene()
    g = build_plane_graph(spec)
    wo = well_order(spec, "F1")
    m = matching_of_code(spec, wo, "000")
    for f, h in g.shared_edge:
        assert not has_M_link(g, f, h, m)
        assert not has_M_link(g, h, f, m)


def test_code_round_trip():
    spec = phenanthrene()
    g = build_plane_graph(spec)
    wo = well_order(spec)
    for x in algorithm1_codes(spec, wo):
        assert code_of_matching(spec, g, wo, matching_of_code(spec, wo, x)) == x


def test_unknown_code():
    spec = anthracene()
    with pytest.raises(CersError):
        matching_of_code(spec, well_order(spec, "F1"), "001")


# -- central oracle test ---------------------------------------------------


@settings(max_examples=80, deadline=None)
@given(cers_specs(max_faces=6))
def test_algorithm1_matches_brute_force_for_every_terminal_root(spec):
    matchings = enumerate_perfect_matchings(build_plane_graph(spec))
    for root in terminal_faces(spec):
        wo = well_order(spec, root)
        cmap = code_map(spec, wo, matchings)
        assert len(set(cmap.values())) == len(matchings)
        assert set(cmap.values()) == set(algorithm1_codes(spec, wo).codes)


@settings(max_examples=25, deadline=None)
@given(cers_specs(max_faces=5, sizes=(4, 6, 8)))
def test_algorithm1_matches_brute_force_for_every_well_ordering(spec):
    matchings = enumerate_perfect_matchings(build_plane_graph(spec))
    for order in all_well_orderings(spec):
        wo = WellOrdering(order)
        cmap = code_map(spec, wo, matchings)
        assert len(set(cmap.values())) == len(matchings)
        assert set(cmap.values()) == set(algorithm1_codes(spec, wo).codes)


# -- zero padding ----------------------------------------------------------


def test_zero_pad_examples():
    assert zero_pad_closure_holds({"000", "010", "100", "011"})
    assert zero_pad_closure_holds({"00", "01", "10"})
    assert not zero_pad_closure_holds({"11"})


@settings(max_examples=80, deadline=None)
@given(cers_specs(max_faces=7))
def test_zero_pad_closure_on_generated(spec):
    assert zero_pad_closure_holds(algorithm1_codes(spec, well_order(spec)).codes)


# -- chain counting --------------------------------------------------------


@pytest.mark.parametrize(
    "spec",
    [anthracene(), phenanthrene(), chain([6, 8, 4, 6, 8], [3, 4, 2, 3]), chain([4] * 5, [2] * 4)],
)
def test_last_bit_one_is_minority_on_chain_prefixes(spec):
    prefixes = algorithm1_prefixes(spec, well_order(spec, "F1"))
    for r, pool in enumerate(prefixes[1:], start=2):
        ones = sum(1 for x in pool if x[-1] == "1")
        assert ones < len(pool) - ones, r


def test_prefixes_are_codes_of_subsystems():
    spec = chain([6, 8, 4, 6], [3, 4, 2])
    wo = well_order(spec, "F1")
    prefixes = algorithm1_prefixes(spec, wo)
    for r in range(1, spec.n + 1):
        from cers.model import CersSpec

        sub = CersSpec(spec.faces[:r])
        assert prefixes[r - 1] == set(code_map(sub, well_order(sub, "F1")).values())


def test_codeset_checks_lengths():
    with pytest.raises(ValueError):
        CodeSet(("01", "1"), WellOrdering(("A", "B")))
    cs = CodeSet(("10", "00", "10"), WellOrdering(("A", "B")))
    assert cs.codes == ("00", "10")
    assert cs.to_text() == "00\n10\n"
