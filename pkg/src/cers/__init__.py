"""Resonance graphs of catacondensed even ring systems (CERS)."""

from .coding import CodeSet, algorithm1_codes, code_of_matching, matching_of_code
from .equivalence import (
    apply_transformation1,
    canonical_form,
    find_code_collision_counterexample,
    is_regular_cers,
    parity_signature,
    resonantly_equivalent,
)
from .generate import enumerate_cers, enumerate_isomorphism_classes
from .matchings import enumerate_perfect_matchings, maximal_resonant_sets
from .model import (
    CersSpec,
    FaceSpec,
    build_plane_graph,
    inner_dual,
    validate_spec,
    well_order,
)
from .resonance import (
    graphs_isomorphic,
    is_daisy_cube,
    is_median_graph,
    resonance_from_codes,
    resonance_from_matchings,
)

__version__ = "0.1.0"
