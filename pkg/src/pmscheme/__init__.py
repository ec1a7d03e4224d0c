"""Exact computations on the association scheme of perfect matchings of K_2n.

Everything downstream of counting is verified against an independent route:
sphere sizes against exhaustive enumeration, spherical functions against
dense spectra, projection formulas against the direct averaging definition.
"""

from .bounds import (
    SpectralSummary,
    cross_ratio_bound,
    ratio_bound,
    stability_distance_bound,
    summary_from_eigenvalues,
    summary_from_scheme,
    trace_identity_check,
)
from .characters import CharacterTable, character, character_table
from .families import (
    Family,
    canonical_family,
    containment_check,
    distance_to_U,
    h_family,
    is_intersecting,
    is_t_intersecting,
    key_lemma_scan,
    project,
    project_restriction_form,
    restriction,
    restriction_product_check,
)
from .graphs import (
    MatchingGraph,
    block_structure_check,
    dense_spectrum,
    diameter,
    matching_graph,
    maximum_independent_sets,
    near_perfect_graph,
)
from .isoperimetry import (
    PartitionSequence,
    mcdiarmid_lower_bound,
    mcdiarmid_threshold,
    neighborhood,
    nice_partition_sequence,
    verify_mcdiarmid,
)
from .matchings import (
    PerfectMatching,
    Permutation,
    apply_permutation,
    count_matchings,
    cycle_type,
    derangement_count_recurrence,
    derangement_count_sieve,
    double_factorial,
    enumerate_matchings,
    identity_matching,
    rank_matching,
    sphere_members,
    sphere_size,
    unrank_matching,
)
from .partitions import (
    Partition,
    branch_down,
    dimension,
    double,
    enumerate_partitions,
    even_census_below,
    fixed_point_count,
    z_factor,
)
from .spherical import (
    SchemeTable,
    coset_representative,
    derangement_eigenvalue,
    scheme_table,
    spherical_value,
    zonal_closed_form,
)

__version__ = "0.1.0"
