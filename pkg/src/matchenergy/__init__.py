"""Matching polynomials, matching energy and the empirical matching distribution."""

from .emd import EmpiricalDistribution
from .errors import (
    CapacityError,
    DomainError,
    MatchEnergyError,
    NotFoundError,
    NumericError,
    ParseError,
    ResourceError,
)
from .graph import (
    Graph,
    complete,
    components,
    cycle,
    delete_edge,
    gen_gnp,
    path,
    random_tree,
    read_edge_list,
    star,
    write_edge_list,
)
from .mpoly import (
    MatchingPolynomial,
    closed_form,
    complete_by_recurrence,
    counts_edge_recursion,
    counts_forest,
    counts_subset_dp,
    matching_polynomial,
)
from .rng import SeedSpec
from .roots import (
    NormalizedSpectrum,
    RootSpectrum,
    complete_spectrum_fast,
    energy_of_graph,
    forest_spectrum_fast,
    matching_energy,
    matching_roots,
    normalize,
    spectrum_of_graph,
)

__version__ = "0.1.0"
