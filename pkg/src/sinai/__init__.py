"""Exact combinatorics and simulation toolkit for random-walk area processes.

Counts excursions of the area process three independent ways, exposes the
cyclic-shift bijection between marked excursions and modular residue
subsets, evaluates the associated limit constants to high precision, and
estimates the probabilities that exact tables cannot reach by seeded Monte
Carlo.  See the README for the command-line interface.
"""

from .asymptotics import (
    Enclosure,
    LimitConstants,
    lambda_enclosure,
    levy_checks,
    limit_constants,
)
from .bijection import MarkedExcursion, ResidueSubset, enumerate_image, upsilon, upsilon_inv
from .errors import ResourceGuardError
from .excursion_counts import (
    CountTable,
    SeriesCoefficients,
    excursion_count_bruteforce,
    excursion_count_dp,
    excursion_count_table_dp,
    excursion_count_table_recurrence,
    excursion_series_check,
    irreducible_table,
    marked_count_bruteforce,
    xi_table,
    zero_area_bridge_count,
)
from .lattice_paths import (
    DownTimeSet,
    ExcursionClass,
    Walk,
    area_from_down_times,
    classify,
    down_times,
    irreducible_decomposition,
    is_majorized,
    standard_excursion,
    walk_from_down_times,
)
from .montecarlo import (
    Estimate,
    estimate_atau_zero,
    estimate_bridge_persistence,
    estimate_sinai_persistence,
)
from .sterneck import (
    SubsetCountQuery,
    binomial,
    brute_count,
    divisors,
    moebius,
    multiset_count_mod,
    residue_subset_count,
    totient,
)

__version__ = "0.1.0"

__all__ = [
    "CountTable",
    "DownTimeSet",
    "Enclosure",
    "Estimate",
    "ExcursionClass",
    "LimitConstants",
    "MarkedExcursion",
    "ResidueSubset",
    "ResourceGuardError",
    "SeriesCoefficients",
    "SubsetCountQuery",
    "Walk",
    "area_from_down_times",
    "binomial",
    "brute_count",
    "classify",
    "divisors",
    "down_times",
    "enumerate_image",
    "estimate_atau_zero",
    "estimate_bridge_persistence",
    "estimate_sinai_persistence",
    "excursion_count_bruteforce",
    "excursion_count_dp",
    "excursion_count_table_dp",
    "excursion_count_table_recurrence",
    "excursion_series_check",
    "irreducible_decomposition",
    "irreducible_table",
    "is_majorized",
    "lambda_enclosure",
    "levy_checks",
    "limit_constants",
    "marked_count_bruteforce",
    "moebius",
    "multiset_count_mod",
    "residue_subset_count",
    "standard_excursion",
    "totient",
    "upsilon",
    "upsilon_inv",
    "walk_from_down_times",
    "xi_table",
    "zero_area_bridge_count",
]
