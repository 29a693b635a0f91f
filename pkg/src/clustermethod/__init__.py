"""Consecutive pattern avoidance in permutations via the cluster method."""
from .analytics import dominance_report, growth_constant
from .classify import fingerprint, partition, verify_pair
from .cluster import (
    ClusterPolynomial,
    cluster_polynomial,
    cluster_polynomials,
    dense_cluster_count,
    enumerate_layouts,
    fuss_catalan,
    nonoverlapping_d,
    rec1423,
    rec2143,
)
from .config import override, settings
from .errors import ClusterMethodError, InsufficientTerms, InvalidInput, ResourceLimit
from .perm import (
    PatternSet,
    Permutation,
    brute_avoiders,
    brute_distribution,
    occurrences,
    overlap_set,
    parse_pattern,
    reduce,
)
from .poset import ClusterPoset, OccurrenceLayout, build_cluster_poset, count_linear_extensions, longest_chain
from .series.power import EgfSeries, OgfSeries, avoiders, omega_series, p_series

__version__ = "0.1.0"
