"""Cohesion networks from generalized partitioned local depth.

Pipelines turn distances, repeated events or noisy 1-D measurements into
relevance/support arrays ``(R, Q)``; :func:`cohesion` reduces those to the
cohesion matrix whose mutual entries define the strong-tie graph.
"""

__version__ = "0.1.0"

from .classical import (check_dissimilarity, classical_cohesion, euclidean_distances, local_focus,
                        relevance_from_distances, support_from_distances)
from .combine import combine_distances, combine_triplet_arrays, edge_set_jaccard, normalize_weights
from .core import (DENSE_CAP, Role, TripletArray, Violation, cohesion, conservation_residual,
                   local_depths, local_distribution, random_valid_arrays, threshold_bound,
                   threshold_exact, validate_arrays)
from .errors import (ConfigError, ConservationError, DimensionError, IngestError, InvalidPairError,
                     PaldError, ValidationError)
from .event import EventSet, EventTable, competitiveness, event_arrays, event_triplet, signed_differential
from .graph import CohesionGraph, export, layout, mutual_cohesion, read_edge_csv, read_json, strong_graph
from .structure import (Check, Partition, concentration_profile, equivalent_ordinal_structure,
                        generate_concentrated_instance, generate_separated_instance, is_concentrated,
                        is_sufficiently_separated)
from .uncertain import (UncertainPoints1D, epsilon_sweep, interval_relevance, interval_support,
                        sweep_records, uncertain_arrays, uncertain_arrays_mc, uncertain_triplet_1d)
