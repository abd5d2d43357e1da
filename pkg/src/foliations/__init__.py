"""Generic foliations on surfaces glued from slit tori.

Exact streets, the genus-2 broken isometry and its coding, free-group word
invariants and building-data checks, all cross-checked by a tracing oracle.
"""

from .errors import FoliationError
from .exact_field import Scalar
from .torus_flow import FlowTorus, StreetSet, continued_fraction, m_cut_euclid, minimal_pairs, street_set
from .genus2_glue import broken_isometry_map, five_partition, glue, phi_table

__all__ = [
    "FoliationError",
    "Scalar",
    "FlowTorus",
    "StreetSet",
    "minimal_pairs",
    "street_set",
    "m_cut_euclid",
    "continued_fraction",
    "glue",
    "five_partition",
    "broken_isometry_map",
    "phi_table",
]

__version__ = "0.1.0"
