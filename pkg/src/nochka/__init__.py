"""Nochka weights for hyperplanes in n-subgeneral position, in exact arithmetic."""

from .arrangement import (
    Arrangement,
    Flat,
    Hyperplane,
    check_general_position,
    check_subgeneral,
    closed_flats,
    embed_restrict_generator,
    validate,
)
from .diagram import (
    NochkaDiagram,
    WeightCertificate,
    build_diagram,
    compute_weights,
    lower_hull,
    toda_check,
    verify_certificate,
)
from .errors import (
    InsufficientHyperplanesError,
    InvalidArrangementError,
    InvariantError,
    NochkaError,
    SubgeneralPositionError,
)
from .qlinalg import Annihilator, ann_of_intersection, ann_of_sum, codim, contains, rref

__version__ = "0.1.0"
