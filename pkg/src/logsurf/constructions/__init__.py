"""Executable versions of the volume constructions and bounds."""

from logsurf.constructions.bounds import (
    BOUNDS,
    BoundEntry,
    bounds_table,
    cartier_multiples_C2,
    enumerate_standard_sums,
    lower_bound,
)
from logsurf.constructions.examples import (
    Construction,
    VolumeSequence,
    example_even,
    example_odd,
    iterated_sequence,
    iterated_sweep,
    nklt_blowup_sequence,
    nklt_volume_sequence,
    perturb_coefficients,
    standard_approach,
)

__all__ = [
    "BOUNDS", "BoundEntry", "bounds_table", "cartier_multiples_C2", "enumerate_standard_sums",
    "lower_bound", "Construction", "VolumeSequence", "example_even", "example_odd",
    "iterated_sequence", "iterated_sweep", "nklt_blowup_sequence", "nklt_volume_sequence",
    "perturb_coefficients", "standard_approach",
]
