"""Proportion, temperament and synchronization: from just ratios to circle maps."""

from harmonia.exactmath import (
    PHI,
    ContinuedFraction,
    GoldenConstant,
    Ratio,
    are_farey_adjacent,
    continued_fraction_of,
    convergents,
    farey_sequence,
    mediant,
)
from harmonia.means import (
    MeanTriple,
    OrbitGeometry,
    arithmetic_mean,
    geometric_mean,
    harmonic_mean,
    is_kepler_mean_triangle,
    kepler_orbit_means,
    proportion_identity_check,
)
from harmonia.scales import (
    JUST_INTERVALS,
    Pitch,
    Scale,
    equal_temperament,
    golden_scale_12,
    octave_complement,
    pythagorean_core,
    to_cents,
    zarlino_major,
    zarlino_minor,
)
from harmonia.temperament import TemperamentReport, sigma, sigma_sweep

__version__ = "0.1.0"
