"""Dispersion relations and spectral solutions of linear peridynamics in 1, 2 and 3 dimensions."""

from .dispersion import (
    DispersionTable,
    MaterialParams,
    dispersion_table,
    group_velocity,
    high_freq_closed_form,
    high_freq_coefficient,
    high_freq_quadrature,
    large_scale_group_velocity,
    low_freq_coefficient,
    omega,
    omega_squared,
)
from .initial_conditions import (
    MultipoleSet,
    RadialProfile,
    RadialSpectrum,
    dipole_field,
    dipole_initial_condition,
    gaussian_profile,
    gaussian_spectrum,
    multipole_decompose,
    radial_spectrum,
)
from .solver import (
    EvolutionRequest,
    FieldSnapshot,
    anisotropic_solution_3d,
    evolve_mode,
    field_snapshot,
    radial_solution,
)

__version__ = "0.1.0"
