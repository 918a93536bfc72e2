"""Orthogonal polynomials on the unit circle: Verblunsky coefficients, the
Szego recursion, Schur functions, CMV matrices, transfer matrices,
Szego asymptotics, periodic discriminants and the Szego map."""

from .errors import (
    AliasingError,
    ConvergenceError,
    NotPositiveDefinite,
    NotStrictlyInside,
    NotUnitary,
    OpucError,
    SupportOutsideInterval,
    TerminalParameter,
)
from .measure import CircleMeasure, MomentSeq, caratheodory, moments
from .poly import PowerSeries
from .recursion import (
    VerblunskySeq,
    cd_kernel,
    inverse_szego_step,
    monic,
    orthonormal,
    szego_forward,
    verblunsky_from_moments,
)
from .schur import schur_approximant, schur_parameters, schur_step
from .cmv import build_cmv, char_poly, haar_sample, paraorthogonal_zeros, phi_zeros, spectral_measure
from .transfer import ErgodicSpec, lyapunov, second_kind, transfer, weyl_residual
from .synthesis import aleksandrov, aleksandrov_average, bernstein_szego, bs_caratheodory
from .asymptotics import strong_szego_check, szego_function, szego_theorem_check, toeplitz_det
from .periodic import PeriodicSpec, band_structure, discriminant, dos_density
from .szego_map import JacobiParams, LineMeasure, geronimus_forward, geronimus_inverse, szego_map

__version__ = "0.1.0"
