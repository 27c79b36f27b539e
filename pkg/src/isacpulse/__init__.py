"""Nyquist pulse-shaping design that suppresses random-frame ACF sidelobes."""

from .acf_stats import (
    AcfStatistics,
    AlphaCoefficients,
    alpha_coefficients,
    self_cross_variances,
    theoretical_islr,
    theoretical_stats,
)
from .constellation import Constellation, draw_frame, from_name, make_psk, make_qam
from .grid import GridSpec
from .optimizer import (
    DesignResult,
    QpProblem,
    build_constraints,
    build_problem,
    build_q,
    sidelobe_region,
    solve,
)
from .spectrum import (
    DiscreteAcf,
    SpectrumVector,
    fold_spectrum,
    rrc_spectrum,
    spectrum_to_acf,
    spectrum_to_pulse,
)

__all__ = [
    "AcfStatistics",
    "AlphaCoefficients",
    "Constellation",
    "DesignResult",
    "DiscreteAcf",
    "GridSpec",
    "QpProblem",
    "SpectrumVector",
    "alpha_coefficients",
    "build_constraints",
    "build_problem",
    "build_q",
    "draw_frame",
    "fold_spectrum",
    "from_name",
    "make_psk",
    "make_qam",
    "rrc_spectrum",
    "self_cross_variances",
    "sidelobe_region",
    "solve",
    "spectrum_to_acf",
    "spectrum_to_pulse",
    "theoretical_islr",
    "theoretical_stats",
]

__version__ = "0.1.0"
