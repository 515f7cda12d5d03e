"""Counterexamples to phase retrieval from STFT magnitudes on lattices and
parallel lines, with the numerical machinery to build and verify them."""

from .errors import (AsymmetricGrid, ConfigError, DegenerateInput, GridMismatch, GridMultipleViolation,
                     InvalidCoefficients, NonRealWindow, NotEmbeddable, OrderOverflow, PhaselessError,
                     TruncationBudgetExceeded, UnsupportedWindow)
from .numerics import (DEFAULT_GRID, Grid, Signal, ToleranceProfile, WindowSpec, inner_product,
                       l2_norm, sample_analytic)
from .operators import (SpectrogramSamples, TFPoint, check_lemma21, fourier, inverse_fourier,
                        modulate, reflect, stft, stft_batch, stft_grid, stft_values, translate)
from .frft import (FrftOrder, HermiteBasis, check_rotation_property, frac_shift,
                   frac_shift_closed_form, frft, hermite_coeffs, hermite_eval)
from .sequences import (CoefficientSequence, classify_ell2O, classify_hermitian,
                        conjugate_partner, line_check)
from .lattice import (Lattice, LineFamily, RationalDependence, detect_rational_dependence,
                      lattice_in_line_family, lattice_points_in_box, line_points,
                      superlattice_embed)
from .constructions import (CounterexamplePair, SIConfig, build_pair, build_real_pair,
                            gaussian_oracle_pair, realness_lemma_check, sample_cone, synthesize)
from .report import VerificationReport
from .verification import (PeriodizationDiagnostic, operator_identity_suite,
                           periodization_diagnostic, phase_distance, verify_equal_on_points,
                           verify_field, verify_pair)
from .io import (FieldOutput, compute_field, emit_field_csv, emit_heatmap_pgm, emit_report_json,
                 load_report_json)

__version__ = "0.1.0"

__all__ = [
    "AsymmetricGrid",
    "CoefficientSequence",
    "ConfigError",
    "CounterexamplePair",
    "DEFAULT_GRID",
    "DegenerateInput",
    "FieldOutput",
    "FrftOrder",
    "Grid",
    "GridMismatch",
    "GridMultipleViolation",
    "HermiteBasis",
    "InvalidCoefficients",
    "Lattice",
    "LineFamily",
    "NonRealWindow",
    "NotEmbeddable",
    "OrderOverflow",
    "PeriodizationDiagnostic",
    "PhaselessError",
    "RationalDependence",
    "SIConfig",
    "Signal",
    "SpectrogramSamples",
    "TFPoint",
    "ToleranceProfile",
    "TruncationBudgetExceeded",
    "UnsupportedWindow",
    "VerificationReport",
    "WindowSpec",
    "build_pair",
    "build_real_pair",
    "check_lemma21",
    "check_rotation_property",
    "classify_ell2O",
    "classify_hermitian",
    "compute_field",
    "conjugate_partner",
    "detect_rational_dependence",
    "emit_field_csv",
    "emit_heatmap_pgm",
    "emit_report_json",
    "fourier",
    "frac_shift",
    "frac_shift_closed_form",
    "frft",
    "gaussian_oracle_pair",
    "hermite_coeffs",
    "hermite_eval",
    "inner_product",
    "inverse_fourier",
    "l2_norm",
    "lattice_in_line_family",
    "lattice_points_in_box",
    "line_check",
    "line_points",
    "load_report_json",
    "modulate",
    "operator_identity_suite",
    "periodization_diagnostic",
    "phase_distance",
    "realness_lemma_check",
    "reflect",
    "sample_analytic",
    "sample_cone",
    "stft",
    "stft_batch",
    "stft_grid",
    "stft_values",
    "superlattice_embed",
    "synthesize",
    "translate",
    "verify_equal_on_points",
    "verify_field",
    "verify_pair",
]

