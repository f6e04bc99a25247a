# SPDX-License-Identifier: MIT
"""Partial ordering of discretized ill-posed operators.

Thin python layer over the compiled core: operator gallery builders,
singular-spectrum analysis, factorization witnesses, range-inclusion and
regularization diagnostics, and multiplier comparison.
"""

from _illpose import (  # noqa: F401
    DecayFit,
    DouglasEstimate,
    FactorizationWitness,
    FitModel,
    GeneratorFamily,
    GridSpec,
    IndexRange,
    MultiplierSpec,
    NumericalFailure,
    OperatorMatrix,
    OrderingVerdict,
    PolarDecomposition,
    ProbeReport,
    QuotientReport,
    RegularizationProfile,
    Relation,
    SpectrumComparison,
    SpectrumResult,
    Trend,
    CodimReport,
    build_embedding_surrogate,
    build_gallery,
    build_hausdorff,
    build_integration,
    build_mixed_integration,
    build_multiplication,
    build_witness,
    codim_lemma_check,
    compare_spectra,
    compute_spectrum,
    default_alpha_grid,
    default_window,
    dichotomy_probe,
    douglas_constant,
    fit_decay,
    hausdorff_composition_singular_values,
    integration_legendre_singular_values,
    left_inverse_ratio_probe,
    make_multiplier,
    pair_verdict,
    parse_generator,
    pointwise_dichotomy,
    polar_absolute,
    quotient_verdict,
    run_experiment_file,
    verdict_from_comparison,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "1.0.0"
