"""Decision-theoretic evaluation of binary risk prediction models.

Thin Python layer over the C++ core: weighted Brier scores and their
miscalibration/discrimination/uncertainty decomposition, cost-weighted
misclassification loss, net benefit, the H measure, calibration tests,
and asymptotic/bootstrap confidence intervals.
"""

from __future__ import annotations

import json as _json

from ._riskeval import (
    AlignmentError,
    BinormalDesign,
    CsvParseError,
    DegenerateDataError,
    ValidationSet,
    WeightSpec,
    apply_logit_shift,
    auc,
    bayes_risk,
    bootstrap_ci,
    calibration_bins,
    cost_loss,
    cost_loss_point,
    cutoff_from_costs,
    decision_curve,
    decompose,
    divergence,
    fit_logistic,
    generate_misclassified,
    generate_set_a,
    generate_set_b,
    h_measure,
    ipa,
    net_benefit_opt_in,
    net_benefit_opt_out,
    paired_bootstrap_ci,
    read_validation_csv,
    roc_curve,
    scaled_weighted_brier,
    spiegelhalter_z,
    spiegelhalter_z_weighted,
    var_weighted_brier,
    var_weighted_brier_calibrated,
    var_weighted_brier_null,
    var_weighted_brier_null_marginal,
    weighted_brier,
    weighted_brier_calibrated,
    weighted_brier_calibrated_ci,
    weighted_brier_ci,
    weighted_loss,
    weighted_loss_prob,
)
from ._riskeval import evaluate_json as _evaluate_json
from ._riskeval import compare_json as _compare_json

__version__ = "0.1.0"


def evaluate(data, weights=(), cutoffs=(), bins=10, bootstrap=0, seed=0,
             level=0.95, threads=1):
    """Full evaluation report for one model, as a nested dict.

    ``weights`` are weight-function specs like ``"uniform"``, ``"beta:2,5"``,
    ``"point:0.3"`` or ``"mix:0.5*uniform+0.5*beta:2,5"``; ``cutoffs`` are
    decision thresholds in (0, 1).  ``bootstrap`` > 0 attaches percentile
    confidence intervals from that many shared-resample replicates
    (cluster bootstrap when the dataset carries cluster ids).
    """
    return _json.loads(_evaluate_json(data, list(weights), list(cutoffs),
                                      bins, bootstrap, seed, level, threads))


def compare(model_a, model_b, weights=(), cutoffs=(), bootstrap=0, seed=0,
            level=0.95, threads=1):
    """Paired comparison (a minus b) of two models scored on the same rows."""
    return _json.loads(_compare_json(model_a, model_b, list(weights),
                                     list(cutoffs), bootstrap, seed, level,
                                     threads))


__all__ = [
    "AlignmentError",
    "BinormalDesign",
    "CsvParseError",
    "DegenerateDataError",
    "ValidationSet",
    "WeightSpec",
    "apply_logit_shift",
    "auc",
    "bayes_risk",
    "bootstrap_ci",
    "calibration_bins",
    "compare",
    "cost_loss",
    "cost_loss_point",
    "cutoff_from_costs",
    "decision_curve",
    "decompose",
    "divergence",
    "evaluate",
    "fit_logistic",
    "generate_misclassified",
    "generate_set_a",
    "generate_set_b",
    "h_measure",
    "ipa",
    "net_benefit_opt_in",
    "net_benefit_opt_out",
    "paired_bootstrap_ci",
    "read_validation_csv",
    "roc_curve",
    "scaled_weighted_brier",
    "spiegelhalter_z",
    "spiegelhalter_z_weighted",
    "var_weighted_brier",
    "var_weighted_brier_calibrated",
    "var_weighted_brier_null",
    "var_weighted_brier_null_marginal",
    "weighted_brier",
    "weighted_brier_calibrated",
    "weighted_brier_calibrated_ci",
    "weighted_brier_ci",
    "weighted_loss",
    "weighted_loss_prob",
]
