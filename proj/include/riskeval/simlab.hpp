#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "riskeval/dataset.hpp"

namespace riskeval {

// Two-class score model: X | Y=1 ~ N(case_mean, case_sd^2),
// X | Y=0 ~ N(control_mean, control_sd^2), P(Y=1) = prevalence.
struct BinormalDesign {
  double prevalence = 0.5;
  double case_mean = 1.0;
  double case_sd = 1.0;
  double control_mean = 0.0;
  double control_sd = 1.0;
};

// Posterior P(Y = 1 | X = x) under the design, evaluated in log space so
// extreme scores stay stable.
double bayes_risk(double x, const BinormalDesign& design);

// Piecewise miscalibration on the logit scale: risks at or above the
// threshold move by shift_above, the rest by shift_below. Monotone in the
// input within each branch and stable at the endpoints 0 and 1.
struct LogitShift {
  double threshold = 0.5;
  double shift_above = 0.0;
  double shift_below = 0.0;
};
double apply_logit_shift(double risk, const LogitShift& shift);

// Benchmark "Set A": equal-AUC designs that differ in where discrimination
// lives. One Bernoulli(1/2) outcome per row; model 1 scores from
// N(2, 2^2) vs N(0, 1), model 2 from N(1, 0.5^2) vs N(0, 1), both converted
// to risks by the Bayes formula (hence perfectly calibrated); model 3 is
// model 2 distorted by a +/-1 logit shift around risk 0.3.
struct SetAData {
  ValidationSet model1;
  ValidationSet model2;
  ValidationSet model3;
};
SetAData generate_set_a(std::size_t n, std::uint64_t seed);

// Benchmark "Set B": one calibrated model (N(1,1) vs N(0,1) scores, Bayes
// risks) and two one-sided distortions of it — +1 logit shift at or above
// risk 0.5 ("overfit high"), -1 logit shift below 0.5 ("overfit low").
struct SetBData {
  ValidationSet true_model;
  ValidationSet overfit_high;
  ValidationSet overfit_low;
};
SetBData generate_set_b(std::size_t n, std::uint64_t seed);

// Longitudinal panel with a misclassified surrogate outcome. Each patient
// contributes `visits` rows sharing a patient-level covariate x1; x2 varies
// by visit and x3 is pure noise. The true event probability is
// expit(-1.6 + 1.2 x1 + 0.7 x2); the surrogate S flips cases to controls
// with probability flip_case_rate and controls to cases with
// flip_control_rate. Rows are grouped by patient, and the flip-noise stream
// is keyed by the flip rates, so panels generated from the same seed with
// different rates share covariates and true outcomes.
struct MisclassifiedPanel {
  std::vector<std::array<double, 3>> covariates;  // (x1, x2, x3) per row
  std::vector<double> true_risks;
  std::vector<std::int8_t> outcomes;    // Y
  std::vector<std::int8_t> surrogates;  // S
  std::vector<std::int64_t> patients;   // cluster id per row

  std::size_t size() const noexcept { return true_risks.size(); }
};
MisclassifiedPanel generate_misclassified(std::size_t n_patients,
                                          std::size_t visits,
                                          std::uint64_t seed,
                                          double flip_case_rate,
                                          double flip_control_rate);

// Small dense logistic regression (IRLS/Newton), enough to refit the panel
// models above. Features are row-major with n_features per row; the fitted
// coefficient vector stores the intercept first.
struct LogisticModel {
  std::vector<double> coef;
  double predict(std::span<const double> features_row) const;
  std::vector<double> predict_many(std::span<const double> features,
                                   std::size_t n_features) const;
};
LogisticModel fit_logistic(std::span<const double> features,
                           std::size_t n_features,
                           std::span<const std::int8_t> targets,
                           int max_iter = 50, double tol = 1e-10);

}  // namespace riskeval
