#include "riskeval/simlab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "riskeval/rng.hpp"

namespace riskeval {

namespace {

double expit(double eta) { return 1.0 / (1.0 + std::exp(-eta)); }

double normal_log_density(double x, double mean, double sd) {
  double z = (x - mean) / sd;
  return -0.5 * z * z - std::log(sd);  // constant term cancels in ratios
}

// Stream ids for the generators; fixed so that every column of a design is
// reproducible in isolation.
constexpr std::uint64_t kOutcomeStream = 1;
constexpr std::uint64_t kScoreStream1 = 2;
constexpr std::uint64_t kScoreStream2 = 3;
constexpr std::uint64_t kPatientStream = 10;
constexpr std::uint64_t kVisitStream = 11;
constexpr std::uint64_t kNoiseStream = 12;
constexpr std::uint64_t kPanelOutcomeStream = 13;

}  // namespace

double bayes_risk(double x, const BinormalDesign& design) {
  if (!(design.prevalence > 0.0 && design.prevalence < 1.0)) {
    throw std::invalid_argument(
        "bayes_risk: prevalence must lie strictly inside (0, 1)");
  }
  if (!(design.case_sd > 0.0) || !(design.control_sd > 0.0)) {
    throw std::invalid_argument(
        "bayes_risk: standard deviations must be positive");
  }
  double eta = std::log(design.prevalence / (1.0 - design.prevalence)) +
               normal_log_density(x, design.case_mean, design.case_sd) -
               normal_log_density(x, design.control_mean, design.control_sd);
  return expit(eta);
}

double apply_logit_shift(double risk, const LogitShift& shift) {
  if (!(risk >= 0.0 && risk <= 1.0)) {
    throw std::domain_error("apply_logit_shift: risk must lie in [0, 1]");
  }
  double s = risk >= shift.threshold ? shift.shift_above : shift.shift_below;
  if (s == 0.0) return risk;
  double f = std::exp(s);
  return risk * f / (risk * f + (1.0 - risk));
}

SetAData generate_set_a(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("generate_set_a: n must be >= 1");
  const BinormalDesign design1{0.5, 2.0, 2.0, 0.0, 1.0};
  const BinormalDesign design2{0.5, 1.0, 0.5, 0.0, 1.0};
  const LogitShift distortion{0.3, 1.0, -1.0};

  CounterRng outcome_rng(seed, kOutcomeStream);
  CounterRng score1_rng(seed, kScoreStream1);
  CounterRng score2_rng(seed, kScoreStream2);

  std::vector<double> r1(n), r2(n), r3(n);
  std::vector<std::int8_t> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    bool is_case = outcome_rng.next_double() < 0.5;
    y[i] = is_case ? 1 : 0;
    double z1 = score1_rng.next_normal();
    double z2 = score2_rng.next_normal();
    double x1 = is_case ? design1.case_mean + design1.case_sd * z1
                        : design1.control_mean + design1.control_sd * z1;
    double x2 = is_case ? design2.case_mean + design2.case_sd * z2
                        : design2.control_mean + design2.control_sd * z2;
    r1[i] = bayes_risk(x1, design1);
    r2[i] = bayes_risk(x2, design2);
    r3[i] = apply_logit_shift(r2[i], distortion);
  }
  return SetAData{ValidationSet(std::move(r1), y),
                  ValidationSet(std::move(r2), y),
                  ValidationSet(std::move(r3), std::move(y))};
}

SetBData generate_set_b(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("generate_set_b: n must be >= 1");
  const BinormalDesign design{0.5, 1.0, 1.0, 0.0, 1.0};
  const LogitShift high{0.5, 1.0, 0.0};
  const LogitShift low{0.5, 0.0, -1.0};

  CounterRng outcome_rng(seed, kOutcomeStream);
  CounterRng score_rng(seed, kScoreStream1);

  std::vector<double> rt(n), rh(n), rl(n);
  std::vector<std::int8_t> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    bool is_case = outcome_rng.next_double() < 0.5;
    y[i] = is_case ? 1 : 0;
    double z = score_rng.next_normal();
    double x = is_case ? design.case_mean + design.case_sd * z
                       : design.control_mean + design.control_sd * z;
    rt[i] = bayes_risk(x, design);
    rh[i] = apply_logit_shift(rt[i], high);
    rl[i] = apply_logit_shift(rt[i], low);
  }
  return SetBData{ValidationSet(std::move(rt), y),
                  ValidationSet(std::move(rh), y),
                  ValidationSet(std::move(rl), std::move(y))};
}

MisclassifiedPanel generate_misclassified(std::size_t n_patients,
                                          std::size_t visits,
                                          std::uint64_t seed,
                                          double flip_case_rate,
                                          double flip_control_rate) {
  if (n_patients == 0 || visits == 0) {
    throw std::invalid_argument(
        "generate_misclassified: need at least one patient and one visit");
  }
  if (!(flip_case_rate >= 0.0 && flip_case_rate < 1.0) ||
      !(flip_control_rate >= 0.0 && flip_control_rate < 1.0)) {
    throw std::invalid_argument(
        "generate_misclassified: flip rates must lie in [0, 1)");
  }

  CounterRng patient_rng(seed, kPatientStream);
  CounterRng visit_rng(seed, kVisitStream);
  CounterRng noise_rng(seed, kNoiseStream);
  CounterRng outcome_rng(seed, kPanelOutcomeStream);
  // Key the flip stream by the rates: panels from the same seed share
  // covariates and outcomes, while surrogates for different rate pairs stay
  // independent.
  std::uint64_t flip_stream =
      0xF11Bull ^ CounterRng::mix(static_cast<std::uint64_t>(
                      flip_case_rate * 9007199254740992.0)) ^
      CounterRng::mix(~static_cast<std::uint64_t>(flip_control_rate *
                                                  9007199254740992.0));
  CounterRng flip_rng(seed, flip_stream);

  std::size_t n = n_patients * visits;
  MisclassifiedPanel panel;
  panel.covariates.resize(n);
  panel.true_risks.resize(n);
  panel.outcomes.resize(n);
  panel.surrogates.resize(n);
  panel.patients.resize(n);

  std::size_t row = 0;
  for (std::size_t p = 0; p < n_patients; ++p) {
    double x1 = patient_rng.next_normal();
    for (std::size_t v = 0; v < visits; ++v, ++row) {
      double x2 = visit_rng.next_normal();
      double x3 = noise_rng.next_normal();
      double risk = expit(-1.6 + 1.2 * x1 + 0.7 * x2);
      std::int8_t y = outcome_rng.next_double() < risk ? 1 : 0;
      double u = flip_rng.next_double();
      std::int8_t s = y;
      if (y == 1 && u < flip_case_rate) s = 0;
      if (y == 0 && u < flip_control_rate) s = 1;
      panel.covariates[row] = {x1, x2, x3};
      panel.true_risks[row] = risk;
      panel.outcomes[row] = y;
      panel.surrogates[row] = s;
      panel.patients[row] = static_cast<std::int64_t>(p);
    }
  }
  return panel;
}

double LogisticModel::predict(std::span<const double> features_row) const {
  if (features_row.size() + 1 != coef.size()) {
    throw std::invalid_argument(
        "LogisticModel::predict: feature count does not match fit");
  }
  double eta = coef[0];
  for (std::size_t j = 0; j < features_row.size(); ++j) {
    eta += coef[j + 1] * features_row[j];
  }
  return expit(eta);
}

std::vector<double> LogisticModel::predict_many(
    std::span<const double> features, std::size_t n_features) const {
  if (n_features + 1 != coef.size() || features.size() % n_features != 0) {
    throw std::invalid_argument(
        "LogisticModel::predict_many: feature matrix shape mismatch");
  }
  std::size_t n = features.size() / n_features;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = predict(features.subspan(i * n_features, n_features));
  }
  return out;
}

LogisticModel fit_logistic(std::span<const double> features,
                           std::size_t n_features,
                           std::span<const std::int8_t> targets, int max_iter,
                           double tol) {
  if (n_features == 0 || features.size() % n_features != 0) {
    throw std::invalid_argument("fit_logistic: feature matrix shape mismatch");
  }
  std::size_t n = features.size() / n_features;
  if (n != targets.size() || n == 0) {
    throw std::invalid_argument(
        "fit_logistic: targets must match the number of feature rows");
  }
  std::size_t p = n_features + 1;  // intercept + features

  std::vector<double> beta(p, 0.0), step(p), grad(p);
  std::vector<double> hess(p * p);
  std::vector<double> xrow(p);

  for (int iter = 0; iter < max_iter; ++iter) {
    std::fill(grad.begin(), grad.end(), 0.0);
    std::fill(hess.begin(), hess.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      xrow[0] = 1.0;
      for (std::size_t j = 0; j < n_features; ++j) {
        xrow[j + 1] = features[i * n_features + j];
      }
      double eta = 0.0;
      for (std::size_t j = 0; j < p; ++j) eta += beta[j] * xrow[j];
      double mu = expit(eta);
      double wgt = std::max(mu * (1.0 - mu), 1e-10);
      double resid = static_cast<double>(targets[i]) - mu;
      for (std::size_t j = 0; j < p; ++j) {
        grad[j] += xrow[j] * resid;
        for (std::size_t k = j; k < p; ++k) {
          hess[j * p + k] += wgt * xrow[j] * xrow[k];
        }
      }
    }
    for (std::size_t j = 0; j < p; ++j) {
      for (std::size_t k = 0; k < j; ++k) hess[j * p + k] = hess[k * p + j];
    }

    // Solve hess * step = grad by Gaussian elimination with partial pivots.
    std::vector<double> a(hess);
    step = grad;
    for (std::size_t col = 0; col < p; ++col) {
      std::size_t pivot = col;
      for (std::size_t r = col + 1; r < p; ++r) {
        if (std::fabs(a[r * p + col]) > std::fabs(a[pivot * p + col])) {
          pivot = r;
        }
      }
      if (std::fabs(a[pivot * p + col]) < 1e-12) {
        throw std::runtime_error("fit_logistic: singular information matrix");
      }
      if (pivot != col) {
        for (std::size_t k = 0; k < p; ++k) {
          std::swap(a[col * p + k], a[pivot * p + k]);
        }
        std::swap(step[col], step[pivot]);
      }
      for (std::size_t r = col + 1; r < p; ++r) {
        double f = a[r * p + col] / a[col * p + col];
        for (std::size_t k = col; k < p; ++k) a[r * p + k] -= f * a[col * p + k];
        step[r] -= f * step[col];
      }
    }
    for (std::size_t col = p; col-- > 0;) {
      for (std::size_t k = col + 1; k < p; ++k) {
        step[col] -= a[col * p + k] * step[k];
      }
      step[col] /= a[col * p + col];
    }

    double max_step = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      beta[j] += step[j];
      max_step = std::max(max_step, std::fabs(step[j]));
    }
    if (max_step < tol) break;
  }
  LogisticModel model;
  model.coef = std::move(beta);
  return model;
}

}  // namespace riskeval
