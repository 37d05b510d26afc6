#include "riskeval/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "riskeval/errors.hpp"
#include "riskeval/kahan.hpp"

namespace riskeval {

namespace {

void check_cutoff(double c, const char* fn) {
  if (!(c > 0.0 && c < 1.0)) {
    throw std::domain_error(std::string(fn) +
                            ": cutoff must lie strictly inside (0, 1)");
  }
}

void check_risk(double r, const char* fn) {
  if (!(r >= 0.0 && r <= 1.0)) {
    throw std::domain_error(std::string(fn) + ": risk must lie in [0, 1]");
  }
}

void check_outcome(int y, const char* fn) {
  if (y != 0 && y != 1) {
    throw std::domain_error(std::string(fn) + ": outcome must be 0 or 1");
  }
}

}  // namespace

double cutoff_from_costs(double cost_fp, double cost_tn, double cost_fn,
                         double cost_tp) {
  double harm_fp = cost_fp - cost_tn;
  double harm_fn = cost_fn - cost_tp;
  if (!(harm_fp > 0.0) || !(harm_fn > 0.0)) {
    throw std::invalid_argument(
        "cutoff_from_costs: each error must cost strictly more than the "
        "corresponding correct decision");
  }
  return harm_fp / (harm_fp + harm_fn);
}

double cost_loss(double risk, int outcome, double cutoff) {
  check_risk(risk, "cost_loss");
  check_outcome(outcome, "cost_loss");
  check_cutoff(cutoff, "cost_loss");
  if (outcome == 1) return risk < cutoff ? 1.0 - cutoff : 0.0;
  return risk > cutoff ? cutoff : 0.0;
}

double cost_loss(const ValidationSet& data, double cutoff) {
  check_cutoff(cutoff, "cost_loss");
  const auto& r = data.risks();
  const auto& y = data.outcomes();
  KahanSum s;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (y[i]) {
      if (r[i] < cutoff) s.add(1.0 - cutoff);
    } else {
      if (r[i] > cutoff) s.add(cutoff);
    }
  }
  return s.value() / static_cast<double>(r.size());
}

double net_benefit_opt_in(const ValidationSet& data, double cutoff) {
  check_cutoff(cutoff, "net_benefit_opt_in");
  const auto& r = data.risks();
  const auto& y = data.outcomes();
  std::size_t tp = 0, fp = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] > cutoff) {
      if (y[i]) {
        ++tp;
      } else {
        ++fp;
      }
    }
  }
  double n = static_cast<double>(r.size());
  return static_cast<double>(tp) / n -
         cutoff / (1.0 - cutoff) * static_cast<double>(fp) / n;
}

double net_benefit_opt_out(const ValidationSet& data, double cutoff) {
  check_cutoff(cutoff, "net_benefit_opt_out");
  const auto& r = data.risks();
  const auto& y = data.outcomes();
  std::size_t tn = 0, fn = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] < cutoff) {
      if (y[i]) {
        ++fn;
      } else {
        ++tn;
      }
    }
  }
  double n = static_cast<double>(r.size());
  return static_cast<double>(tn) / n -
         (1.0 - cutoff) / cutoff * static_cast<double>(fn) / n;
}

double weighted_loss(double risk, int outcome, const WeightSpec& w) {
  check_risk(risk, "weighted_loss");
  check_outcome(outcome, "weighted_loss");
  return outcome == 1 ? w.case_loss(risk) : w.control_loss(risk);
}

double weighted_loss_prob(double p, double q, const WeightSpec& w) {
  check_risk(p, "weighted_loss_prob");
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::domain_error(
        "weighted_loss_prob: outcome probability must lie in [0, 1]");
  }
  return q * w.case_loss(p) + (1.0 - q) * w.control_loss(p);
}

double weighted_brier(const ValidationSet& data, const WeightSpec& w) {
  const auto& r = data.risks();
  const auto& y = data.outcomes();
  KahanSum s;
  for (std::size_t i = 0; i < r.size(); ++i) {
    s.add(y[i] ? w.case_loss(r[i]) : w.control_loss(r[i]));
  }
  return s.value() / static_cast<double>(r.size());
}

double weighted_brier_calibrated(const ValidationSet& data,
                                 const WeightSpec& w) {
  const auto& r = data.risks();
  KahanSum s;
  for (double ri : r) {
    s.add(ri * w.case_loss(ri) + (1.0 - ri) * w.control_loss(ri));
  }
  return s.value() / static_cast<double>(r.size());
}

double spiegelhalter_z(const ValidationSet& data) {
  const auto& r = data.risks();
  const auto& y = data.outcomes();
  KahanSum num, den;
  for (std::size_t i = 0; i < r.size(); ++i) {
    double one_minus_2r = 1.0 - 2.0 * r[i];
    num.add((static_cast<double>(y[i]) - r[i]) * one_minus_2r);
    den.add(one_minus_2r * one_minus_2r * r[i] * (1.0 - r[i]));
  }
  double variance = den.value();
  if (!(variance > 0.0)) {
    throw DegenerateDataError(
        "spiegelhalter_z: null variance is zero (every risk is 0, 1, or "
        "exactly 1/2)");
  }
  return num.value() / std::sqrt(variance);
}

double spiegelhalter_z_weighted(const ValidationSet& data,
                                const WeightSpec& w) {
  const auto& r = data.risks();
  const auto& y = data.outcomes();
  const double mu = w.mean();
  KahanSum num, var0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    double contrast = 1.0 - w.cdf(r[i]) - mu;  // A(r) - B(r)
    num.add((static_cast<double>(y[i]) - r[i]) * contrast);
    var0.add(r[i] * (1.0 - r[i]) * contrast * contrast);
  }
  double n = static_cast<double>(r.size());
  double sigma0_sq = var0.value() / n;
  if (!(sigma0_sq > 0.0)) {
    throw DegenerateDataError(
        "spiegelhalter_z_weighted: null variance is zero");
  }
  return (num.value() / n) / std::sqrt(sigma0_sq / n);
}

}  // namespace riskeval
