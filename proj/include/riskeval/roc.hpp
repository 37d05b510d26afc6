#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "riskeval/dataset.hpp"
#include "riskeval/weight.hpp"

namespace riskeval {

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
  // Lowest score classified positive at this point; +inf for the (0,0)
  // anchor. Tied scores move as one group, so every point is attainable.
  double threshold = 0.0;
};

struct RocCurve {
  std::vector<RocPoint> points;  // fpr/tpr nondecreasing, (0,0) ... (1,1)
  double auc = 0.0;              // trapezoidal; ties contribute half
};

// Works on arbitrary real-valued scores (higher means more case-like), not
// just probabilities. Requires both outcome classes.
RocCurve roc_curve(std::span<const double> scores,
                   std::span<const std::int8_t> outcomes);
RocCurve roc_curve(const ValidationSet& data);  // scores = predicted risks

struct DecisionCurve {
  std::vector<double> cutoffs;
  std::vector<double> loss;         // L(c)
  std::vector<double> nb_opt_in;    // NB_in(c)
  std::vector<double> nb_opt_out;   // NB_out(c)
};

std::vector<double> default_cutoff_grid();  // 0.01, 0.02, ..., 0.99
DecisionCurve decision_curve(const ValidationSet& data,
                             std::span<const double> cutoffs);
DecisionCurve decision_curve(const ValidationSet& data);

// Upper concave hull of the empirical ROC together with the prevalence —
// everything needed to integrate the minimal cost-weighted loss over a
// cutoff distribution. Building it is O(n log n); each evaluation is
// O(#vertices) weight-functional calls.
class RocHull {
 public:
  RocHull(std::span<const double> scores,
          std::span<const std::int8_t> outcomes);
  explicit RocHull(const ValidationSet& data);

  // V(w) = integral over c of the hull-minimal loss L*(c) against w.
  double min_loss_integral(const WeightSpec& w) const;
  // H(w) = 1 - V(w) / l_w(pi, pi). Equals 1 under perfect separation, 0 for
  // scores independent of the outcome (diagonal hull).
  double h_measure(const WeightSpec& w) const;

  const std::vector<RocPoint>& vertices() const noexcept { return vertices_; }
  double prevalence() const noexcept { return prevalence_; }

 private:
  std::vector<RocPoint> vertices_;
  double prevalence_ = 0.0;
};

double h_measure(std::span<const double> scores,
                 std::span<const std::int8_t> outcomes, const WeightSpec& w);
double h_measure(const ValidationSet& data, const WeightSpec& w);

}  // namespace riskeval
