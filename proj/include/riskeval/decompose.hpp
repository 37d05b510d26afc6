#pragma once

#include <vector>

#include "riskeval/binning.hpp"
#include "riskeval/dataset.hpp"
#include "riskeval/weight.hpp"

namespace riskeval {

// Which miscalibration estimate the decomposition reports.
//  - PerSample: mean_i d(r_i, ybar_{bin(i)}) — each prediction compared with
//    its bin's event rate. Default; tracks the exact score closely even with
//    coarse bins.
//  - BinMean: sum_k (n_k/n) d(rbar_k, ybar_k) — the classic reliability form
//    (the uniform weight reproduces the textbook Brier reliability term).
enum class McbVariant { PerSample, BinMean };

// Weighted divergence d(p, q) = l_w(p, q) - l_w(q, q) >= 0: the excess loss
// of predicting p for an event of probability q.
double divergence(double p, double q, const WeightSpec& w);

struct Decomposition {
  double miscalibration = 0.0;  // MCB_w
  double discrimination = 0.0;  // DSC_w
  double uncertainty = 0.0;     // UNC_w = l_w(pi, pi)
  double weighted_brier = 0.0;  // exact dataset BS_w
  // weighted_brier - (miscalibration - discrimination + uncertainty).
  // Exactly zero for UniqueValues binning; small binning remainder
  // otherwise.
  double residual = 0.0;
  std::vector<BinSummary> bins;
};

// MCB - DSC + UNC decomposition of the weighted Brier score. Requires both
// outcome classes; throws DegenerateDataError otherwise.
Decomposition decompose(const ValidationSet& data, const WeightSpec& w,
                        const BinningSpec& binning = BinningSpec::quantile(10),
                        McbVariant variant = McbVariant::PerSample);

// Scaled weighted Brier score 1 - BS_w / UNC_w: share of the outcome
// uncertainty the model explains under weight w. The uniform weight gives
// the index of prediction accuracy (IPA).
double scaled_weighted_brier(const ValidationSet& data, const WeightSpec& w);
double ipa(const ValidationSet& data);

}  // namespace riskeval
