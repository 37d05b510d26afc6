#pragma once

#include <cstdint>
#include <functional>

#include "riskeval/dataset.hpp"
#include "riskeval/weight.hpp"

namespace riskeval {

enum class CiMethod { AsymptoticNormal, BootstrapPercentile };

struct CiRecord {
  double estimate = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.95;
  CiMethod method = CiMethod::AsymptoticNormal;
  // Bootstrap diagnostics.
  int replicates = 0;
  int redraws = 0;  // resamples redrawn because the statistic was degenerate
  bool estimate_outside = false;  // percentile interval missed the estimate
};

// Plug-in asymptotic variances for the weighted Brier score (per-observation
// variances; divide by n for the variance of the mean).
//
//   var_weighted_brier:            Var[l_w(r, Y)] with Y as observed.
//   var_weighted_brier_null:       Var[l_w(r, Y)] under the conditional
//                                  hypothesis Y ~ Bern(r) — the
//                                  Spiegelhalter-type null; equals
//                                  E_n[r(1-r)(A(r)-B(r))^2].
//   var_weighted_brier_calibrated: Var[l_w(r, r)] of the calibrated score,
//                                  treating r as the sampled quantity.
//   var_weighted_brier_null_marginal: E_n[r A(r)^2 + (1-r) B(r)^2] - (BS_w^c)^2,
//                                  the marginal null variance; exceeds the
//                                  calibrated variance by exactly the
//                                  conditional null variance.
double var_weighted_brier(const ValidationSet& data, const WeightSpec& w);
double var_weighted_brier_null(const ValidationSet& data, const WeightSpec& w);
double var_weighted_brier_calibrated(const ValidationSet& data,
                                     const WeightSpec& w);
double var_weighted_brier_null_marginal(const ValidationSet& data,
                                        const WeightSpec& w);

// Normal-approximation intervals built from the plug-in variances.
CiRecord weighted_brier_ci(const ValidationSet& data, const WeightSpec& w,
                           double level = 0.95);
CiRecord weighted_brier_calibrated_ci(const ValidationSet& data,
                                      const WeightSpec& w,
                                      double level = 0.95);

enum class ResampleUnit { Rows, Clusters };

struct BootstrapConfig {
  int replicates = 2000;
  std::uint64_t seed = 0;
  ResampleUnit unit = ResampleUnit::Rows;
  // 0 picks std::thread::hardware_concurrency(). Results are identical for
  // every thread count: replicate k always draws from its own counter-based
  // stream.
  int threads = 1;
  // A resample on which the statistic throws DegenerateDataError (e.g. a
  // single-class draw) is redrawn from a fresh stream at most this many
  // times before the whole bootstrap fails.
  int max_redraws = 10;
};

using Statistic = std::function<double(const ValidationSet&)>;
using MultiStatistic =
    std::function<std::vector<double>(const ValidationSet&)>;

// Percentile bootstrap interval for statistic(data). Cluster resampling
// draws whole clusters with replacement (requires cluster ids).
CiRecord bootstrap_ci(const ValidationSet& data, const Statistic& statistic,
                      const BootstrapConfig& config, double level = 0.95);

// Same resamples, several statistics: every replicate is evaluated by one
// MultiStatistic call, so intervals for related metrics share their
// sampling noise. A DegenerateDataError from any component redraws the
// whole resample.
std::vector<CiRecord> bootstrap_ci_multi(const ValidationSet& data,
                                         const MultiStatistic& statistics,
                                         const BootstrapConfig& config,
                                         double level = 0.95);

// Interval for statistic(a) - statistic(b) where a and b score the same
// rows (model comparison on one validation set). Each replicate applies one
// shared row resample to both datasets, preserving the pairing.
CiRecord paired_bootstrap_ci(const ValidationSet& a, const ValidationSet& b,
                             const Statistic& statistic,
                             const BootstrapConfig& config,
                             double level = 0.95);

std::vector<CiRecord> paired_bootstrap_ci_multi(
    const ValidationSet& a, const ValidationSet& b,
    const MultiStatistic& statistics, const BootstrapConfig& config,
    double level = 0.95);

}  // namespace riskeval
