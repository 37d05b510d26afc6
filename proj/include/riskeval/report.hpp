#pragma once

#include <optional>
#include <vector>

#include "riskeval/binning.hpp"
#include "riskeval/dataset.hpp"
#include "riskeval/decompose.hpp"
#include "riskeval/inference.hpp"
#include "riskeval/weight.hpp"

namespace riskeval {

// What to compute for a validation set. When `bootstrap` is set, every
// metric gets a percentile interval from one shared set of resamples;
// otherwise the weighted Brier scores carry asymptotic intervals (the only
// metrics with a plug-in variance) when `asymptotic_ci` is true.
struct EvalOptions {
  std::vector<WeightSpec> weights{WeightSpec::uniform()};
  std::vector<double> cutoffs;  // may be empty
  BinningSpec binning = BinningSpec::quantile(10);
  McbVariant mcb_variant = McbVariant::PerSample;
  std::optional<BootstrapConfig> bootstrap;
  bool asymptotic_ci = true;
  double ci_level = 0.95;
};

struct MetricValue {
  double value = 0.0;
  std::optional<CiRecord> ci;
};

struct CutoffReport {
  double cutoff = 0.0;
  MetricValue cost_loss;
  MetricValue net_benefit_opt_in;
  MetricValue net_benefit_opt_out;
};

struct WeightReport {
  WeightSpec weight;
  MetricValue brier;             // BS_w
  MetricValue brier_calibrated;  // BS_w^c
  MetricValue scaled_brier;      // 1 - BS_w / UNC_w
  MetricValue h_measure;
  // Absent when the null variance degenerates (all risks at 0, 1).
  std::optional<double> z_weighted;
  Decomposition decomposition;
};

struct ScoreReport {
  std::size_t n = 0;
  double prevalence = 0.0;
  MetricValue auc;
  MetricValue ipa;
  std::optional<double> z;  // classic Spiegelhalter
  std::vector<WeightReport> weights;
  std::vector<CutoffReport> cutoffs;
};

ScoreReport evaluate(const ValidationSet& data, const EvalOptions& options);

// Differences (a - b) between two models scoring the same rows. Outcomes
// must match row for row; intervals come from paired resamples.
struct WeightComparison {
  WeightSpec weight;
  MetricValue brier_diff;
  MetricValue scaled_brier_diff;
};

struct CutoffComparison {
  double cutoff = 0.0;
  MetricValue cost_loss_diff;
  MetricValue net_benefit_opt_in_diff;
  MetricValue net_benefit_opt_out_diff;
};

struct ComparisonReport {
  std::size_t n = 0;
  MetricValue auc_diff;
  MetricValue ipa_diff;
  std::vector<WeightComparison> weights;
  std::vector<CutoffComparison> cutoffs;
};

ComparisonReport compare(const ValidationSet& a, const ValidationSet& b,
                         const EvalOptions& options);

// Canonical JSON forms (the CLI embeds these per model). indent < 0 gives
// the compact single-line encoding.
std::string to_json_string(const ScoreReport& report,
                           McbVariant variant = McbVariant::PerSample,
                           int indent = -1);
std::string to_json_string(const ComparisonReport& report, int indent = -1);

}  // namespace riskeval
