#include "riskeval/report.hpp"

#include <stdexcept>

#include "riskeval/errors.hpp"
#include "riskeval/metrics.hpp"
#include "riskeval/roc.hpp"

namespace riskeval {

namespace {

void check_options(const EvalOptions& options) {
  if (options.weights.empty()) {
    throw std::invalid_argument("evaluate: at least one weight is required");
  }
  for (double c : options.cutoffs) {
    if (!(c > 0.0 && c < 1.0)) {
      throw std::invalid_argument(
          "evaluate: cutoffs must lie strictly inside (0, 1)");
    }
  }
  if (!(options.ci_level > 0.0 && options.ci_level < 1.0)) {
    throw std::invalid_argument("evaluate: ci level must lie in (0, 1)");
  }
}

// The metric vector bootstrapped for evaluate(): layout must match the
// unpacking in evaluate() below.
std::vector<double> metric_vector(const ValidationSet& d,
                                  const EvalOptions& options) {
  std::vector<double> out;
  out.reserve(2 + 4 * options.weights.size() + 3 * options.cutoffs.size());
  out.push_back(roc_curve(d).auc);
  out.push_back(ipa(d));
  for (const WeightSpec& w : options.weights) {
    out.push_back(weighted_brier(d, w));
    out.push_back(weighted_brier_calibrated(d, w));
    out.push_back(scaled_weighted_brier(d, w));
    out.push_back(h_measure(d, w));
  }
  for (double c : options.cutoffs) {
    out.push_back(cost_loss(d, c));
    out.push_back(net_benefit_opt_in(d, c));
    out.push_back(net_benefit_opt_out(d, c));
  }
  return out;
}

std::vector<double> difference_vector(const ValidationSet& d,
                                      const EvalOptions& options) {
  std::vector<double> out;
  out.reserve(2 + 2 * options.weights.size() + 3 * options.cutoffs.size());
  out.push_back(roc_curve(d).auc);
  out.push_back(ipa(d));
  for (const WeightSpec& w : options.weights) {
    out.push_back(weighted_brier(d, w));
    out.push_back(scaled_weighted_brier(d, w));
  }
  for (double c : options.cutoffs) {
    out.push_back(cost_loss(d, c));
    out.push_back(net_benefit_opt_in(d, c));
    out.push_back(net_benefit_opt_out(d, c));
  }
  return out;
}

}  // namespace

ScoreReport evaluate(const ValidationSet& data, const EvalOptions& options) {
  check_options(options);

  std::vector<double> values = metric_vector(data, options);
  std::vector<std::optional<CiRecord>> cis(values.size());
  if (options.bootstrap) {
    auto stats = [&](const ValidationSet& d) {
      return metric_vector(d, options);
    };
    std::vector<CiRecord> records = bootstrap_ci_multi(
        data, stats, *options.bootstrap, options.ci_level);
    for (std::size_t k = 0; k < records.size(); ++k) cis[k] = records[k];
  }

  ScoreReport report;
  report.n = data.size();
  report.prevalence = data.prevalence();

  std::size_t at = 0;
  auto take = [&]() {
    MetricValue mv{values[at], cis[at]};
    ++at;
    return mv;
  };
  report.auc = take();
  report.ipa = take();
  try {
    report.z = spiegelhalter_z(data);
  } catch (const DegenerateDataError&) {
    report.z = std::nullopt;
  }
  for (const WeightSpec& w : options.weights) {
    WeightReport wr;
    wr.weight = w;
    wr.brier = take();
    wr.brier_calibrated = take();
    wr.scaled_brier = take();
    wr.h_measure = take();
    if (!options.bootstrap && options.asymptotic_ci) {
      wr.brier.ci = weighted_brier_ci(data, w, options.ci_level);
      wr.brier_calibrated.ci =
          weighted_brier_calibrated_ci(data, w, options.ci_level);
    }
    try {
      wr.z_weighted = spiegelhalter_z_weighted(data, w);
    } catch (const DegenerateDataError&) {
      wr.z_weighted = std::nullopt;
    }
    wr.decomposition =
        decompose(data, w, options.binning, options.mcb_variant);
    report.weights.push_back(std::move(wr));
  }
  for (double c : options.cutoffs) {
    CutoffReport cr;
    cr.cutoff = c;
    cr.cost_loss = take();
    cr.net_benefit_opt_in = take();
    cr.net_benefit_opt_out = take();
    report.cutoffs.push_back(cr);
  }
  return report;
}

ComparisonReport compare(const ValidationSet& a, const ValidationSet& b,
                         const EvalOptions& options) {
  check_options(options);
  if (a.size() != b.size()) {
    throw AlignmentError("compare: models score different numbers of rows");
  }
  if (a.outcomes() != b.outcomes()) {
    throw AlignmentError("compare: outcomes differ between the two inputs");
  }

  std::vector<double> va = difference_vector(a, options);
  std::vector<double> vb = difference_vector(b, options);
  std::vector<double> values(va.size());
  for (std::size_t k = 0; k < va.size(); ++k) values[k] = va[k] - vb[k];

  std::vector<std::optional<CiRecord>> cis(values.size());
  if (options.bootstrap) {
    auto stats = [&](const ValidationSet& d) {
      return difference_vector(d, options);
    };
    std::vector<CiRecord> records = paired_bootstrap_ci_multi(
        a, b, stats, *options.bootstrap, options.ci_level);
    for (std::size_t k = 0; k < records.size(); ++k) cis[k] = records[k];
  }

  ComparisonReport report;
  report.n = a.size();
  std::size_t at = 0;
  auto take = [&]() {
    MetricValue mv{values[at], cis[at]};
    ++at;
    return mv;
  };
  report.auc_diff = take();
  report.ipa_diff = take();
  for (const WeightSpec& w : options.weights) {
    WeightComparison wc;
    wc.weight = w;
    wc.brier_diff = take();
    wc.scaled_brier_diff = take();
    report.weights.push_back(std::move(wc));
  }
  for (double c : options.cutoffs) {
    CutoffComparison cc;
    cc.cutoff = c;
    cc.cost_loss_diff = take();
    cc.net_benefit_opt_in_diff = take();
    cc.net_benefit_opt_out_diff = take();
    report.cutoffs.push_back(cc);
  }
  return report;
}

}  // namespace riskeval
