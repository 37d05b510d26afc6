#include <json.hpp>

#include "riskeval/csv.hpp"
#include "riskeval/report.hpp"

namespace riskeval {

namespace {

using nlohmann::ordered_json;

std::string ci_method_name(CiMethod m) {
  return m == CiMethod::BootstrapPercentile ? "bootstrap_percentile"
                                            : "asymptotic_normal";
}

ordered_json ci_to_json(const CiRecord& rec) {
  ordered_json j;
  j["lower"] = rec.lower;
  j["upper"] = rec.upper;
  j["level"] = rec.level;
  j["method"] = ci_method_name(rec.method);
  if (rec.method == CiMethod::BootstrapPercentile) {
    j["replicates"] = rec.replicates;
    j["redraws"] = rec.redraws;
    if (rec.estimate_outside) j["estimate_outside"] = true;
  }
  return j;
}

ordered_json metric_to_json(const MetricValue& mv) {
  ordered_json j;
  j["value"] = mv.value;
  if (mv.ci) j["ci"] = ci_to_json(*mv.ci);
  return j;
}

ordered_json decomposition_to_json(const Decomposition& d,
                                   McbVariant variant) {
  ordered_json j;
  j["miscalibration"] = d.miscalibration;
  j["discrimination"] = d.discrimination;
  j["uncertainty"] = d.uncertainty;
  j["weighted_brier"] = d.weighted_brier;
  j["residual"] = d.residual;
  j["mcb_variant"] =
      variant == McbVariant::PerSample ? "per_sample" : "bin_mean";
  ordered_json bins = ordered_json::array();
  for (const BinSummary& b : d.bins) {
    bins.push_back({{"count", b.count},
                    {"mean_risk", b.mean_risk},
                    {"event_rate", b.event_rate}});
  }
  j["bins"] = std::move(bins);
  return j;
}

}  // namespace

std::string to_json_string(const ScoreReport& report, McbVariant variant,
                           int indent) {
  ordered_json j;
  j["n"] = report.n;
  j["prevalence"] = report.prevalence;
  j["auc"] = metric_to_json(report.auc);
  j["ipa"] = metric_to_json(report.ipa);
  j["spiegelhalter_z"] =
      report.z ? ordered_json(*report.z) : ordered_json(nullptr);
  ordered_json weights = ordered_json::object();
  for (const WeightReport& wr : report.weights) {
    ordered_json wj;
    wj["weighted_brier"] = metric_to_json(wr.brier);
    wj["weighted_brier_calibrated"] = metric_to_json(wr.brier_calibrated);
    wj["scaled_weighted_brier"] = metric_to_json(wr.scaled_brier);
    wj["h_measure"] = metric_to_json(wr.h_measure);
    wj["spiegelhalter_z_weighted"] =
        wr.z_weighted ? ordered_json(*wr.z_weighted) : ordered_json(nullptr);
    wj["decomposition"] = decomposition_to_json(wr.decomposition, variant);
    weights[wr.weight.to_string()] = std::move(wj);
  }
  j["weights"] = std::move(weights);
  ordered_json cutoffs = ordered_json::object();
  for (const CutoffReport& cr : report.cutoffs) {
    ordered_json cj;
    cj["cost_loss"] = metric_to_json(cr.cost_loss);
    cj["net_benefit_opt_in"] = metric_to_json(cr.net_benefit_opt_in);
    cj["net_benefit_opt_out"] = metric_to_json(cr.net_benefit_opt_out);
    cutoffs[format_short(cr.cutoff)] = std::move(cj);
  }
  j["cutoffs"] = std::move(cutoffs);
  return j.dump(indent);
}

std::string to_json_string(const ComparisonReport& report, int indent) {
  ordered_json j;
  j["n"] = report.n;
  j["auc"] = metric_to_json(report.auc_diff);
  j["ipa"] = metric_to_json(report.ipa_diff);
  ordered_json weights = ordered_json::object();
  for (const WeightComparison& wc : report.weights) {
    ordered_json wj;
    wj["weighted_brier"] = metric_to_json(wc.brier_diff);
    wj["scaled_weighted_brier"] = metric_to_json(wc.scaled_brier_diff);
    weights[wc.weight.to_string()] = std::move(wj);
  }
  j["weights"] = std::move(weights);
  ordered_json cutoffs = ordered_json::object();
  for (const CutoffComparison& cc : report.cutoffs) {
    ordered_json cj;
    cj["cost_loss"] = metric_to_json(cc.cost_loss_diff);
    cj["net_benefit_opt_in"] = metric_to_json(cc.net_benefit_opt_in_diff);
    cj["net_benefit_opt_out"] = metric_to_json(cc.net_benefit_opt_out_diff);
    cutoffs[format_short(cc.cutoff)] = std::move(cj);
  }
  j["cutoffs"] = std::move(cutoffs);
  return j.dump(indent);
}

}  // namespace riskeval
