#include "riskeval/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include <json.hpp>

#include "riskeval/csv.hpp"
#include "riskeval/dataset.hpp"
#include "riskeval/report.hpp"
#include "riskeval/roc.hpp"
#include "riskeval/simlab.hpp"

namespace riskeval::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

std::string ci_method_name(CiMethod m) {
  return m == CiMethod::BootstrapPercentile ? "bootstrap_percentile"
                                            : "asymptotic_normal";
}

void write_text(const std::string& out, const std::string& text) {
  if (out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) {
    throw std::runtime_error("cannot open '" + out + "' for writing");
  }
  f << text;
}

// One flat CSV row of the metric table.
void csv_metric_row(std::string& sink, const std::string& model,
                    const std::string& metric, const std::string& weight,
                    const std::string& cutoff, double value,
                    const std::optional<CiRecord>& ci) {
  sink += csv_escape(model) + ',' + metric + ',' + csv_escape(weight) + ',' +
          cutoff + ',' + format_full(value);
  if (ci) {
    sink += ',' + format_full(ci->lower) + ',' + format_full(ci->upper) +
            ',' + format_full(ci->level) + ',' + ci_method_name(ci->method);
  } else {
    sink += ",,,,";
  }
  sink += '\n';
}

constexpr const char* kCsvHeader =
    "model,metric,weight,cutoff,value,ci_lower,ci_upper,ci_level,ci_method\n";

void score_report_to_csv(std::string& sink, const std::string& model,
                         const ScoreReport& report) {
  csv_metric_row(sink, model, "n", "", "",
                 static_cast<double>(report.n), std::nullopt);
  csv_metric_row(sink, model, "prevalence", "", "", report.prevalence,
                 std::nullopt);
  csv_metric_row(sink, model, "auc", "", "", report.auc.value, report.auc.ci);
  csv_metric_row(sink, model, "ipa", "", "", report.ipa.value, report.ipa.ci);
  if (report.z) {
    csv_metric_row(sink, model, "spiegelhalter_z", "", "", *report.z,
                   std::nullopt);
  }
  for (const WeightReport& wr : report.weights) {
    std::string w = wr.weight.to_string();
    csv_metric_row(sink, model, "weighted_brier", w, "", wr.brier.value,
                   wr.brier.ci);
    csv_metric_row(sink, model, "weighted_brier_calibrated", w, "",
                   wr.brier_calibrated.value, wr.brier_calibrated.ci);
    csv_metric_row(sink, model, "scaled_weighted_brier", w, "",
                   wr.scaled_brier.value, wr.scaled_brier.ci);
    csv_metric_row(sink, model, "h_measure", w, "", wr.h_measure.value,
                   wr.h_measure.ci);
    if (wr.z_weighted) {
      csv_metric_row(sink, model, "spiegelhalter_z_weighted", w, "",
                     *wr.z_weighted, std::nullopt);
    }
    csv_metric_row(sink, model, "miscalibration", w, "",
                   wr.decomposition.miscalibration, std::nullopt);
    csv_metric_row(sink, model, "discrimination", w, "",
                   wr.decomposition.discrimination, std::nullopt);
    csv_metric_row(sink, model, "uncertainty", w, "",
                   wr.decomposition.uncertainty, std::nullopt);
    csv_metric_row(sink, model, "decomposition_residual", w, "",
                   wr.decomposition.residual, std::nullopt);
  }
  for (const CutoffReport& cr : report.cutoffs) {
    std::string c = format_short(cr.cutoff);
    csv_metric_row(sink, model, "cost_loss", "", c, cr.cost_loss.value,
                   cr.cost_loss.ci);
    csv_metric_row(sink, model, "net_benefit_opt_in", "", c,
                   cr.net_benefit_opt_in.value, cr.net_benefit_opt_in.ci);
    csv_metric_row(sink, model, "net_benefit_opt_out", "", c,
                   cr.net_benefit_opt_out.value, cr.net_benefit_opt_out.ci);
  }
}

EvalOptions build_options(const std::vector<std::string>& weights,
                          const std::vector<double>& cutoffs, int bins,
                          int bootstrap, std::uint64_t seed, double level,
                          int threads, bool clustered) {
  EvalOptions options;
  options.weights.clear();
  if (weights.empty()) {
    options.weights.push_back(WeightSpec::uniform());
  } else {
    for (const std::string& w : weights) {
      options.weights.push_back(WeightSpec::parse(w));
    }
  }
  options.cutoffs = cutoffs;
  options.binning = BinningSpec::quantile(bins);
  options.ci_level = level;
  if (bootstrap > 0) {
    BootstrapConfig config;
    config.replicates = bootstrap;
    config.seed = seed;
    config.threads = threads;
    config.unit = clustered ? ResampleUnit::Clusters : ResampleUnit::Rows;
    options.bootstrap = config;
  }
  return options;
}

void check_format(const std::string& format) {
  if (format != "json" && format != "csv") {
    throw std::invalid_argument("--format must be 'json' or 'csv'");
  }
}

}  // namespace

int run_eval(const EvalCommand& cmd) {
  check_format(cmd.format);
  if (cmd.inputs.empty()) {
    throw std::invalid_argument("eval: at least one input CSV is required");
  }

  ordered_json models = ordered_json::object();
  std::string csv_text = kCsvHeader;
  for (const std::string& path : cmd.inputs) {
    ValidationSet data = read_validation_csv(path, cmd.cluster_col);
    EvalOptions options = build_options(
        cmd.weights, cmd.cutoffs, cmd.bins, cmd.bootstrap, cmd.seed,
        cmd.level, cmd.threads, data.has_clusters());
    ScoreReport report = evaluate(data, options);
    if (cmd.format == "json") {
      models[path] =
          ordered_json::parse(to_json_string(report, options.mcb_variant));
    } else {
      score_report_to_csv(csv_text, path, report);
    }
  }

  if (cmd.format == "json") {
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "eval";
    doc["models"] = std::move(models);
    write_text(cmd.out, doc.dump(2) + "\n");
  } else {
    write_text(cmd.out, csv_text);
  }
  return 0;
}

int run_compare(const CompareCommand& cmd) {
  check_format(cmd.format);
  ValidationSet a = read_validation_csv(cmd.input_a, cmd.cluster_col);
  ValidationSet b = read_validation_csv(cmd.input_b, cmd.cluster_col);
  EvalOptions options = build_options(
      cmd.weights, cmd.cutoffs, /*bins=*/10, cmd.bootstrap, cmd.seed,
      cmd.level, cmd.threads, a.has_clusters() && b.has_clusters());
  ComparisonReport report = compare(a, b, options);

  if (cmd.format == "json") {
    ordered_json diff = ordered_json::parse(to_json_string(report));
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "compare";
    doc["model_a"] = cmd.input_a;
    doc["model_b"] = cmd.input_b;
    doc["n"] = report.n;
    diff.erase("n");
    doc["differences"] = std::move(diff);
    write_text(cmd.out, doc.dump(2) + "\n");
  } else {
    std::string model = cmd.input_a + " - " + cmd.input_b;
    std::string csv_text = kCsvHeader;
    csv_metric_row(csv_text, model, "auc_diff", "", "",
                   report.auc_diff.value, report.auc_diff.ci);
    csv_metric_row(csv_text, model, "ipa_diff", "", "",
                   report.ipa_diff.value, report.ipa_diff.ci);
    for (const WeightComparison& wc : report.weights) {
      std::string w = wc.weight.to_string();
      csv_metric_row(csv_text, model, "weighted_brier_diff", w, "",
                     wc.brier_diff.value, wc.brier_diff.ci);
      csv_metric_row(csv_text, model, "scaled_weighted_brier_diff", w, "",
                     wc.scaled_brier_diff.value, wc.scaled_brier_diff.ci);
    }
    for (const CutoffComparison& cc : report.cutoffs) {
      std::string c = format_short(cc.cutoff);
      csv_metric_row(csv_text, model, "cost_loss_diff", "", c,
                     cc.cost_loss_diff.value, cc.cost_loss_diff.ci);
      csv_metric_row(csv_text, model, "net_benefit_opt_in_diff", "", c,
                     cc.net_benefit_opt_in_diff.value,
                     cc.net_benefit_opt_in_diff.ci);
      csv_metric_row(csv_text, model, "net_benefit_opt_out_diff", "", c,
                     cc.net_benefit_opt_out_diff.value,
                     cc.net_benefit_opt_out_diff.ci);
    }
    write_text(cmd.out, csv_text);
  }
  return 0;
}

namespace {

void write_risk_outcome_csv(const std::filesystem::path& path,
                            const ValidationSet& data) {
  std::ofstream f(path);
  if (!f) {
    throw std::runtime_error("cannot open '" + path.string() +
                             "' for writing");
  }
  f << "risk,outcome\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    f << format_full(data.risks()[i]) << ','
      << static_cast<int>(data.outcomes()[i]) << '\n';
  }
}

}  // namespace

int run_simulate(const SimulateCommand& cmd) {
  std::filesystem::path dir(cmd.out_dir);
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;

  if (cmd.design == "set-a") {
    SetAData d = generate_set_a(cmd.n, cmd.seed);
    written = {dir / "set_a_model1.csv", dir / "set_a_model2.csv",
               dir / "set_a_model3.csv"};
    write_risk_outcome_csv(written[0], d.model1);
    write_risk_outcome_csv(written[1], d.model2);
    write_risk_outcome_csv(written[2], d.model3);
  } else if (cmd.design == "set-b") {
    SetBData d = generate_set_b(cmd.n, cmd.seed);
    written = {dir / "set_b_true.csv", dir / "set_b_overfit_high.csv",
               dir / "set_b_overfit_low.csv"};
    write_risk_outcome_csv(written[0], d.true_model);
    write_risk_outcome_csv(written[1], d.overfit_high);
    write_risk_outcome_csv(written[2], d.overfit_low);
  } else if (cmd.design == "misclassified") {
    MisclassifiedPanel panel = generate_misclassified(
        cmd.n, cmd.visits, cmd.seed, cmd.flip_case, cmd.flip_control);
    std::filesystem::path path = dir / "misclassified.csv";
    std::ofstream f(path);
    if (!f) {
      throw std::runtime_error("cannot open '" + path.string() +
                               "' for writing");
    }
    f << "risk,outcome,surrogate,cluster,x1,x2,x3\n";
    for (std::size_t i = 0; i < panel.size(); ++i) {
      f << format_full(panel.true_risks[i]) << ','
        << static_cast<int>(panel.outcomes[i]) << ','
        << static_cast<int>(panel.surrogates[i]) << ',' << panel.patients[i]
        << ',' << format_full(panel.covariates[i][0]) << ','
        << format_full(panel.covariates[i][1]) << ','
        << format_full(panel.covariates[i][2]) << '\n';
    }
    written = {path};
  } else {
    throw std::invalid_argument(
        "simulate: design must be set-a, set-b, or misclassified");
  }

  for (const auto& p : written) std::cout << p.string() << '\n';
  return 0;
}

int run_curves(const CurvesCommand& cmd) {
  check_format(cmd.format);
  ValidationSet data = read_validation_csv(cmd.input, cmd.cluster_col);
  RocCurve roc = roc_curve(data);
  DecisionCurve decision = decision_curve(data);
  std::vector<BinSummary> calibration =
      calibration_bins(data, BinningSpec::quantile(cmd.bins));

  if (cmd.format == "json") {
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "curves";
    doc["model"] = cmd.input;
    doc["n"] = data.size();
    doc["prevalence"] = data.prevalence();
    doc["auc"] = roc.auc;
    ordered_json roc_json = ordered_json::array();
    for (const RocPoint& p : roc.points) {
      roc_json.push_back(
          {{"fpr", p.fpr}, {"tpr", p.tpr}, {"threshold", p.threshold}});
    }
    doc["roc"] = std::move(roc_json);
    ordered_json dec = ordered_json::array();
    for (std::size_t i = 0; i < decision.cutoffs.size(); ++i) {
      dec.push_back({{"cutoff", decision.cutoffs[i]},
                     {"cost_loss", decision.loss[i]},
                     {"net_benefit_opt_in", decision.nb_opt_in[i]},
                     {"net_benefit_opt_out", decision.nb_opt_out[i]}});
    }
    doc["decision"] = std::move(dec);
    ordered_json cal = ordered_json::array();
    for (const BinSummary& b : calibration) {
      cal.push_back({{"count", b.count},
                     {"mean_risk", b.mean_risk},
                     {"event_rate", b.event_rate}});
    }
    doc["calibration"] = std::move(cal);
    write_text(cmd.out, doc.dump(2) + "\n");
    return 0;
  }

  if (cmd.out == "-") {
    throw std::invalid_argument(
        "curves: csv format writes three files; --out must name a path "
        "prefix");
  }
  {
    std::string text = "fpr,tpr,threshold\n";
    for (const RocPoint& p : roc.points) {
      text += format_full(p.fpr) + ',' + format_full(p.tpr) + ',' +
              format_full(p.threshold) + '\n';
    }
    write_text(cmd.out + ".roc.csv", text);
  }
  {
    std::string text =
        "cutoff,cost_loss,net_benefit_opt_in,net_benefit_opt_out\n";
    for (std::size_t i = 0; i < decision.cutoffs.size(); ++i) {
      text += format_full(decision.cutoffs[i]) + ',' +
              format_full(decision.loss[i]) + ',' +
              format_full(decision.nb_opt_in[i]) + ',' +
              format_full(decision.nb_opt_out[i]) + '\n';
    }
    write_text(cmd.out + ".decision.csv", text);
  }
  {
    std::string text = "count,mean_risk,event_rate\n";
    for (const BinSummary& b : calibration) {
      text += std::to_string(b.count) + ',' + format_full(b.mean_risk) + ',' +
              format_full(b.event_rate) + '\n';
    }
    write_text(cmd.out + ".calibration.csv", text);
  }
  std::cout << cmd.out << ".roc.csv\n"
            << cmd.out << ".decision.csv\n"
            << cmd.out << ".calibration.csv\n";
  return 0;
}

}  // namespace riskeval::cli
