#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "riskeval/binning.hpp"
#include "riskeval/csv.hpp"
#include "riskeval/dataset.hpp"
#include "riskeval/decompose.hpp"
#include "riskeval/errors.hpp"
#include "riskeval/inference.hpp"
#include "riskeval/metrics.hpp"
#include "riskeval/report.hpp"
#include "riskeval/roc.hpp"
#include "riskeval/simlab.hpp"
#include "riskeval/weight.hpp"

namespace py = pybind11;
using namespace riskeval;

namespace {

std::vector<std::int8_t> to_outcomes(const std::vector<int>& outcomes) {
  std::vector<std::int8_t> out(outcomes.size());
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    out[i] = static_cast<std::int8_t>(outcomes[i]);
  }
  return out;
}

ValidationSet make_dataset(const std::vector<double>& risks,
                           const std::vector<int>& outcomes,
                           const std::optional<std::vector<std::int64_t>>&
                               clusters) {
  return ValidationSet(risks, to_outcomes(outcomes), clusters);
}

py::dict ci_to_dict(const CiRecord& rec) {
  py::dict d;
  d["estimate"] = rec.estimate;
  d["lower"] = rec.lower;
  d["upper"] = rec.upper;
  d["level"] = rec.level;
  d["method"] = rec.method == CiMethod::BootstrapPercentile
                    ? "bootstrap_percentile"
                    : "asymptotic_normal";
  if (rec.method == CiMethod::BootstrapPercentile) {
    d["replicates"] = rec.replicates;
    d["redraws"] = rec.redraws;
    d["estimate_outside"] = rec.estimate_outside;
  }
  return d;
}

py::dict decomposition_to_dict(const Decomposition& d) {
  py::dict out;
  out["miscalibration"] = d.miscalibration;
  out["discrimination"] = d.discrimination;
  out["uncertainty"] = d.uncertainty;
  out["weighted_brier"] = d.weighted_brier;
  out["residual"] = d.residual;
  py::list bins;
  for (const BinSummary& b : d.bins) {
    py::dict bd;
    bd["count"] = b.count;
    bd["mean_risk"] = b.mean_risk;
    bd["event_rate"] = b.event_rate;
    bins.append(bd);
  }
  out["bins"] = bins;
  return out;
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

Statistic named_statistic(const std::string& metric,
                          const std::optional<std::string>& weight,
                          const std::optional<double>& cutoff) {
  WeightSpec w =
      weight ? WeightSpec::parse(*weight) : WeightSpec::uniform();
  if (metric == "auc") {
    return [](const ValidationSet& d) { return roc_curve(d).auc; };
  }
  if (metric == "ipa") {
    return [](const ValidationSet& d) { return ipa(d); };
  }
  if (metric == "weighted_brier") {
    return [w](const ValidationSet& d) { return weighted_brier(d, w); };
  }
  if (metric == "weighted_brier_calibrated") {
    return
        [w](const ValidationSet& d) { return weighted_brier_calibrated(d, w); };
  }
  if (metric == "scaled_weighted_brier") {
    return [w](const ValidationSet& d) { return scaled_weighted_brier(d, w); };
  }
  if (metric == "h_measure") {
    return [w](const ValidationSet& d) { return h_measure(d, w); };
  }
  if (!cutoff) {
    throw std::invalid_argument("metric '" + metric + "' needs a cutoff");
  }
  double c = *cutoff;
  if (metric == "cost_loss") {
    return [c](const ValidationSet& d) { return cost_loss(d, c); };
  }
  if (metric == "net_benefit_opt_in") {
    return [c](const ValidationSet& d) { return net_benefit_opt_in(d, c); };
  }
  if (metric == "net_benefit_opt_out") {
    return [c](const ValidationSet& d) { return net_benefit_opt_out(d, c); };
  }
  throw std::invalid_argument("unknown metric '" + metric + "'");
}

}  // namespace

PYBIND11_MODULE(_riskeval, m) {
  m.doc() =
      "Decision-theoretic evaluation of binary risk prediction models "
      "(cost-weighted losses, weighted Brier scores, net benefit, H "
      "measure, calibration tests, bootstrap inference)";

  py::register_exception<DegenerateDataError>(m, "DegenerateDataError",
                                              PyExc_RuntimeError);
  py::register_exception<CsvError>(m, "CsvParseError", PyExc_ValueError);
  py::register_exception<AlignmentError>(m, "AlignmentError",
                                         PyExc_ValueError);

  py::class_<WeightSpec>(m, "WeightSpec")
      .def_static("uniform", &WeightSpec::uniform)
      .def_static("beta", &WeightSpec::beta, py::arg("a"), py::arg("b"))
      .def_static("point_mass", &WeightSpec::point_mass, py::arg("c0"))
      .def_static("parse", &WeightSpec::parse, py::arg("text"))
      .def("cdf", &WeightSpec::cdf, py::arg("r"))
      .def("inc_moment", &WeightSpec::inc_moment, py::arg("r"))
      .def_property_readonly("mean", &WeightSpec::mean)
      .def_property_readonly("has_density", &WeightSpec::has_density)
      .def("density", &WeightSpec::density, py::arg("c"))
      .def("case_loss", &WeightSpec::case_loss, py::arg("r"))
      .def("control_loss", &WeightSpec::control_loss, py::arg("r"))
      .def("__str__", &WeightSpec::to_string)
      .def("__repr__", [](const WeightSpec& w) {
        return "WeightSpec('" + w.to_string() + "')";
      });

  py::class_<ValidationSet>(m, "ValidationSet")
      .def(py::init(&make_dataset), py::arg("risks"), py::arg("outcomes"),
           py::arg("clusters") = std::nullopt)
      .def("__len__", &ValidationSet::size)
      .def_property_readonly("prevalence", &ValidationSet::prevalence)
      .def_property_readonly("case_count", &ValidationSet::case_count)
      .def_property_readonly("has_clusters", &ValidationSet::has_clusters)
      .def("risks",
           [](const ValidationSet& d) {
             return std::vector<double>(d.risks());
           })
      .def("outcomes", [](const ValidationSet& d) {
        std::vector<int> out(d.outcomes().begin(), d.outcomes().end());
        return out;
      });

  m.def("read_validation_csv", &read_validation_csv, py::arg("path"),
        py::arg("cluster_col") = "cluster");

  // Decision-threshold metrics.
  m.def("cutoff_from_costs", &cutoff_from_costs, py::arg("cost_fp"),
        py::arg("cost_tn"), py::arg("cost_fn"), py::arg("cost_tp"));
  m.def("cost_loss_point",
        py::overload_cast<double, int, double>(&cost_loss), py::arg("risk"),
        py::arg("outcome"), py::arg("cutoff"));
  m.def("cost_loss",
        py::overload_cast<const ValidationSet&, double>(&cost_loss),
        py::arg("data"), py::arg("cutoff"));
  m.def("net_benefit_opt_in", &net_benefit_opt_in, py::arg("data"),
        py::arg("cutoff"));
  m.def("net_benefit_opt_out", &net_benefit_opt_out, py::arg("data"),
        py::arg("cutoff"));

  // Weighted scores.
  m.def("weighted_loss", &weighted_loss, py::arg("risk"), py::arg("outcome"),
        py::arg("weight"));
  m.def("weighted_loss_prob", &weighted_loss_prob, py::arg("p"), py::arg("q"),
        py::arg("weight"));
  m.def("weighted_brier", &weighted_brier, py::arg("data"), py::arg("weight"));
  m.def("weighted_brier_calibrated", &weighted_brier_calibrated,
        py::arg("data"), py::arg("weight"));
  m.def("divergence", &divergence, py::arg("p"), py::arg("q"),
        py::arg("weight"));
  m.def("scaled_weighted_brier", &scaled_weighted_brier, py::arg("data"),
        py::arg("weight"));
  m.def("ipa", &ipa, py::arg("data"));
  m.def("spiegelhalter_z", &spiegelhalter_z, py::arg("data"));
  m.def("spiegelhalter_z_weighted", &spiegelhalter_z_weighted,
        py::arg("data"), py::arg("weight"));

  m.def(
      "decompose",
      [](const ValidationSet& data, const WeightSpec& w, int bins,
         const std::string& variant) {
        McbVariant v;
        if (variant == "per_sample") {
          v = McbVariant::PerSample;
        } else if (variant == "bin_mean") {
          v = McbVariant::BinMean;
        } else {
          throw std::invalid_argument(
              "mcb_variant must be 'per_sample' or 'bin_mean'");
        }
        return decomposition_to_dict(
            decompose(data, w, BinningSpec::quantile(bins), v));
      },
      py::arg("data"), py::arg("weight"), py::arg("bins") = 10,
      py::arg("mcb_variant") = "per_sample");

  // Curves.
  m.def("auc",
        [](const ValidationSet& d) { return roc_curve(d).auc; },
        py::arg("data"));
  m.def(
      "roc_curve",
      [](const ValidationSet& d) {
        RocCurve curve = roc_curve(d);
        py::dict out;
        std::vector<double> fpr, tpr, thr;
        for (const RocPoint& p : curve.points) {
          fpr.push_back(p.fpr);
          tpr.push_back(p.tpr);
          thr.push_back(p.threshold);
        }
        out["fpr"] = fpr;
        out["tpr"] = tpr;
        out["threshold"] = thr;
        out["auc"] = curve.auc;
        return out;
      },
      py::arg("data"));
  m.def(
      "decision_curve",
      [](const ValidationSet& d, std::optional<std::vector<double>> cutoffs) {
        DecisionCurve curve = cutoffs ? decision_curve(d, *cutoffs)
                                      : decision_curve(d);
        py::dict out;
        out["cutoffs"] = curve.cutoffs;
        out["cost_loss"] = curve.loss;
        out["net_benefit_opt_in"] = curve.nb_opt_in;
        out["net_benefit_opt_out"] = curve.nb_opt_out;
        return out;
      },
      py::arg("data"), py::arg("cutoffs") = std::nullopt);
  m.def("h_measure",
        py::overload_cast<const ValidationSet&, const WeightSpec&>(&h_measure),
        py::arg("data"), py::arg("weight"));
  m.def(
      "calibration_bins",
      [](const ValidationSet& d, int bins) {
        py::list out;
        for (const BinSummary& b :
             calibration_bins(d, BinningSpec::quantile(bins))) {
          py::dict bd;
          bd["count"] = b.count;
          bd["mean_risk"] = b.mean_risk;
          bd["event_rate"] = b.event_rate;
          out.append(bd);
        }
        return out;
      },
      py::arg("data"), py::arg("bins") = 10);

  // Inference.
  m.def("var_weighted_brier", &var_weighted_brier, py::arg("data"),
        py::arg("weight"));
  m.def("var_weighted_brier_null", &var_weighted_brier_null, py::arg("data"),
        py::arg("weight"));
  m.def("var_weighted_brier_calibrated", &var_weighted_brier_calibrated,
        py::arg("data"), py::arg("weight"));
  m.def("var_weighted_brier_null_marginal", &var_weighted_brier_null_marginal,
        py::arg("data"), py::arg("weight"));
  m.def(
      "weighted_brier_ci",
      [](const ValidationSet& d, const WeightSpec& w, double level) {
        return ci_to_dict(weighted_brier_ci(d, w, level));
      },
      py::arg("data"), py::arg("weight"), py::arg("level") = 0.95);
  m.def(
      "weighted_brier_calibrated_ci",
      [](const ValidationSet& d, const WeightSpec& w, double level) {
        return ci_to_dict(weighted_brier_calibrated_ci(d, w, level));
      },
      py::arg("data"), py::arg("weight"), py::arg("level") = 0.95);
  m.def(
      "bootstrap_ci",
      [](const ValidationSet& data, const std::string& metric,
         std::optional<std::string> weight, std::optional<double> cutoff,
         int replicates, std::uint64_t seed, bool clusters, int threads,
         double level) {
        BootstrapConfig config;
        config.replicates = replicates;
        config.seed = seed;
        config.unit = clusters ? ResampleUnit::Clusters : ResampleUnit::Rows;
        config.threads = threads;
        return ci_to_dict(bootstrap_ci(
            data, named_statistic(metric, weight, cutoff), config, level));
      },
      py::arg("data"), py::arg("metric"), py::arg("weight") = std::nullopt,
      py::arg("cutoff") = std::nullopt, py::arg("replicates") = 2000,
      py::arg("seed") = 0, py::arg("clusters") = false, py::arg("threads") = 1,
      py::arg("level") = 0.95);
  m.def(
      "paired_bootstrap_ci",
      [](const ValidationSet& a, const ValidationSet& b,
         const std::string& metric, std::optional<std::string> weight,
         std::optional<double> cutoff, int replicates, std::uint64_t seed,
         bool clusters, int threads, double level) {
        BootstrapConfig config;
        config.replicates = replicates;
        config.seed = seed;
        config.unit = clusters ? ResampleUnit::Clusters : ResampleUnit::Rows;
        config.threads = threads;
        return ci_to_dict(paired_bootstrap_ci(
            a, b, named_statistic(metric, weight, cutoff), config, level));
      },
      py::arg("model_a"), py::arg("model_b"), py::arg("metric"),
      py::arg("weight") = std::nullopt, py::arg("cutoff") = std::nullopt,
      py::arg("replicates") = 2000, py::arg("seed") = 0,
      py::arg("clusters") = false, py::arg("threads") = 1,
      py::arg("level") = 0.95);

  // Full reports, via the canonical JSON encoding (the python wrapper turns
  // these into dicts).
  m.def(
      "evaluate_json",
      [](const ValidationSet& data, const std::vector<std::string>& weights,
         const std::vector<double>& cutoffs, int bins, int bootstrap,
         std::uint64_t seed, double level, int threads) {
        EvalOptions options =
            build_options(weights, cutoffs, bins, bootstrap, seed, level,
                          threads, data.has_clusters());
        return to_json_string(evaluate(data, options), options.mcb_variant);
      },
      py::arg("data"), py::arg("weights") = std::vector<std::string>{},
      py::arg("cutoffs") = std::vector<double>{}, py::arg("bins") = 10,
      py::arg("bootstrap") = 0, py::arg("seed") = 0, py::arg("level") = 0.95,
      py::arg("threads") = 1);
  m.def(
      "compare_json",
      [](const ValidationSet& a, const ValidationSet& b,
         const std::vector<std::string>& weights,
         const std::vector<double>& cutoffs, int bootstrap,
         std::uint64_t seed, double level, int threads) {
        EvalOptions options =
            build_options(weights, cutoffs, 10, bootstrap, seed, level,
                          threads, a.has_clusters() && b.has_clusters());
        return to_json_string(compare(a, b, options));
      },
      py::arg("model_a"), py::arg("model_b"),
      py::arg("weights") = std::vector<std::string>{},
      py::arg("cutoffs") = std::vector<double>{}, py::arg("bootstrap") = 0,
      py::arg("seed") = 0, py::arg("level") = 0.95, py::arg("threads") = 1);

  // Simulation designs.
  py::class_<BinormalDesign>(m, "BinormalDesign")
      .def(py::init([](double prevalence, double case_mean, double case_sd,
                       double control_mean, double control_sd) {
             return BinormalDesign{prevalence, case_mean, case_sd,
                                   control_mean, control_sd};
           }),
           py::arg("prevalence") = 0.5, py::arg("case_mean") = 1.0,
           py::arg("case_sd") = 1.0, py::arg("control_mean") = 0.0,
           py::arg("control_sd") = 1.0)
      .def_readwrite("prevalence", &BinormalDesign::prevalence)
      .def_readwrite("case_mean", &BinormalDesign::case_mean)
      .def_readwrite("case_sd", &BinormalDesign::case_sd)
      .def_readwrite("control_mean", &BinormalDesign::control_mean)
      .def_readwrite("control_sd", &BinormalDesign::control_sd);
  m.def("bayes_risk", &bayes_risk, py::arg("x"), py::arg("design"));
  m.def(
      "apply_logit_shift",
      [](double risk, double threshold, double shift_above,
         double shift_below) {
        return apply_logit_shift(risk,
                                 LogitShift{threshold, shift_above,
                                            shift_below});
      },
      py::arg("risk"), py::arg("threshold"), py::arg("shift_above"),
      py::arg("shift_below"));
  m.def(
      "generate_set_a",
      [](std::size_t n, std::uint64_t seed) {
        SetAData d = generate_set_a(n, seed);
        return py::make_tuple(std::move(d.model1), std::move(d.model2),
                              std::move(d.model3));
      },
      py::arg("n"), py::arg("seed"));
  m.def(
      "generate_set_b",
      [](std::size_t n, std::uint64_t seed) {
        SetBData d = generate_set_b(n, seed);
        return py::make_tuple(std::move(d.true_model),
                              std::move(d.overfit_high),
                              std::move(d.overfit_low));
      },
      py::arg("n"), py::arg("seed"));
  m.def(
      "generate_misclassified",
      [](std::size_t n_patients, std::size_t visits, std::uint64_t seed,
         double flip_case_rate, double flip_control_rate) {
        MisclassifiedPanel p = generate_misclassified(
            n_patients, visits, seed, flip_case_rate, flip_control_rate);
        py::dict out;
        std::vector<std::vector<double>> cov(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
          cov[i] = {p.covariates[i][0], p.covariates[i][1],
                    p.covariates[i][2]};
        }
        out["covariates"] = cov;
        out["true_risks"] = p.true_risks;
        out["outcomes"] = std::vector<int>(p.outcomes.begin(),
                                           p.outcomes.end());
        out["surrogates"] = std::vector<int>(p.surrogates.begin(),
                                             p.surrogates.end());
        out["patients"] = p.patients;
        return out;
      },
      py::arg("n_patients"), py::arg("visits"), py::arg("seed"),
      py::arg("flip_case_rate"), py::arg("flip_control_rate"));
  m.def(
      "fit_logistic",
      [](const std::vector<std::vector<double>>& features,
         const std::vector<int>& targets) {
        if (features.empty()) {
          throw std::invalid_argument("fit_logistic: no rows");
        }
        std::size_t k = features.front().size();
        std::vector<double> flat;
        flat.reserve(features.size() * k);
        for (const auto& row : features) {
          if (row.size() != k) {
            throw std::invalid_argument(
                "fit_logistic: ragged feature matrix");
          }
          flat.insert(flat.end(), row.begin(), row.end());
        }
        LogisticModel model =
            fit_logistic(flat, k, to_outcomes(targets));
        py::dict out;
        out["coef"] = model.coef;
        out["fitted"] = model.predict_many(flat, k);
        return out;
      },
      py::arg("features"), py::arg("targets"));
}
