#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "riskeval/cli.hpp"
#include "riskeval/errors.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

void add_output_flags(CLI::App* app, std::string& format, std::string& out) {
  app->add_option("--format", format, "Output format: json or csv")
      ->default_val("json");
  app->add_option("--out", out, "Output path, '-' for stdout")
      ->default_val("-");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "riskeval - decision-theoretic evaluation of binary risk prediction "
      "models"};
  app.set_version_flag("--version", std::string("riskeval ") + kVersion);
  app.require_subcommand(1);

  riskeval::cli::EvalCommand eval_cmd;
  CLI::App* eval = app.add_subcommand(
      "eval", "Score one or more validation CSVs (risk,outcome[,cluster])");
  eval->add_option("inputs", eval_cmd.inputs, "Validation CSV files")
      ->required()
      ->check(CLI::ExistingFile);
  eval->add_option("--weight", eval_cmd.weights,
                   "Weight spec (repeatable): uniform | beta:a,b | point:c0 "
                   "| mix:w1*spec1+w2*spec2");
  eval->add_option("--cutoff", eval_cmd.cutoffs,
                   "Decision cutoff in (0,1) (repeatable)");
  eval->add_option("--bins", eval_cmd.bins,
                   "Quantile bins for the decomposition")
      ->default_val(10);
  eval->add_option("--bootstrap", eval_cmd.bootstrap,
                   "Bootstrap replicates for percentile intervals (0 = "
                   "asymptotic intervals only)")
      ->default_val(0);
  eval->add_option("--seed", eval_cmd.seed, "Bootstrap seed")->default_val(0);
  eval->add_option("--level", eval_cmd.level, "Confidence level")
      ->default_val(0.95);
  eval->add_option("--threads", eval_cmd.threads,
                   "Bootstrap worker threads (0 = all cores)")
      ->default_val(1);
  eval->add_option("--cluster-col", eval_cmd.cluster_col,
                   "Column holding cluster ids; present -> cluster bootstrap")
      ->default_val("cluster");
  add_output_flags(eval, eval_cmd.format, eval_cmd.out);

  riskeval::cli::CompareCommand compare_cmd;
  CLI::App* cmp = app.add_subcommand(
      "compare",
      "Difference (A - B) between two models scoring the same rows");
  cmp->add_option("model_a", compare_cmd.input_a, "First validation CSV")
      ->required()
      ->check(CLI::ExistingFile);
  cmp->add_option("model_b", compare_cmd.input_b, "Second validation CSV")
      ->required()
      ->check(CLI::ExistingFile);
  cmp->add_option("--weight", compare_cmd.weights, "Weight spec (repeatable)");
  cmp->add_option("--cutoff", compare_cmd.cutoffs,
                  "Decision cutoff (repeatable)");
  cmp->add_option("--bootstrap", compare_cmd.bootstrap,
                  "Paired-bootstrap replicates (0 = point estimates only)")
      ->default_val(0);
  cmp->add_option("--seed", compare_cmd.seed, "Bootstrap seed")
      ->default_val(0);
  cmp->add_option("--level", compare_cmd.level, "Confidence level")
      ->default_val(0.95);
  cmp->add_option("--threads", compare_cmd.threads,
                  "Bootstrap worker threads (0 = all cores)")
      ->default_val(1);
  cmp->add_option("--cluster-col", compare_cmd.cluster_col,
                  "Column holding cluster ids")
      ->default_val("cluster");
  add_output_flags(cmp, compare_cmd.format, compare_cmd.out);

  riskeval::cli::SimulateCommand sim_cmd;
  CLI::App* sim = app.add_subcommand(
      "simulate", "Write benchmark datasets (set-a, set-b, misclassified)");
  sim->add_option("design", sim_cmd.design,
                  "set-a | set-b | misclassified")
      ->required();
  sim->add_option("--n", sim_cmd.n,
                  "Rows (set-a/set-b) or patients (misclassified)")
      ->default_val(10000);
  sim->add_option("--visits", sim_cmd.visits,
                  "Visits per patient (misclassified)")
      ->default_val(2);
  sim->add_option("--flip-case", sim_cmd.flip_case,
                  "P(surrogate=0 | outcome=1) (misclassified)")
      ->default_val(0.25);
  sim->add_option("--flip-control", sim_cmd.flip_control,
                  "P(surrogate=1 | outcome=0) (misclassified)")
      ->default_val(0.05);
  sim->add_option("--seed", sim_cmd.seed, "Generator seed")->default_val(0);
  sim->add_option("--out-dir", sim_cmd.out_dir, "Output directory")
      ->default_val(".");

  riskeval::cli::CurvesCommand curves_cmd;
  CLI::App* curves = app.add_subcommand(
      "curves", "ROC, decision, and calibration curves for one model");
  curves->add_option("input", curves_cmd.input, "Validation CSV")
      ->required()
      ->check(CLI::ExistingFile);
  curves->add_option("--bins", curves_cmd.bins, "Calibration bins")
      ->default_val(10);
  curves->add_option("--cluster-col", curves_cmd.cluster_col,
                     "Column holding cluster ids")
      ->default_val("cluster");
  add_output_flags(curves, curves_cmd.format, curves_cmd.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*eval) return riskeval::cli::run_eval(eval_cmd);
    if (*cmp) return riskeval::cli::run_compare(compare_cmd);
    if (*sim) return riskeval::cli::run_simulate(sim_cmd);
    if (*curves) return riskeval::cli::run_curves(curves_cmd);
  } catch (const riskeval::CsvError& e) {
    std::cerr << "error: malformed input: " << e.what() << '\n';
    return 2;
  } catch (const riskeval::DegenerateDataError& e) {
    std::cerr << "error: degenerate data: " << e.what() << '\n';
    return 3;
  } catch (const riskeval::AlignmentError& e) {
    std::cerr << "error: misaligned inputs: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
