#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace riskeval::cli {

// Subcommand parameter blocks, filled by the argument parser in the CLI
// binary and consumed by the run_* functions below. The functions write to
// stdout/--out and throw on failure; the binary maps exception types to
// exit codes (1 usage, 2 malformed CSV, 3 degenerate data, 4 misaligned
// inputs).

struct EvalCommand {
  std::vector<std::string> inputs;
  std::vector<std::string> weights;  // weight-spec strings; empty -> uniform
  std::vector<double> cutoffs;
  int bins = 10;
  int bootstrap = 0;  // percentile-bootstrap replicates; 0 = asymptotic only
  std::uint64_t seed = 0;
  double level = 0.95;
  int threads = 1;
  std::string cluster_col = "cluster";
  std::string format = "json";  // json | csv
  std::string out = "-";
};
int run_eval(const EvalCommand& cmd);

struct CompareCommand {
  std::string input_a;
  std::string input_b;
  std::vector<std::string> weights;
  std::vector<double> cutoffs;
  int bootstrap = 0;
  std::uint64_t seed = 0;
  double level = 0.95;
  int threads = 1;
  std::string cluster_col = "cluster";
  std::string format = "json";
  std::string out = "-";
};
int run_compare(const CompareCommand& cmd);

struct SimulateCommand {
  std::string design;  // set-a | set-b | misclassified
  std::size_t n = 10000;  // rows for set-a/set-b, patients for misclassified
  std::size_t visits = 2;
  double flip_case = 0.25;
  double flip_control = 0.05;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
};
int run_simulate(const SimulateCommand& cmd);

struct CurvesCommand {
  std::string input;
  int bins = 10;
  std::string cluster_col = "cluster";
  std::string format = "json";
  std::string out = "-";  // csv format requires a path prefix
};
int run_curves(const CurvesCommand& cmd);

}  // namespace riskeval::cli
