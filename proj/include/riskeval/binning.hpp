#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "riskeval/dataset.hpp"

namespace riskeval {

// How to group predicted risks for calibration summaries and the score
// decomposition.
//  - Quantile(k): k equal-count bins from type-7 interpolated quantile
//    edges; duplicate edges are merged and empty bins dropped, so heavy ties
//    yield fewer than k bins rather than an error. Intervals are
//    right-closed: a risk equal to an edge falls in the lower bin.
//  - UniqueValues: one bin per distinct risk value (makes the decomposition
//    exactly additive).
//  - FixedEdges: caller-supplied strictly increasing interior edges; a bin
//    left empty by the data is an error.
class BinningSpec {
 public:
  enum class Strategy { Quantile, UniqueValues, FixedEdges };

  static BinningSpec quantile(int k = 10);
  static BinningSpec unique_values();
  static BinningSpec fixed_edges(std::vector<double> interior_edges);

  Strategy strategy() const noexcept { return strategy_; }
  int quantile_bins() const noexcept { return k_; }
  const std::vector<double>& interior_edges() const noexcept { return edges_; }

 private:
  BinningSpec(Strategy s, int k, std::vector<double> edges)
      : strategy_(s), k_(k), edges_(std::move(edges)) {}
  Strategy strategy_;
  int k_;
  std::vector<double> edges_;
};

struct BinSummary {
  std::size_t count = 0;
  double mean_risk = 0.0;   // average predicted risk in the bin
  double event_rate = 0.0;  // observed outcome frequency in the bin
};

struct Binning {
  std::vector<std::uint32_t> assignment;  // row -> bin index
  std::vector<BinSummary> bins;           // nonempty, ordered by risk
};

Binning assign_bins(const ValidationSet& data, const BinningSpec& spec);

// Reliability-diagram data: per-bin (count, mean risk, event rate).
std::vector<BinSummary> calibration_bins(
    const ValidationSet& data, const BinningSpec& spec = BinningSpec::quantile(10));

// Type-7 (linear interpolation) quantile of an ascending-sorted sample.
double quantile_sorted(std::span<const double> sorted_values, double p);

}  // namespace riskeval
