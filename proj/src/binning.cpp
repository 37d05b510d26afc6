#include "riskeval/binning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "riskeval/errors.hpp"
#include "riskeval/kahan.hpp"

namespace riskeval {

BinningSpec BinningSpec::quantile(int k) {
  if (k < 2) {
    throw std::invalid_argument("BinningSpec: at least 2 quantile bins");
  }
  return BinningSpec(Strategy::Quantile, k, {});
}

BinningSpec BinningSpec::unique_values() {
  return BinningSpec(Strategy::UniqueValues, 0, {});
}

BinningSpec BinningSpec::fixed_edges(std::vector<double> interior_edges) {
  if (interior_edges.empty()) {
    throw std::invalid_argument("BinningSpec: at least one interior edge");
  }
  for (std::size_t i = 0; i < interior_edges.size(); ++i) {
    if (!(interior_edges[i] >= 0.0 && interior_edges[i] <= 1.0)) {
      throw std::invalid_argument("BinningSpec: edges must lie in [0, 1]");
    }
    if (i > 0 && !(interior_edges[i] > interior_edges[i - 1])) {
      throw std::invalid_argument(
          "BinningSpec: edges must be strictly increasing");
    }
  }
  return BinningSpec(Strategy::FixedEdges, 0, std::move(interior_edges));
}

double quantile_sorted(std::span<const double> sorted_values, double p) {
  if (sorted_values.empty()) {
    throw std::invalid_argument("quantile_sorted: empty sample");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("quantile_sorted: p must lie in [0, 1]");
  }
  double h = static_cast<double>(sorted_values.size() - 1) * p;
  std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted_values.size()) return sorted_values.back();
  double frac = h - static_cast<double>(lo);
  return sorted_values[lo] + frac * (sorted_values[lo + 1] - sorted_values[lo]);
}

namespace {

std::vector<double> quantile_edges(const std::vector<double>& risks, int k) {
  std::vector<double> sorted(risks);
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> edges;
  edges.reserve(static_cast<std::size_t>(k) - 1);
  for (int j = 1; j < k; ++j) {
    double e = quantile_sorted(sorted, static_cast<double>(j) / k);
    if (edges.empty() || e > edges.back()) edges.push_back(e);
  }
  return edges;
}

}  // namespace

Binning assign_bins(const ValidationSet& data, const BinningSpec& spec) {
  const auto& risks = data.risks();
  const auto& outcomes = data.outcomes();
  Binning out;
  out.assignment.resize(risks.size());

  std::size_t bin_count = 0;
  switch (spec.strategy()) {
    case BinningSpec::Strategy::Quantile: {
      std::vector<double> edges = quantile_edges(risks, spec.quantile_bins());
      bin_count = edges.size() + 1;
      for (std::size_t i = 0; i < risks.size(); ++i) {
        out.assignment[i] = static_cast<std::uint32_t>(
            std::lower_bound(edges.begin(), edges.end(), risks[i]) -
            edges.begin());
      }
      break;
    }
    case BinningSpec::Strategy::UniqueValues: {
      std::vector<double> distinct(risks);
      std::sort(distinct.begin(), distinct.end());
      distinct.erase(std::unique(distinct.begin(), distinct.end()),
                     distinct.end());
      bin_count = distinct.size();
      for (std::size_t i = 0; i < risks.size(); ++i) {
        out.assignment[i] = static_cast<std::uint32_t>(
            std::lower_bound(distinct.begin(), distinct.end(), risks[i]) -
            distinct.begin());
      }
      break;
    }
    case BinningSpec::Strategy::FixedEdges: {
      const auto& edges = spec.interior_edges();
      bin_count = edges.size() + 1;
      for (std::size_t i = 0; i < risks.size(); ++i) {
        out.assignment[i] = static_cast<std::uint32_t>(
            std::lower_bound(edges.begin(), edges.end(), risks[i]) -
            edges.begin());
      }
      break;
    }
  }

  std::vector<std::size_t> counts(bin_count, 0);
  std::vector<KahanSum> risk_sum(bin_count);
  std::vector<std::size_t> event_count(bin_count, 0);
  for (std::size_t i = 0; i < risks.size(); ++i) {
    std::uint32_t b = out.assignment[i];
    ++counts[b];
    risk_sum[b].add(risks[i]);
    event_count[b] += static_cast<std::size_t>(outcomes[i]);
  }

  // Quantile bins with merged edges can still leave trailing structure
  // empty; drop and renumber. Explicit edges must cover the data.
  std::vector<std::uint32_t> remap(bin_count, 0);
  for (std::size_t b = 0; b < bin_count; ++b) {
    if (counts[b] == 0) {
      if (spec.strategy() == BinningSpec::Strategy::FixedEdges) {
        throw DegenerateDataError("assign_bins: fixed edges leave bin " +
                                  std::to_string(b) + " empty");
      }
      remap[b] = std::numeric_limits<std::uint32_t>::max();
      continue;
    }
    remap[b] = static_cast<std::uint32_t>(out.bins.size());
    BinSummary s;
    s.count = counts[b];
    s.mean_risk = risk_sum[b].value() / static_cast<double>(counts[b]);
    s.event_rate = static_cast<double>(event_count[b]) /
                   static_cast<double>(counts[b]);
    out.bins.push_back(s);
  }
  for (auto& a : out.assignment) a = remap[a];
  return out;
}

std::vector<BinSummary> calibration_bins(const ValidationSet& data,
                                         const BinningSpec& spec) {
  return assign_bins(data, spec).bins;
}

}  // namespace riskeval
