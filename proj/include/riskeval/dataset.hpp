#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace riskeval {

// A validation dataset: predicted risks in [0, 1], binary outcomes, and
// optional cluster ids for correlated sampling units (e.g. repeat visits of
// one patient). Invariants are checked once at construction so the scoring
// functions can assume clean input.
class ValidationSet {
 public:
  ValidationSet(std::vector<double> risks, std::vector<std::int8_t> outcomes,
                std::optional<std::vector<std::int64_t>> clusters =
                    std::nullopt);

  std::size_t size() const noexcept { return risks_.size(); }
  const std::vector<double>& risks() const noexcept { return risks_; }
  const std::vector<std::int8_t>& outcomes() const noexcept {
    return outcomes_;
  }
  bool has_clusters() const noexcept { return clusters_.has_value(); }
  const std::vector<std::int64_t>& clusters() const;

  std::size_t case_count() const noexcept { return case_count_; }
  double prevalence() const noexcept { return prevalence_; }

  // Row-gather (bootstrap resamples, train/validation splits). Cluster ids
  // are carried along when present.
  ValidationSet subset(std::span<const std::size_t> rows) const;

 private:
  struct unchecked_t {};
  ValidationSet(unchecked_t, std::vector<double> risks,
                std::vector<std::int8_t> outcomes,
                std::optional<std::vector<std::int64_t>> clusters);
  void finish_init();

  std::vector<double> risks_;
  std::vector<std::int8_t> outcomes_;
  std::optional<std::vector<std::int64_t>> clusters_;
  std::size_t case_count_ = 0;
  double prevalence_ = 0.0;
};

}  // namespace riskeval
