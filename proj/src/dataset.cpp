#include "riskeval/dataset.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace riskeval {

ValidationSet::ValidationSet(std::vector<double> risks,
                             std::vector<std::int8_t> outcomes,
                             std::optional<std::vector<std::int64_t>> clusters)
    : risks_(std::move(risks)),
      outcomes_(std::move(outcomes)),
      clusters_(std::move(clusters)) {
  if (risks_.empty()) {
    throw std::invalid_argument("ValidationSet: at least one row required");
  }
  if (outcomes_.size() != risks_.size()) {
    throw std::invalid_argument(
        "ValidationSet: risks and outcomes differ in length");
  }
  if (clusters_ && clusters_->size() != risks_.size()) {
    throw std::invalid_argument(
        "ValidationSet: cluster ids differ in length from risks");
  }
  for (std::size_t i = 0; i < risks_.size(); ++i) {
    if (!(risks_[i] >= 0.0 && risks_[i] <= 1.0)) {
      throw std::invalid_argument("ValidationSet: risk at row " +
                                  std::to_string(i) +
                                  " is not a probability in [0, 1]");
    }
    if (outcomes_[i] != 0 && outcomes_[i] != 1) {
      throw std::invalid_argument("ValidationSet: outcome at row " +
                                  std::to_string(i) + " is not 0 or 1");
    }
  }
  finish_init();
}

ValidationSet::ValidationSet(unchecked_t, std::vector<double> risks,
                             std::vector<std::int8_t> outcomes,
                             std::optional<std::vector<std::int64_t>> clusters)
    : risks_(std::move(risks)),
      outcomes_(std::move(outcomes)),
      clusters_(std::move(clusters)) {
  finish_init();
}

void ValidationSet::finish_init() {
  std::size_t cases = 0;
  for (std::int8_t y : outcomes_) cases += static_cast<std::size_t>(y);
  case_count_ = cases;
  prevalence_ =
      static_cast<double>(cases) / static_cast<double>(risks_.size());
}

const std::vector<std::int64_t>& ValidationSet::clusters() const {
  if (!clusters_) {
    throw std::logic_error("ValidationSet: no cluster ids present");
  }
  return *clusters_;
}

ValidationSet ValidationSet::subset(std::span<const std::size_t> rows) const {
  if (rows.empty()) {
    throw std::invalid_argument("ValidationSet::subset: empty row selection");
  }
  std::vector<double> r(rows.size());
  std::vector<std::int8_t> y(rows.size());
  std::optional<std::vector<std::int64_t>> cl;
  if (clusters_) cl.emplace(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::size_t j = rows[i];
    if (j >= risks_.size()) {
      throw std::out_of_range("ValidationSet::subset: row index out of range");
    }
    r[i] = risks_[j];
    y[i] = outcomes_[j];
    if (cl) (*cl)[i] = (*clusters_)[j];
  }
  return ValidationSet(unchecked_t{}, std::move(r), std::move(y),
                       std::move(cl));
}

}  // namespace riskeval
