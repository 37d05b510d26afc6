#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace riskeval {

// Dataset cannot support the requested statistic (single-class outcomes,
// zero-variance denominators, bootstrap that never produced a usable
// resample, ...). Maps to CLI exit code 3.
class DegenerateDataError : public std::runtime_error {
 public:
  explicit DegenerateDataError(const std::string& what)
      : std::runtime_error(what) {}
};

// Malformed input file. `row()` is 1-based and counts the header as row 1.
// Maps to CLI exit code 2.
class CsvError : public std::runtime_error {
 public:
  CsvError(std::size_t row, const std::string& what)
      : std::runtime_error("row " + std::to_string(row) + ": " + what),
        row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

// Two datasets that must describe the same samples do not line up
// (different lengths, outcomes, or cluster ids). Maps to CLI exit code 4.
class AlignmentError : public std::runtime_error {
 public:
  explicit AlignmentError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace riskeval
