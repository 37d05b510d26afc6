#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "riskeval/dataset.hpp"

namespace riskeval {

// Reads a validation CSV: comma-separated with a header naming at least
// `risk` and `outcome` columns (any order; extra columns are ignored). When
// a column named `cluster_col` is present, its values become cluster ids
// (arbitrary strings, mapped to dense ids by first appearance). Risks must
// parse as numbers in [0, 1]; outcomes must be 0 or 1. Field quoting and
// embedded commas are not supported. Throws CsvError with the offending
// 1-based row number (the header is row 1).
ValidationSet read_validation_csv(const std::string& path,
                                  const std::string& cluster_col = "cluster");

// %.17g — enough digits for an exact double round-trip.
std::string format_full(double v);

// Shortest decimal string that round-trips the double (std::to_chars); used
// for display labels such as cutoff keys.
std::string format_short(double v);

// Minimal CSV field escaping (quotes a field containing commas, quotes, or
// newlines) for the report writers.
std::string csv_escape(const std::string& field);

}  // namespace riskeval
