#include "riskeval/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string_view>

#include "riskeval/errors.hpp"

namespace riskeval {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      out.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

std::string_view strip_cr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

}  // namespace

std::string format_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_short(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) return format_full(v);
  return std::string(buf, ptr);
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

ValidationSet read_validation_csv(const std::string& path,
                                  const std::string& cluster_col) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "' for reading");
  }

  std::string line;
  if (!std::getline(in, line)) {
    throw CsvError(1, "empty file, expected a header line");
  }
  std::vector<std::string_view> header = split_fields(strip_cr(line));
  std::optional<std::size_t> risk_col, outcome_col, cluster_idx;
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (header[j] == "risk") risk_col = j;
    if (header[j] == "outcome") outcome_col = j;
    if (header[j] == cluster_col) cluster_idx = j;
  }
  if (!risk_col) throw CsvError(1, "missing required column 'risk'");
  if (!outcome_col) throw CsvError(1, "missing required column 'outcome'");

  std::vector<double> risks;
  std::vector<std::int8_t> outcomes;
  std::vector<std::int64_t> clusters;
  std::map<std::string, std::int64_t> cluster_ids;

  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    std::string_view body = strip_cr(line);
    if (body.empty() && in.peek() == EOF) break;  // trailing newline
    std::vector<std::string_view> fields = split_fields(body);
    if (fields.size() != header.size()) {
      throw CsvError(row, "expected " + std::to_string(header.size()) +
                              " fields, found " +
                              std::to_string(fields.size()));
    }

    std::string_view rf = fields[*risk_col];
    double risk = 0.0;
    auto [ptr, ec] = std::from_chars(rf.data(), rf.data() + rf.size(), risk);
    if (ec != std::errc{} || ptr != rf.data() + rf.size() || rf.empty()) {
      throw CsvError(row, "cannot parse risk '" + std::string(rf) + "'");
    }
    if (!(risk >= 0.0 && risk <= 1.0)) {
      throw CsvError(row, "risk " + std::string(rf) + " is outside [0, 1]");
    }

    std::string_view yf = fields[*outcome_col];
    std::int8_t y;
    if (yf == "0") {
      y = 0;
    } else if (yf == "1") {
      y = 1;
    } else {
      throw CsvError(row, "outcome must be 0 or 1, found '" +
                              std::string(yf) + "'");
    }

    risks.push_back(risk);
    outcomes.push_back(y);
    if (cluster_idx) {
      std::string label(fields[*cluster_idx]);
      if (label.empty()) {
        throw CsvError(row, "empty cluster id");
      }
      auto [it, inserted] = cluster_ids.try_emplace(
          label, static_cast<std::int64_t>(cluster_ids.size()));
      clusters.push_back(it->second);
    }
  }
  if (risks.empty()) {
    throw CsvError(row, "no data rows");
  }
  std::optional<std::vector<std::int64_t>> cl;
  if (cluster_idx) cl = std::move(clusters);
  try {
    return ValidationSet(std::move(risks), std::move(outcomes), std::move(cl));
  } catch (const std::invalid_argument& e) {
    throw CsvError(row, e.what());  // unreachable: fields validated above
  }
}

}  // namespace riskeval
