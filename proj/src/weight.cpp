#include "riskeval/weight.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <system_error>

#include "riskeval/special.hpp"

namespace riskeval {

namespace {

void check_unit_interval(double r, const char* fn) {
  if (!(r >= 0.0 && r <= 1.0)) {
    throw std::domain_error(std::string(fn) + ": argument must lie in [0, 1]");
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_number(std::string_view tok, const char* what) {
  tok = trim(tok);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size() || tok.empty()) {
    throw std::invalid_argument(std::string("weight spec: cannot parse ") +
                                what + " from '" + std::string(tok) + "'");
  }
  return value;
}

std::string format_number(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

double WeightSpec::Atom::cdf(double r) const {
  switch (kind) {
    case WeightKind::Uniform:
      return r;
    case WeightKind::Beta:
      return special::inc_beta(a, b, r);
    case WeightKind::PointMass:
      return r < c0 ? 0.0 : 1.0;
    default:
      throw std::logic_error("nested mixture atom");
  }
}

double WeightSpec::Atom::inc_moment(double r) const {
  switch (kind) {
    case WeightKind::Uniform:
      return 0.5 * r * r;
    case WeightKind::Beta:
      // E[W 1{W<=r}] for Beta(a,b) is mean * I_r(a+1, b).
      return a / (a + b) * special::inc_beta(a + 1.0, b, r);
    case WeightKind::PointMass:
      return r < c0 ? 0.0 : c0;
    default:
      throw std::logic_error("nested mixture atom");
  }
}

double WeightSpec::Atom::mean() const {
  switch (kind) {
    case WeightKind::Uniform:
      return 0.5;
    case WeightKind::Beta:
      return a / (a + b);
    case WeightKind::PointMass:
      return c0;
    default:
      throw std::logic_error("nested mixture atom");
  }
}

double WeightSpec::Atom::density(double c) const {
  switch (kind) {
    case WeightKind::Uniform:
      return 1.0;
    case WeightKind::Beta:
      return std::exp((a - 1.0) * std::log(c) + (b - 1.0) * std::log1p(-c) -
                      special::log_beta(a, b));
    default:
      throw std::logic_error("density of an atom without one");
  }
}

WeightSpec::WeightSpec(WeightKind kind,
                       std::vector<std::pair<double, Atom>> parts)
    : kind_(kind), parts_(std::move(parts)) {
  double m = 0.0;
  for (const auto& [w, atom] : parts_) m += w * atom.mean();
  mean_ = m;
}

WeightSpec WeightSpec::uniform() {
  return WeightSpec(WeightKind::Uniform, {{1.0, Atom{WeightKind::Uniform}}});
}

WeightSpec WeightSpec::beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument(
        "weight spec: beta shapes must be finite and positive");
  }
  return WeightSpec(WeightKind::Beta,
                    {{1.0, Atom{WeightKind::Beta, a, b, 0.0}}});
}

WeightSpec WeightSpec::point_mass(double c0) {
  if (!(c0 > 0.0 && c0 < 1.0)) {
    throw std::invalid_argument(
        "weight spec: point-mass location must lie strictly inside (0, 1)");
  }
  return WeightSpec(WeightKind::PointMass,
                    {{1.0, Atom{WeightKind::PointMass, 0.0, 0.0, c0}}});
}

WeightSpec WeightSpec::mixture(
    std::vector<std::pair<double, WeightSpec>> parts) {
  if (parts.empty()) {
    throw std::invalid_argument("weight spec: mixture needs components");
  }
  double total = 0.0;
  std::vector<std::pair<double, Atom>> atoms;
  atoms.reserve(parts.size());
  for (const auto& [w, spec] : parts) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument(
          "weight spec: mixture weights must be nonnegative");
    }
    if (spec.kind_ == WeightKind::Mixture) {
      throw std::invalid_argument(
          "weight spec: mixtures cannot nest other mixtures");
    }
    total += w;
    atoms.emplace_back(w, spec.parts_.front().second);
  }
  if (!(total > 0.0)) {
    throw std::invalid_argument(
        "weight spec: mixture weights must have a positive sum");
  }
  for (auto& [w, atom] : atoms) w /= total;
  return WeightSpec(WeightKind::Mixture, std::move(atoms));
}

WeightSpec WeightSpec::parse(std::string_view text) {
  std::string_view s = trim(text);
  if (s == "uniform") return uniform();
  if (s.substr(0, 5) == "beta:") {
    std::string_view args = s.substr(5);
    auto comma = args.find(',');
    if (comma == std::string_view::npos) {
      throw std::invalid_argument(
          "weight spec: expected 'beta:a,b', got '" + std::string(s) + "'");
    }
    return beta(parse_number(args.substr(0, comma), "beta shape a"),
                parse_number(args.substr(comma + 1), "beta shape b"));
  }
  if (s.substr(0, 6) == "point:") {
    return point_mass(parse_number(s.substr(6), "point-mass location"));
  }
  if (s.substr(0, 4) == "mix:") {
    std::string_view body = s.substr(4);
    std::vector<std::pair<double, WeightSpec>> parts;
    while (!body.empty()) {
      // Split on the next '+' that starts a new "w*spec" component; '+' may
      // also appear inside numbers (exponents), so require the separator to
      // be followed by a component containing '*'.
      std::size_t pos = 0;
      std::size_t split = std::string_view::npos;
      while ((pos = body.find('+', pos)) != std::string_view::npos) {
        if (body.find('*', pos) != std::string_view::npos) {
          split = pos;
          break;
        }
        ++pos;
      }
      std::string_view piece =
          split == std::string_view::npos ? body : body.substr(0, split);
      body = split == std::string_view::npos ? std::string_view{}
                                             : body.substr(split + 1);
      auto star = piece.find('*');
      if (star == std::string_view::npos) {
        throw std::invalid_argument(
            "weight spec: mixture component must look like 'w*spec', got '" +
            std::string(trim(piece)) + "'");
      }
      double w = parse_number(piece.substr(0, star), "mixture weight");
      parts.emplace_back(w, parse(piece.substr(star + 1)));
    }
    return mixture(std::move(parts));
  }
  throw std::invalid_argument("weight spec: unrecognized form '" +
                              std::string(s) + "'");
}

std::string WeightSpec::to_string() const {
  auto atom_str = [](const Atom& a) -> std::string {
    switch (a.kind) {
      case WeightKind::Uniform:
        return "uniform";
      case WeightKind::Beta:
        return "beta:" + format_number(a.a) + "," + format_number(a.b);
      case WeightKind::PointMass:
        return "point:" + format_number(a.c0);
      default:
        throw std::logic_error("nested mixture atom");
    }
  };
  if (kind_ != WeightKind::Mixture) return atom_str(parts_.front().second);
  std::string out = "mix:";
  bool first = true;
  for (const auto& [w, atom] : parts_) {
    if (!first) out += '+';
    first = false;
    out += format_number(w) + "*" + atom_str(atom);
  }
  return out;
}

double WeightSpec::cdf(double r) const {
  check_unit_interval(r, "WeightSpec::cdf");
  double v = 0.0;
  for (const auto& [w, atom] : parts_) v += w * atom.cdf(r);
  return v;
}

double WeightSpec::inc_moment(double r) const {
  check_unit_interval(r, "WeightSpec::inc_moment");
  double v = 0.0;
  for (const auto& [w, atom] : parts_) v += w * atom.inc_moment(r);
  return v;
}

bool WeightSpec::has_density() const noexcept {
  for (const auto& [w, atom] : parts_) {
    if (atom.kind == WeightKind::PointMass && w > 0.0) return false;
  }
  return true;
}

double WeightSpec::density(double c) const {
  if (!has_density()) {
    throw std::domain_error(
        "WeightSpec::density: weight has a point-mass component");
  }
  if (!(c > 0.0 && c < 1.0)) {
    throw std::domain_error(
        "WeightSpec::density: argument must lie strictly inside (0, 1)");
  }
  double v = 0.0;
  for (const auto& [w, atom] : parts_) v += w * atom.density(c);
  return v;
}

double WeightSpec::case_loss(double r) const {
  check_unit_interval(r, "WeightSpec::case_loss");
  double v = 0.0;
  for (const auto& [w, atom] : parts_) {
    v += w * (1.0 - atom.cdf(r) + atom.inc_moment(r) - atom.mean());
  }
  return v;
}

double WeightSpec::control_loss(double r) const {
  check_unit_interval(r, "WeightSpec::control_loss");
  return inc_moment(r);
}

}  // namespace riskeval
