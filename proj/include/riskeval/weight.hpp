#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace riskeval {

enum class WeightKind { Uniform, Beta, PointMass, Mixture };

// Distribution of the cost-ratio cutoff c over (0, 1). The scoring stack
// only ever needs three functionals of it: the CDF F_w, the partial first
// moment m_w(r) = E[W 1{W <= r}], and the mean mu_w. From those come the
// per-class loss contributions
//   case_loss A(r)    = 1 - F_w(r) + m_w(r) - mu_w   (cost of a case scored r)
//   control_loss B(r) = m_w(r)                       (cost of a control)
class WeightSpec {
 public:
  WeightSpec() : WeightSpec(uniform()) {}

  static WeightSpec uniform();
  static WeightSpec beta(double a, double b);
  static WeightSpec point_mass(double c0);
  // Components must themselves be non-mixtures; weights are nonnegative with
  // a positive sum and are normalized to 1.
  static WeightSpec mixture(std::vector<std::pair<double, WeightSpec>> parts);

  // Grammar: "uniform" | "beta:a,b" | "point:c0"
  //        | "mix:w1*spec1+w2*spec2[+...]"
  // Whitespace around tokens is ignored. Throws std::invalid_argument.
  static WeightSpec parse(std::string_view text);
  std::string to_string() const;  // canonical form; parse() round-trips it

  WeightKind kind() const noexcept { return kind_; }

  double cdf(double r) const;         // F_w(r), r in [0, 1]
  double inc_moment(double r) const;  // m_w(r), r in [0, 1]
  double mean() const noexcept { return mean_; }

  // False for point masses and for mixtures containing one.
  bool has_density() const noexcept;
  double density(double c) const;  // c in (0, 1); throws if !has_density()

  double case_loss(double r) const;     // A(r)
  double control_loss(double r) const;  // B(r)

 private:
  struct Atom {
    WeightKind kind = WeightKind::Uniform;
    double a = 0.0;   // Beta shapes
    double b = 0.0;
    double c0 = 0.0;  // point-mass location

    double cdf(double r) const;
    double inc_moment(double r) const;
    double mean() const;
    double density(double c) const;
  };

  WeightSpec(WeightKind kind, std::vector<std::pair<double, Atom>> parts);

  WeightKind kind_;
  std::vector<std::pair<double, Atom>> parts_;  // singleton unless Mixture
  double mean_ = 0.0;
};

}  // namespace riskeval
