#pragma once

namespace riskeval::special {

// log of the complete beta function B(a, b); a, b > 0.
double log_beta(double a, double b);

// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1].
// Continued-fraction evaluation with the usual symmetry switch; absolute
// error is at the 1e-14 level over the parameter ranges used here.
double inc_beta(double a, double b, double x);

// Standard normal CDF / quantile. The quantile is a rational initial guess
// polished with one Halley step, accurate to ~1e-15 over (0, 1).
double normal_cdf(double z);
double normal_quantile(double p);

}  // namespace riskeval::special
