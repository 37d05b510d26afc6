#pragma once

#include <cmath>
#include <cstddef>

namespace riskeval {

// Neumaier-compensated accumulator. Dataset-level means are accumulated with
// this so million-row reductions stay reproducible to ~1 ulp regardless of
// summation order chosen by the optimizer.
class KahanSum {
 public:
  void add(double x) noexcept {
    double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  KahanSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

template <class It, class F>
double compensated_mean(It first, It last, F&& f) {
  KahanSum s;
  std::size_t n = 0;
  for (; first != last; ++first, ++n) s.add(f(*first));
  return n == 0 ? 0.0 : s.value() / static_cast<double>(n);
}

}  // namespace riskeval
