#pragma once

#include <cmath>
#include <complex>

namespace cubesum {

// Kahan-Babuska (Neumaier) summation. Unlike plain Kahan it stays accurate
// when an incoming term is larger than the running sum.
template <typename Value>
class CompensatedSum;

template <>
class CompensatedSum<double> {
 public:
  void operator+=(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

template <>
class CompensatedSum<std::complex<double>> {
 public:
  void operator+=(std::complex<double> z) {
    re_ += z.real();
    im_ += z.imag();
  }

  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum<double> re_;
  CompensatedSum<double> im_;
};

}  // namespace cubesum
