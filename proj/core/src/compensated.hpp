#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace sil::detail {

// Neumaier summation
struct Compensated {
  double s = 0, c = 0;
  void add(double x) {
    const double t = s + x;
    c += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
    s = t;
  }
  double value() const { return s + c; }
};

// sum of T values, compensated for complex doubles and exact for integers
template <class T>
struct Accumulator {
  T v{};
  void add(const T& x) { v += x; }
  T value() const { return v; }
};

template <>
struct Accumulator<std::complex<double>> {
  Compensated re, im;
  void add(const std::complex<double>& x) {
    re.add(x.real());
    im.add(x.imag());
  }
  std::complex<double> value() const { return {re.value(), im.value()}; }
};

}  // namespace sil::detail
