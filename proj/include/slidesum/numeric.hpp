#pragma once

// Small numeric helpers shared by every module: the additive character e(.),
// exact rational roots of unity, and compensated summation.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace slidesum {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// e(x) = exp(2 pi i x).
inline Complex e(double x) { return std::polar(1.0, kTwoPi * x); }

/// exp(2 pi i num/den) with the numerator reduced into [0, den) first, so the
/// angle never carries an integer part into floating point.
inline Complex unit_root(std::int64_t num, std::int64_t den) {
  std::int64_t r = num % den;
  if (r < 0) r += den;
  return std::polar(1.0, kTwoPi * static_cast<double>(r) / static_cast<double>(den));
}

/// Neumaier-compensated accumulator.
template <class T>
class CompensatedSum {
 public:
  void add(T x) {
    const T t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(T x) {
    add(x);
    return *this;
  }

  T value() const { return sum_ + comp_; }

 private:
  T sum_{};
  T comp_{};
};

/// Real and imaginary parts are compensated independently.
template <>
class CompensatedSum<Complex> {
 public:
  void add(Complex x) {
    re_.add(x.real());
    im_.add(x.imag());
  }

  CompensatedSum& operator+=(Complex x) {
    add(x);
    return *this;
  }

  Complex value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum<double> re_;
  CompensatedSum<double> im_;
};

/// Thrown when two independent computational routes disagree beyond tolerance.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Relative closeness with an absolute floor, the comparison used for every
/// dual-route agreement check in the library.
inline bool close_relative(double a, double b, double rel, double abs_floor = 0.0) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= rel * scale + abs_floor;
}

}  // namespace slidesum
