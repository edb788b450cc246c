#include "slidesum/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "slidesum/fourier.hpp"

namespace slidesum {

SpectrumTable dft(std::span<const Complex> values) {
  SpectrumTable table;
  table.values = fft::transform(values, +1);
  const double scale = 1.0 / std::sqrt(static_cast<double>(values.size()));
  for (auto& v : table.values) {
    v *= scale;
    table.sup_abs = std::max(table.sup_abs, std::abs(v));
  }
  return table;
}

SpectrumTable dft(const TabulatedFunction& phi) { return dft(phi.values()); }

double CorrelationProfile::max_off_zero() const {
  double best = 0.0;
  for (std::size_t a = 1; a < values.size(); ++a) best = std::max(best, std::abs(values[a]));
  return best;
}

CorrelationProfile correlations_direct(const TabulatedFunction& phi) {
  const auto m = phi.modulus();
  CorrelationProfile profile;
  profile.values.resize(m);
  profile.method = CorrelationMethod::direct;
  const auto v = phi.values();
  for (std::size_t a = 0; a < m; ++a) {
    CompensatedSum<Complex> acc;
    std::size_t shifted = a;
    for (std::size_t x = 0; x < m; ++x) {
      acc += v[x] * std::conj(v[shifted]);
      if (++shifted == m) shifted = 0;
    }
    profile.values[a] = acc.value();
  }
  return profile;
}

CorrelationProfile correlations_plancherel(const TabulatedFunction& phi, bool cross_check) {
  const auto spectrum = dft(phi);
  std::vector<Complex> power(spectrum.values.size());
  for (std::size_t t = 0; t < power.size(); ++t) power[t] = std::norm(spectrum.values[t]);

  // raw[a] = sum_t |hat(phi)(t)|^2 e(-a t/m) = conj(C(a))
  auto raw = fft::transform(power, -1);

  CorrelationProfile profile;
  profile.method = CorrelationMethod::plancherel;
  profile.reoriented = true;
  profile.values.resize(raw.size());
  for (std::size_t a = 0; a < raw.size(); ++a) profile.values[a] = std::conj(raw[a]);

  if (cross_check) {
    const auto direct = correlations_direct(phi);
    const double floor = 1e-9 * (1.0 + phi.l2_norm() * phi.l2_norm());
    for (std::size_t a = 0; a < raw.size(); ++a) {
      if (!close_relative(std::abs(profile.values[a]), direct.magnitude(a), 1e-6, floor)) {
        throw ConsistencyError("correlations_plancherel: modulus disagrees with direct path at a = " +
                               std::to_string(a));
      }
    }
  }
  return profile;
}

CorrelationProfile correlations(const TabulatedFunction& phi) {
  if (phi.modulus() < fft::kDirectThreshold) return correlations_direct(phi);
  return correlations_plancherel(phi);
}

double completion_l1_closed_form(const IntervalZm& interval) {
  const auto m = interval.modulus();
  const auto len = interval.length();
  if (len >= m) throw std::invalid_argument("completion_l1: requires |I| < m");
  const double sqrt_m = std::sqrt(static_cast<double>(m));
  CompensatedSum<double> acc;
  acc += static_cast<double>(len) / sqrt_m;
  for (std::uint64_t t = 1; t < m; ++t) {
    // reduce L t mod m before scaling by pi to keep the sine argument small
    const auto lt = static_cast<double>(static_cast<unsigned __int128>(len) * t % m);
    const double num = std::abs(std::sin(std::numbers::pi * lt / static_cast<double>(m)));
    const double den = std::abs(std::sin(std::numbers::pi * static_cast<double>(t) / static_cast<double>(m)));
    acc += num / (sqrt_m * den);
  }
  return acc.value();
}

double completion_l1(const IntervalZm& interval) {
  const auto m = interval.modulus();
  if (interval.length() >= m) throw std::invalid_argument("completion_l1: requires |I| < m");
  std::vector<Complex> indicator(m);
  for (std::uint64_t i = 0; i < interval.length(); ++i) indicator[interval.element(i)] = 1.0;
  const auto spectrum = dft(indicator);
  CompensatedSum<double> acc;
  for (const auto& v : spectrum.values) acc += std::abs(v);
  const double value = acc.value();
  const double closed = completion_l1_closed_form(interval);
  if (!close_relative(value, closed, 1e-9, 1e-9)) {
    throw ConsistencyError("completion_l1: transform " + std::to_string(value) + " vs closed form " +
                           std::to_string(closed));
  }
  return value;
}

double completion_bound(const SpectrumTable& spectrum, const IntervalZm& interval) {
  if (spectrum.modulus() != interval.modulus()) throw ModulusMismatch("completion_bound: modulus mismatch");
  return spectrum.sup_abs * completion_l1(interval);
}

double completion_bound(const TabulatedFunction& phi, const IntervalZm& interval) {
  return completion_bound(dft(phi), interval);
}

}  // namespace slidesum
