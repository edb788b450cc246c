#pragma once

// Normalized DFT, additive correlation profiles and completion bounds.
//
// Transform convention throughout:
//
//     hat(phi)(t) = m^{-1/2} sum_n phi(n) e(n t / m)
//
// and the correlation profile is C(a) = sum_x phi(x) conj(phi(x + a)).
//
// The Plancherel route sum_t |hat(phi)(t)|^2 e(-a t / m) produces conj(C(a))
// under this convention. correlations_plancherel() therefore conjugates its
// raw output and marks the profile as reoriented, so both routes hand back
// the same sequence.

#include <cstdint>
#include <span>
#include <vector>

#include "slidesum/numeric.hpp"
#include "slidesum/summation.hpp"
#include "slidesum/trace_functions.hpp"

namespace slidesum {

struct SpectrumTable {
  std::vector<Complex> values;
  double sup_abs = 0.0;

  std::size_t modulus() const { return values.size(); }
};

SpectrumTable dft(std::span<const Complex> values);
SpectrumTable dft(const TabulatedFunction& phi);

enum class CorrelationMethod { direct, plancherel };

struct CorrelationProfile {
  std::vector<Complex> values;
  CorrelationMethod method = CorrelationMethod::direct;
  /// Set when the raw Plancherel output was conjugated into the direct orientation.
  bool reoriented = false;

  std::size_t modulus() const { return values.size(); }
  double magnitude(std::size_t a) const { return std::abs(values[a]); }
  /// max_{a != 0} |C(a)|; 0 when m = 1.
  double max_off_zero() const;
};

CorrelationProfile correlations_direct(const TabulatedFunction& phi);

/// Two fast transforms. With cross_check, also runs the direct path and throws
/// ConsistencyError if any modulus differs by more than 1e-6 relative.
CorrelationProfile correlations_plancherel(const TabulatedFunction& phi, bool cross_check = false);

/// Direct below fft::kDirectThreshold, Plancherel above.
CorrelationProfile correlations(const TabulatedFunction& phi);

/// sum_t |hat(1_I)(t)|. Requires |I| < m (std::invalid_argument otherwise).
/// The transform is compared with the closed form
/// |sin(pi |I| t/m)| / (sqrt(m) |sin(pi t/m)|) and must agree to 1e-9.
double completion_l1(const IntervalZm& interval);

/// Closed-form value of completion_l1, summed directly.
double completion_l1_closed_form(const IntervalZm& interval);

/// ||hat(phi)||_inf * completion_l1(I), a rigorous upper bound for |S(phi; I)|.
double completion_bound(const TabulatedFunction& phi, const IntervalZm& interval);
double completion_bound(const SpectrumTable& spectrum, const IntervalZm& interval);

}  // namespace slidesum
