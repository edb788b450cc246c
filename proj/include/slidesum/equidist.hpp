#pragma once

// Equidistribution experiments: fractional parts of f(n)/p, Kloosterman
// angles against Sato-Tate, and value-set counts in short intervals.

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "slidesum/numeric.hpp"
#include "slidesum/ring_core.hpp"
#include "slidesum/summation.hpp"
#include "slidesum/trace_functions.hpp"

namespace slidesum {

enum class DistributionTarget { uniform, sato_tate };

const char* target_name(DistributionTarget target);

struct SampleStats {
  std::size_t sample_size = 0;
  double ks = 0.0;
  /// weyl[h] for h = 0..H, normalized by sample_size (weyl[0] = 1 when nonempty).
  std::vector<Complex> weyl;
  DistributionTarget target = DistributionTarget::uniform;
  /// False when the input violates the hypothesis of the equidistribution
  /// statement being tested (an affine f for fractional parts).
  bool hypothesis_ok = true;

  /// max_{1 <= h < weyl.size()} |weyl[h]|.
  double max_weyl() const;
};

/// Two-sided Kolmogorov-Smirnov statistic of the samples against cdf.
/// The samples are sorted in place.
template <class Cdf>
double ks_statistic(std::vector<double>& samples, Cdf&& cdf);

/// Fractional parts {f(n)/p} for n in I (poles skipped) against the uniform
/// law, with Weyl sums (1/N) sum e(h f(n)/p) for h = 1..H.
SampleStats weyl_uniform(const RationalFunction& f, const IntervalZm& interval, const FieldContext& ctx,
                         unsigned harmonics);

/// theta/pi - sin(2 theta)/(2 pi); std::domain_error outside [0, pi].
double sato_tate_cdf(double theta);

/// (2/pi) sin^2 theta.
double sato_tate_density(double theta);

/// KS of {theta_p(n) : n in I, n != 0} against Sato-Tate, plus the averages
/// (1/N) sum U_d(2 cos theta_p(n)) for d = 1..d_max (N = number of n != 0).
SampleStats kloosterman_equidist(const AngleTable& angles, const IntervalZm& interval, unsigned d_max);

struct ResidueReport {
  double density = 0.0;  // |f(F_p)| / p
  std::uint64_t count = 0;
  std::uint64_t interval_length = 0;
  double predicted = 0.0;           // density * |I|
  double relative_deviation = 0.0;  // count / predicted - 1
};

ResidueReport residue_count(const Polynomial& f, const IntervalZm& interval, const FieldContext& ctx);
/// Reuses a prebuilt value-set indicator.
ResidueReport residue_count(const ResidueIndicator& image, const IntervalZm& interval);

template <class Cdf>
double ks_statistic(std::vector<double>& samples, Cdf&& cdf) {
  if (samples.empty()) return 0.0;
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return std::clamp(d, 0.0, 1.0);
}

}  // namespace slidesum
