#include "slidesum/equidist.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace slidesum {

const char* target_name(DistributionTarget target) {
  return target == DistributionTarget::sato_tate ? "sato_tate" : "uniform";
}

double SampleStats::max_weyl() const {
  double best = 0.0;
  for (std::size_t h = 1; h < weyl.size(); ++h) best = std::max(best, std::abs(weyl[h]));
  return best;
}

SampleStats weyl_uniform(const RationalFunction& f, const IntervalZm& interval, const FieldContext& ctx,
                         unsigned harmonics) {
  const auto p = ctx.p();
  if (interval.modulus() != p) throw ModulusMismatch("weyl_uniform: interval must live in Z/pZ");
  if (f.degenerate_mod(p)) throw DegenerateReduction("weyl_uniform: f degenerates mod p");

  SampleStats stats;
  stats.target = DistributionTarget::uniform;
  stats.hypothesis_ok = !f.is_affine_mod(p);

  std::vector<Residue> values;
  values.reserve(interval.length());
  for (std::uint64_t i = 0; i < interval.length(); ++i) {
    if (auto v = eval_rational(f, interval.element(i), ctx)) values.push_back(*v);
  }
  stats.sample_size = values.size();
  stats.weyl.assign(harmonics + 1, Complex{});
  if (values.empty()) return stats;

  const double n = static_cast<double>(values.size());
  stats.weyl[0] = 1.0;
  for (unsigned h = 1; h <= harmonics; ++h) {
    CompensatedSum<Complex> acc;
    for (Residue v : values) {
      const auto num = static_cast<std::int64_t>((static_cast<unsigned __int128>(h) * v) % p);
      acc += unit_root(num, static_cast<std::int64_t>(p));
    }
    stats.weyl[h] = acc.value() / n;
  }

  std::vector<double> fractions(values.size());
  const double pp = static_cast<double>(p);
  std::transform(values.begin(), values.end(), fractions.begin(),
                 [pp](Residue v) { return static_cast<double>(v) / pp; });
  stats.ks = ks_statistic(fractions, [](double x) { return x; });
  return stats;
}

double sato_tate_cdf(double theta) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) throw std::domain_error("sato_tate_cdf: theta outside [0, pi]");
  return theta / std::numbers::pi - std::sin(2.0 * theta) / (2.0 * std::numbers::pi);
}

double sato_tate_density(double theta) {
  const double s = std::sin(theta);
  return 2.0 / std::numbers::pi * s * s;
}

SampleStats kloosterman_equidist(const AngleTable& angles, const IntervalZm& interval, unsigned d_max) {
  if (interval.modulus() != angles.p()) throw ModulusMismatch("kloosterman_equidist: interval must live in Z/pZ");
  SampleStats stats;
  stats.target = DistributionTarget::sato_tate;

  std::vector<double> thetas;
  thetas.reserve(interval.length());
  for (std::uint64_t i = 0; i < interval.length(); ++i) {
    const auto n = interval.element(i);
    if (n != 0) thetas.push_back(angles.angle(n));
  }
  stats.sample_size = thetas.size();
  stats.weyl.assign(d_max + 1, Complex{});
  if (thetas.empty()) return stats;

  const double n = static_cast<double>(thetas.size());
  stats.weyl[0] = 1.0;
  for (unsigned d = 1; d <= d_max; ++d) {
    CompensatedSum<double> acc;
    for (double t : thetas) acc += chebyshev_u(d, 2.0 * std::cos(t));
    stats.weyl[d] = acc.value() / n;
  }
  stats.ks = ks_statistic(thetas, [](double t) { return sato_tate_cdf(std::clamp(t, 0.0, std::numbers::pi)); });
  return stats;
}

ResidueReport residue_count(const ResidueIndicator& image, const IntervalZm& interval) {
  if (interval.modulus() != image.p) throw ModulusMismatch("residue_count: interval must live in Z/pZ");
  ResidueReport report;
  report.density = image.density();
  report.interval_length = interval.length();
  for (std::uint64_t i = 0; i < interval.length(); ++i) {
    if (image.indicator[interval.element(i)].real() != 0.0) ++report.count;
  }
  report.predicted = report.density * static_cast<double>(interval.length());
  report.relative_deviation = static_cast<double>(report.count) / report.predicted - 1.0;
  return report;
}

ResidueReport residue_count(const Polynomial& f, const IntervalZm& interval, const FieldContext& ctx) {
  return residue_count(build_residue_indicator(f, ctx), interval);
}

}  // namespace slidesum
