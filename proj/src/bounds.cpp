#include "slidesum/bounds.hpp"

#include <cmath>
#include <limits>

namespace slidesum {

namespace {

double cbrt_pos(double x) { return std::cbrt(x); }

double max_outside(const CorrelationProfile& profile, const SubsetZm& exceptional) {
  double best = 0.0;
  for (std::size_t a = 0; a < profile.modulus(); ++a) {
    if (!exceptional.contains(a)) best = std::max(best, profile.magnitude(a));
  }
  return best;
}

const char* kind_name(SpecialKind kind) {
  switch (kind) {
    case SpecialKind::quadratic_phase: return "special_quadratic";
    case SpecialKind::fourier: return "special_fourier";
    case SpecialKind::kloosterman: return "special_kloosterman";
    case SpecialKind::korobov: return "special_korobov";
  }
  return "special";
}

}  // namespace

BoundCheck make_bound_check(std::string bound_name, std::string formula, double lhs, double rhs) {
  BoundCheck check;
  check.bound_name = std::move(bound_name);
  check.formula = std::move(formula);
  check.lhs = lhs;
  check.rhs = rhs;
  if (rhs > 0.0) {
    check.ratio = lhs / rhs;
  } else {
    check.ratio = lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  check.pass = lhs <= rhs;
  return check;
}

HReport check_H(const TabulatedFunction& phi, const CorrelationProfile& profile, double c) {
  if (c < 1.0) throw std::invalid_argument("check_H: c must be at least 1");
  if (profile.modulus() != phi.modulus()) throw ModulusMismatch("check_H: profile modulus mismatch");
  const auto m = phi.modulus();
  const double threshold = c * std::sqrt(static_cast<double>(m));
  std::vector<std::uint64_t> d;
  double max_off = 0.0;
  for (std::size_t a = 0; a < m; ++a) {
    const double mag = profile.magnitude(a);
    if (mag > threshold) {
      d.push_back(a);
    } else {
      max_off = std::max(max_off, mag);
    }
  }
  HReport report{c, threshold, phi.sup_norm(), phi.sup_norm() <= c, SubsetZm(m, std::move(d)), false, max_off, false};
  report.d_ok = static_cast<double>(report.exceptional.size()) <= c;
  report.verdict = report.sup_ok && report.d_ok;
  return report;
}

HReport check_H(const TabulatedFunction& phi, double c) { return check_H(phi, correlations_direct(phi), c); }

double sliding_bound_general(const TabulatedFunction& phi, const IntervalZm& interval, const SubsetZm& exceptional,
                             const CorrelationProfile& profile) {
  const auto m = phi.modulus();
  if (interval.modulus() != m || exceptional.modulus() != m || profile.modulus() != m) {
    throw ModulusMismatch("sliding_bound_general: modulus mismatch");
  }
  if (exceptional.size() == m) throw std::invalid_argument("sliding_bound_general: D must not be the whole group");
  const double nu = phi.sup_norm();
  const double len = static_cast<double>(interval.length());
  const double d = static_cast<double>(exceptional.size());
  const double l2 = phi.l2_norm();
  const double max_off = max_outside(profile, exceptional);
  const double len23 = std::pow(len, 2.0 / 3.0);
  return 2.0 * cbrt_pos(nu) *
         (cbrt_pos(d) * cbrt_pos(len) * std::pow(l2, 2.0 / 3.0) + len23 * cbrt_pos(max_off) +
          (2.0 / 3.0) * len23 * std::pow(nu, 2.0 / 3.0));
}

double sliding_bound_general(const TabulatedFunction& phi, const IntervalZm& interval, const SubsetZm& exceptional) {
  return sliding_bound_general(phi, interval, exceptional, correlations(phi));
}

double sigma_upper_bound(const TabulatedFunction& phi, std::uint64_t region_size, const SubsetZm& exceptional,
                         const CorrelationProfile& profile) {
  const double b = static_cast<double>(region_size);
  const double l2 = phi.l2_norm();
  return b * static_cast<double>(exceptional.size()) * l2 * l2 + b * b * max_outside(profile, exceptional);
}

ConcreteBound concrete_bound(double c, std::uint64_t m, std::uint64_t len) {
  if (c < 1.0 || len < 1 || len > m) throw std::invalid_argument("concrete_bound: requires c >= 1, 1 <= len <= m");
  const double mm = static_cast<double>(m);
  const double l = static_cast<double>(len);
  const double c43 = std::pow(c, 4.0 / 3.0);
  ConcreteBound out;
  out.general = 2.0 * c43 * (std::cbrt(mm) * std::cbrt(l) + 2.0 * std::pow(mm, 1.0 / 6.0) * std::pow(l, 2.0 / 3.0));
  if (l > std::sqrt(mm)) out.short_form = 6.0 * c43 * l * std::cbrt(std::sqrt(mm) / l);
  return out;
}

TraceIntervalBound trace_interval_bound(double c, std::uint64_t p, std::uint64_t len) {
  if (c < 1.0) throw std::invalid_argument("trace_interval_bound: c must be at least 1");
  const double pp = static_cast<double>(p);
  const double l = static_cast<double>(len);
  const double c4 = c * c * c * c;
  TraceIntervalBound out;
  out.b18 = 18.0 * c4 * (std::cbrt(pp) * std::cbrt(l) + 2.0 * std::pow(pp, 1.0 / 6.0) * std::pow(l, 2.0 / 3.0));
  if (l > std::sqrt(pp)) {
    const double shape = c4 * l * std::cbrt(std::sqrt(pp) / l);
    out.b54 = 54.0 * shape;
    out.theorem_form = TraceIntervalBound::kTheoremConstant * shape;
  }
  return out;
}

double mult_interval_bound(double c, std::uint64_t p, std::uint64_t len) {
  const double root = std::sqrt(static_cast<double>(p - 1));
  const double l = static_cast<double>(len);
  if (!(l > root)) throw std::invalid_argument("mult_interval_bound: requires |I| > sqrt(p-1)");
  const double c4 = c * c * c * c;
  return 66.0 * c4 * l * std::cbrt(root / l);
}

BoundCheck gap_bound_ratio(const TabulatedFunction& phi, const GapSpec& gap, double ceiling) {
  const auto set = enumerate_gap(gap);
  const double size = static_cast<double>(set.size());
  const double root_m = std::sqrt(static_cast<double>(gap.m));
  if (size < root_m) throw std::invalid_argument("gap_bound_ratio: requires |B| >= sqrt(m)");
  const double k = static_cast<double>(gap.dimension());
  const double shape = size * std::pow(root_m / size, 1.0 / (k + 2.0));
  auto check = make_bound_check("gap_ratio", "ceiling*|B|(sqrt(m)/|B|)^(1/(k+2))",
                                std::abs(sum_region(phi, gap)), ceiling * shape);
  check.family = phi.family_tag();
  check.modulus = gap.m;
  check.region = gap.describe();
  check.c = phi.conductor_bound();
  check.asserted = false;
  return check;
}

SigmaLowerBounds sigma_lower_bounds(const TabulatedFunction& phi, const IntervalZm& interval, double eps,
                                    double large_enough) {
  if (!(eps > 0.0 && eps < 1.0 / 3.0)) throw std::invalid_argument("sigma_lower_bounds: eps must lie in (0, 1/3)");
  SigmaLowerBounds out;
  const double s = std::abs(sum_region(phi, interval));
  const double nu = phi.sup_norm();
  out.region_sum_abs = s;
  if (nu == 0.0) return out;
  out.eighth = s * s * s / (8.0 * nu) - s * s / 4.0;
  out.third = (1.0 / 3.0 - eps) * s * s * s / nu;
  out.third_conditional = s / nu < large_enough;
  return out;
}

BoundCheck special_bounds(SpecialKind kind, const TabulatedFunction& phi, const IntervalZm& interval,
                          const SpecialParams& params) {
  const auto p = params.p;
  const std::uint64_t expected_m = kind == SpecialKind::korobov ? p - 1 : p;
  if (phi.modulus() != expected_m || interval.modulus() != expected_m) {
    throw ModulusMismatch("special_bounds: family lives on the wrong group");
  }
  if (kind == SpecialKind::fourier) {
    if (!params.f || !params.g) throw std::invalid_argument("special_bounds: fourier family needs f and g");
    if (!params.f->is_polynomial_mod(p) || !params.g->is_polynomial_mod(p)) {
      throw std::invalid_argument("special_bounds: f and g must be polynomials");
    }
    if (params.f->numerator().has_root_mod(p)) {
      throw std::invalid_argument("special_bounds: f has a zero in F_p");
    }
  }
  const double s = std::abs(sum_region(phi, interval));
  const double nu = phi.sup_norm();
  const double l = static_cast<double>(interval.length());
  const double pp = static_cast<double>(p);
  const double lead = std::cbrt(3.0) + params.eps;

  BoundCheck check;
  if (kind == SpecialKind::korobov) {
    check = make_bound_check(kind_name(kind), "(3^(1/3)+eps)|I|(sqrt(p)/|I|)^(2/3)", s,
                             lead * l * std::pow(std::sqrt(pp) / l, 2.0 / 3.0));
  } else {
    check = make_bound_check(kind_name(kind), "(3^(1/3)+eps)|phi|inf^(1/3)|I|^(1/3)p^(1/3)", s,
                             lead * std::cbrt(nu) * std::cbrt(l) * std::cbrt(pp));
  }
  check.family = phi.family_tag();
  check.modulus = expected_m;
  check.region = interval.describe();
  check.eps = params.eps;
  check.c = phi.conductor_bound();
  check.asserted = nu > 0.0 && s / nu >= params.large_enough;
  return check;
}

double kloosterman_mean_bound(std::uint64_t p, std::uint64_t len, double eps) {
  const double l = static_cast<double>(len);
  return (std::cbrt(3.0) + eps) * std::pow(std::sqrt(static_cast<double>(p)) / l, 2.0 / 3.0);
}

}  // namespace slidesum
