#pragma once

// Explicit sliding-sum bounds, Condition H(c) certification and verdicts.
//
// Every bound is evaluated from its printed constants. Bounds whose implied
// constants are unspecified (GAP sums) or whose hypotheses are asymptotic
// ("|S| large enough") are returned with asserted = false: the ratio is
// reported, but a violation is not a soundness failure.

#include <cstdint>
#include <optional>
#include <string>

#include "slidesum/spectral.hpp"
#include "slidesum/summation.hpp"
#include "slidesum/trace_functions.hpp"

namespace slidesum {

struct HReport {
  double c = 1.0;
  double threshold = 0.0;  // c sqrt(m)
  double sup_norm = 0.0;
  bool sup_ok = false;     // ||phi||_inf <= c
  SubsetZm exceptional;    // D = {a : |C(a)| > c sqrt(m)}
  bool d_ok = false;       // |D| <= c
  double max_off_d = 0.0;  // max_{a not in D} |C(a)|
  bool verdict = false;
};

struct BoundCheck {
  std::string bound_name;
  std::string formula;
  std::string family;
  std::uint64_t modulus = 0;
  std::string region;
  double c = 0.0;
  double eps = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool pass = true;
  bool asserted = true;
};

/// Fills ratio and pass from lhs and rhs (ratio = lhs/rhs, pass = lhs <= rhs).
BoundCheck make_bound_check(std::string bound_name, std::string formula, double lhs, double rhs);

HReport check_H(const TabulatedFunction& phi, double c);
HReport check_H(const TabulatedFunction& phi, const CorrelationProfile& profile, double c);

/// Right side of the general sliding-sum inequality with exceptional set D.
/// Throws std::invalid_argument when D is the whole group.
double sliding_bound_general(const TabulatedFunction& phi, const IntervalZm& interval, const SubsetZm& exceptional,
                             const CorrelationProfile& profile);
double sliding_bound_general(const TabulatedFunction& phi, const IntervalZm& interval, const SubsetZm& exceptional);

/// |B||D| ||phi||_2^2 + |B|^2 max_{a not in D} |C(a)|.
double sigma_upper_bound(const TabulatedFunction& phi, std::uint64_t region_size, const SubsetZm& exceptional,
                         const CorrelationProfile& profile);

struct ConcreteBound {
  double general = 0.0;
  std::optional<double> short_form;  // only when len > sqrt(m)
};

/// Bounds for functions satisfying H(c) on Z/mZ.
ConcreteBound concrete_bound(double c, std::uint64_t m, std::uint64_t len);

struct TraceIntervalBound {
  double b18 = 0.0;
  std::optional<double> b54;  // only when len > sqrt(p)
  /// c^4 |I| (sqrt(p)/|I|)^{1/3} times the absolute constant, whose slot is
  /// filled with 54 (len > sqrt(p) only).
  std::optional<double> theorem_form;
  static constexpr double kTheoremConstant = 54.0;
};

TraceIntervalBound trace_interval_bound(double c, std::uint64_t p, std::uint64_t len);

/// 66 c^4 |I| (sqrt(p-1)/|I|)^{1/3}; throws std::invalid_argument unless len > sqrt(p-1).
double mult_interval_bound(double c, std::uint64_t p, std::uint64_t len);

/// |S(phi;B)| against ceiling * |B| (sqrt(m)/|B|)^{1/(k+2)}. Never asserted.
/// Throws NonProperGap for improper B and std::invalid_argument when |B| < sqrt(m).
BoundCheck gap_bound_ratio(const TabulatedFunction& phi, const GapSpec& gap, double ceiling = 20.0);

struct SigmaLowerBounds {
  double region_sum_abs = 0.0;
  double eighth = 0.0;            // |S|^3/(8 nu) - |S|^2/4
  double third = 0.0;             // (1/3 - eps) |S|^3 / nu
  bool third_conditional = true;  // |S|/nu below the "large enough" threshold
};

/// Requires eps in (0, 1/3).
SigmaLowerBounds sigma_lower_bounds(const TabulatedFunction& phi, const IntervalZm& interval, double eps,
                                    double large_enough = 100.0);

enum class SpecialKind { quadratic_phase, fourier, kloosterman, korobov };

struct SpecialParams {
  std::uint64_t p = 0;
  double eps = 0.1;
  double large_enough = 100.0;
  /// For SpecialKind::fourier: the f and g of psi(y) = chi(f(y)) e(g(y)/p).
  std::optional<RationalFunction> f;
  std::optional<RationalFunction> g;
};

/// (3^{1/3} + eps) bound for the four families with exactly known correlations.
/// Cells with |S|/||phi||_inf below params.large_enough come back with
/// asserted = false. Throws std::invalid_argument when a fourier family's f has
/// a zero in F_p or f, g are not polynomials.
BoundCheck special_bounds(SpecialKind kind, const TabulatedFunction& phi, const IntervalZm& interval,
                          const SpecialParams& params);

/// (3^{1/3} + eps) (sqrt(p)/|I|)^{2/3}, the bound for the mean of normalized
/// Kloosterman sums over an interval.
double kloosterman_mean_bound(std::uint64_t p, std::uint64_t len, double eps);

}  // namespace slidesum
