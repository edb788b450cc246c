#pragma once

// Concrete function families on Z/pZ and Z/(p-1)Z, tabulated.
//
// Every builder returns a TabulatedFunction: the full value sequence together
// with its sup-norm, L2-norm and a declared conductor bound. Conductor bounds
// are configuration, not theory: each builder has a documented default and an
// override.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slidesum/numeric.hpp"
#include "slidesum/ring_core.hpp"

namespace slidesum {

class TabulatedFunction {
 public:
  TabulatedFunction(std::vector<Complex> values, double conductor_bound, std::string family_tag);

  std::size_t modulus() const { return values_.size(); }
  std::span<const Complex> values() const { return values_; }
  const Complex& operator[](std::size_t n) const { return values_[n]; }
  /// Value at n reduced mod m.
  Complex at(std::int64_t n) const;

  double sup_norm() const { return sup_norm_; }
  double l2_norm() const { return l2_norm_; }
  double conductor_bound() const { return conductor_bound_; }
  const std::string& family_tag() const { return family_tag_; }

  TabulatedFunction with_conductor(double c) const;
  TabulatedFunction with_tag(std::string tag) const;

 private:
  std::vector<Complex> values_;
  double sup_norm_ = 0.0;
  double l2_norm_ = 0.0;
  double conductor_bound_ = 1.0;
  std::string family_tag_;
};

/// Kloosterman angles theta_p(n) in [0, pi] for n in F_p^x.
class AngleTable {
 public:
  AngleTable(std::uint64_t p, std::vector<double> angles);

  std::uint64_t p() const { return p_; }
  /// Throws std::domain_error for n = 0, where no angle is defined.
  double angle(Residue n) const;

 private:
  std::uint64_t p_;
  std::vector<double> angles_;  // index 0 unused
};

/// phi(n) = chi(f(n)) e(g(n)/p); 0 where g has a pole or f(n) is 0 or a pole.
/// Default conductor: deg f1 + deg f2 + deg g1 + deg g2 + 2.
/// Throws DegenerateReduction if f or g degenerates mod p.
TabulatedFunction build_mixed_char(const CharacterSpec& chi, const RationalFunction& f,
                                   const RationalFunction& g, const FieldContext& ctx,
                                   std::optional<double> conductor = std::nullopt);

/// Sufficient check that a mixed family is a Fourier trace function: g is not
/// affine mod p, or chi is nontrivial and chi(f(x)) is not constant.
bool mixed_char_is_fourier(const CharacterSpec& chi, const RationalFunction& f,
                           const RationalFunction& g, const FieldContext& ctx);

enum class KloostermanMethod { direct, fourier };

/// Unnormalized Kloosterman sums S(n,1;p) for n in F_p, by direct O(p^2) summation.
std::vector<double> kloosterman_sums_direct(const FieldContext& ctx);

/// phi(n) = S(n,1;p)/sqrt(p) for every n, including phi(0) = -1/sqrt(p).
/// The fourier path is the normalized DFT of x -> e(inverse(x)/p). Conductor 5.
TabulatedFunction build_kloosterman(const FieldContext& ctx, KloostermanMethod method = KloostermanMethod::fourier);

/// Angles from a normalized Kloosterman table. Aborts with std::logic_error
/// if any |S(n,1;p)| exceeds 2 sqrt(p) (a Weil bound violation means a bug).
AngleTable kloosterman_angles(const TabulatedFunction& normalized_kloosterman);
AngleTable kloosterman_angles(const FieldContext& ctx);

/// Chebyshev polynomial of the second kind in the normalization
/// U_d(2 cos t) = sin((d+1) t) / sin t, evaluated by the three-term recurrence.
double chebyshev_u(unsigned d, double t);

/// phi(n) = U_d(S(n,1;p)/sqrt(p)); phi(0) uses S(0,1;p) = -1. Default conductor 2d + 4.
TabulatedFunction build_sym_power(unsigned d, const FieldContext& ctx, std::optional<double> conductor = std::nullopt);
TabulatedFunction build_sym_power(unsigned d, const TabulatedFunction& normalized_kloosterman,
                                  std::optional<double> conductor = std::nullopt);

/// phi(x) = e(h x^2 / p). Conductor 4 by the mixed-family formula.
TabulatedFunction build_quadratic_phase(Residue h, const FieldContext& ctx);

/// w_p(h) = p^{-1/2} sum_y e(h y^2 / p).
Complex gauss_sum(Residue h, const FieldContext& ctx);

/// phi(x) = -p^{-1/2} sum_y psi(y) e(x y / p). Conductor 10 c(psi)^2.
TabulatedFunction build_fourier_family(const TabulatedFunction& psi);

/// phi(n) = e(h g^n / p) on Z/(p-1)Z. Conductor 3.
TabulatedFunction build_korobov(Residue h, const FieldContext& ctx);

struct ResidueIndicator {
  TabulatedFunction indicator;
  std::uint64_t image_size;  // |f(F_p)|
  std::uint64_t p;
  double density() const { return static_cast<double>(image_size) / static_cast<double>(p); }
};

/// Characteristic function of the value set f(F_p). f must be nonconstant,
/// monic and of degree < p. Declared conductor deg f + 1.
ResidueIndicator build_residue_indicator(const Polynomial& f, const FieldContext& ctx);

/// n -> phi(g^n) on Z/(p-1)Z.
TabulatedFunction restrict_multiplicative(const TabulatedFunction& phi, const FieldContext& ctx);

}  // namespace slidesum
