#pragma once

// Exact arithmetic over F_p and Z/mZ.
//
// FieldContext bundles a prime p with its smallest primitive root g and the
// lookup tables every other module leans on: discrete logarithms to base g,
// powers of g and modular inverses. Characters are evaluated through the
// discrete-log table as exact rational angles, so chi(x) never accumulates
// drift as p grows.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "slidesum/numeric.hpp"

namespace slidesum {

using Residue = std::uint64_t;

/// Raised when a rational function's denominator vanishes identically mod p.
class DegenerateReduction : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// base^exp mod m by square-and-multiply. exp = 0 gives 1 mod m.
Residue mod_pow(Residue base, std::uint64_t exp, std::uint64_t m);

/// Inverse of x modulo the prime p. Throws std::domain_error for x = 0 mod p.
Residue mod_inverse(Residue x, std::uint64_t p);

/// Deterministic Miller-Rabin, exact for every n < 2^64.
bool is_prime(std::uint64_t n);

/// Distinct prime divisors of n in increasing order (trial division).
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// Smallest positive primitive root of the prime p (1 for p = 2).
Residue find_primitive_root(std::uint64_t p);

class FieldContext {
 public:
  /// Builds all tables in O(p). Throws std::invalid_argument if p is not prime.
  explicit FieldContext(std::uint64_t p);

  std::uint64_t p() const { return p_; }
  Residue generator() const { return g_; }

  /// n in [0, p-1) with g^n = x. Throws std::domain_error for x = 0.
  std::uint64_t dlog(Residue x) const;
  /// g^n, n taken mod p-1.
  Residue pow_generator(std::uint64_t n) const { return exp_[n % (p_ - 1)]; }
  /// Table lookup; throws std::domain_error for x = 0.
  Residue inverse(Residue x) const;

  Residue reduce(std::int64_t x) const;

 private:
  std::uint64_t p_;
  Residue g_;
  std::vector<std::uint32_t> dlog_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> inv_;
};

/// Integer polynomial, coefficients stored lowest degree first with no
/// trailing zeros (the zero polynomial has no coefficients).
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<std::int64_t> coeffs);

  static Polynomial constant(std::int64_t c) { return Polynomial({c}); }
  static Polynomial monomial(unsigned degree, std::int64_t c = 1);

  /// Parses expressions such as "X^3 - 2X + 1", "3*x^2+1", "0".
  static Polynomial parse(std::string_view text);

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  /// Degree with deg(0) read as 0, the convention used by conductor formulas.
  unsigned degree_or_zero() const { return is_zero() ? 0u : static_cast<unsigned>(degree()); }
  bool is_monic() const { return !is_zero() && coeffs_.back() == 1; }
  const std::vector<std::int64_t>& coefficients() const { return coeffs_; }

  /// Horner evaluation mod p.
  Residue evaluate(Residue x, std::uint64_t p) const;
  /// Coefficients reduced into [0, p), trailing zeros stripped.
  std::vector<Residue> reduced(std::uint64_t p) const;
  /// Degree after reduction mod p (-1 when it reduces to zero).
  int reduced_degree(std::uint64_t p) const;
  bool has_root_mod(std::uint64_t p) const;

  std::string to_string() const;

 private:
  std::vector<std::int64_t> coeffs_;
};

class RationalFunction {
 public:
  RationalFunction() : numerator_(Polynomial::constant(0)), denominator_(Polynomial::constant(1)) {}
  RationalFunction(Polynomial numerator, Polynomial denominator = Polynomial::constant(1));

  /// "P", "P/Q" or "(P)/(Q)".
  static RationalFunction parse(std::string_view text);

  const Polynomial& numerator() const { return numerator_; }
  const Polynomial& denominator() const { return denominator_; }

  /// Whether the denominator vanishes identically mod p.
  bool degenerate_mod(std::uint64_t p) const;
  /// Reduces to a polynomial of degree <= 1 mod p (constant nonzero denominator).
  bool is_affine_mod(std::uint64_t p) const;
  bool is_polynomial_mod(std::uint64_t p) const;

  std::string to_string() const;

 private:
  Polynomial numerator_;
  Polynomial denominator_;
};

/// f(x) = f1(x) * inverse(f2(x)) mod p, or nullopt at a pole (f2(x) = 0).
/// Throws DegenerateReduction when the denominator vanishes identically.
std::optional<Residue> eval_rational(const RationalFunction& f, Residue x, const FieldContext& ctx);

/// Dirichlet character mod p of order dividing `order`:
/// chi(g^j) = e(j * index / order), chi(0) = 0.
struct CharacterSpec {
  std::uint64_t order = 1;
  std::uint64_t index = 0;

  static CharacterSpec trivial() { return {1, 0}; }
  static CharacterSpec legendre() { return {2, 1}; }

  bool is_trivial() const { return index % order == 0; }
};

/// Unit-modulus value for x != 0, exactly 0 at x = 0.
/// Throws std::invalid_argument unless order divides p - 1.
Complex character_value(const CharacterSpec& chi, Residue x, const FieldContext& ctx);

}  // namespace slidesum
