#pragma once

// Summation regions in Z/mZ, region sums, shift sets and the Sigma statistic.
//
// Regions are stored as residues; wraparound is handled by index arithmetic
// mod m and never by splitting the value sequence.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "slidesum/numeric.hpp"
#include "slidesum/ring_core.hpp"
#include "slidesum/trace_functions.hpp"

namespace slidesum {

class ModulusMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// start, start+1, ..., start+length-1 reduced mod m, with 1 <= length <= m.
class IntervalZm {
 public:
  IntervalZm(std::uint64_t m, std::uint64_t start, std::uint64_t length);

  std::uint64_t modulus() const { return m_; }
  std::uint64_t start() const { return start_; }
  std::uint64_t length() const { return length_; }
  std::uint64_t element(std::uint64_t i) const { return (start_ + i) % m_; }
  std::vector<std::uint64_t> elements() const;
  std::string describe() const;

 private:
  std::uint64_t m_;
  std::uint64_t start_;
  std::uint64_t length_;
};

/// Sorted set of distinct residues mod m.
class SubsetZm {
 public:
  SubsetZm(std::uint64_t m, std::vector<std::uint64_t> elements);

  std::uint64_t modulus() const { return m_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<std::uint64_t>& elements() const { return elements_; }
  bool contains(std::uint64_t x) const;
  std::string describe() const;

 private:
  std::uint64_t m_;
  std::vector<std::uint64_t> elements_;
};

struct GapAxis {
  std::uint64_t step;   // a_i
  std::uint64_t count;  // N_i >= 2
};

/// a0 + n1 a1 + ... + nk ak with 0 <= n_i < N_i.
struct GapSpec {
  std::uint64_t m = 1;
  std::uint64_t base = 0;
  std::vector<GapAxis> axes;

  std::size_t dimension() const { return axes.size(); }
  /// prod N_i, the size when the progression is proper.
  std::uint64_t nominal_size() const;
  std::string describe() const;
};

/// Raised by enumerate_gap when two index tuples land on the same residue.
class NonProperGap : public std::runtime_error {
 public:
  NonProperGap(std::vector<std::uint64_t> first, std::vector<std::uint64_t> second, std::uint64_t element);

  const std::vector<std::uint64_t>& first() const { return first_; }
  const std::vector<std::uint64_t>& second() const { return second_; }
  std::uint64_t element() const { return element_; }

 private:
  std::vector<std::uint64_t> first_;
  std::vector<std::uint64_t> second_;
  std::uint64_t element_;
};

using Region = std::variant<IntervalZm, GapSpec, SubsetZm>;

std::uint64_t region_modulus(const Region& region);
std::string describe(const Region& region);
/// Elements in enumeration order. Throws NonProperGap for improper GAPs.
std::vector<std::uint64_t> region_elements(const Region& region);

/// All elements of a proper GAP; throws NonProperGap with one collision witness.
/// Requires every N_i >= 2 (std::invalid_argument otherwise).
SubsetZm enumerate_gap(const GapSpec& gap);

/// The N_k sub-progressions obtained by fixing the last index.
std::vector<GapSpec> slice_last_axis(const GapSpec& gap);

/// S(phi; B) = sum_{x in B} phi(x), compensated. Throws ModulusMismatch.
Complex sum_region(const TabulatedFunction& phi, const Region& region);

/// sum_{n in I} phi(g^n) with phi on Z/pZ and I on Z/(p-1)Z.
Complex geometric_progression_sum(const TabulatedFunction& phi, const IntervalZm& interval, const FieldContext& ctx);

/// a -> |(a + B) symmetric-difference B| for every a in Z/mZ.
std::vector<std::uint64_t> symmetric_difference_profile(const SubsetZm& set);

/// T_s(I) = {a : |(a+I) symdiff I| <= s}, by exhaustive enumeration.
SubsetZm t_s_set(const IntervalZm& interval, std::uint64_t s);

/// T_s(H) for a subgroup H: H when s < 2|H|, Z/mZ otherwise. The closed form
/// is cross-checked against enumeration (ConsistencyError on mismatch).
/// Throws std::invalid_argument if H is not a subgroup.
SubsetZm t_s_subgroup(const SubsetZm& subgroup, std::uint64_t s);

/// r_B(d) = #{(x, y) in B^2 : y - x = d mod m}. Closed form for intervals.
std::vector<double> difference_counts(const Region& region);

/// sum_{x,y in B} C(y - x) = sum_d r_B(d) C(d); the real part of the result.
double sigma_from_correlations(std::span<const Complex> profile, const Region& region);

struct NamedValue {
  std::string name;
  double value;
};

struct SigmaReport {
  double sigma = 0.0;                   // direct: sum_a |S(phi; a + B)|^2
  double sigma_via_correlations = 0.0;  // sum_{x,y in B} C(y - x)
  double region_sum_abs = 0.0;          // |S(phi; B)|
  std::uint64_t region_size = 0;
  std::vector<double> shift_magnitudes;  // |S(phi; a + B)|, when requested
  std::vector<NamedValue> attached_bounds;
};

/// Computes Sigma both ways and throws ConsistencyError if they disagree by
/// more than 1e-6 relative.
SigmaReport sigma_statistic(const TabulatedFunction& phi, const Region& region, bool keep_shifts = false);

}  // namespace slidesum
