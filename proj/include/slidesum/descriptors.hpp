#pragma once

// Text descriptors for families and regions, as used on the command line
// and in scan configs.
//
// Family:  kind[:key=value,...]
//   legendre                         chi = Legendre, f = X, g = 0
//   mixed:order=2,index=1,f=X^2+1,g=X^3
//   kloosterman
//   sympower:d=2
//   quadphase:h=1
//   fourier:order=1,index=0,f=1,g=X^3   (transform of the mixed family)
//   korobov:h=1                      lives on Z/(p-1)Z
//   residue:f=X^2                    value-set indicator
// Every kind also accepts c=<conductor> and mult=1 (restriction n -> phi(g^n)).
//
// Region:  interval:start,len | gap:a0;a1,N1;a2,N2 | subset:@file | subset:x,y,z

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "slidesum/bounds.hpp"
#include "slidesum/ring_core.hpp"
#include "slidesum/summation.hpp"
#include "slidesum/trace_functions.hpp"

namespace slidesum {

class DescriptorError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct FamilyDescriptor {
  std::string kind;
  std::vector<std::pair<std::string, std::string>> params;  // in input order

  std::optional<std::string> get(std::string_view key) const;
  std::string canonical() const;
};

FamilyDescriptor parse_family(std::string_view text);

enum class FamilyClass {
  additive_trace,  // trace function of a Fourier sheaf on F_p
  korobov,         // n -> e(h g^n / p) on Z/(p-1)Z
  multiplicative,  // restriction of an additive trace function to g^n
  other,           // no structural hypothesis (value-set indicators)
};

struct BuiltFamily {
  std::string name;  // canonical descriptor
  TabulatedFunction phi;
  FamilyClass family_class = FamilyClass::other;
  /// Conductor of the underlying function on F_p (before any restriction).
  double conductor = 1.0;
  std::optional<SpecialKind> special;
  /// f and g of the mixed character, when the family has one.
  std::optional<RationalFunction> f;
  std::optional<RationalFunction> g;

  bool on_unit_group() const {
    return family_class == FamilyClass::korobov || family_class == FamilyClass::multiplicative;
  }
};

/// Throws DescriptorError for unknown kinds, keys or malformed values;
/// DegenerateReduction propagates from the builders.
BuiltFamily build_family(const FamilyDescriptor& desc, const FieldContext& ctx);
BuiltFamily build_family(std::string_view text, const FieldContext& ctx);

/// Parses a region on Z/mZ. Throws DescriptorError on malformed input.
Region parse_region(std::string_view text, std::uint64_t m);

/// "a..b" or "a,b,c" (whitespace tolerant) into integers.
std::vector<std::uint64_t> parse_integer_list(std::string_view text);

}  // namespace slidesum
