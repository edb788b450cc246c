#pragma once

// Scan configuration, the cell-by-cell bound sweep, and report output.
//
// A scan is the cross product primes x families. Each (p, family) cell builds
// the table once (spectrum, correlation profile, H check) and then runs every
// applicable check over the interval grid and the GAP shapes. Cells run on a
// worker pool; results are gathered in config order, so the emitted bytes do
// not depend on scheduling.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "slidesum/bounds.hpp"
#include "slidesum/descriptors.hpp"
#include "slidesum/equidist.hpp"
#include "slidesum/spectral.hpp"

namespace slidesum {

inline constexpr const char* kToolVersion = "1.0.0";

struct ScanConfig {
  std::vector<std::uint64_t> primes{101, 211, 499, 1009, 2003, 10007};
  std::vector<std::string> families;  // descriptors; see default_families()
  std::vector<double> multipliers{1.5, 2, 4, 8, 16};
  unsigned starts = 5;  // start 1 plus (starts - 1) seeded draws
  /// GAP shapes as comma-separated axis counts, "r" standing for ceil(sqrt(p)).
  std::vector<std::string> gaps{"r,4", "r,2,2"};
  std::vector<std::string> bounds;  // empty: all
  double eps = 0.1;
  std::string format = "json";
  std::uint64_t seed = 20240917;
  unsigned workers = 1;
  std::uint64_t max_p = 1000003;
  double large_enough = 100.0;
  double gap_ceiling = 20.0;
  unsigned harmonics = 5;
  std::string weyl_f = "X^3";
  std::vector<double> equidist_multipliers{2, 4, 8, 16, 32};

  static std::vector<std::string> default_families();
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Flat "key = value" text, '#' comments. `family` and `gap` may repeat; the
/// first occurrence replaces the default list. Composite primes are dropped.
ScanConfig parse_config(std::string_view text);
ScanConfig load_config(const std::string& path);
/// Resolved config as ordered key/value pairs (echoed into reports).
std::vector<std::pair<std::string, std::string>> config_echo(const ScanConfig& cfg);

struct HRecord {
  std::uint64_t p = 0;
  std::string family;
  std::string condition;  // "H(5c^3)" and so on
  double c = 0.0;
  double sup_norm = 0.0;
  std::uint64_t d_size = 0;
  double max_off_d = 0.0;
  double threshold = 0.0;
  double max_off_zero = 0.0;
  double max_off_zero_over_sqrt_m = 0.0;
  bool verdict = false;
};

struct CrossoverRow {
  std::uint64_t p = 0;
  std::string family;
  std::uint64_t len = 0;
  double multiplier = 0.0;
  std::uint64_t start = 0;
  double lhs = 0.0;
  double b54 = 0.0;
  double completion = 0.0;
  double k_equiv = 0.0;  // len / (sqrt(p) (log p)^{3/2})
  bool sliding_wins() const { return b54 < completion; }
};

struct SkipRecord {
  std::uint64_t p = 0;
  std::string family;
  std::string region;
  std::string reason;
};

struct BoundSummary {
  std::string bound_name;
  std::uint64_t count = 0;
  std::uint64_t asserted = 0;
  double max_ratio = 0.0;
  std::uint64_t failures = 0;
};

struct Summary {
  std::vector<BoundSummary> bounds;  // sorted by name
  std::uint64_t failures = 0;
  std::uint64_t skipped = 0;
  std::uint64_t h_failures = 0;
};

struct Report {
  std::string version = kToolVersion;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<HRecord> hchecks;
  std::vector<BoundCheck> checks;
  std::vector<CrossoverRow> crossover;
  std::vector<SkipRecord> skips;
  Summary summary;
};

/// Recomputes the summary from the record lists.
Summary summarize(const Report& report);

/// One (p, family) cell with everything shared by its checks.
struct FamilyCell {
  std::uint64_t p;
  BuiltFamily family;
  SpectrumTable spectrum;
  CorrelationProfile profile;
  HReport h;
  std::string condition;

  std::uint64_t modulus() const { return family.phi.modulus(); }
};

/// H constant tested for a family: 5c^3 (additive trace), 6c^3 (unit group), c otherwise.
double h_constant(const BuiltFamily& family, std::string* condition = nullptr);

FamilyCell prepare_cell(const FieldContext& ctx, const std::string& descriptor);

/// Every applicable check for one interval of the cell's group. The crossover
/// row is appended when the family admits one.
std::vector<BoundCheck> interval_checks(const FamilyCell& cell, const IntervalZm& interval, const ScanConfig& cfg,
                                        std::vector<CrossoverRow>* crossover = nullptr, double multiplier = 0.0);

/// Builds the GAP for a shape string; nullopt-free: throws DescriptorError on bad shapes.
GapSpec gap_from_shape(const std::string& shape, std::uint64_t m, std::uint64_t p);

/// Interval lengths ceil(mu * ceil(sqrt(p))) for the configured multipliers.
std::uint64_t grid_length(double multiplier, std::uint64_t p);

/// Deterministic start for (seed, p, family, multiplier index, start index);
/// start index 0 is always 1.
std::uint64_t sampled_start(std::uint64_t seed, std::uint64_t p, std::string_view family, std::size_t mult_index,
                            std::size_t start_index, std::uint64_t m);

Report run_scan(const ScanConfig& cfg);

/// "json" or "csv"; std::invalid_argument for anything else. CSV carries the
/// BoundCheck records only; columns selects a subset in the given order.
std::string emit(const Report& report, std::string_view format, const std::vector<std::string>& columns = {});

std::string checks_to_json(const std::vector<BoundCheck>& checks);
std::string checks_to_csv(const std::vector<BoundCheck>& checks, const std::vector<std::string>& columns = {});
std::vector<BoundCheck> checks_from_csv(std::string_view text);

/// RFC 4180 style parse (quoted fields, doubled quotes, LF or CRLF).
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

/// "%.12g" and its parsed-back value.
std::string format12(double x);
double round12(double x);

struct EquidistRow {
  std::uint64_t p = 0;
  std::string family;
  std::uint64_t len = 0;
  double multiplier = 0.0;
  SampleStats stats;
};

/// Kloosterman angles and fractional parts of weyl_f/p over intervals
/// [1, ceil(mu ceil(sqrt p))] for the equidist multipliers.
std::vector<EquidistRow> run_equidist(const ScanConfig& cfg, std::uint64_t p);
std::string equidist_csv(const std::vector<EquidistRow>& rows, unsigned harmonics);

}  // namespace slidesum
