#include "slidesum/summation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "slidesum/spectral.hpp"

namespace slidesum {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<char> membership(std::uint64_t m, const std::vector<std::uint64_t>& elements) {
  std::vector<char> in(m, 0);
  for (auto x : elements) in[x] = 1;
  return in;
}

std::vector<std::uint64_t> decode_index(std::uint64_t linear, const GapSpec& gap) {
  std::vector<std::uint64_t> tuple;
  for (const auto& axis : gap.axes) {
    tuple.push_back(linear % axis.count);
    linear /= axis.count;
  }
  return tuple;
}

std::string tuple_string(const std::vector<std::uint64_t>& t) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
  os << ')';
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------

IntervalZm::IntervalZm(std::uint64_t m, std::uint64_t start, std::uint64_t length)
    : m_(m), start_(m == 0 ? 0 : start % m), length_(length) {
  if (m == 0) throw std::invalid_argument("IntervalZm: modulus must be positive");
  if (length == 0 || length > m) throw std::invalid_argument("IntervalZm: length must lie in [1, m]");
}

std::vector<std::uint64_t> IntervalZm::elements() const {
  std::vector<std::uint64_t> out(length_);
  for (std::uint64_t i = 0; i < length_; ++i) out[i] = element(i);
  return out;
}

std::string IntervalZm::describe() const {
  return "interval:" + std::to_string(start_) + "," + std::to_string(length_);
}

SubsetZm::SubsetZm(std::uint64_t m, std::vector<std::uint64_t> elements) : m_(m), elements_(std::move(elements)) {
  if (m == 0) throw std::invalid_argument("SubsetZm: modulus must be positive");
  std::sort(elements_.begin(), elements_.end());
  if (std::adjacent_find(elements_.begin(), elements_.end()) != elements_.end()) {
    throw std::invalid_argument("SubsetZm: elements must be distinct");
  }
  if (!elements_.empty() && elements_.back() >= m) throw std::invalid_argument("SubsetZm: element out of range");
}

bool SubsetZm::contains(std::uint64_t x) const { return std::binary_search(elements_.begin(), elements_.end(), x); }

std::string SubsetZm::describe() const { return "subset:" + std::to_string(elements_.size()) + "@" + std::to_string(m_); }

std::uint64_t GapSpec::nominal_size() const {
  std::uint64_t n = 1;
  for (const auto& axis : axes) n *= axis.count;
  return n;
}

std::string GapSpec::describe() const {
  std::ostringstream os;
  os << "gap:" << base;
  for (const auto& axis : axes) os << ';' << axis.step << ',' << axis.count;
  return os.str();
}

NonProperGap::NonProperGap(std::vector<std::uint64_t> first, std::vector<std::uint64_t> second, std::uint64_t element)
    : std::runtime_error("generalized progression is not proper: " + tuple_string(first) + " and " +
                         tuple_string(second) + " both give " + std::to_string(element)),
      first_(std::move(first)),
      second_(std::move(second)),
      element_(element) {}

std::uint64_t region_modulus(const Region& region) {
  return std::visit(Overloaded{[](const IntervalZm& r) { return r.modulus(); },
                               [](const GapSpec& r) { return r.m; },
                               [](const SubsetZm& r) { return r.modulus(); }},
                    region);
}

std::string describe(const Region& region) {
  return std::visit([](const auto& r) { return r.describe(); }, region);
}

std::vector<std::uint64_t> region_elements(const Region& region) {
  return std::visit(Overloaded{[](const IntervalZm& r) { return r.elements(); },
                               [](const GapSpec& r) { return enumerate_gap(r).elements(); },
                               [](const SubsetZm& r) { return r.elements(); }},
                    region);
}

SubsetZm enumerate_gap(const GapSpec& gap) {
  if (gap.m == 0) throw std::invalid_argument("enumerate_gap: modulus must be positive");
  for (const auto& axis : gap.axes) {
    if (axis.count < 2) throw std::invalid_argument("enumerate_gap: every N_i must be at least 2");
  }
  const std::uint64_t total = gap.nominal_size();
  std::vector<std::int64_t> owner(gap.m, -1);
  std::vector<std::uint64_t> elements;
  elements.reserve(std::min(total, gap.m));
  for (std::uint64_t linear = 0; linear < total; ++linear) {
    std::uint64_t rest = linear;
    std::uint64_t b = gap.base % gap.m;
    for (const auto& axis : gap.axes) {
      const std::uint64_t n = rest % axis.count;
      rest /= axis.count;
      b = static_cast<std::uint64_t>((static_cast<unsigned __int128>(n) * (axis.step % gap.m) + b) % gap.m);
    }
    if (owner[b] >= 0) {
      throw NonProperGap(decode_index(static_cast<std::uint64_t>(owner[b]), gap), decode_index(linear, gap), b);
    }
    owner[b] = static_cast<std::int64_t>(linear);
    elements.push_back(b);
  }
  return {gap.m, std::move(elements)};
}

std::vector<GapSpec> slice_last_axis(const GapSpec& gap) {
  if (gap.axes.empty()) throw std::invalid_argument("slice_last_axis: progression has dimension 0");
  std::vector<GapSpec> out;
  const auto last = gap.axes.back();
  for (std::uint64_t j = 0; j < last.count; ++j) {
    GapSpec slice{gap.m, (gap.base + j * (last.step % gap.m)) % gap.m, gap.axes};
    slice.axes.pop_back();
    out.push_back(std::move(slice));
  }
  return out;
}

Complex sum_region(const TabulatedFunction& phi, const Region& region) {
  if (region_modulus(region) != phi.modulus()) {
    throw ModulusMismatch("sum_region: region modulus " + std::to_string(region_modulus(region)) +
                          " does not match function modulus " + std::to_string(phi.modulus()));
  }
  CompensatedSum<Complex> acc;
  if (const auto* interval = std::get_if<IntervalZm>(&region)) {
    for (std::uint64_t i = 0; i < interval->length(); ++i) acc += phi[interval->element(i)];
  } else {
    for (auto x : region_elements(region)) acc += phi[x];
  }
  return acc.value();
}

Complex geometric_progression_sum(const TabulatedFunction& phi, const IntervalZm& interval, const FieldContext& ctx) {
  if (phi.modulus() != ctx.p() || interval.modulus() != ctx.p() - 1) {
    throw ModulusMismatch("geometric_progression_sum: expects phi mod p and an interval mod p-1");
  }
  CompensatedSum<Complex> acc;
  for (std::uint64_t i = 0; i < interval.length(); ++i) acc += phi[ctx.pow_generator(interval.element(i))];
  return acc.value();
}

std::vector<std::uint64_t> symmetric_difference_profile(const SubsetZm& set) {
  const auto m = set.modulus();
  const auto in = membership(m, set.elements());
  std::vector<std::uint64_t> profile(m, 0);
  for (std::uint64_t a = 0; a < m; ++a) {
    std::uint64_t outside = 0;  // |(a + B) \ B|
    for (auto x : set.elements()) {
      if (!in[(x + a) % m]) ++outside;
    }
    profile[a] = 2 * outside;
  }
  return profile;
}

SubsetZm t_s_set(const IntervalZm& interval, std::uint64_t s) {
  const auto profile = symmetric_difference_profile(SubsetZm(interval.modulus(), interval.elements()));
  std::vector<std::uint64_t> shifts;
  for (std::uint64_t a = 0; a < profile.size(); ++a) {
    if (profile[a] <= s) shifts.push_back(a);
  }
  return {interval.modulus(), std::move(shifts)};
}

SubsetZm t_s_subgroup(const SubsetZm& subgroup, std::uint64_t s) {
  const auto m = subgroup.modulus();
  const auto in = membership(m, subgroup.elements());
  if (subgroup.size() == 0 || !in[0]) throw std::invalid_argument("t_s_subgroup: set does not contain 0");
  for (auto x : subgroup.elements()) {
    for (auto y : subgroup.elements()) {
      if (!in[(x + y) % m]) throw std::invalid_argument("t_s_subgroup: set is not closed under addition");
    }
  }
  SubsetZm predicted = s < 2 * subgroup.size() ? subgroup : [&] {
    std::vector<std::uint64_t> all(m);
    for (std::uint64_t a = 0; a < m; ++a) all[a] = a;
    return SubsetZm(m, std::move(all));
  }();

  const auto profile = symmetric_difference_profile(subgroup);
  std::vector<std::uint64_t> brute;
  for (std::uint64_t a = 0; a < m; ++a) {
    if (profile[a] <= s) brute.push_back(a);
  }
  if (brute != predicted.elements()) {
    throw ConsistencyError("t_s_subgroup: closed form disagrees with enumeration");
  }
  return predicted;
}

std::vector<double> difference_counts(const Region& region) {
  const auto m = region_modulus(region);
  std::vector<double> r(m, 0.0);
  if (const auto* interval = std::get_if<IntervalZm>(&region)) {
    const auto len = static_cast<std::int64_t>(interval->length());
    const auto mm = static_cast<std::int64_t>(m);
    for (std::int64_t delta = -(len - 1); delta <= len - 1; ++delta) {
      std::int64_t d = delta % mm;
      if (d < 0) d += mm;
      r[static_cast<std::size_t>(d)] += static_cast<double>(len - (delta < 0 ? -delta : delta));
    }
    return r;
  }
  const auto elements = region_elements(region);
  for (auto x : elements) {
    for (auto y : elements) r[(y + m - x) % m] += 1.0;
  }
  return r;
}

double sigma_from_correlations(std::span<const Complex> profile, const Region& region) {
  if (profile.size() != region_modulus(region)) throw ModulusMismatch("sigma_from_correlations: modulus mismatch");
  const auto r = difference_counts(region);
  CompensatedSum<double> acc;
  for (std::size_t d = 0; d < r.size(); ++d) {
    if (r[d] != 0.0) acc += r[d] * profile[d].real();
  }
  return acc.value();
}

SigmaReport sigma_statistic(const TabulatedFunction& phi, const Region& region, bool keep_shifts) {
  const auto m = phi.modulus();
  if (region_modulus(region) != m) throw ModulusMismatch("sigma_statistic: modulus mismatch");
  const auto elements = region_elements(region);

  SigmaReport report;
  report.region_size = elements.size();
  CompensatedSum<double> sigma;
  if (keep_shifts) report.shift_magnitudes.resize(m);
  // Intervals slide in O(1) per shift, re-summed from scratch every kRefresh
  // shifts to keep the running sum from drifting.
  constexpr std::uint64_t kRefresh = 256;
  const bool sliding = std::holds_alternative<IntervalZm>(region);
  Complex window{};
  for (std::uint64_t a = 0; a < m; ++a) {
    if (!sliding || a % kRefresh == 0) {
      CompensatedSum<Complex> s;
      for (auto x : elements) s += phi[(x + a) % m];
      window = s.value();
    } else {
      const auto& iv = std::get<IntervalZm>(region);
      window += phi[(iv.start() + a - 1 + iv.length()) % m] - phi[(iv.start() + a - 1) % m];
    }
    const double mag = std::abs(window);
    if (a == 0) report.region_sum_abs = mag;
    if (keep_shifts) report.shift_magnitudes[a] = mag;
    sigma += mag * mag;
  }
  report.sigma = sigma.value();

  const auto profile = correlations(phi);
  report.sigma_via_correlations = sigma_from_correlations(profile.values, region);

  const double floor = 1e-9 * (1.0 + phi.l2_norm() * phi.l2_norm() * static_cast<double>(elements.size()));
  if (!close_relative(report.sigma, report.sigma_via_correlations, 1e-6, floor)) {
    throw ConsistencyError("sigma_statistic: direct Sigma " + std::to_string(report.sigma) +
                           " disagrees with correlation route " + std::to_string(report.sigma_via_correlations));
  }
  return report;
}

}  // namespace slidesum
