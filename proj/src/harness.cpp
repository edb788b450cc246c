#include "slidesum/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace slidesum {

namespace {

using json = nlohmann::ordered_json;

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<double> parse_real_list(const std::string& text) {
  std::string spaced = text;
  std::replace(spaced.begin(), spaced.end(), ',', ' ');
  std::istringstream in(spaced);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size()) throw ConfigError("not a number: \"" + tok + "\"");
    out.push_back(v);
  }
  return out;
}

std::string join_reals(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + format12(xs[i]);
  return out;
}

std::string join(const std::vector<std::string>& xs, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t ceil_sqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r < n) ++r;
  while (r > 0 && (r - 1) * (r - 1) >= n) --r;
  return r;
}

BoundCheck stamp(BoundCheck check, const FamilyCell& cell, const IntervalZm& interval, double c, double eps) {
  check.family = cell.family.name;
  check.modulus = cell.modulus();
  check.region = interval.describe();
  check.c = c;
  check.eps = eps;
  return check;
}

json check_json(const BoundCheck& b) {
  json j;
  j["bound_name"] = b.bound_name;
  j["formula"] = b.formula;
  j["family"] = b.family;
  j["modulus"] = b.modulus;
  j["region"] = b.region;
  j["c"] = round12(b.c);
  j["eps"] = round12(b.eps);
  j["lhs"] = round12(b.lhs);
  j["rhs"] = round12(b.rhs);
  j["ratio"] = round12(b.ratio);
  j["pass"] = b.pass;
  j["asserted"] = b.asserted;
  return j;
}

const std::vector<std::string>& check_columns() {
  static const std::vector<std::string> cols = {"bound_name", "formula", "family", "modulus", "region", "c",
                                                "eps",        "lhs",     "rhs",    "ratio",   "pass",   "asserted"};
  return cols;
}

std::string check_field(const BoundCheck& b, const std::string& col) {
  if (col == "bound_name") return b.bound_name;
  if (col == "formula") return b.formula;
  if (col == "family") return b.family;
  if (col == "modulus") return std::to_string(b.modulus);
  if (col == "region") return b.region;
  if (col == "c") return format12(b.c);
  if (col == "eps") return format12(b.eps);
  if (col == "lhs") return format12(b.lhs);
  if (col == "rhs") return format12(b.rhs);
  if (col == "ratio") return format12(b.ratio);
  if (col == "pass") return b.pass ? "true" : "false";
  if (col == "asserted") return b.asserted ? "true" : "false";
  throw std::invalid_argument("unknown column \"" + col + "\"");
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

bool parse_bool(const std::string& s) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw std::invalid_argument("not a boolean: \"" + s + "\"");
}

}  // namespace

std::vector<std::string> ScanConfig::default_families() {
  return {"legendre",   "mixed:order=2,index=1,f=X^2+1,g=X^3", "kloosterman", "sympower:d=2",
          "quadphase:h=1", "korobov:h=1",                      "quadphase:h=1,mult=1"};
}

ScanConfig parse_config(std::string_view text) {
  ScanConfig cfg;
  cfg.families = ScanConfig::default_families();
  bool families_seen = false, gaps_seen = false;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const auto key = trim(std::string_view(line).substr(0, eq));
    const auto value = trim(std::string_view(line).substr(eq + 1));
    try {
      if (key == "primes") {
        cfg.primes.clear();
        for (auto v : parse_integer_list(value)) {
          if (is_prime(v)) cfg.primes.push_back(v);
        }
      } else if (key == "family") {
        if (!families_seen) cfg.families.clear();
        families_seen = true;
        if (value != "none") {
          parse_family(value);
          cfg.families.push_back(value);
        }
      } else if (key == "gap") {
        if (!gaps_seen) cfg.gaps.clear();
        gaps_seen = true;
        if (value != "none") cfg.gaps.push_back(value);
      } else if (key == "multipliers") {
        cfg.multipliers = parse_real_list(value);
      } else if (key == "equidist_multipliers") {
        cfg.equidist_multipliers = parse_real_list(value);
      } else if (key == "starts") {
        cfg.starts = static_cast<unsigned>(std::stoul(value));
        if (cfg.starts == 0) throw ConfigError("starts must be positive");
      } else if (key == "bounds") {
        cfg.bounds.clear();
        if (value != "all") {
          std::string spaced = value;
          std::replace(spaced.begin(), spaced.end(), ',', ' ');
          std::istringstream names(spaced);
          std::string name;
          while (names >> name) cfg.bounds.push_back(name);
        }
      } else if (key == "eps") {
        cfg.eps = std::stod(value);
        if (!(cfg.eps > 0.0 && cfg.eps < 1.0 / 3.0)) throw ConfigError("eps must lie in (0, 1/3)");
      } else if (key == "format") {
        if (value != "json" && value != "csv") throw ConfigError("format must be json or csv");
        cfg.format = value;
      } else if (key == "seed") {
        cfg.seed = std::stoull(value);
      } else if (key == "workers") {
        cfg.workers = std::max(1u, static_cast<unsigned>(std::stoul(value)));
      } else if (key == "max_p") {
        cfg.max_p = std::stoull(value);
      } else if (key == "large_enough") {
        cfg.large_enough = std::stod(value);
      } else if (key == "gap_ceiling") {
        cfg.gap_ceiling = std::stod(value);
      } else if (key == "harmonics") {
        cfg.harmonics = static_cast<unsigned>(std::stoul(value));
      } else if (key == "weyl_f") {
        cfg.weyl_f = value;
      } else {
        throw ConfigError("unknown key \"" + key + "\"");
      }
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    } catch (const std::exception& e) {
      throw ConfigError("line " + std::to_string(lineno) + " (" + key + "): " + e.what());
    }
  }
  return cfg;
}

ScanConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config \"" + path + "\"");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::vector<std::pair<std::string, std::string>> config_echo(const ScanConfig& cfg) {
  std::vector<std::string> primes;
  for (auto p : cfg.primes) primes.push_back(std::to_string(p));
  return {
      {"primes", join(primes, ",")},
      {"families", join(cfg.families, ";")},
      {"multipliers", join_reals(cfg.multipliers)},
      {"starts", std::to_string(cfg.starts)},
      {"gaps", join(cfg.gaps, ";")},
      {"bounds", cfg.bounds.empty() ? "all" : join(cfg.bounds, ",")},
      {"eps", format12(cfg.eps)},
      {"seed", std::to_string(cfg.seed)},
      {"max_p", std::to_string(cfg.max_p)},
      {"large_enough", format12(cfg.large_enough)},
      {"gap_ceiling", format12(cfg.gap_ceiling)},
  };
}

Summary summarize(const Report& report) {
  std::map<std::string, BoundSummary> by_name;
  Summary summary;
  for (const auto& check : report.checks) {
    auto& entry = by_name[check.bound_name];
    entry.bound_name = check.bound_name;
    ++entry.count;
    entry.max_ratio = std::max(entry.max_ratio, check.ratio);
    if (check.asserted) {
      ++entry.asserted;
      if (!check.pass) ++entry.failures;
    }
  }
  for (auto& [name, entry] : by_name) {
    summary.failures += entry.failures;
    summary.bounds.push_back(entry);
  }
  summary.skipped = report.skips.size();
  for (const auto& h : report.hchecks) summary.h_failures += h.verdict ? 0 : 1;
  return summary;
}

double h_constant(const BuiltFamily& family, std::string* condition) {
  const double c = family.conductor;
  switch (family.family_class) {
    case FamilyClass::additive_trace:
      if (condition) *condition = "H(5c^3)";
      return 5.0 * c * c * c;
    case FamilyClass::korobov:
    case FamilyClass::multiplicative:
      if (condition) *condition = "H(6c^3)";
      return 6.0 * c * c * c;
    case FamilyClass::other:
      break;
  }
  if (condition) *condition = "H(c)";
  return c;
}

FamilyCell prepare_cell(const FieldContext& ctx, const std::string& descriptor) {
  auto family = build_family(descriptor, ctx);
  std::string condition;
  const double c_h = h_constant(family, &condition);
  auto spectrum = dft(family.phi);
  auto profile = correlations(family.phi);
  auto h = check_H(family.phi, profile, c_h);
  return FamilyCell{ctx.p(), std::move(family), std::move(spectrum), std::move(profile), std::move(h),
                    std::move(condition)};
}

std::vector<BoundCheck> interval_checks(const FamilyCell& cell, const IntervalZm& interval, const ScanConfig& cfg,
                                        std::vector<CrossoverRow>* crossover, double multiplier) {
  const auto& fam = cell.family;
  const auto& phi = fam.phi;
  const auto m = cell.modulus();
  const auto p = cell.p;
  const auto len = interval.length();
  const double c = fam.conductor;
  std::vector<BoundCheck> out;
  const double lhs = std::abs(sum_region(phi, interval));

  out.push_back(stamp(make_bound_check("sliding_general",
                                       "2|phi|inf^(1/3)(|D|^(1/3)|I|^(1/3)|phi|2^(2/3)+|I|^(2/3)max|C|^(1/3)"
                                       "+(2/3)|I|^(2/3)|phi|inf^(2/3)), D={0}",
                                       lhs, sliding_bound_general(phi, interval, SubsetZm(m, {0}), cell.profile)),
                      cell, interval, c, 0.0));

  if (cell.h.verdict) {
    const auto cb = concrete_bound(cell.h.c, m, len);
    out.push_back(stamp(make_bound_check("concrete_general", "2c^(4/3)(m^(1/3)|I|^(1/3)+2m^(1/6)|I|^(2/3)), c=" +
                                                              cell.condition,
                                         lhs, cb.general),
                        cell, interval, cell.h.c, 0.0));
    if (cb.short_form) {
      out.push_back(stamp(make_bound_check("concrete_short", "6c^(4/3)|I|(sqrt(m)/|I|)^(1/3), c=" + cell.condition, lhs,
                                           *cb.short_form),
                          cell, interval, cell.h.c, 0.0));
    }
  }

  std::optional<double> b54;
  if (fam.family_class == FamilyClass::additive_trace) {
    const auto tb = trace_interval_bound(c, p, len);
    out.push_back(stamp(make_bound_check("trace_b18", "18c^4(p^(1/3)|I|^(1/3)+2p^(1/6)|I|^(2/3))", lhs, tb.b18),
                        cell, interval, c, 0.0));
    if (tb.b54) {
      b54 = tb.b54;
      out.push_back(stamp(make_bound_check("trace_b54", "54c^4|I|(sqrt(p)/|I|)^(1/3)", lhs, *tb.b54), cell,
                          interval, c, 0.0));
    }
  }
  if (fam.on_unit_group() && static_cast<double>(len) > std::sqrt(static_cast<double>(p - 1))) {
    out.push_back(stamp(make_bound_check("mult_b66", "66c^4|I|(sqrt(p-1)/|I|)^(1/3)", lhs,
                                         mult_interval_bound(c, p, len)),
                        cell, interval, c, 0.0));
  }

  const double completion = completion_bound(cell.spectrum, interval);
  out.push_back(stamp(make_bound_check("completion", "|hat(phi)|inf * sum_t |hat(1_I)(t)|", lhs, completion), cell,
                      interval, c, 0.0));

  if (2 * len < m) {
    const auto lower = sigma_lower_bounds(phi, interval, cfg.eps, cfg.large_enough);
    const auto sigma = sigma_statistic(phi, interval);
    out.push_back(stamp(make_bound_check("sigma_eighth", "|S|^3/(8|phi|inf)-|S|^2/4 <= Sigma", lower.eighth,
                                         sigma.sigma),
                        cell, interval, c, 0.0));
    auto third = stamp(make_bound_check("sigma_third", "(1/3-eps)|S|^3/|phi|inf <= Sigma", lower.third, sigma.sigma),
                       cell, interval, c, cfg.eps);
    third.asserted = !lower.third_conditional;
    out.push_back(std::move(third));
  }

  if (fam.special) {
    SpecialParams params{p, cfg.eps, cfg.large_enough, fam.f, fam.g};
    try {
      auto check = special_bounds(*fam.special, phi, interval, params);
      check.family = fam.name;
      out.push_back(std::move(check));
    } catch (const std::invalid_argument&) {
      // the family fails the no-zero hypothesis at this p; nothing to assert
    }
  }

  if (crossover && b54) {
    const double pp = static_cast<double>(p);
    const double scale = std::sqrt(pp) * std::pow(std::log(pp), 1.5);
    crossover->push_back(CrossoverRow{p, fam.name, len, multiplier, interval.start(), lhs, *b54, completion,
                                      static_cast<double>(len) / scale});
  }
  return out;
}

GapSpec gap_from_shape(const std::string& shape, std::uint64_t m, std::uint64_t p) {
  GapSpec gap;
  gap.m = m;
  gap.base = 1;
  const auto r = ceil_sqrt(p);
  std::uint64_t step = 1;
  std::string spaced = shape;
  std::replace(spaced.begin(), spaced.end(), ',', ' ');
  std::istringstream in(spaced);
  std::string tok;
  while (in >> tok) {
    std::uint64_t count = 0;
    if (tok == "r") {
      count = r;
    } else {
      char* end = nullptr;
      count = std::strtoull(tok.c_str(), &end, 10);
      if (end != tok.c_str() + tok.size() || count < 2) throw DescriptorError("bad gap shape \"" + shape + "\"");
    }
    gap.axes.push_back({step % m, count});
    step *= 2 * count + 1;  // leaves room between copies, so the GAP is not an interval
  }
  if (gap.axes.empty()) throw DescriptorError("empty gap shape");
  return gap;
}

std::uint64_t grid_length(double multiplier, std::uint64_t p) {
  return static_cast<std::uint64_t>(std::ceil(multiplier * static_cast<double>(ceil_sqrt(p)) - 1e-9));
}

std::uint64_t sampled_start(std::uint64_t seed, std::uint64_t p, std::string_view family, std::size_t mult_index,
                            std::size_t start_index, std::uint64_t m) {
  if (start_index == 0) return 1 % m;
  const auto fh = fnv1a(family);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(fh),
                    static_cast<std::uint32_t>(fh >> 32), static_cast<std::uint32_t>(mult_index),
                    static_cast<std::uint32_t>(start_index)};
  std::mt19937_64 rng(seq);
  return rng() % m;
}

namespace {

struct CellOutput {
  std::vector<HRecord> hchecks;
  std::vector<BoundCheck> checks;
  std::vector<CrossoverRow> crossover;
  std::vector<SkipRecord> skips;
};

CellOutput run_cell(const ScanConfig& cfg, const FieldContext& ctx, const std::string& descriptor) {
  CellOutput out;
  const auto p = ctx.p();
  std::optional<FamilyCell> cell;
  try {
    cell.emplace(prepare_cell(ctx, descriptor));
  } catch (const DescriptorError&) {
    throw;
  } catch (const std::exception& e) {
    out.skips.push_back({p, descriptor, "", std::string("family unavailable: ") + e.what()});
    return out;
  }
  const auto& fam = cell->family;
  const auto m = cell->modulus();
  const auto& h = cell->h;
  out.hchecks.push_back(HRecord{p, fam.name, cell->condition, h.c, h.sup_norm, h.exceptional.size(), h.max_off_d,
                                h.threshold, cell->profile.max_off_zero(),
                                cell->profile.max_off_zero() / std::sqrt(static_cast<double>(m)), h.verdict});

  for (std::size_t mi = 0; mi < cfg.multipliers.size(); ++mi) {
    const auto len = grid_length(cfg.multipliers[mi], p);
    if (len >= m) {
      out.skips.push_back({p, fam.name, "len=" + std::to_string(len), "interval length not below the modulus"});
      continue;
    }
    for (unsigned si = 0; si < cfg.starts; ++si) {
      const IntervalZm interval(m, sampled_start(cfg.seed, p, fam.name, mi, si, m), len);
      auto checks = interval_checks(*cell, interval, cfg, &out.crossover, cfg.multipliers[mi]);
      out.checks.insert(out.checks.end(), std::make_move_iterator(checks.begin()),
                        std::make_move_iterator(checks.end()));
    }
  }

  for (const auto& shape : cfg.gaps) {
    const auto gap = gap_from_shape(shape, m, p);
    try {
      out.checks.push_back(gap_bound_ratio(fam.phi, gap, cfg.gap_ceiling));
      out.checks.back().family = fam.name;
    } catch (const NonProperGap&) {
      out.skips.push_back({p, fam.name, gap.describe(), "GAP is not proper"});
    } catch (const std::invalid_argument& e) {
      out.skips.push_back({p, fam.name, gap.describe(), e.what()});
    }
  }
  return out;
}

}  // namespace

Report run_scan(const ScanConfig& cfg) {
  Report report;
  report.config = config_echo(cfg);

  struct Job {
    std::size_t prime_index;
    std::size_t family_index;
  };
  std::vector<Job> jobs;
  for (std::size_t pi = 0; pi < cfg.primes.size(); ++pi) {
    const auto p = cfg.primes[pi];
    if (p > cfg.max_p) {
      report.skips.push_back({p, "", "", "p exceeds max_p " + std::to_string(cfg.max_p)});
      continue;
    }
    for (std::size_t fi = 0; fi < cfg.families.size(); ++fi) jobs.push_back({pi, fi});
  }

  // Field tables are shared read-only across a prime's cells.
  std::vector<std::optional<FieldContext>> fields(cfg.primes.size());
  for (const auto& job : jobs) {
    if (!fields[job.prime_index]) fields[job.prime_index].emplace(cfg.primes[job.prime_index]);
  }

  std::vector<CellOutput> outputs(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        outputs[i] = run_cell(cfg, *fields[jobs[i].prime_index], cfg.families[jobs[i].family_index]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned n_workers = std::min<std::size_t>(cfg.workers, std::max<std::size_t>(jobs.size(), 1));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (auto& out : outputs) {
    report.hchecks.insert(report.hchecks.end(), out.hchecks.begin(), out.hchecks.end());
    for (auto& check : out.checks) {
      if (cfg.bounds.empty() || std::find(cfg.bounds.begin(), cfg.bounds.end(), check.bound_name) != cfg.bounds.end()) {
        report.checks.push_back(std::move(check));
      }
    }
    report.crossover.insert(report.crossover.end(), out.crossover.begin(), out.crossover.end());
    report.skips.insert(report.skips.end(), out.skips.begin(), out.skips.end());
  }
  report.summary = summarize(report);
  return report;
}

std::string format12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double round12(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(format12(x).c_str(), nullptr);
}

std::string checks_to_json(const std::vector<BoundCheck>& checks) {
  json arr = json::array();
  for (const auto& c : checks) arr.push_back(check_json(c));
  return arr.dump(2) + "\n";
}

std::string checks_to_csv(const std::vector<BoundCheck>& checks, const std::vector<std::string>& columns) {
  const auto& cols = columns.empty() ? check_columns() : columns;
  for (const auto& col : cols) {
    if (std::find(check_columns().begin(), check_columns().end(), col) == check_columns().end()) {
      throw std::invalid_argument("unknown column \"" + col + "\"");
    }
  }
  std::string out;
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
  out += '\n';
  for (const auto& check : checks) {
    for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + csv_quote(check_field(check, cols[i]));
    out += '\n';
  }
  return out;
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
      continue;
    }
    any = true;
    if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (ch == '\n' || ch == '\r') {
      if (ch == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else {
      field += ch;
    }
  }
  if (quoted) throw std::invalid_argument("csv: unterminated quoted field");
  if (any || !field.empty() || !row.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<BoundCheck> checks_from_csv(std::string_view text) {
  const auto rows = parse_csv(text);
  if (rows.empty()) throw std::invalid_argument("csv: missing header");
  const auto& header = rows.front();
  std::vector<BoundCheck> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != header.size()) throw std::invalid_argument("csv: ragged row " + std::to_string(r));
    BoundCheck b;
    for (std::size_t i = 0; i < header.size(); ++i) {
      const auto& col = header[i];
      const auto& v = rows[r][i];
      if (col == "bound_name") b.bound_name = v;
      else if (col == "formula") b.formula = v;
      else if (col == "family") b.family = v;
      else if (col == "modulus") b.modulus = std::stoull(v);
      else if (col == "region") b.region = v;
      else if (col == "c") b.c = std::strtod(v.c_str(), nullptr);
      else if (col == "eps") b.eps = std::strtod(v.c_str(), nullptr);
      else if (col == "lhs") b.lhs = std::strtod(v.c_str(), nullptr);
      else if (col == "rhs") b.rhs = std::strtod(v.c_str(), nullptr);
      else if (col == "ratio") b.ratio = std::strtod(v.c_str(), nullptr);
      else if (col == "pass") b.pass = parse_bool(v);
      else if (col == "asserted") b.asserted = parse_bool(v);
      else throw std::invalid_argument("csv: unknown column \"" + col + "\"");
    }
    out.push_back(std::move(b));
  }
  return out;
}

std::string emit(const Report& report, std::string_view format, const std::vector<std::string>& columns) {
  if (format == "csv") return checks_to_csv(report.checks, columns);
  if (format != "json") throw std::invalid_argument("unknown format \"" + std::string(format) + "\"");

  json root;
  root["tool"] = "slidesum";
  root["version"] = report.version;
  json cfg = json::object();
  for (const auto& [k, v] : report.config) cfg[k] = v;
  root["config"] = cfg;

  json summary;
  json per_bound = json::array();
  for (const auto& b : report.summary.bounds) {
    per_bound.push_back({{"bound_name", b.bound_name},
                         {"count", b.count},
                         {"asserted", b.asserted},
                         {"max_ratio", round12(b.max_ratio)},
                         {"failures", b.failures}});
  }
  summary["bounds"] = per_bound;
  summary["failures"] = report.summary.failures;
  summary["h_failures"] = report.summary.h_failures;
  summary["skipped"] = report.summary.skipped;
  root["summary"] = summary;

  json hs = json::array();
  for (const auto& h : report.hchecks) {
    hs.push_back({{"p", h.p},
                  {"family", h.family},
                  {"condition", h.condition},
                  {"c", round12(h.c)},
                  {"sup_norm", round12(h.sup_norm)},
                  {"d_size", h.d_size},
                  {"max_off_d", round12(h.max_off_d)},
                  {"threshold", round12(h.threshold)},
                  {"max_off_zero", round12(h.max_off_zero)},
                  {"max_off_zero_over_sqrt_m", round12(h.max_off_zero_over_sqrt_m)},
                  {"verdict", h.verdict}});
  }
  root["hchecks"] = hs;

  json checks = json::array();
  for (const auto& c : report.checks) checks.push_back(check_json(c));
  root["checks"] = checks;

  json cross = json::array();
  for (const auto& row : report.crossover) {
    cross.push_back({{"p", row.p},
                     {"family", row.family},
                     {"len", row.len},
                     {"multiplier", round12(row.multiplier)},
                     {"start", row.start},
                     {"lhs", round12(row.lhs)},
                     {"b54", round12(row.b54)},
                     {"completion", round12(row.completion)},
                     {"k_equiv", round12(row.k_equiv)},
                     {"sliding_wins", row.sliding_wins()}});
  }
  root["crossover"] = cross;

  json skips = json::array();
  for (const auto& s : report.skips) {
    skips.push_back({{"p", s.p}, {"family", s.family}, {"region", s.region}, {"reason", s.reason}});
  }
  root["skips"] = skips;
  return root.dump(2) + "\n";
}

std::vector<EquidistRow> run_equidist(const ScanConfig& cfg, std::uint64_t p) {
  const FieldContext ctx(p);
  const auto angles = kloosterman_angles(ctx);
  const auto f = RationalFunction::parse(cfg.weyl_f);
  std::vector<EquidistRow> rows;
  for (double mu : cfg.equidist_multipliers) {
    const auto len = std::min<std::uint64_t>(grid_length(mu, p), p);
    const IntervalZm interval(p, 1, len);
    rows.push_back({p, "kloosterman", len, mu, kloosterman_equidist(angles, interval, cfg.harmonics)});
    rows.push_back({p, "frac:" + f.to_string(), len, mu, weyl_uniform(f, interval, ctx, cfg.harmonics)});
  }
  return rows;
}

std::string equidist_csv(const std::vector<EquidistRow>& rows, unsigned harmonics) {
  std::string out = "p,family,len,multiplier,target,N,ks";
  for (unsigned h = 1; h <= harmonics; ++h) out += ",weyl_h" + std::to_string(h);
  out += '\n';
  for (const auto& row : rows) {
    out += std::to_string(row.p) + "," + csv_quote(row.family) + "," + std::to_string(row.len) + "," +
           format12(row.multiplier) + "," + target_name(row.stats.target) + "," +
           std::to_string(row.stats.sample_size) + "," + format12(row.stats.ks);
    for (unsigned h = 1; h <= harmonics; ++h) {
      out += "," + (h < row.stats.weyl.size() ? format12(std::abs(row.stats.weyl[h])) : std::string());
    }
    out += '\n';
  }
  return out;
}

}  // namespace slidesum
