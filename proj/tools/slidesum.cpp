// slidesum: command-line front end for the sliding-sum toolkit.
//
//   slidesum <subcommand> --config <path> [--p <int>] [--family <desc>]
//            [--region <desc>] [--eps <float>] [--format json|csv]
//            [--seed <u64>] [--out <path>]
//
// Exit codes: 0 ok, 1 soundness failure, 2 usage error, 3 skip with --strict.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "slidesum/bounds.hpp"
#include "slidesum/descriptors.hpp"
#include "slidesum/equidist.hpp"
#include "slidesum/harness.hpp"
#include "slidesum/spectral.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace slidesum;

constexpr int kExitOk = 0;
constexpr int kExitUnsound = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSkipped = 3;

struct Options {
  std::string config;
  std::optional<std::uint64_t> p;
  std::string family = "legendre";
  std::string region;
  std::optional<double> eps;
  std::optional<std::string> format;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string columns;
  std::optional<double> c;
  bool strict = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json cnum(Complex z) { return json::array({round12(z.real()), round12(z.imag())}); }

void write_output(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream f(opt.out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + opt.out);
  f << text;
}

std::uint64_t require_p(const Options& opt) {
  if (!opt.p) throw UsageError("--p is required for this subcommand");
  if (!is_prime(*opt.p)) throw UsageError("--p must be prime");
  return *opt.p;
}

Region require_region(const Options& opt, std::uint64_t m) {
  if (opt.region.empty()) throw UsageError("--region is required for this subcommand");
  return parse_region(opt.region, m);
}

std::vector<std::string> split_columns(const std::string& text) {
  std::vector<std::string> cols;
  std::string cur;
  for (char ch : text) {
    if (ch == ',') {
      if (!cur.empty()) cols.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) cols.push_back(cur);
  return cols;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

int cmd_tabulate(const Options& opt, const ScanConfig& cfg) {
  const FieldContext ctx(require_p(opt));
  const auto fam = build_family(opt.family, ctx);
  const auto& phi = fam.phi;
  if (cfg.format == "csv") {
    std::string out = "n,re,im,abs\n";
    for (std::size_t n = 0; n < phi.modulus(); ++n) {
      out += std::to_string(n) + "," + format12(phi[n].real()) + "," + format12(phi[n].imag()) + "," +
             format12(std::abs(phi[n])) + "\n";
    }
    write_output(opt, out);
    return kExitOk;
  }
  json j;
  j["family"] = fam.name;
  j["modulus"] = phi.modulus();
  j["conductor"] = round12(phi.conductor_bound());
  j["sup_norm"] = round12(phi.sup_norm());
  j["l2_norm"] = round12(phi.l2_norm());
  json vals = json::array();
  for (auto v : phi.values()) vals.push_back(cnum(v));
  j["values"] = vals;
  write_output(opt, dump(j));
  return kExitOk;
}

int cmd_sum(const Options& opt, const ScanConfig&) {
  const FieldContext ctx(require_p(opt));
  const auto fam = build_family(opt.family, ctx);
  const auto region = require_region(opt, fam.phi.modulus());
  const auto s = sum_region(fam.phi, region);
  json j;
  j["family"] = fam.name;
  j["modulus"] = fam.phi.modulus();
  j["region"] = describe(region);
  j["size"] = region_elements(region).size();
  j["sum"] = cnum(s);
  j["abs"] = round12(std::abs(s));
  write_output(opt, dump(j));
  return kExitOk;
}

int cmd_corr(const Options& opt, const ScanConfig& cfg) {
  const FieldContext ctx(require_p(opt));
  const auto fam = build_family(opt.family, ctx);
  const auto profile = correlations(fam.phi);
  const char* method = profile.method == CorrelationMethod::direct ? "direct" : "plancherel";
  const double c = opt.c ? *opt.c : h_constant(fam);
  const double threshold = c * std::sqrt(static_cast<double>(profile.modulus()));
  if (cfg.format == "csv") {
    std::string out = "a,re,im,abs,threshold\n";
    for (std::size_t a = 0; a < profile.modulus(); ++a) {
      out += std::to_string(a) + "," + format12(profile.values[a].real()) + "," +
             format12(profile.values[a].imag()) + "," + format12(profile.magnitude(a)) + "," +
             format12(threshold) + "\n";
    }
    write_output(opt, out);
    return kExitOk;
  }
  json j;
  j["family"] = fam.name;
  j["modulus"] = profile.modulus();
  j["method"] = method;
  j["reoriented"] = profile.reoriented;
  j["max_off_zero"] = round12(profile.max_off_zero());
  j["threshold"] = round12(threshold);
  json vals = json::array();
  for (auto v : profile.values) vals.push_back(cnum(v));
  j["values"] = vals;
  write_output(opt, dump(j));
  return kExitOk;
}

int cmd_hcheck(const Options& opt, const ScanConfig&) {
  const FieldContext ctx(require_p(opt));
  const auto fam = build_family(opt.family, ctx);
  std::string condition;
  double c = h_constant(fam, &condition);
  if (opt.c) {
    c = *opt.c;
    condition = "H(c)";
  }
  const auto h = check_H(fam.phi, c);
  json j;
  j["family"] = fam.name;
  j["modulus"] = fam.phi.modulus();
  j["condition"] = condition;
  j["c"] = round12(h.c);
  j["threshold"] = round12(h.threshold);
  j["sup_norm"] = round12(h.sup_norm);
  j["sup_ok"] = h.sup_ok;
  j["D"] = h.exceptional.elements();
  j["d_ok"] = h.d_ok;
  j["max_off_d"] = round12(h.max_off_d);
  j["verdict"] = h.verdict;
  write_output(opt, dump(j));
  return kExitOk;
}

int cmd_sigma(const Options& opt, const ScanConfig& cfg) {
  const FieldContext ctx(require_p(opt));
  const auto fam = build_family(opt.family, ctx);
  const auto region = require_region(opt, fam.phi.modulus());
  const auto report = sigma_statistic(fam.phi, region);
  json j;
  j["family"] = fam.name;
  j["modulus"] = fam.phi.modulus();
  j["region"] = describe(region);
  j["size"] = report.region_size;
  j["sigma"] = round12(report.sigma);
  j["sigma_via_correlations"] = round12(report.sigma_via_correlations);
  j["region_sum_abs"] = round12(report.region_sum_abs);
  if (const auto* iv = std::get_if<IntervalZm>(&region)) {
    const auto lower = sigma_lower_bounds(fam.phi, *iv, cfg.eps, cfg.large_enough);
    j["lower_eighth"] = round12(lower.eighth);
    j["lower_third"] = round12(lower.third);
    j["third_conditional"] = lower.third_conditional;
  }
  write_output(opt, dump(j));
  return kExitOk;
}

int cmd_verify(const Options& opt, const ScanConfig& cfg) {
  const FieldContext ctx(require_p(opt));
  const auto cell = prepare_cell(ctx, opt.family);
  const auto region = require_region(opt, cell.modulus());
  std::vector<BoundCheck> checks;
  if (const auto* iv = std::get_if<IntervalZm>(&region)) {
    if (iv->length() >= cell.modulus()) throw UsageError("verify needs an interval shorter than the modulus");
    checks = interval_checks(cell, *iv, cfg);
  } else if (const auto* gap = std::get_if<GapSpec>(&region)) {
    checks.push_back(gap_bound_ratio(cell.family.phi, *gap, cfg.gap_ceiling));
  } else {
    throw UsageError("verify supports interval and gap regions");
  }
  Report report;
  report.config = config_echo(cfg);
  report.checks = std::move(checks);
  report.summary = summarize(report);
  if (cfg.format == "csv") {
    write_output(opt, checks_to_csv(report.checks, split_columns(opt.columns)));
  } else {
    // one record per line
    std::string out;
    for (const auto& b : report.checks) {
      json j;
      j["bound_name"] = b.bound_name;
      j["formula"] = b.formula;
      j["m"] = b.modulus;
      j["family"] = b.family;
      j["region"] = b.region;
      j["c"] = round12(b.c);
      j["eps"] = round12(b.eps);
      j["lhs"] = round12(b.lhs);
      j["rhs"] = round12(b.rhs);
      j["ratio"] = round12(b.ratio);
      j["pass"] = b.pass;
      j["asserted"] = b.asserted;
      out += j.dump() + "\n";
    }
    write_output(opt, out);
  }
  return report.summary.failures > 0 ? kExitUnsound : kExitOk;
}

int cmd_equidist(const Options& opt, const ScanConfig& cfg) {
  const auto p = opt.p ? require_p(opt) : std::uint64_t{10007};
  write_output(opt, equidist_csv(run_equidist(cfg, p), cfg.harmonics));
  return kExitOk;
}

int cmd_scan(const Options& opt, ScanConfig cfg) {
  if (opt.p) cfg.primes = {require_p(opt)};
  const auto report = run_scan(cfg);
  write_output(opt, emit(report, cfg.format, split_columns(opt.columns)));
  std::fprintf(stderr, "slidesum scan: %zu checks, %llu failures, %llu H failures, %llu skipped\n",
               report.checks.size(), static_cast<unsigned long long>(report.summary.failures),
               static_cast<unsigned long long>(report.summary.h_failures),
               static_cast<unsigned long long>(report.summary.skipped));
  if (report.summary.failures > 0) return kExitUnsound;
  if (opt.strict && report.summary.skipped > 0) return kExitSkipped;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sliding-sum bounds for trace functions: tabulation, correlations, bound sweeps"};
  app.require_subcommand(1, 1);
  Options opt;

  const char* verbs[][2] = {
      {"tabulate", "Print the value table of a family"},
      {"sum", "Sum a family over a region"},
      {"corr", "Additive correlation profile"},
      {"hcheck", "Check Condition H(c)"},
      {"sigma", "Sigma statistic and its lower bounds"},
      {"verify", "Every applicable bound for one region"},
      {"equidist", "Equidistribution statistics (CSV)"},
      {"scan", "Bound sweep over the configured grid"},
  };
  for (const auto& [name, help] : verbs) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", opt.config, "Config file (key = value)")->required();
    sub->add_option("--p", opt.p, "Prime");
    sub->add_option("--family", opt.family, "Family descriptor");
    sub->add_option("--region", opt.region, "Region descriptor");
    sub->add_option("--eps", opt.eps, "epsilon in (0, 1/3)");
    sub->add_option("--format", opt.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", opt.seed, "Seed for sampled interval starts");
    sub->add_option("--out", opt.out, "Output path (default stdout)");
    sub->add_option("--columns", opt.columns, "CSV columns, comma separated");
    sub->add_option("--c", opt.c, "Constant for hcheck");
    sub->add_flag("--strict", opt.strict, "Exit 3 when any cell was skipped");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    ScanConfig cfg = load_config(opt.config);
    if (opt.eps) {
      if (!(*opt.eps > 0.0 && *opt.eps < 1.0 / 3.0)) throw UsageError("--eps must lie in (0, 1/3)");
      cfg.eps = *opt.eps;
    }
    if (opt.format) cfg.format = *opt.format;
    if (opt.seed) cfg.seed = *opt.seed;

    const std::string verb = app.get_subcommands().front()->get_name();
    if (verb == "tabulate") return cmd_tabulate(opt, cfg);
    if (verb == "sum") return cmd_sum(opt, cfg);
    if (verb == "corr") return cmd_corr(opt, cfg);
    if (verb == "hcheck") return cmd_hcheck(opt, cfg);
    if (verb == "sigma") return cmd_sigma(opt, cfg);
    if (verb == "verify") return cmd_verify(opt, cfg);
    if (verb == "equidist") return cmd_equidist(opt, cfg);
    return cmd_scan(opt, cfg);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "slidesum: %s\n", e.what());
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "slidesum: config: %s\n", e.what());
    return kExitUsage;
  } catch (const DescriptorError& e) {
    std::fprintf(stderr, "slidesum: %s\n", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "slidesum: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "slidesum: internal error: %s\n", e.what());
    return kExitUnsound;
  }
}
