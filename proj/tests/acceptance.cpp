// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "slidesum/bounds.hpp"
#include "slidesum/equidist.hpp"
#include "slidesum/harness.hpp"

using namespace slidesum;

namespace {

int failures = 0;

void verdict(int id, bool ok, const std::string& title, const std::string& detail) {
  std::printf("%s %d %s: %s\n", ok ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::uint64_t ceil_sqrt(std::uint64_t p) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(p)));
  while (r * r < p) ++r;
  return r;
}

double rel(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

TabulatedFunction legendre_mixed(const char* f, const char* g, const FieldContext& ctx) {
  return build_mixed_char(CharacterSpec::legendre(), RationalFunction::parse(f), RationalFunction::parse(g), ctx);
}

void exact_sigma() {
  double worst = 0.0;
  int cells = 0;
  for (std::uint64_t p : {101ull, 1009ull, 10007ull}) {
    const FieldContext ctx(p);
    const auto r = ceil_sqrt(p);
    const auto kor = build_korobov(1, ctx);
    for (std::uint64_t len : {std::uint64_t{10}, r, 3 * r}) {
      const double l = static_cast<double>(len), pp = static_cast<double>(p);
      for (Residue h : {1u, 2u, 3u}) {
        const auto s = sigma_statistic(build_quadratic_phase(h, ctx), IntervalZm(p, 1, len));
        worst = std::max(worst, rel(s.sigma, pp * l));
        ++cells;
      }
      const auto s = sigma_statistic(kor, IntervalZm(p - 1, 1, len));
      worst = std::max(worst, rel(s.sigma, pp * l - l * l));
      ++cells;
    }
  }
  verdict(1, worst <= 1e-6, "exact Sigma identities",
          std::to_string(cells) + " cells, worst relative error " + fmt("%.3g", worst) + " (tol 1e-6)");
}

void correlation_structure() {
  double kl_worst = 0.0, kor_worst = 0.0;
  for (std::uint64_t p : {101ull, 1009ull}) {
    const FieldContext ctx(p);
    const auto kl = correlations(build_kloosterman(ctx));
    kl_worst = std::max(kl_worst, std::abs(kl.values[0] - Complex(static_cast<double>(p - 1), 0.0)));
    for (std::size_t a = 1; a < p; ++a) kl_worst = std::max(kl_worst, std::abs(kl.values[a] + 1.0));
    const auto kor = correlations(build_korobov(1, ctx));
    for (std::size_t a = 1; a < p - 1; ++a) kor_worst = std::max(kor_worst, std::abs(kor.values[a] + 1.0));
  }
  verdict(2, kl_worst <= 1e-6 && kor_worst <= 1e-8, "correlation structure",
          "Kloosterman max |C - (p-1 or -1)| = " + fmt("%.3g", kl_worst) + " (tol 1e-6), Korobov max |C(a) + 1| = " +
              fmt("%.3g", kor_worst) + " (tol 1e-8)");
}

void condition_h() {
  int violations = 0, cells = 0;
  std::string observed;
  for (std::uint64_t p : {101ull, 1009ull, 10007ull}) {
    const FieldContext ctx(p);
    std::vector<std::pair<std::string, TabulatedFunction>> fams;
    for (const char* f : {"X", "X^2+1"}) {
      for (const char* g : {"0", "X^3"}) {
        fams.emplace_back(std::string("chi(") + f + ")e(" + g + ")", legendre_mixed(f, g, ctx));
      }
    }
    fams.emplace_back("kloosterman", build_kloosterman(ctx));
    double worst = 0.0;
    for (const auto& [name, phi] : fams) {
      const double c = phi.conductor_bound();
      const double off = correlations(phi).max_off_zero();
      const double limit = 5.0 * c * c * c * std::sqrt(static_cast<double>(p));
      if (off > limit) ++violations;
      worst = std::max(worst, off / std::sqrt(static_cast<double>(p)));
      ++cells;
    }
    observed += " p=" + std::to_string(p) + ":" + fmt("%.3f", worst);
  }
  verdict(3, violations == 0, "Condition H on mixed and Kloosterman families",
          std::to_string(cells) + " cells, " + std::to_string(violations) +
              " violations of max|C(a)| <= 5c^3 sqrt(p); observed max|C(a)|/sqrt(p)" + observed);
}

Report soundness_sweep(const ScanConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  auto report = run_scan(cfg);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::uint64_t asserted = 0, flagged = 0;
  for (const auto& c : report.checks) (c.asserted ? asserted : flagged)++;
  const bool grid_ok = cfg.primes.size() == 6 && cfg.families.size() >= 4 && cfg.starts == 5 &&
                       cfg.multipliers == std::vector<double>{1.5, 2, 4, 8, 16} && cfg.eps == 0.1;
  verdict(4, grid_ok && report.summary.failures == 0 && report.summary.h_failures == 0, "bound soundness sweep",
          std::to_string(report.checks.size()) + " checks (" + std::to_string(asserted) + " asserted, " +
              std::to_string(flagged) + " ratio-only), " + std::to_string(report.summary.failures) + " failures, " +
              std::to_string(report.summary.h_failures) + " H failures, " + std::to_string(report.summary.skipped) +
              " skips, " + fmt("%.1f s", secs));
  return report;
}

void crossover(const Report& report) {
  const double p = 10007.0, lp = std::log(p), r = static_cast<double>(ceil_sqrt(10007));
  const double short_hi = std::sqrt(p) * lp;
  const double long_lo = 4.0 * std::sqrt(p) * std::pow(lp, 1.5);
  int sliding = 0, fourier = 0, in_window = 0, in_long = 0;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& row : report.crossover) {
    if (row.p != 10007) continue;
    const double len = static_cast<double>(row.len);
    if (len > r && len < short_hi) {
      ++in_window;
      best = std::min(best, row.b54 / row.completion);
      if (row.b54 < row.completion && row.b54 > row.lhs && row.completion > row.lhs) ++sliding;
    }
    if (len > long_lo) {
      ++in_long;
      if (row.completion < row.b54) ++fourier;
    }
  }
  verdict(5, sliding > 0 && fourier > 0, "sliding beats completion in its window",
          "p=10007: " + std::to_string(sliding) + " of " + std::to_string(in_window) + " rows with " + fmt("%.0f", r) +
              " < |I| < " + fmt("%.0f", short_hi) + " have b54 < completion (min b54/completion " + fmt("%.1f", best) +
              "); " + std::to_string(fourier) + " of " + std::to_string(in_long) + " rows with |I| > " +
              fmt("%.0f", long_lo) + " have completion < b54 (no interval of Z/pZ is that long)");
}

void spectral_consistency(const ScanConfig& cfg) {
  double parseval = 0.0, corr = 0.0, kl = 0.0;
  for (auto p : cfg.primes) {
    const FieldContext ctx(p);
    for (const auto& desc : cfg.families) {
      const auto fam = build_family(desc, ctx);
      CompensatedSum<double> energy;
      for (auto v : dft(fam.phi).values) energy += std::norm(v);
      const double l2 = fam.phi.l2_norm() * fam.phi.l2_norm();
      parseval = std::max(parseval, rel(energy.value(), l2));
      if (p <= 2003) {
        const auto fast = correlations_plancherel(fam.phi);
        const auto slow = correlations_direct(fam.phi);
        for (std::size_t a = 0; a < fast.modulus(); ++a) corr = std::max(corr, std::abs(fast.magnitude(a) - slow.magnitude(a)));
      }
    }
    if (p <= 2003) {
      const auto fast = build_kloosterman(ctx, KloostermanMethod::fourier);
      const auto slow = build_kloosterman(ctx, KloostermanMethod::direct);
      for (std::size_t n = 0; n < p; ++n) kl = std::max(kl, std::abs(fast[n] - slow[n]));
    }
  }
  const double h = 1e-6;
  double st = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double t = h + (std::numbers::pi - 2 * h) * (i + 0.5) / 1000.0;
    st = std::max(st, std::abs((sato_tate_cdf(t + h) - sato_tate_cdf(t - h)) / (2 * h) - sato_tate_density(t)));
  }
  verdict(6, parseval <= 1e-9 && corr <= 1e-6 && kl <= 1e-8 && st <= 1e-6, "spectral self-consistency",
          "Parseval " + fmt("%.3g", parseval) + " (1e-9), direct vs Plancherel " + fmt("%.3g", corr) +
              " (1e-6), Kloosterman fast vs direct " + fmt("%.3g", kl) + " (1e-8), Sato-Tate derivative " +
              fmt("%.3g", st) + " (1e-6)");
}

std::uint64_t brute_symdiff(std::uint64_t m, const std::vector<std::uint64_t>& set, std::uint64_t a) {
  std::vector<char> in(m, 0), shifted(m, 0);
  for (auto x : set) in[x] = 1, shifted[(x + a) % m] = 1;
  std::uint64_t d = 0;
  for (std::uint64_t x = 0; x < m; ++x) d += in[x] != shifted[x];
  return d;
}

void shift_sets(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  int bad = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint64_t m = 2 + rng() % 2002;
    const IntervalZm iv(m, rng() % m, 1 + rng() % m);
    const std::uint64_t s = rng() % (m + 1);
    const auto ts = t_s_set(iv, s);
    if (ts.size() < s) ++bad;
    for (std::uint64_t a = 0; a < m; ++a) {
      const std::uint64_t dist = std::min(a, m - a);
      if (2 * dist <= s && !ts.contains(a)) ++bad;
    }
  }
  int groups = 0, mismatches = 0;
  for (std::uint64_t m : {12ull, 360ull}) {
    for (std::uint64_t d = 1; d <= m; ++d) {
      if (m % d) continue;
      std::vector<std::uint64_t> h;
      for (std::uint64_t x = 0; x < m; x += d) h.push_back(x);
      const std::uint64_t n = h.size();
      ++groups;
      std::vector<std::uint64_t> svals;
      for (std::uint64_t s = 0; s <= std::min<std::uint64_t>(2 * n + 2, m); ++s) {
        if (m == 12 || s < 4 || s + 3 > 2 * n || s % 17 == 0) svals.push_back(s);
      }
      for (auto s : svals) {
        const auto got = t_s_subgroup(SubsetZm(m, h), s);
        // H when s < 2|H|, the whole group otherwise
        std::vector<std::uint64_t> formula;
        if (s < 2 * n) {
          formula = h;
        } else {
          for (std::uint64_t x = 0; x < m; ++x) formula.push_back(x);
        }
        std::vector<std::uint64_t> brute;
        for (std::uint64_t a = 0; a < m; ++a) {
          if (brute_symdiff(m, h, a) <= s) brute.push_back(a);
        }
        if (got.elements() != formula || formula != brute) ++mismatches;
      }
    }
  }
  verdict(7, bad == 0 && mismatches == 0, "shift-set law",
          "200 random interval triples, " + std::to_string(bad) + " violations; " + std::to_string(groups) +
              " subgroups of Z/12Z and Z/360Z, " + std::to_string(mismatches) + " mismatches");
}

void equidistribution(const ScanConfig& cfg) {
  auto ecfg = cfg;
  ecfg.equidist_multipliers = {2, 32};
  ecfg.harmonics = 5;
  ecfg.weyl_f = "X^3";
  const auto rows = run_equidist(ecfg, 10007);
  const auto& kl2 = rows[0].stats;
  const auto& fr2 = rows[1].stats;
  const auto& kl32 = rows[2].stats;
  const auto& fr32 = rows[3].stats;
  const bool ok = kl32.ks < kl2.ks && kl32.ks < 0.1 && fr32.max_weyl() < 0.25 && fr32.max_weyl() < fr2.max_weyl();
  verdict(8, ok, "equidistribution trends",
          "p=10007 KS(angles) " + fmt("%.4f", kl2.ks) + " at 2r -> " + fmt("%.4f", kl32.ks) +
              " at 32r (< 0.1); max Weyl X^3 " + fmt("%.4f", fr2.max_weyl()) + " -> " + fmt("%.4f", fr32.max_weyl()) +
              " (< 0.25); thresholds from docs/pilot.md");
}

void residues(const ScanConfig& cfg) {
  const std::uint64_t p = 10007;
  const FieldContext ctx(p);
  const auto image = build_residue_indicator(Polynomial::parse("X^2"), ctx);
  const auto len = 4 * ceil_sqrt(p);
  double sum = 0.0, worst = 0.0;
  for (std::size_t i = 0; i < 20; ++i) {
    const auto r = residue_count(image, IntervalZm(p, sampled_start(cfg.seed, p, "residue:f=X^2", 0, i, p), len));
    sum += std::abs(r.relative_deviation);
    worst = std::max(worst, std::abs(r.relative_deviation));
  }
  const double mean = sum / 20.0;
  verdict(9, mean <= 0.10 && worst <= 0.25, "residue counts in short intervals",
          "f=X^2, p=10007, |I|=" + std::to_string(len) + ", 20 seeded starts: mean deviation " + fmt("%.4f", mean) +
              " (<= 0.10), max " + fmt("%.4f", worst) + " (<= 0.25)");
}

void determinism(const ScanConfig& cfg, const Report& first) {
  const auto a = emit(first, cfg.format);
  const auto b = emit(run_scan(cfg), cfg.format);
  verdict(10, a == b, "determinism",
          "two default scans, " + std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "different"));
}

}  // namespace

int main(int argc, char** argv) {
  const std::string path = argc > 1 ? argv[1] : SLIDESUM_CONFIG;
  const auto cfg = load_config(path);
  exact_sigma();
  correlation_structure();
  condition_h();
  const auto report = soundness_sweep(cfg);
  crossover(report);
  spectral_consistency(cfg);
  shift_sets(cfg.seed);
  equidistribution(cfg);
  residues(cfg);
  determinism(cfg, report);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
