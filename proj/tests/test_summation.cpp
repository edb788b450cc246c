#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "oracles.hpp"
#include "slidesum/summation.hpp"
#include "slidesum/trace_functions.hpp"

using namespace slidesum;

namespace {

TabulatedFunction legendre(const FieldContext& ctx) {
  return build_mixed_char(CharacterSpec::legendre(), RationalFunction::parse("X"), RationalFunction::parse("0"), ctx);
}

TabulatedFunction random_function(std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Complex> v(m);
  for (auto& x : v) x = {g(rng), g(rng)};
  return {std::move(v), 1.0, "random"};
}

}  // namespace

TEST_CASE("IntervalZm") {
  const IntervalZm iv(10, 8, 4);
  CHECK(iv.elements() == std::vector<std::uint64_t>{8, 9, 0, 1});
  CHECK(iv.describe() == "interval:8,4");
  CHECK(IntervalZm(10, 23, 2).start() == 3);
  CHECK_THROWS_AS(IntervalZm(10, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(IntervalZm(10, 0, 11), std::invalid_argument);
  CHECK(IntervalZm(10, 4, 10).elements().size() == 10);
}

TEST_CASE("SubsetZm") {
  const SubsetZm s(12, {9, 3, 0, 6});
  CHECK(s.elements() == std::vector<std::uint64_t>{0, 3, 6, 9});
  CHECK(s.contains(6));
  CHECK_FALSE(s.contains(7));
  CHECK_THROWS_AS(SubsetZm(12, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(SubsetZm(12, {12}), std::invalid_argument);
}

TEST_CASE("sum_region") {
  const FieldContext ctx7(7);
  const auto leg = legendre(ctx7);
  CHECK(std::abs(sum_region(leg, IntervalZm(7, 1, 3)) - Complex(1.0, 0.0)) < 1e-15);

  const TabulatedFunction ones(std::vector<Complex>(50, 1.0), 1.0, "one");
  CHECK(sum_region(ones, IntervalZm(50, 45, 17)) == Complex(17.0, 0.0));
  CHECK(sum_region(ones, SubsetZm(50, {1, 2, 3})) == Complex(3.0, 0.0));

  const FieldContext ctx(101);
  const auto add = build_mixed_char(CharacterSpec::trivial(), RationalFunction::parse("1"),
                                    RationalFunction::parse("X"), ctx);
  CHECK(std::abs(sum_region(add, IntervalZm(101, 0, 101))) < 1e-10);
  CHECK_THROWS_AS(sum_region(add, IntervalZm(100, 0, 5)), ModulusMismatch);

  const auto rnd = random_function(211, 5);
  for (std::uint64_t start : {0ull, 100ull, 200ull}) {
    const IntervalZm iv(211, start, 37);
    oracle::C expected = 0;
    for (auto x : iv.elements()) expected += oracle::C(rnd[x]);
    CHECK(std::abs(oracle::C(sum_region(rnd, iv)) - expected) < 1e-12);
  }
}

TEST_CASE("GAP enumeration") {
  const GapSpec digits{1000, 0, {{1, 10}, {10, 5}}};
  const auto set = enumerate_gap(digits);
  CHECK(set.size() == 50);
  CHECK(digits.nominal_size() == 50);
  CHECK(set.elements().back() == 49);

  const GapSpec bad{100, 0, {{1, 5}, {2, 5}}};
  try {
    enumerate_gap(bad);
    FAIL("expected a collision");
  } catch (const NonProperGap& e) {
    CHECK(e.element() < 100);
    CHECK(e.first() != e.second());
    std::uint64_t a = 0, b = 0;
    for (std::size_t i = 0; i < 2; ++i) {
      a += e.first()[i] * bad.axes[i].step;
      b += e.second()[i] * bad.axes[i].step;
    }
    CHECK(a % 100 == e.element());
    CHECK(b % 100 == e.element());
  }

  CHECK(enumerate_gap(GapSpec{10, 0, {{2, 5}}}).size() == 5);
  CHECK_THROWS_AS(enumerate_gap(GapSpec{10, 0, {{2, 6}}}), NonProperGap);
  CHECK_THROWS_AS(enumerate_gap(GapSpec{10, 0, {{2, 1}}}), std::invalid_argument);
  CHECK(GapSpec{1000, 3, {{1, 10}, {25, 4}}}.describe() == "gap:3;1,10;25,4");
}

TEST_CASE("GAP slicing partitions the element set") {
  const GapSpec g{10007, 5, {{1, 30}, {61, 4}, {300, 3}}};
  const auto whole = enumerate_gap(g);
  const auto slices = slice_last_axis(g);
  CHECK(slices.size() == 3);
  std::vector<std::uint64_t> joined;
  for (const auto& s : slices) {
    CHECK(s.dimension() == 2);
    const auto part = enumerate_gap(s);
    joined.insert(joined.end(), part.elements().begin(), part.elements().end());
  }
  std::sort(joined.begin(), joined.end());
  CHECK(std::adjacent_find(joined.begin(), joined.end()) == joined.end());
  CHECK(joined == whole.elements());
}

TEST_CASE("geometric progression sums") {
  const std::uint64_t p = 101;
  const FieldContext ctx(p);
  const TabulatedFunction ones(std::vector<Complex>(p, 1.0), 1.0, "one");
  CHECK(geometric_progression_sum(ones, IntervalZm(p - 1, 7, 33), ctx) == Complex(33.0, 0.0));
  const auto add = build_mixed_char(CharacterSpec::trivial(), RationalFunction::parse("1"),
                                    RationalFunction::parse("X"), ctx);
  CHECK(std::abs(geometric_progression_sum(add, IntervalZm(p - 1, 0, p - 1), ctx) + 1.0) < 1e-10);
  const auto kl = build_kloosterman(ctx);
  const auto tau = restrict_multiplicative(kl, ctx);
  for (std::uint64_t start = 0; start < p - 1; start += 13) {
    const IntervalZm iv(p - 1, start, 21);
    CHECK(std::abs(geometric_progression_sum(kl, iv, ctx) - sum_region(tau, iv)) < 1e-10);
  }
  CHECK_THROWS_AS(geometric_progression_sum(add, IntervalZm(p, 0, 3), ctx), ModulusMismatch);
}

TEST_CASE("shift sets") {
  const IntervalZm iv(101, 0, 10);
  const auto t = t_s_set(iv, 4);
  CHECK(t.elements() == std::vector<std::uint64_t>{0, 1, 2, 99, 100});
  CHECK(t_s_set(iv, 0).elements() == std::vector<std::uint64_t>{0});
  CHECK(t_s_set(iv, 20).size() == 101);

  const auto prof = symmetric_difference_profile(SubsetZm(101, iv.elements()));
  for (std::uint64_t a = 0; a < 101; ++a) CHECK(prof[a] == oracle::symdiff(101, iv.elements(), a));

  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const std::uint64_t m = 2 + rng() % 300;
    const IntervalZm j(m, rng() % m, 1 + rng() % m);
    const std::uint64_t s = rng() % (m + 1);
    const auto ts = t_s_set(j, s);
    CHECK(ts.size() >= std::min<std::uint64_t>(s, m));
    for (std::uint64_t a = 0; a < m; ++a) {
      CHECK(ts.contains(a) == (oracle::symdiff(m, j.elements(), a) <= s));
    }
  }
}

TEST_CASE("subgroup shift sets") {
  const SubsetZm h(12, {0, 3, 6, 9});
  CHECK(t_s_subgroup(h, 3).elements() == h.elements());
  CHECK(t_s_subgroup(h, 8).size() == 12);
  for (std::uint64_t s = 0; s < 8; ++s) CHECK(static_cast<double>(t_s_subgroup(h, s).size()) >= s / 2.0);
  CHECK_THROWS_AS(t_s_subgroup(SubsetZm(12, {0, 5}), 1), std::invalid_argument);
}

TEST_CASE("difference counts") {
  const IntervalZm iv(37, 30, 12);
  const auto closed = difference_counts(iv);
  const auto brute = difference_counts(SubsetZm(37, iv.elements()));
  REQUIRE(closed.size() == 37);
  for (std::size_t d = 0; d < 37; ++d) CHECK(closed[d] == brute[d]);
  CHECK(std::accumulate(closed.begin(), closed.end(), 0.0) == 144.0);

  const auto full = difference_counts(IntervalZm(9, 2, 9));
  for (double v : full) CHECK(v == 9.0);
}

TEST_CASE("Sigma statistic against the shift-sum oracle") {
  const FieldContext ctx(101);
  const auto kl = build_kloosterman(ctx);
  const auto rnd = random_function(101, 11);
  const std::vector<Region> regions = {IntervalZm(101, 0, 15), IntervalZm(101, 90, 40), SubsetZm(101, {1, 5, 17, 80}),
                                       GapSpec{101, 2, {{1, 5}, {11, 3}}}};
  for (const auto* phi : {&kl, &rnd}) {
    for (const auto& region : regions) {
      const auto r = sigma_statistic(*phi, region, true);
      const auto elements = region_elements(region);
      std::vector<Complex> vals(phi->values().begin(), phi->values().end());
      const auto expected = static_cast<double>(oracle::sigma(vals, elements));
      CHECK(r.sigma == doctest::Approx(expected).epsilon(1e-10));
      CHECK(r.sigma_via_correlations == doctest::Approx(expected).epsilon(1e-8));
      CHECK(r.sigma >= r.region_sum_abs * r.region_sum_abs - 1e-9);
      CHECK(r.region_size == elements.size());
      CHECK(r.shift_magnitudes.size() == 101);
      CHECK(r.shift_magnitudes[0] == doctest::Approx(r.region_sum_abs));
    }
  }
}

TEST_CASE("Sigma is translation invariant") {
  const FieldContext ctx(211);
  const auto phi = build_sym_power(2, ctx);
  const double base = sigma_statistic(phi, IntervalZm(211, 0, 31)).sigma;
  for (std::uint64_t t : {1ull, 50ull, 200ull}) {
    CHECK(sigma_statistic(phi, IntervalZm(211, t, 31)).sigma == doctest::Approx(base).epsilon(1e-9));
  }
  const SubsetZm b(211, {3, 8, 40, 41});
  const SubsetZm shifted(211, {3 + 77, 8 + 77, 40 + 77, 41 + 77});
  CHECK(sigma_statistic(phi, shifted).sigma == doctest::Approx(sigma_statistic(phi, b).sigma).epsilon(1e-9));
}

TEST_CASE("Sigma closed forms") {
  for (std::uint64_t p : {101ull, 1009ull}) {
    const FieldContext ctx(p);
    const double pp = static_cast<double>(p);
    for (std::uint64_t len : {10ull, 32ull}) {
      const IntervalZm iv(p, 3, len);
      const double l = static_cast<double>(len);
      CHECK(sigma_statistic(build_quadratic_phase(2, ctx), iv).sigma == doctest::Approx(pp * l).epsilon(1e-9));
      CHECK(sigma_statistic(build_kloosterman(ctx), iv).sigma == doctest::Approx(pp * l - l * l).epsilon(1e-9));
      CHECK(sigma_statistic(build_korobov(1, ctx), IntervalZm(p - 1, 3, len)).sigma ==
            doctest::Approx(pp * l - l * l).epsilon(1e-9));
    }
  }
}

TEST_CASE("Sigma of the zero function") {
  const TabulatedFunction zero(std::vector<Complex>(30, 0.0), 1.0, "zero");
  const auto r = sigma_statistic(zero, IntervalZm(30, 0, 7));
  CHECK(r.sigma == 0.0);
  CHECK(r.sigma_via_correlations == 0.0);
}
