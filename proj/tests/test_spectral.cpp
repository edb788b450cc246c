#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "slidesum/spectral.hpp"

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

double parseval_gap(const TabulatedFunction& phi) {
  const auto spec = dft(phi);
  CompensatedSum<double> a;
  for (auto v : spec.values) a += std::norm(v);
  const double l2 = phi.l2_norm() * phi.l2_norm();
  return std::abs(a.value() - l2) / std::max(l2, 1e-300);
}

}  // namespace

TEST_CASE("dft against the oracle") {
  for (std::size_t m : {11u, 100u, 101u, 600u, 1009u}) {
    const auto phi = random_function(m, m);
    std::vector<Complex> vals(phi.values().begin(), phi.values().end());
    const auto ref = oracle::dft(vals);
    const auto got = dft(phi);
    double worst = 0.0, sup = 0.0;
    for (std::size_t t = 0; t < m; ++t) {
      worst = std::max(worst, static_cast<double>(std::abs(oracle::C(got.values[t]) - ref[t])));
      sup = std::max(sup, static_cast<double>(std::abs(ref[t])));
    }
    CHECK(worst < 1e-9);
    CHECK(got.sup_abs == doctest::Approx(sup).epsilon(1e-12));
  }
}

TEST_CASE("dft simple inputs") {
  for (std::size_t m : {7u, 1024u, 1031u}) {
    std::vector<Complex> delta(m, 0.0);
    delta[0] = 1.0;
    for (auto v : dft(delta).values) CHECK(std::abs(v - 1.0 / std::sqrt(static_cast<double>(m))) < 1e-12);
    const auto ones = dft(std::vector<Complex>(m, 1.0));
    CHECK(std::abs(ones.values[0] - std::sqrt(static_cast<double>(m))) < 1e-9);
    for (std::size_t t = 1; t < m; ++t) CHECK(std::abs(ones.values[t]) < 1e-9);
  }
  const FieldContext ctx(11);
  const auto spec = dft(legendre(ctx));
  for (std::size_t t = 1; t < 11; ++t) CHECK(std::abs(spec.values[t]) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(spec.values[0]) < 1e-12);
}

TEST_CASE("Parseval for built families") {
  for (std::uint64_t p : {101ull, 1009ull, 10007ull}) {
    const FieldContext ctx(p);
    CHECK(parseval_gap(legendre(ctx)) < 1e-9);
    CHECK(parseval_gap(build_kloosterman(ctx)) < 1e-9);
    CHECK(parseval_gap(build_sym_power(2, ctx)) < 1e-9);
    CHECK(parseval_gap(build_quadratic_phase(1, ctx)) < 1e-9);
    CHECK(parseval_gap(build_korobov(1, ctx)) < 1e-9);
  }
}

TEST_CASE("direct correlations against the oracle") {
  const auto phi = random_function(97, 3);
  std::vector<Complex> vals(phi.values().begin(), phi.values().end());
  const auto ref = oracle::correlation(vals);
  const auto got = correlations_direct(phi);
  CHECK(got.method == CorrelationMethod::direct);
  CHECK_FALSE(got.reoriented);
  for (std::size_t a = 0; a < 97; ++a) CHECK(std::abs(oracle::C(got.values[a]) - ref[a]) < 1e-10);

  const TabulatedFunction ones(std::vector<Complex>(40, 1.0), 1.0, "one");
  for (auto v : correlations_direct(ones).values) CHECK(v == Complex(40.0, 0.0));

  const FieldContext ctx(11);
  const auto lc = correlations_direct(legendre(ctx));
  CHECK(std::abs(lc.values[0] - 10.0) < 1e-12);
  for (std::size_t a = 1; a < 11; ++a) CHECK(std::abs(lc.values[a] + 1.0) < 1e-12);
  CHECK(lc.max_off_zero() == doctest::Approx(1.0));
}

TEST_CASE("correlation profile invariants") {
  for (std::uint64_t p : {101ull, 1009ull}) {
    const FieldContext ctx(p);
    for (const auto& phi : {build_kloosterman(ctx), build_sym_power(3, ctx), random_function(p, p)}) {
      const auto prof = correlations(phi);
      const double l2sq = phi.l2_norm() * phi.l2_norm();
      CHECK(prof.values[0].real() == doctest::Approx(l2sq).epsilon(1e-9));
      CHECK(std::abs(prof.values[0].imag()) <= 1e-9 * l2sq);
      for (std::size_t a = 1; a < p; ++a) {
        CHECK(std::abs(prof.values[p - a] - std::conj(prof.values[a])) <= 1e-9 * l2sq);
        CHECK(prof.magnitude(a) <= l2sq * (1 + 1e-12));
      }
    }
  }
}

TEST_CASE("Plancherel path matches the direct path") {
  for (std::uint64_t p : {101ull, 1009ull}) {
    const FieldContext ctx(p);
    for (const auto& phi : {build_kloosterman(ctx), random_function(p, 17), build_korobov(2, ctx)}) {
      const auto fast = correlations_plancherel(phi, true);
      const auto slow = correlations_direct(phi);
      CHECK(fast.method == CorrelationMethod::plancherel);
      CHECK(fast.reoriented);
      const double scale = phi.l2_norm() * phi.l2_norm();
      for (std::size_t a = 0; a < fast.modulus(); ++a) {
        CHECK(std::abs(fast.values[a] - slow.values[a]) <= 1e-9 * scale);
      }
    }
  }
  // a real even function has a real profile, so orientation is irrelevant
  const FieldContext ctx(211);
  const auto q = build_sym_power(2, ctx);
  const auto fast = correlations_plancherel(q);
  const auto slow = correlations_direct(q);
  for (std::size_t a = 0; a < 211; ++a) CHECK(std::abs(fast.values[a] - slow.values[a]) < 1e-8);
}

TEST_CASE("exact correlation structures") {
  for (std::uint64_t p : {101ull, 1009ull}) {
    const FieldContext ctx(p);
    const auto quad = correlations(build_quadratic_phase(1, ctx));
    CHECK(quad.values[0].real() == doctest::Approx(static_cast<double>(p)));
    CHECK(quad.max_off_zero() <= 1e-8);

    const auto kor = correlations(build_korobov(1, ctx));
    CHECK(kor.values[0].real() == doctest::Approx(static_cast<double>(p - 1)));
    for (std::size_t a = 1; a < p - 1; ++a) CHECK(std::abs(kor.values[a] + 1.0) < 1e-8);

    const auto kl = correlations(build_kloosterman(ctx));
    CHECK(kl.values[0].real() == doctest::Approx(static_cast<double>(p - 1)).epsilon(1e-12));
    for (std::size_t a = 1; a < p; ++a) CHECK(std::abs(kl.values[a] + 1.0) < 1e-8);
  }
}

TEST_CASE("completion L1 norm") {
  for (std::uint64_t m : {101ull, 1009ull, 4096ull}) {
    CHECK(completion_l1(IntervalZm(m, 5, 1)) == doctest::Approx(std::sqrt(static_cast<double>(m))));
    for (std::uint64_t len : std::vector<std::uint64_t>{2, 17, m / 2, m - 1}) {
      const IntervalZm iv(m, 3, len);
      CHECK(completion_l1(iv) == doctest::Approx(completion_l1_closed_form(iv)).epsilon(1e-9));
    }
  }
  CHECK_THROWS_AS(completion_l1(IntervalZm(101, 0, 101)), std::invalid_argument);
  CHECK_THROWS_AS(completion_l1_closed_form(IntervalZm(101, 0, 101)), std::invalid_argument);

  // growth: sum |hat 1_I| / (sqrt(m) log m) stays bounded (recorded value below 1)
  for (std::uint64_t m : {101ull, 1009ull, 10007ull}) {
    const double ratio = completion_l1(IntervalZm(m, 0, m / 3)) /
                         (std::sqrt(static_cast<double>(m)) * std::log(static_cast<double>(m)));
    CHECK(ratio < 1.0);
  }
}

TEST_CASE("completion bound is valid") {
  const FieldContext ctx(1009);
  std::mt19937_64 rng(4);
  for (const auto& phi : {legendre(ctx), build_kloosterman(ctx), build_quadratic_phase(3, ctx),
                          random_function(1009, 8)}) {
    const auto spec = dft(phi);
    for (int i = 0; i < 30; ++i) {
      const IntervalZm iv(1009, rng() % 1009, 1 + rng() % 1008);
      CHECK(std::abs(sum_region(phi, iv)) <= completion_bound(spec, iv) * (1 + 1e-12));
    }
  }
  const auto leg = legendre(ctx);
  const IntervalZm iv(1009, 0, 100);
  CHECK(completion_bound(leg, iv) == doctest::Approx(completion_l1(iv)).epsilon(1e-9));
  const TabulatedFunction ones(std::vector<Complex>(1009, 1.0), 1.0, "one");
  CHECK(completion_bound(ones, iv) >= 100.0);
}

TEST_CASE("spectral bound for built families") {
  // sup |hat phi| <= 10 c^2 for the families with declared conductors
  for (std::uint64_t p : {101ull, 1009ull}) {
    const FieldContext ctx(p);
    for (const auto& phi : {legendre(ctx), build_kloosterman(ctx), build_sym_power(2, ctx),
                            build_quadratic_phase(1, ctx)}) {
      const double c = phi.conductor_bound();
      CHECK(dft(phi).sup_abs <= 10.0 * c * c);
    }
  }
}
