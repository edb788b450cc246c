#include "slidesum/trace_functions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "slidesum/fourier.hpp"

namespace slidesum {

namespace {

/// e(k/p) for k = 0..p-1.
std::vector<Complex> additive_roots(std::uint64_t p) {
  std::vector<Complex> roots(p);
  for (std::uint64_t k = 0; k < p; ++k) roots[k] = unit_root(static_cast<std::int64_t>(k), static_cast<std::int64_t>(p));
  return roots;
}

/// p^{-1/2} sum_n x[n] e(n t/p), with sign +1 in the exponent.
std::vector<Complex> normalized_transform(std::span<const Complex> x) {
  auto out = fft::transform(x, +1);
  const double scale = 1.0 / std::sqrt(static_cast<double>(x.size()));
  for (auto& v : out) v *= scale;
  return out;
}

void require_odd_prime(const FieldContext& ctx, const char* what) {
  if (ctx.p() < 3) throw std::invalid_argument(std::string(what) + ": requires p >= 3");
}

}  // namespace

// ---------------------------------------------------------------------------

TabulatedFunction::TabulatedFunction(std::vector<Complex> values, double conductor_bound, std::string family_tag)
    : values_(std::move(values)), conductor_bound_(conductor_bound), family_tag_(std::move(family_tag)) {
  if (values_.empty()) throw std::invalid_argument("TabulatedFunction: empty value table");
  CompensatedSum<double> sq;
  for (const auto& v : values_) {
    sup_norm_ = std::max(sup_norm_, std::abs(v));
    sq += std::norm(v);
  }
  l2_norm_ = std::sqrt(sq.value());
}

Complex TabulatedFunction::at(std::int64_t n) const {
  const auto m = static_cast<std::int64_t>(values_.size());
  std::int64_t r = n % m;
  if (r < 0) r += m;
  return values_[static_cast<std::size_t>(r)];
}

TabulatedFunction TabulatedFunction::with_conductor(double c) const {
  TabulatedFunction copy = *this;
  copy.conductor_bound_ = c;
  return copy;
}

TabulatedFunction TabulatedFunction::with_tag(std::string tag) const {
  TabulatedFunction copy = *this;
  copy.family_tag_ = std::move(tag);
  return copy;
}

AngleTable::AngleTable(std::uint64_t p, std::vector<double> angles) : p_(p), angles_(std::move(angles)) {
  if (angles_.size() != p_) throw std::invalid_argument("AngleTable: table size must equal p");
}

double AngleTable::angle(Residue n) const {
  n %= p_;
  if (n == 0) throw std::domain_error("AngleTable: no Kloosterman angle at n = 0");
  return angles_[n];
}

// ---------------------------------------------------------------------------

TabulatedFunction build_mixed_char(const CharacterSpec& chi, const RationalFunction& f, const RationalFunction& g,
                                   const FieldContext& ctx, std::optional<double> conductor) {
  const auto p = ctx.p();
  if (f.degenerate_mod(p) || g.degenerate_mod(p)) {
    throw DegenerateReduction("build_mixed_char: degenerate reduction mod " + std::to_string(p));
  }
  const auto roots = additive_roots(p);
  std::vector<Complex> values(p);
  for (Residue n = 0; n < p; ++n) {
    const auto fn = eval_rational(f, n, ctx);
    const auto gn = eval_rational(g, n, ctx);
    if (!fn || !gn || *fn == 0) continue;
    values[n] = character_value(chi, *fn, ctx) * roots[*gn];
  }
  const double c = conductor.value_or(static_cast<double>(
      f.numerator().degree_or_zero() + f.denominator().degree_or_zero() + g.numerator().degree_or_zero() +
      g.denominator().degree_or_zero() + 2));
  return {std::move(values), c,
          "mixed(chi=" + std::to_string(chi.index) + "/" + std::to_string(chi.order) + ",f=" + f.to_string() +
              ",g=" + g.to_string() + ")"};
}

bool mixed_char_is_fourier(const CharacterSpec& chi, const RationalFunction& f, const RationalFunction& g,
                           const FieldContext& ctx) {
  const auto p = ctx.p();
  if (!g.is_affine_mod(p)) return true;
  if (chi.is_trivial()) return false;
  std::optional<Complex> first;
  for (Residue x = 0; x < p; ++x) {
    const auto fx = eval_rational(f, x, ctx);
    if (!fx || *fx == 0) continue;
    const Complex v = character_value(chi, *fx, ctx);
    if (!first) {
      first = v;
    } else if (std::abs(v - *first) > 1e-9) {
      return true;
    }
  }
  return false;
}

std::vector<double> kloosterman_sums_direct(const FieldContext& ctx) {
  const auto p = ctx.p();
  const auto roots = additive_roots(p);
  std::vector<double> sums(p);
  for (Residue n = 0; n < p; ++n) {
    CompensatedSum<double> acc;
    for (Residue x = 1; x < p; ++x) {
      // the imaginary parts cancel in the pairing x <-> -x
      acc += roots[(n * x + ctx.inverse(x)) % p].real();
    }
    sums[n] = acc.value();
  }
  return sums;
}

TabulatedFunction build_kloosterman(const FieldContext& ctx, KloostermanMethod method) {
  require_odd_prime(ctx, "build_kloosterman");
  const auto p = ctx.p();
  std::vector<Complex> values(p);
  if (method == KloostermanMethod::direct) {
    const auto sums = kloosterman_sums_direct(ctx);
    const double scale = 1.0 / std::sqrt(static_cast<double>(p));
    for (Residue n = 0; n < p; ++n) values[n] = sums[n] * scale;
  } else {
    // S(n,1;p) = sum_x e(inverse(x)/p) e(n x/p) = sqrt(p) * hat(psi)(n)
    std::vector<Complex> psi(p);
    for (Residue x = 1; x < p; ++x) {
      psi[x] = unit_root(static_cast<std::int64_t>(ctx.inverse(x)), static_cast<std::int64_t>(p));
    }
    values = normalized_transform(psi);
  }
  return {std::move(values), 5.0, "kloosterman"};
}

AngleTable kloosterman_angles(const TabulatedFunction& normalized_kloosterman) {
  const auto p = normalized_kloosterman.modulus();
  const double sqrt_p = std::sqrt(static_cast<double>(p));
  std::vector<double> angles(p, 0.0);
  for (std::size_t n = 1; n < p; ++n) {
    const double s = normalized_kloosterman[n].real() * sqrt_p;
    if (std::abs(s) > 2.0 * sqrt_p + 1e-6) {
      throw std::logic_error("Weil bound violated at n = " + std::to_string(n) + ": |S| = " + std::to_string(s));
    }
    angles[n] = std::acos(std::clamp(s / (2.0 * sqrt_p), -1.0, 1.0));
  }
  return {p, std::move(angles)};
}

AngleTable kloosterman_angles(const FieldContext& ctx) { return kloosterman_angles(build_kloosterman(ctx)); }

double chebyshev_u(unsigned d, double t) {
  if (d == 0) return 1.0;
  double prev = 1.0;
  double cur = t;
  for (unsigned k = 1; k < d; ++k) {
    const double next = t * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

TabulatedFunction build_sym_power(unsigned d, const TabulatedFunction& normalized_kloosterman,
                                  std::optional<double> conductor) {
  if (d == 0) throw std::invalid_argument("build_sym_power: d must be positive");
  std::vector<Complex> values(normalized_kloosterman.modulus());
  for (std::size_t n = 0; n < values.size(); ++n) {
    values[n] = chebyshev_u(d, normalized_kloosterman[n].real());
  }
  return {std::move(values), conductor.value_or(2.0 * d + 4.0), "sympower(d=" + std::to_string(d) + ")"};
}

TabulatedFunction build_sym_power(unsigned d, const FieldContext& ctx, std::optional<double> conductor) {
  return build_sym_power(d, build_kloosterman(ctx), conductor);
}

TabulatedFunction build_quadratic_phase(Residue h, const FieldContext& ctx) {
  require_odd_prime(ctx, "build_quadratic_phase");
  const auto p = ctx.p();
  h %= p;
  if (h == 0) throw std::invalid_argument("build_quadratic_phase: h must be nonzero mod p");
  std::vector<Complex> values(p);
  for (Residue x = 0; x < p; ++x) {
    const auto k = static_cast<std::int64_t>(static_cast<unsigned __int128>(h) * x % p * x % p);
    values[x] = unit_root(k, static_cast<std::int64_t>(p));
  }
  return {std::move(values), 4.0, "quadphase(h=" + std::to_string(h) + ")"};
}

Complex gauss_sum(Residue h, const FieldContext& ctx) {
  const auto phi = build_quadratic_phase(h, ctx);
  CompensatedSum<Complex> acc;
  for (const auto& v : phi.values()) acc += v;
  return acc.value() / std::sqrt(static_cast<double>(ctx.p()));
}

TabulatedFunction build_fourier_family(const TabulatedFunction& psi) {
  auto values = normalized_transform(psi.values());
  for (auto& v : values) v = -v;
  const double c = psi.conductor_bound();
  return {std::move(values), 10.0 * c * c, "fourier[" + psi.family_tag() + "]"};
}

TabulatedFunction build_korobov(Residue h, const FieldContext& ctx) {
  const auto p = ctx.p();
  h %= p;
  if (h == 0) throw std::invalid_argument("build_korobov: h must be nonzero mod p");
  std::vector<Complex> values(p - 1);
  for (std::uint64_t n = 0; n + 1 < p; ++n) {
    const auto k = static_cast<std::int64_t>(static_cast<unsigned __int128>(h) * ctx.pow_generator(n) % p);
    values[n] = unit_root(k, static_cast<std::int64_t>(p));
  }
  return {std::move(values), 3.0, "korobov(h=" + std::to_string(h) + ")"};
}

ResidueIndicator build_residue_indicator(const Polynomial& f, const FieldContext& ctx) {
  const auto p = ctx.p();
  if (f.degree() < 1 || !f.is_monic()) {
    throw std::invalid_argument("build_residue_indicator: f must be nonconstant and monic");
  }
  if (static_cast<std::uint64_t>(f.degree()) >= p) {
    throw std::invalid_argument("build_residue_indicator: requires p > deg f");
  }
  std::vector<Complex> values(p);
  std::uint64_t image = 0;
  for (Residue y = 0; y < p; ++y) {
    auto& slot = values[f.evaluate(y, p)];
    if (slot == Complex{}) {
      slot = 1.0;
      ++image;
    }
  }
  TabulatedFunction indicator(std::move(values), static_cast<double>(f.degree() + 1),
                              "residue(f=" + f.to_string() + ")");
  return {std::move(indicator), image, p};
}

TabulatedFunction restrict_multiplicative(const TabulatedFunction& phi, const FieldContext& ctx) {
  const auto p = ctx.p();
  if (phi.modulus() != p) throw std::invalid_argument("restrict_multiplicative: function must live on Z/pZ");
  std::vector<Complex> values(p - 1);
  for (std::uint64_t n = 0; n + 1 < p; ++n) values[n] = phi[ctx.pow_generator(n)];
  return {std::move(values), phi.conductor_bound(), "mult[" + phi.family_tag() + "]"};
}

}  // namespace slidesum
