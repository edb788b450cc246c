#include "slidesum/ring_core.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

namespace slidesum {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

Residue reduce_signed(std::int64_t x, std::uint64_t p) {
  const auto pm = static_cast<std::int64_t>(p);
  std::int64_t r = x % pm;
  if (r < 0) r += pm;
  return static_cast<Residue>(r);
}

bool miller_rabin_witness(std::uint64_t n, std::uint64_t a, std::uint64_t d, int r) {
  std::uint64_t x = mod_pow(a % n, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < r; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

std::string_view strip_outer_parens(std::string_view s) {
  while (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
    int depth = 0;
    bool wraps = true;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '(') ++depth;
      if (s[i] == ')') --depth;
      if (depth == 0 && i + 1 < s.size()) {
        wraps = false;
        break;
      }
    }
    if (!wraps) break;
    s = s.substr(1, s.size() - 2);
  }
  return s;
}

}  // namespace

Residue mod_pow(Residue base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  Residue result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1u) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

Residue mod_inverse(Residue x, std::uint64_t p) {
  x %= p;
  if (x == 0) throw std::domain_error("mod_inverse: 0 has no inverse");
  // extended Euclid; works for any modulus coprime to x
  std::int64_t t = 0, new_t = 1;
  auto r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(x);
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw std::domain_error("mod_inverse: argument not invertible");
  return reduce_signed(t, p);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1u) == 0) {
    d >>= 1;
    ++r;
  }
  // this witness set is exact below 3.3e24
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (!miller_rabin_witness(n, a, d, r)) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

Residue find_primitive_root(std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("find_primitive_root: modulus is not prime");
  if (p == 2) return 1;
  const auto factors = prime_factors(p - 1);
  for (Residue g = 2; g < p; ++g) {
    const bool generates = std::all_of(factors.begin(), factors.end(),
                                       [&](std::uint64_t q) { return mod_pow(g, (p - 1) / q, p) != 1; });
    if (generates) return g;
  }
  throw std::logic_error("find_primitive_root: no generator found");
}

FieldContext::FieldContext(std::uint64_t p) : p_(p) {
  if (!is_prime(p)) throw std::invalid_argument("FieldContext: " + std::to_string(p) + " is not prime");
  if (p > (1ull << 32)) throw std::invalid_argument("FieldContext: modulus too large for tabulation");
  g_ = find_primitive_root(p);
  dlog_.assign(p, 0);
  exp_.assign(p - 1, 0);
  inv_.assign(p, 0);
  Residue x = 1;
  for (std::uint64_t n = 0; n < p - 1; ++n) {
    exp_[n] = static_cast<std::uint32_t>(x);
    dlog_[x] = static_cast<std::uint32_t>(n);
    x = mul_mod(x, g_, p);
  }
  // g^n * g^(p-1-n) = 1
  for (std::uint64_t n = 0; n < p - 1; ++n) {
    inv_[exp_[n]] = exp_[(p - 1 - n) % (p - 1)];
  }
}

std::uint64_t FieldContext::dlog(Residue x) const {
  x %= p_;
  if (x == 0) throw std::domain_error("dlog: 0 has no discrete logarithm");
  return dlog_[x];
}

Residue FieldContext::inverse(Residue x) const {
  x %= p_;
  if (x == 0) throw std::domain_error("inverse: 0 has no inverse");
  return inv_[x];
}

Residue FieldContext::reduce(std::int64_t x) const { return reduce_signed(x, p_); }

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Polynomial Polynomial::monomial(unsigned degree, std::int64_t c) {
  std::vector<std::int64_t> v(degree + 1, 0);
  v[degree] = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::parse(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    s.push_back(ch == 'x' ? 'X' : ch);
  }
  s = std::string(strip_outer_parens(s));
  if (s.empty()) throw std::invalid_argument("polynomial: empty expression");

  std::vector<std::int64_t> coeffs;
  std::size_t i = 0;
  auto read_int = [&](std::int64_t& out) {
    const std::size_t begin = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == begin) return false;
    out = std::stoll(s.substr(begin, i - begin));
    return true;
  };
  while (i < s.size()) {
    std::int64_t sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      throw std::invalid_argument("polynomial: expected '+' or '-' in \"" + s + "\"");
    }
    std::int64_t coef = 1;
    const bool has_coef = read_int(coef);
    if (i < s.size() && s[i] == '*') ++i;
    unsigned degree = 0;
    if (i < s.size() && s[i] == 'X') {
      ++i;
      degree = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::int64_t d = 0;
        if (!read_int(d)) throw std::invalid_argument("polynomial: missing exponent in \"" + s + "\"");
        degree = static_cast<unsigned>(d);
      }
    } else if (!has_coef) {
      throw std::invalid_argument("polynomial: malformed term in \"" + s + "\"");
    }
    if (coeffs.size() <= degree) coeffs.resize(degree + 1, 0);
    coeffs[degree] += sign * coef;
  }
  return Polynomial(std::move(coeffs));
}

Residue Polynomial::evaluate(Residue x, std::uint64_t p) const {
  Residue acc = 0;
  x %= p;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = (mul_mod(acc, x, p) + reduce_signed(*it, p)) % p;
  }
  return acc;
}

std::vector<Residue> Polynomial::reduced(std::uint64_t p) const {
  std::vector<Residue> out;
  out.reserve(coeffs_.size());
  for (auto c : coeffs_) out.push_back(reduce_signed(c, p));
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

int Polynomial::reduced_degree(std::uint64_t p) const { return static_cast<int>(reduced(p).size()) - 1; }

bool Polynomial::has_root_mod(std::uint64_t p) const {
  for (Residue x = 0; x < p; ++x) {
    if (evaluate(x, p) == 0) return true;
  }
  return false;
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int d = degree(); d >= 0; --d) {
    const std::int64_t c = coeffs_[static_cast<std::size_t>(d)];
    if (c == 0) continue;
    if (c < 0) {
      os << '-';
    } else if (!first) {
      os << '+';
    }
    const std::int64_t a = c < 0 ? -c : c;
    if (a != 1 || d == 0) os << a;
    if (d >= 1) os << 'X';
    if (d >= 2) os << '^' << d;
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// RationalFunction

RationalFunction::RationalFunction(Polynomial numerator, Polynomial denominator)
    : numerator_(std::move(numerator)), denominator_(std::move(denominator)) {
  if (denominator_.is_zero()) throw std::invalid_argument("rational function: zero denominator");
}

RationalFunction RationalFunction::parse(std::string_view text) {
  int depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (text[i] == '/' && depth == 0) {
      return {Polynomial::parse(text.substr(0, i)), Polynomial::parse(text.substr(i + 1))};
    }
  }
  return RationalFunction(Polynomial::parse(text));
}

bool RationalFunction::degenerate_mod(std::uint64_t p) const { return denominator_.reduced_degree(p) < 0; }

bool RationalFunction::is_polynomial_mod(std::uint64_t p) const { return denominator_.reduced_degree(p) == 0; }

bool RationalFunction::is_affine_mod(std::uint64_t p) const {
  return is_polynomial_mod(p) && numerator_.reduced_degree(p) <= 1;
}

std::string RationalFunction::to_string() const {
  if (denominator_.degree() == 0 && denominator_.coefficients()[0] == 1) return numerator_.to_string();
  return "(" + numerator_.to_string() + ")/(" + denominator_.to_string() + ")";
}

std::optional<Residue> eval_rational(const RationalFunction& f, Residue x, const FieldContext& ctx) {
  const auto p = ctx.p();
  if (f.degenerate_mod(p)) throw DegenerateReduction("denominator vanishes identically mod " + std::to_string(p));
  const Residue den = f.denominator().evaluate(x, p);
  if (den == 0) return std::nullopt;
  return mul_mod(f.numerator().evaluate(x, p), ctx.inverse(den), p);
}

Complex character_value(const CharacterSpec& chi, Residue x, const FieldContext& ctx) {
  if (chi.order == 0 || (ctx.p() - 1) % chi.order != 0) {
    throw std::invalid_argument("character order must divide p - 1");
  }
  x %= ctx.p();
  if (x == 0) return {0.0, 0.0};
  const std::uint64_t j = ctx.dlog(x);
  const auto num = static_cast<std::uint64_t>(static_cast<u128>(j) * chi.index % chi.order);
  return unit_root(static_cast<std::int64_t>(num), static_cast<std::int64_t>(chi.order));
}

}  // namespace slidesum
