#include "slidesum/fourier.hpp"

#include <bit>
#include <stdexcept>

namespace slidesum::fft {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void radix2_in_place(std::vector<Complex>& a, int sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  // twiddles from the full-size table so every level reuses exact angles
  std::vector<Complex> tw(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    tw[k] = std::polar(1.0, sign * kTwoPi * static_cast<double>(k) / static_cast<double>(n));
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const Complex u = a[i + k];
        const Complex v = a[i + k + half] * tw[k * stride];
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
    }
  }
}

}  // namespace

std::vector<Complex> transform_direct(std::span<const Complex> x, int sign) {
  const std::size_t m = x.size();
  std::vector<Complex> roots(m);
  for (std::size_t k = 0; k < m; ++k) {
    roots[k] = std::polar(1.0, sign * kTwoPi * static_cast<double>(k) / static_cast<double>(m));
  }
  std::vector<Complex> out(m);
  for (std::size_t t = 0; t < m; ++t) {
    CompensatedSum<Complex> acc;
    std::size_t idx = 0;  // n * t mod m
    for (std::size_t n = 0; n < m; ++n) {
      acc += x[n] * roots[idx];
      idx += t;
      if (idx >= m) idx -= m;
    }
    out[t] = acc.value();
  }
  return out;
}

std::vector<Complex> transform_pow2(std::span<const Complex> x, int sign) {
  if (!is_pow2(x.size())) throw std::invalid_argument("transform_pow2: length is not a power of two");
  std::vector<Complex> a(x.begin(), x.end());
  radix2_in_place(a, sign);
  return a;
}

std::vector<Complex> transform_bluestein(std::span<const Complex> x, int sign) {
  const std::size_t m = x.size();
  if (m == 0) return {};
  const std::size_t n = std::bit_ceil(2 * m - 1);

  // chirp w(k) = exp(sign * pi i k^2 / m); k^2 is reduced mod 2m exactly
  std::vector<Complex> chirp(m);
  const std::uint64_t two_m = 2 * static_cast<std::uint64_t>(m);
  for (std::size_t k = 0; k < m; ++k) {
    const std::uint64_t k2 = (static_cast<unsigned __int128>(k) * k) % two_m;
    chirp[k] = std::polar(1.0, sign * std::numbers::pi * static_cast<double>(k2) / static_cast<double>(m));
  }

  std::vector<Complex> a(n, Complex{}), b(n, Complex{});
  for (std::size_t k = 0; k < m; ++k) a[k] = x[k] * chirp[k];
  b[0] = std::conj(chirp[0]);
  for (std::size_t k = 1; k < m; ++k) {
    b[k] = std::conj(chirp[k]);
    b[n - k] = std::conj(chirp[k]);
  }
  radix2_in_place(a, -1);
  radix2_in_place(b, -1);
  for (std::size_t k = 0; k < n; ++k) a[k] *= b[k];
  radix2_in_place(a, +1);

  std::vector<Complex> out(m);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < m; ++k) out[k] = a[k] * scale * chirp[k];
  return out;
}

std::vector<Complex> transform(std::span<const Complex> x, int sign) {
  if (x.size() < kDirectThreshold) return transform_direct(x, sign);
  if (is_pow2(x.size())) return transform_pow2(x, sign);
  return transform_bluestein(x, sign);
}

}  // namespace slidesum::fft
