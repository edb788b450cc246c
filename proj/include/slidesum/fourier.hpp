#pragma once

// Unnormalized discrete Fourier transforms of arbitrary length.
//
//   X[t] = sum_n x[n] exp(sign * 2 pi i n t / m)
//
// Lengths below kDirectThreshold use the O(m^2) sum; powers of two use an
// iterative radix-2 transform; every other length (primes and p - 1 in
// practice) goes through Bluestein's chirp reduction to a power-of-two
// circular convolution.

#include <cstddef>
#include <span>
#include <vector>

#include "slidesum/numeric.hpp"

namespace slidesum::fft {

inline constexpr std::size_t kDirectThreshold = 512;

/// O(m^2) reference transform with exact index reduction nt mod m.
std::vector<Complex> transform_direct(std::span<const Complex> x, int sign);

/// Radix-2 transform; x.size() must be a power of two.
std::vector<Complex> transform_pow2(std::span<const Complex> x, int sign);

/// Bluestein transform, valid for any length.
std::vector<Complex> transform_bluestein(std::span<const Complex> x, int sign);

/// Dispatches on length as described above.
std::vector<Complex> transform(std::span<const Complex> x, int sign);

}  // namespace slidesum::fft
