#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace harmonia {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Sum with a fixed pairwise reduction tree. The tree shape depends only on
/// the length, so results do not depend on how the caller produced the terms.
template <class T>
T pairwise_sum(std::span<const T> xs) {
  const std::size_t n = xs.size();
  if (n == 0) return T{};
  if (n <= 8) {
    T acc{};
    for (const T& x : xs) acc += x;
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

template <class T>
T pairwise_sum(const std::vector<T>& xs) {
  return pairwise_sum(std::span<const T>(xs));
}

/// e^{i theta} with exact values at multiples of pi/2, so that grid points
/// such as 1, i, -1, -i carry no roundoff.
inline Complex unit_phase(double turns) {
  // turns in units of full revolutions
  double t = turns - std::floor(turns);
  const double q = 4.0 * t;
  if (q == std::floor(q)) {
    switch (static_cast<int>(q)) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double th = kTwoPi * t;
  return {std::cos(th), std::sin(th)};
}

/// Integer power by repeated squaring (exact for small integer data).
inline Complex ipow(Complex z, unsigned k) {
  Complex r{1.0, 0.0};
  while (k) {
    if (k & 1U) r *= z;
    z *= z;
    k >>= 1U;
  }
  return r;
}

inline double ipow(double x, unsigned k) {
  double r = 1.0;
  while (k) {
    if (k & 1U) r *= x;
    x *= x;
    k >>= 1U;
  }
  return r;
}

}  // namespace harmonia
