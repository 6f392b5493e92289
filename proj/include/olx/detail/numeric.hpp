#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

namespace olx::detail {

/// B_2, B_4, ..., B_20.
inline constexpr std::array<double, 10> kBernoulliEven = {
    1.0 / 6.0,        -1.0 / 30.0,    1.0 / 42.0,   -1.0 / 30.0,          5.0 / 66.0,
    -691.0 / 2730.0,  7.0 / 6.0,      -3617.0 / 510.0, 43867.0 / 798.0, -174611.0 / 330.0};

/// exp(-i t log_n) with the angle reduced mod 2 pi in extended precision.
inline std::complex<double> unit_phase(double t, long double log_n) {
  constexpr long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  const long double angle = std::fmod(static_cast<long double>(t) * log_n, two_pi);
  const double a = static_cast<double>(angle);
  return {std::cos(a), -std::sin(a)};
}

/// n^{-s} for integer n >= 1.
inline std::complex<double> inverse_power(double n, std::complex<double> s) {
  const long double log_n = std::log(static_cast<long double>(n));
  const double mag = std::exp(-s.real() * static_cast<double>(log_n));
  return mag * unit_phase(s.imag(), log_n);
}

/// e^z - 1 without cancellation for small |z|.
inline std::complex<double> expm1(std::complex<double> z) {
  const double x = z.real();
  const double y = z.imag();
  const double half_sin = std::sin(0.5 * y);
  const double re = std::expm1(x) * std::cos(y) - 2.0 * half_sin * half_sin;
  const double im = std::exp(x) * std::sin(y);
  return {re, im};
}

/// log(1 - w) for |w| < 1, accurate for small |w|.
inline std::complex<double> log1m(std::complex<double> w) {
  const double re = 0.5 * std::log1p(std::norm(w) - 2.0 * w.real());
  const double im = std::atan2(-w.imag(), 1.0 - w.real());
  return {re, im};
}

/// log|1 - w|, with the real-root path through log1p.
inline double log_abs_1m(std::complex<double> w) {
  if (w.imag() == 0.0) return std::log1p(-w.real());
  return 0.5 * std::log1p(std::norm(w) - 2.0 * w.real());
}

}  // namespace olx::detail
