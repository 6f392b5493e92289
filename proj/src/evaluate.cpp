#include "olx/evaluate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "olx/characters.hpp"
#include "olx/detail/numeric.hpp"
#include "olx/detail/prime_blocks.hpp"
#include "olx/errors.hpp"
#include "olx/mertens.hpp"
#include "olx/parallel.hpp"
#include "olx/primes.hpp"
#include "olx/summation.hpp"

namespace olx {

namespace {

void require_not_pole(std::complex<double> s) {
  if (s == std::complex<double>(1.0, 0.0)) throw DomainError("zeta has a pole at s = 1");
}

}  // namespace

std::complex<double> euler_product_on_line(const LFunctionModel& model, double t, double Y) {
  if (!std::isfinite(t)) throw DomainError("t must be finite");
  if (!(Y >= 2.0)) throw DomainError("truncation Y must be at least 2");
  if (Y > static_cast<double>(kSieveLimitMax)) throw ResourceError("Y exceeds sieve budget 2^32");
  if (Y > static_cast<double>(model.coeff_cutoff())) {
    throw RangeError("Y = " + std::to_string(Y) + " beyond coefficient cutoff of " + model.label());
  }
  const auto table = shared_primes(static_cast<std::uint64_t>(Y));
  const int k = model.degree();
  const auto log_sum = detail::block_ordered_sum<std::complex<double>>(table->up_to(Y), [&](std::uint32_t p) {
    std::array<std::complex<double>, kMaxZetaPower> roots;
    model.roots_into(p, std::span(roots.data(), static_cast<std::size_t>(k)));
    const std::complex<double> z = detail::unit_phase(t, std::log(static_cast<long double>(p))) / static_cast<double>(p);
    std::complex<double> term = 0.0;
    for (int j = 0; j < k; ++j) {
      const std::complex<double> w = roots[j] * z;
      if (std::norm(1.0 - w) < kDegenerateFactor * kDegenerateFactor) {
        throw NumericError("degenerate local factor at p = " + std::to_string(p) + ", t = " + std::to_string(t));
      }
      term -= detail::log1m(w);
    }
    return term;
  });
  return std::exp(log_sum);
}

std::complex<double> zeta_em(std::complex<double> s) {
  require_not_pole(s);
  if (!(s.real() >= 0.5)) throw DomainError("zeta_em requires Re s >= 1/2");
  if (!(std::abs(s.imag()) <= 1e8)) throw DomainError("zeta_em requires |Im s| <= 1e8");
  const auto N = static_cast<std::uint64_t>(std::max(50.0, std::ceil(2.0 * std::abs(s.imag()))));

  CompensatedComplexSum sum;
  for (std::uint64_t n = 1; n < N; ++n) sum.add(detail::inverse_power(static_cast<double>(n), s));
  const double Nd = static_cast<double>(N);
  const std::complex<double> n_pow = detail::inverse_power(Nd, s);  // N^{-s}
  sum.add(n_pow * Nd / (s - 1.0));
  sum.add(0.5 * n_pow);

  // B_{2k}/(2k)! (s)_{2k-1} N^{-s-2k+1}
  std::complex<double> rising = s;  // (s)_{2k-1}
  double factorial = 2.0;
  double n_scale = 1.0 / Nd;
  for (int k = 1; k <= 8; ++k) {
    sum.add(detail::kBernoulliEven[k - 1] / factorial * rising * n_pow * n_scale);
    rising *= (s + (2.0 * k - 1.0)) * (s + 2.0 * k);
    factorial *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
    n_scale /= Nd * Nd;
  }
  return sum.value();
}

std::complex<double> zeta_eta(std::complex<double> s) {
  require_not_pole(s);
  if (!(s.real() > 0.0)) throw DomainError("zeta_eta requires Re s > 0");
  const double t = std::abs(s.imag());
  const double rate = std::log(3.0 + std::sqrt(8.0));
  const int n = static_cast<int>(std::ceil((std::log(1.0 + 2.0 * t) + std::numbers::pi * t / 2.0 + 40.0) / rate));
  if (n > 20000) throw ResourceError("zeta_eta: |Im s| too large for the alternating series");

  // d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!), weights (d_n - d_k)/d_n.
  std::vector<long double> d(static_cast<std::size_t>(n) + 1);
  long double term = 1.0L / n;
  long double acc = 0.0L;
  for (int i = 0; i <= n; ++i) {
    acc += term;
    d[i] = n * acc;
    term *= 4.0L * (n + i) * (n - i) / ((2.0L * i + 1.0L) * (2.0L * i + 2.0L));
  }
  CompensatedComplexSum eta;
  for (int k = 0; k < n; ++k) {
    const double weight = static_cast<double>((d[n] - d[k]) / d[n]);
    const std::complex<double> v = weight * detail::inverse_power(k + 1.0, s);
    eta.add(k % 2 == 0 ? v : -v);
  }
  const std::complex<double> factor = 1.0 - 2.0 * detail::inverse_power(2.0, s);
  if (std::abs(factor) < 1e-8) {
    throw NumericError("zeta_eta: 1 - 2^{1-s} vanishes at s = " + std::to_string(s.real()) + "+" +
                       std::to_string(s.imag()) + "i");
  }
  return eta.value() / factor;
}

std::complex<double> dirichlet_direct(std::int64_t d, double t) {
  if (std::abs(d) > kMaxDiscriminant) throw ResourceError("|d| exceeds 1e6");
  require_fundamental_discriminant(d);
  if (!std::isfinite(t)) throw DomainError("t must be finite");
  if (d == 1) {
    if (t == 0.0) throw DomainError("zeta has a pole at s = 1");
    return zeta_em({1.0, t});
  }
  return character_series(d, {1.0, t}).value;
}

std::complex<double> direct_value(const LFunctionModel& model, double t) {
  switch (model.kind()) {
    case ModelKind::ZetaPower:
      return std::pow(zeta_em({1.0, t}), model.degree());
    case ModelKind::DedekindQuadratic:
      return zeta_em({1.0, t}) * dirichlet_direct(model.discriminant(), t);
    case ModelKind::RankinSelbergDelta:
      break;
  }
  throw UnsupportedModelError("no direct oracle for " + model.label());
}

double calibration_uniform(std::uint64_t seed, std::uint64_t i) {
  std::uint64_t z = seed + i * 0x9e3779b97f4a7c15ULL;
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

void summarize(CalibrationStats& stats) {
  if (stats.deviation.empty()) throw DomainError("calibration has no samples");
  std::vector<double> sorted = stats.deviation;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  stats.median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  CompensatedSum sum;
  for (double v : stats.deviation) sum.add(v);
  stats.mean = sum.value() / static_cast<double>(n);
  stats.max = sorted.back();
}

CalibrationStats calibrate_truncation(const LFunctionModel& model, double t_min, double t_max, double Y,
                                      std::size_t sample_count, std::uint64_t seed) {
  if (!model.has_direct_oracle()) throw UnsupportedModelError("no direct oracle for " + model.label());
  if (sample_count == 0) throw DomainError("sample_count must be at least 1");
  if (!(t_min <= t_max) || !std::isfinite(t_min) || !std::isfinite(t_max)) {
    throw DomainError("calibration needs a finite range t_min <= t_max");
  }
  if (t_min <= 0.0 && t_max >= 0.0) throw DomainError("calibration range must exclude the pole at t = 0");

  CalibrationStats stats;
  stats.label = model.label();
  stats.t_min = t_min;
  stats.t_max = t_max;
  stats.Y = Y;
  stats.sample_count = sample_count;
  stats.seed = seed;
  for (std::size_t i = 0; i < sample_count; ++i) {
    stats.t.push_back(t_min + (t_max - t_min) * calibration_uniform(seed, i));
  }
  // Warm the shared prime table before fanning out.
  shared_primes(static_cast<std::uint64_t>(std::max(2.0, std::min(Y, static_cast<double>(kSieveLimitMax)))));
  stats.deviation = ordered_map<double>(sample_count, [&](std::size_t i) {
    const std::complex<double> truncated = euler_product_on_line(model, stats.t[i], Y);
    const std::complex<double> direct = direct_value(model, stats.t[i]);
    const double dev = std::abs(truncated / direct - 1.0);
    if (!std::isfinite(dev)) {
      throw NumericError("non-finite calibration deviation at t = " + std::to_string(stats.t[i]));
    }
    return dev;
  });
  summarize(stats);
  return stats;
}

}  // namespace olx
