#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "olx/lfamily.hpp"

namespace olx {

/// F(1+it; Y) = prod_{p<=Y} prod_j (1 - alpha_j(p) p^{-1-it})^{-1}, via a
/// compensated complex log-sum.
std::complex<double> euler_product_on_line(const LFunctionModel& model, double t, double Y);

/// zeta(s) by Euler-Maclaurin, N = max(50, ceil(2|Im s|)), 8 Bernoulli terms.
/// Requires Re s >= 1/2, s != 1, |Im s| <= 1e8.
std::complex<double> zeta_em(std::complex<double> s);

/// zeta(s) = eta(s) / (1 - 2^{1-s}) with eta summed by the Borwein
/// Chebyshev-weighted alternating series. Requires Re s > 0, s != 1.
std::complex<double> zeta_eta(std::complex<double> s);

/// L(1+it, chi_d) for fundamental d, |d| <= 1e6; d = 1 gives zeta(1+it).
std::complex<double> dirichlet_direct(std::int64_t d, double t);

/// Independent value of F(1+it) for models with a direct oracle.
std::complex<double> direct_value(const LFunctionModel& model, double t);

struct CalibrationStats {
  std::string label;
  double t_min;
  double t_max;
  double Y;
  std::size_t sample_count;
  std::uint64_t seed;
  std::vector<double> t;
  /// |F(1+it; Y) / F(1+it) - 1| per sample.
  std::vector<double> deviation;
  double median;
  double mean;
  double max;
};

/// Sample i sits at t_min + (t_max - t_min) u_i, u_i = splitmix64(seed + i * 0x9e3779b97f4a7c15) / 2^64
/// (top 53 bits). Throws UnsupportedModelError for models without a direct oracle.
CalibrationStats calibrate_truncation(const LFunctionModel& model, double t_min, double t_max, double Y,
                                      std::size_t sample_count, std::uint64_t seed);

/// Median, mean and max of the deviations, recomputed.
void summarize(CalibrationStats& stats);

/// u_i in [0, 1) of the calibration sampler.
double calibration_uniform(std::uint64_t seed, std::uint64_t i);

}  // namespace olx
