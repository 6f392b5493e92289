#pragma once

#include <cstddef>

#include "olx/lfamily.hpp"

namespace olx {

/// Largest resonator cutoff for which the moment integrals are enumerated.
inline constexpr double kMomentCutoffMax = 50.0;
/// Default weight cutoff of the series path (terms with weight < 1/n_cutoff are dropped).
inline constexpr double kDefaultMomentCutoff = 1.5e12;  // about e^28

/// Gaussian-weighted moments
///   I1 = int F(1+it; X) |R(t)|^2 exp(-(eps t)^2) dt,
///   I2 = int |R(t)|^2 exp(-(eps t)^2) dt,     eps = ln T / T,
/// evaluated termwise through
///   int (m/(nk))^{it} e^{-(eps t)^2} dt = (sqrt(pi)/eps) exp(-ln^2(m/(nk)) / (4 eps^2)).
/// The common part gcd(m, nk) is summed in closed form per prime, leaving a sum over
/// exponent differences delta in Z^{pi(X)} with weight prod_p w_p(delta_p). Terms whose
/// relative weight falls below 1/n_cutoff are omitted.
struct MomentSeries {
  double I1;
  double I2;
  /// Estimated omitted mass for each integral: geometric extrapolation of the
  /// per-weight-band masses, plus a rigorous bound on the cut Gaussian window.
  double I1_truncation;
  double I2_truncation;
  std::size_t terms;

  double truncation_bound() const { return I1_truncation > I2_truncation ? I1_truncation : I2_truncation; }
};

/// Requires X <= kMomentCutoffMax, T > 1, n_cutoff > 1.
MomentSeries moment_series(const LFunctionModel& model, double X, double T,
                           double n_cutoff = kDefaultMomentCutoff);

struct MomentQuadrature {
  double I1;
  double I2;
  /// |I(h/4) - I(h/2)| for each integral.
  double I1_error;
  double I2_error;
  /// Imaginary part of the I1 quadrature (vanishes by t -> -t symmetry).
  double I1_imag;
  double finest_step;
  std::size_t nodes;

  double error_estimate() const { return I1_error > I2_error ? I1_error : I2_error; }
};

/// Trapezoid rule on |t| <= 6.1/eps at steps h, h/2, h/4 (one grid, strided);
/// returns the h/4 values. Throws NumericError if the second halving does not
/// shrink the difference (above roundoff).
MomentQuadrature moment_quadrature(const LFunctionModel& model, double X, double T, double step = 0.05);

}  // namespace olx
