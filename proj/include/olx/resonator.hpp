#pragma once

#include <complex>
#include <cstdint>
#include <string>

#include "olx/lfamily.hpp"

namespace olx {

/// Resonator parameters for one height T. Stored through ln T so that very large
/// heights (T far beyond binary64 range) remain representable.
struct ResonatorConfig {
  double log_T;
  /// (1/6) ln T ln ln T
  double X;
  /// ln T / T, the Gaussian scale in Phi(eps t).
  double eps;

  double T() const;
};

/// Requires T > e^e.
ResonatorConfig resonator_config(double T);
/// Same, from ln T (> e).
ResonatorConfig resonator_config_from_log(double log_T);
/// The height whose cutoff equals X, solved for ln T. Requires X > e/6.
ResonatorConfig resonator_config_for_cutoff(double X);

/// max(0, 1 - p/X).
double q_of_prime(std::uint64_t p, double X);
/// Completely multiplicative extension of q_of_prime; q_1 = 1.
double q_of_int(std::uint64_t n, double X);

struct ResonanceReport {
  std::string label;
  double log_T;
  double X;
  /// sum a_k q_k = prod_{p<=X} prod_j (1 - alpha_j q_p / p)^{-1}
  double resonance_product;
  /// prod_{p<=X} prod_j (1 - alpha_j / p)^{-1}
  double mertens_factor;
  /// prod_{p<=X} prod_j (p - alpha_j)/(p - alpha_j q_p), in (0, 1]
  double defect;
  /// e^{gamma_F} (ln2 T + ln3 T)^m, without the unspecified O(1) constant.
  double asymptotic_bound;
};

ResonanceReport resonance_product(const LFunctionModel& model, const ResonatorConfig& config);
ResonanceReport resonance_product(const LFunctionModel& model, double T);

/// e^{gamma_F} (ln ln T + ln ln ln T)^m. Requires T > e^e.
double asymptotic_bound(const LFunctionModel& model, double T);
double asymptotic_bound_from_log(const LFunctionModel& model, double log_T);

/// R(t) = prod_{p<=X} (1 - q_p p^{it})^{-1}; 1 when X < 2.
std::complex<double> R_eval(double t, double X);

}  // namespace olx
