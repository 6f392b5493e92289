#include "olx/resonator.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "olx/detail/numeric.hpp"
#include "olx/detail/prime_blocks.hpp"
#include "olx/errors.hpp"
#include "olx/mertens.hpp"
#include "olx/primes.hpp"
#include "olx/summation.hpp"

namespace olx {

namespace {

constexpr double kE = std::numbers::e;

void require_iterated_log(double log_T) {
  if (!(log_T > kE) || !std::isfinite(log_T)) {
    throw DomainError("T must exceed e^e so that ln ln T > 1 and ln ln ln T is defined");
  }
}

}  // namespace

double ResonatorConfig::T() const { return std::exp(log_T); }

ResonatorConfig resonator_config_from_log(double log_T) {
  require_iterated_log(log_T);
  const double X = log_T * std::log(log_T) / 6.0;
  const double eps = log_T * std::exp(-log_T);
  return {log_T, X, eps};
}

ResonatorConfig resonator_config(double T) {
  if (!(T > 0.0)) require_iterated_log(-1.0);
  return resonator_config_from_log(std::log(T));
}

ResonatorConfig resonator_config_for_cutoff(double X) {
  if (!(X > kE / 6.0) || !std::isfinite(X)) throw DomainError("cutoff X must exceed e/6");
  // Solve L ln L = 6X for L > e by Newton from a point above the root.
  const double target = 6.0 * X;
  double L = std::max(kE + 1.0, target);
  for (int i = 0; i < 100; ++i) {
    const double step = (L * std::log(L) - target) / (std::log(L) + 1.0);
    L -= step;
    if (std::abs(step) <= 1e-15 * L) break;
  }
  L = std::max(L, std::nextafter(kE, 10.0));
  ResonatorConfig config = resonator_config_from_log(L);
  config.X = X;
  return config;
}

double q_of_prime(std::uint64_t p, double X) {
  if (!(X > 0.0)) return 0.0;
  return std::max(0.0, 1.0 - static_cast<double>(p) / X);
}

double q_of_int(std::uint64_t n, double X) {
  if (n == 0) throw DomainError("q_of_int requires n >= 1");
  double q = 1.0;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    while (n % f == 0) {
      q *= q_of_prime(f, X);
      n /= f;
    }
  }
  if (n > 1) q *= q_of_prime(n, X);
  return q;
}

ResonanceReport resonance_product(const LFunctionModel& model, const ResonatorConfig& config) {
  const double X = config.X;
  if (X > static_cast<double>(model.coeff_cutoff())) {
    throw RangeError("resonance cutoff X beyond coefficient cutoff of " + model.label());
  }
  if (X > static_cast<double>(kSieveLimitMax)) throw ResourceError("resonance cutoff X exceeds sieve budget 2^32");

  double log_resonance = 0.0;
  double log_mertens = 0.0;
  double log_defect = 0.0;
  if (X >= 2.0) {
    const auto table = shared_primes(static_cast<std::uint64_t>(X));
    const auto primes = table->up_to(X);
    const int k = model.degree();
    struct Triple {
      double resonance = 0.0, mertens = 0.0, defect = 0.0;
    };
    const std::size_t blocks = (primes.size() + detail::kPrimeBlock - 1) / detail::kPrimeBlock;
    const auto partial = ordered_map<Triple>(blocks, [&](std::size_t b) {
      CompensatedSum res, mer, def;
      const std::size_t lo = b * detail::kPrimeBlock;
      const std::size_t hi = std::min(primes.size(), lo + detail::kPrimeBlock);
      std::array<std::complex<double>, kMaxZetaPower> roots;
      for (std::size_t i = lo; i < hi; ++i) {
        const std::uint32_t p = primes[i];
        model.roots_into(p, std::span(roots.data(), static_cast<std::size_t>(k)));
        const double q = q_of_prime(p, X);
        const double inv_p = 1.0 / p;
        for (int j = 0; j < k; ++j) {
          const std::complex<double> w = roots[j] * inv_p;
          const double lm = detail::log_abs_1m(w);
          const double lr = detail::log_abs_1m(w * q);
          res.add(-lr);
          mer.add(-lm);
          def.add(lm - lr);
        }
      }
      return Triple{res.value(), mer.value(), def.value()};
    });
    CompensatedSum res, mer, def;
    for (const auto& t : partial) {
      res.add(t.resonance);
      mer.add(t.mertens);
      def.add(t.defect);
    }
    log_resonance = res.value();
    log_mertens = mer.value();
    log_defect = def.value();
  }

  ResonanceReport report;
  report.label = model.label();
  report.log_T = config.log_T;
  report.X = X;
  report.resonance_product = std::exp(log_resonance);
  report.mertens_factor = std::exp(log_mertens);
  report.defect = std::exp(log_defect);
  report.asymptotic_bound = asymptotic_bound_from_log(model, config.log_T);
  return report;
}

ResonanceReport resonance_product(const LFunctionModel& model, double T) {
  return resonance_product(model, resonator_config(T));
}

double asymptotic_bound_from_log(const LFunctionModel& model, double log_T) {
  require_iterated_log(log_T);
  const double ll = std::log(log_T);
  const double lll = std::log(ll);
  return std::exp(model.gamma_F()) * std::pow(ll + lll, model.pole_order());
}

double asymptotic_bound(const LFunctionModel& model, double T) {
  if (!(T > 0.0)) require_iterated_log(-1.0);
  return asymptotic_bound_from_log(model, std::log(T));
}

std::complex<double> R_eval(double t, double X) {
  if (X < 2.0) return 1.0;
  if (X > static_cast<double>(kSieveLimitMax)) throw ResourceError("R_eval cutoff X exceeds sieve budget 2^32");
  const auto table = shared_primes(static_cast<std::uint64_t>(X));
  const auto log_value = detail::block_ordered_sum<std::complex<double>>(table->up_to(X), [&](std::uint32_t p) {
    const double q = q_of_prime(p, X);
    // p^{it} = conj(exp(-i t ln p))
    const std::complex<double> w = q * std::conj(detail::unit_phase(t, std::log(static_cast<long double>(p))));
    if (std::norm(1.0 - w) < kDegenerateFactor * kDegenerateFactor) {
      throw NumericError("degenerate resonator factor at p = " + std::to_string(p));
    }
    return -detail::log1m(w);
  });
  return std::exp(log_value);
}

}  // namespace olx
