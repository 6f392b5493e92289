#include "olx/mertens.hpp"

#include <array>
#include <cmath>
#include <string>

#include "olx/detail/numeric.hpp"
#include "olx/detail/prime_blocks.hpp"
#include "olx/errors.hpp"
#include "olx/primes.hpp"

namespace olx {

std::complex<double> lambda_coeff(const LFunctionModel& model, std::uint64_t p, int r) {
  if (r < 1) throw DomainError("lambda_coeff requires r >= 1");
  const LocalRoots roots = local_roots(model, p);
  std::complex<double> sum = 0.0;
  for (const auto& alpha : roots.roots) sum += std::pow(alpha, r);
  return sum / static_cast<double>(r);
}

double log_truncated_product_at_1(const LFunctionModel& model, double x) {
  if (!(x >= 2.0)) throw DomainError("truncated product requires x >= 2");
  if (x > static_cast<double>(kSieveLimitMax)) throw ResourceError("x exceeds sieve budget 2^32");
  if (x > static_cast<double>(model.coeff_cutoff())) {
    throw RangeError("x = " + std::to_string(x) + " beyond coefficient cutoff of " + model.label());
  }
  const auto table = shared_primes(static_cast<std::uint64_t>(x));
  const auto primes = table->up_to(x);
  const int k = model.degree();
  return detail::block_ordered_sum<double>(primes, [&](std::uint32_t p) {
    std::array<std::complex<double>, kMaxZetaPower> roots;
    model.roots_into(p, std::span(roots.data(), static_cast<std::size_t>(k)));
    const double inv_p = 1.0 / p;
    double term = 0.0;
    for (int j = 0; j < k; ++j) {
      const std::complex<double> w = roots[j] * inv_p;
      if (std::norm(1.0 - w) < kDegenerateFactor * kDegenerateFactor) {
        throw NumericError("degenerate local factor at p = " + std::to_string(p));
      }
      term -= detail::log_abs_1m(w);
    }
    return term;
  });
}

double truncated_product_at_1(const LFunctionModel& model, double x) {
  return std::exp(log_truncated_product_at_1(model, x));
}

double mertens_prediction(const LFunctionModel& model, double x) {
  if (!(x > 1.0)) throw DomainError("mertens prediction requires x > 1");
  const int m = model.pole_order();
  return model.residue() * std::exp(kEulerGamma * m) * std::pow(std::log(x), m);
}

MertensReport mertens_report(const LFunctionModel& model, std::span<const double> grid) {
  MertensReport report;
  report.label = model.label();
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw DomainError("mertens grid must be strictly increasing");
  }
  for (double x : grid) {
    const double product = truncated_product_at_1(model, x);
    const double prediction = mertens_prediction(model, x);
    report.grid.push_back(x);
    report.product.push_back(product);
    report.prediction.push_back(prediction);
    report.ratio.push_back(product / prediction);
  }
  return report;
}

}  // namespace olx
