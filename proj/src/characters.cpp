#include "olx/characters.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "olx/detail/numeric.hpp"
#include "olx/errors.hpp"
#include "olx/lfamily.hpp"
#include "olx/primes.hpp"
#include "olx/summation.hpp"

namespace olx {

namespace {

constexpr int kCorrectionTerms = 8;
constexpr double kMaxTerms = 4e9;

}  // namespace

CharacterSeriesValue character_series(std::int64_t d, std::complex<double> s) {
  require_fundamental_discriminant(d);
  if (d == 1) throw DomainError("character series requires d != 1 (principal character)");
  if (s.real() < 1.0) throw DomainError("character series requires Re(s) >= 1");

  const auto q = static_cast<std::uint64_t>(d < 0 ? -d : d);
  std::vector<signed char> chi(q + 1);
  for (std::uint64_t a = 1; a <= q; ++a) chi[a] = static_cast<signed char>(kronecker(d, a));

  const double periods = std::max(16.0, std::ceil(std::abs(s.imag()) + 16.0));
  if (periods * static_cast<double>(q) > kMaxTerms) {
    throw ResourceError("character series would need more than 4e9 terms (|d| * (|t| + 16))");
  }
  const std::uint64_t n_cut = static_cast<std::uint64_t>(periods) * q;
  const bool real_s = s.imag() == 0.0;

  CompensatedComplexSum total;
  {
    CompensatedSum re;
    CompensatedSum im;
    std::uint64_t a = 0;
    for (std::uint64_t n = 1; n <= n_cut; ++n) {
      if (++a > q) a = 1;
      const int c = chi[a];
      if (c == 0) continue;
      if (real_s) {
        re.add(c * std::pow(static_cast<double>(n), -s.real()));
      } else {
        const auto term = detail::inverse_power(static_cast<double>(n), s);
        re.add(c * term.real());
        im.add(c * term.imag());
      }
    }
    total.add({re.value(), im.value()});
  }

  // Tail: sum_{j>=0} g(N + jq), g(M) = sum_{a=1}^{q} chi(a) (M + a)^{-s}.
  const double n_real = static_cast<double>(n_cut);
  const double qd = static_cast<double>(q);
  std::vector<double> log_ratio(q + 1);
  for (std::uint64_t a = 1; a <= q; ++a) log_ratio[a] = std::log1p(static_cast<double>(a) / n_real);

  // sum_a chi(a) (1 + a/N)^{-w}, with the constant part removed (sum chi = 0).
  auto shifted_sum = [&](std::complex<double> w) {
    CompensatedComplexSum acc;
    for (std::uint64_t a = 1; a <= q; ++a) {
      if (chi[a] == 0) continue;
      acc.add(static_cast<double>(chi[a]) * detail::expm1(-w * log_ratio[a]));
    }
    return acc.value();
  };

  const std::complex<double> n_pow = detail::inverse_power(n_real, s);  // N^{-s}

  // integral term: (1/q) int_N^inf g(M) dM
  if (s == std::complex<double>(1.0, 0.0)) {
    CompensatedSum acc;
    for (std::uint64_t a = 1; a <= q; ++a) {
      if (chi[a] != 0) acc.add(chi[a] * log_ratio[a]);
    }
    total.add(-acc.value() / qd);
  } else {
    const std::complex<double> one_minus_s = 1.0 - s;
    const std::complex<double> sum = shifted_sum(-one_minus_s);
    total.add(n_pow * n_real * sum / ((s - 1.0) * qd));
  }

  // g(N)/2
  total.add(0.5 * n_pow * shifted_sum(s));

  // -sum_k B_{2k}/(2k)! q^{2k-1} g^{(2k-1)}(N),
  // g^{(r)}(N) = (-1)^r (s)_r N^{-s-r} sum_a chi(a) (1 + a/N)^{-s-r}.
  std::complex<double> rising = 1.0;  // (s)_r
  double factorial = 1.0;             // (2k)!
  double last = 0.0;
  int r = 0;
  for (int k = 1; k <= kCorrectionTerms; ++k) {
    const int order = 2 * k - 1;
    while (r < order) {
      rising *= s + static_cast<double>(r);
      ++r;
    }
    factorial *= static_cast<double>(2 * k - 1) * static_cast<double>(2 * k);
    const double scale = std::pow(qd / n_real, order);
    const std::complex<double> deriv = -rising * n_pow * scale * shifted_sum(s + static_cast<double>(order));
    const std::complex<double> term = -(detail::kBernoulliEven[k - 1] / factorial) * deriv;
    total.add(term);
    last = std::abs(term);
  }

  return {total.value(), last, n_cut};
}

}  // namespace olx
