#include "olx/lfamily.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "olx/characters.hpp"
#include "olx/errors.hpp"
#include "olx/primes.hpp"
#include "olx/summation.hpp"
#include "olx/tau.hpp"

namespace olx {

void LFunctionModel::roots_into(std::uint64_t p, std::span<std::complex<double>> out) const {
  switch (kind_) {
    case ModelKind::ZetaPower:
      for (int j = 0; j < degree_; ++j) out[j] = 1.0;
      return;
    case ModelKind::DedekindQuadratic:
      out[0] = 1.0;
      out[1] = static_cast<double>(kronecker(discriminant_, p));
      return;
    case ModelKind::RankinSelbergDelta: {
      if (p > coeff_cutoff_) {
        throw RangeError("prime " + std::to_string(p) + " beyond coefficient cutoff " +
                         std::to_string(coeff_cutoff_) + " of " + label_);
      }
      // alpha = lambda/2 + i sqrt(1 - lambda^2/4), beta = conj(alpha)
      const double lambda = (*lambda_)[p];
      const double re = 0.5 * lambda;
      const double im = std::sqrt(std::max(0.0, 1.0 - re * re));
      const std::complex<double> alpha(re, im);
      out[0] = alpha * alpha;
      out[1] = 1.0;
      out[2] = 1.0;
      out[3] = std::conj(alpha * alpha);
      return;
    }
  }
}

double LFunctionModel::hecke_eigenvalue(std::uint64_t p) const {
  if (kind_ != ModelKind::RankinSelbergDelta) throw DomainError("hecke_eigenvalue: not a Rankin-Selberg model");
  if (p > coeff_cutoff_) throw RangeError("prime " + std::to_string(p) + " beyond coefficient cutoff");
  return (*lambda_)[p];
}

double gamma_F_of(int pole_order, double residue) {
  return pole_order * kEulerGamma + std::log(residue);
}

void validate_euler_gamma() {
  constexpr int n = 1000000;
  CompensatedSum harmonic;
  for (int k = n; k >= 1; --k) harmonic.add(1.0 / k);
  const double estimate = harmonic.value() - std::log(static_cast<double>(n)) - 0.5 / n;
  if (std::abs(estimate - kEulerGamma) > 1e-10) {
    throw InvariantError("Euler-Mascheroni constant disagrees with harmonic-sum oracle");
  }
}

LFunctionModel make_zeta_power(int m) {
  if (m < 1) throw DomainError("zeta power requires m >= 1 (a pole at s = 1), got " + std::to_string(m));
  if (m > kMaxZetaPower) throw DomainError("zeta power m must be <= " + std::to_string(kMaxZetaPower));
  LFunctionModel model;
  model.label_ = m == 1 ? "zeta" : "zeta^" + std::to_string(m);
  model.kind_ = ModelKind::ZetaPower;
  model.degree_ = m;
  model.pole_order_ = m;
  model.residue_ = 1.0;
  model.gamma_F_ = gamma_F_of(m, 1.0);
  return model;
}

namespace {

bool squarefree(std::int64_t v) {
  std::uint64_t n = static_cast<std::uint64_t>(v < 0 ? -v : v);
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % (f * f) == 0) return false;
    if (n % f == 0) n /= f;
  }
  return true;
}

std::int64_t mod4(std::int64_t v) { return ((v % 4) + 4) % 4; }

}  // namespace

bool is_fundamental_discriminant(std::int64_t d) {
  if (d == 0) return false;
  if (mod4(d) == 1) return squarefree(d);
  if (mod4(d) != 0) return false;
  const std::int64_t m = d / 4;
  return (mod4(m) == 2 || mod4(m) == 3) && squarefree(m);
}

void require_fundamental_discriminant(std::int64_t d) {
  const std::string tag = "discriminant " + std::to_string(d) + " is not fundamental: ";
  if (d == 0) throw DomainError(tag + "d must be nonzero");
  const std::int64_t r = mod4(d);
  if (r == 2 || r == 3) throw DomainError(tag + "d must be 0 or 1 mod 4");
  if (r == 1 && !squarefree(d)) throw DomainError(tag + "d = 1 mod 4 but not squarefree");
  if (r == 0) {
    const std::int64_t m = d / 4;
    if (mod4(m) != 2 && mod4(m) != 3) throw DomainError(tag + "d = 4m requires m = 2 or 3 mod 4");
    if (!squarefree(m)) throw DomainError(tag + "d = 4m requires m squarefree");
  }
}

double dirichlet_L1(std::int64_t d) {
  if (d == 1) throw DomainError("dirichlet_L1 requires d != 1");
  if (d > kMaxDiscriminant || d < -kMaxDiscriminant) throw DomainError("|d| must be <= 10^6");
  return character_series(d, 1.0).value.real();
}

LFunctionModel make_dedekind_quadratic(std::int64_t d) {
  require_fundamental_discriminant(d);
  if (d == 1) throw DomainError("dedekind model requires d != 1 (Q itself)");
  if (d > kMaxDiscriminant || d < -kMaxDiscriminant) throw DomainError("|d| must be <= 10^6");
  LFunctionModel model;
  model.label_ = "dedekind:" + std::to_string(d);
  model.kind_ = ModelKind::DedekindQuadratic;
  model.degree_ = 2;
  model.pole_order_ = 1;
  model.discriminant_ = d;
  model.residue_ = dirichlet_L1(d);
  model.gamma_F_ = gamma_F_of(1, model.residue_);
  return model;
}

namespace {

std::shared_ptr<std::vector<double>> hecke_eigenvalues(const TauTable& tau) {
  const std::uint32_t n = tau.size();
  auto lambda = std::make_shared<std::vector<double>>(static_cast<std::size_t>(n) + 1, 0.0);
  if (n < 2) return lambda;
  for (std::uint32_t p : shared_primes(n)->up_to(n)) {
    const long double t = static_cast<long double>(tau(p));
    const long double value = t / std::pow(static_cast<long double>(p), 5.5L);
    if (std::abs(value) > 2.0L) {
      throw InvariantError("|tau(" + std::to_string(p) + ")| exceeds 2 p^{11/2}: Deligne bound violated");
    }
    (*lambda)[p] = static_cast<double>(value);
  }
  return lambda;
}

double sym2_tail(std::uint32_t p_max) {
  // Fluctuation of sum_{p>P} (lambda(p)^2 - 1)/p (unit Sato-Tate variance)
  // plus the second-order terms, both against sum_{p>P} p^{-2} ~ 1/(P ln P).
  const double pp = static_cast<double>(p_max);
  const double inv_sq_tail = 1.0 / (pp * std::log(pp));
  return 3.0 * std::sqrt(inv_sq_tail) + 3.0 * inv_sq_tail;
}

Sym2Residue sym2_from_eigenvalues(const std::vector<double>& lambda, std::uint32_t p_max) {
  CompensatedSum log_sum;
  for (std::uint32_t p : shared_primes(p_max)->up_to(p_max)) {
    const double inv_p = 1.0 / p;
    const double l2 = lambda[p] * lambda[p];
    // (1 - alpha^2/p)(1 - 1/p)(1 - beta^2/p), alpha^2 + beta^2 = lambda^2 - 2
    log_sum.add(-std::log1p(-(l2 - 2.0) * inv_p + inv_p * inv_p));
    log_sum.add(-std::log1p(-inv_p));
  }
  return {std::exp(log_sum.value()), sym2_tail(p_max)};
}

}  // namespace

Sym2Residue sym2_residue(std::uint32_t p_max) {
  if (p_max < 2) throw DomainError("sym2_residue requires P >= 2");
  const TauTable tau = tau_table(p_max);
  return sym2_from_eigenvalues(*hecke_eigenvalues(tau), p_max);
}

LFunctionModel make_rankin_selberg_delta(std::uint32_t n) {
  if (n < 2) throw DomainError("rs-delta requires N >= 2");
  const TauTable tau = tau_table(n);
  auto lambda = hecke_eigenvalues(tau);
  LFunctionModel model;
  model.label_ = "rs-delta:" + std::to_string(n);
  model.kind_ = ModelKind::RankinSelbergDelta;
  model.degree_ = 4;
  model.pole_order_ = 1;
  model.coeff_cutoff_ = n;
  model.residue_ = sym2_from_eigenvalues(*lambda, n).value;
  model.gamma_F_ = gamma_F_of(1, model.residue_);
  model.lambda_ = std::move(lambda);
  return model;
}

namespace {

template <class Int>
Int parse_integer(std::string_view text, std::string_view spec) {
  Int value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw DomainError("malformed model spec '" + std::string(spec) + "'");
  }
  return value;
}

}  // namespace

LFunctionModel parse_model(std::string_view spec) {
  if (spec == "zeta") return make_zeta_power(1);
  if (spec.starts_with("zeta^")) return make_zeta_power(parse_integer<int>(spec.substr(5), spec));
  if (spec.starts_with("dedekind:")) {
    return make_dedekind_quadratic(parse_integer<std::int64_t>(spec.substr(9), spec));
  }
  if (spec.starts_with("rs-delta:")) {
    return make_rankin_selberg_delta(parse_integer<std::uint32_t>(spec.substr(9), spec));
  }
  throw DomainError("unknown model spec '" + std::string(spec) +
                    "' (expected zeta, zeta^<m>, dedekind:<d>, rs-delta:<N>)");
}

LocalRoots local_roots(const LFunctionModel& model, std::uint64_t p) {
  if (!is_prime(p)) throw DomainError("local_roots: " + std::to_string(p) + " is not prime");
  if (p > model.coeff_cutoff()) {
    throw RangeError("prime " + std::to_string(p) + " beyond coefficient cutoff of " + model.label());
  }
  LocalRoots out;
  out.roots.resize(static_cast<std::size_t>(model.degree()));
  model.roots_into(p, out.roots);
  return out;
}

std::vector<std::complex<double>> local_series(std::span<const std::complex<double>> roots, int order) {
  std::vector<std::complex<double>> c(static_cast<std::size_t>(order) + 1, 0.0);
  c[0] = 1.0;
  for (const auto& alpha : roots) {
    for (int r = 1; r <= order; ++r) c[r] += alpha * c[r - 1];
  }
  return c;
}

}  // namespace olx
