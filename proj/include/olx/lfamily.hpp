#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace olx {

inline constexpr double kEulerGamma = 0.57721566490153286;
inline constexpr int kMaxZetaPower = 64;
inline constexpr std::int64_t kMaxDiscriminant = 1000000;
inline constexpr std::uint64_t kUnboundedCutoff = std::numeric_limits<std::uint64_t>::max();

/// Tolerance on |alpha| <= 1 for roots computed in floating point.
inline constexpr double kRootModulusSlack = 1e-12;

/// Inverse roots {alpha_j(p)} of one local Euler factor. Ramified primes of a
/// quadratic field carry a root of exactly 0 so every prime has `degree` roots.
struct LocalRoots {
  std::vector<std::complex<double>> roots;

  std::size_t size() const { return roots.size(); }
  const std::complex<double>& operator[](std::size_t j) const { return roots[j]; }
};

enum class ModelKind { ZetaPower, DedekindQuadratic, RankinSelbergDelta };

/// One L-function with a complete Euler product and a pole of order m at s = 1.
/// Immutable; copies share the coefficient data.
class LFunctionModel {
 public:
  const std::string& label() const { return label_; }
  ModelKind kind() const { return kind_; }
  int degree() const { return degree_; }
  int pole_order() const { return pole_order_; }
  /// c_{-m}: lim_{s->1} (s-1)^m F(s).
  double residue() const { return residue_; }
  /// m * gamma + ln(residue).
  double gamma_F() const { return gamma_F_; }
  /// Largest prime with known roots; kUnboundedCutoff for the closed-form families.
  std::uint64_t coeff_cutoff() const { return coeff_cutoff_; }
  /// Discriminant of the quadratic field (DedekindQuadratic only, else 0).
  std::int64_t discriminant() const { return discriminant_; }
  bool has_direct_oracle() const { return kind_ != ModelKind::RankinSelbergDelta; }

  /// Writes the roots at prime p into out[0..degree). No range check beyond
  /// coefficient availability; used on hot paths.
  void roots_into(std::uint64_t p, std::span<std::complex<double>> out) const;

  /// lambda(p) = tau(p) p^{-11/2}; RankinSelbergDelta only.
  double hecke_eigenvalue(std::uint64_t p) const;

 private:
  friend LFunctionModel make_zeta_power(int m);
  friend LFunctionModel make_dedekind_quadratic(std::int64_t d);
  friend LFunctionModel make_rankin_selberg_delta(std::uint32_t n);

  LFunctionModel() = default;

  std::string label_;
  ModelKind kind_ = ModelKind::ZetaPower;
  int degree_ = 1;
  int pole_order_ = 1;
  double residue_ = 1.0;
  double gamma_F_ = kEulerGamma;
  std::uint64_t coeff_cutoff_ = kUnboundedCutoff;
  std::int64_t discriminant_ = 0;
  std::shared_ptr<const std::vector<double>> lambda_;  // indexed by n, primes only meaningful
};

/// zeta(s)^m. m = 1 is the Riemann zeta function.
LFunctionModel make_zeta_power(int m);

/// Dedekind zeta of Q(sqrt d) = zeta(s) L(s, chi_d); residue L(1, chi_d).
LFunctionModel make_dedekind_quadratic(std::int64_t d);

/// L(s, Delta x Delta) with roots [alpha^2, 1, 1, beta^2] for p <= n, where
/// alpha + beta = lambda(p), alpha beta = 1; residue L(1, sym^2 Delta) from
/// sym2_residue(n).
LFunctionModel make_rankin_selberg_delta(std::uint32_t n);

/// Parses `zeta`, `zeta^<m>`, `dedekind:<d>`, `rs-delta:<N>`.
LFunctionModel parse_model(std::string_view spec);

/// Roots at prime p. Throws DomainError for non-primes and RangeError beyond coeff_cutoff.
LocalRoots local_roots(const LFunctionModel& model, std::uint64_t p);

/// Coefficients of prod_j (1 - alpha_j z)^{-1} up to z^order: the Dirichlet
/// coefficients a(p^r), r = 0..order.
std::vector<std::complex<double>> local_series(std::span<const std::complex<double>> roots, int order);

double gamma_F_of(int pole_order, double residue);

/// Checks the stored constant against H_n - ln n - 1/(2n) at n = 10^6; throws
/// InvariantError on disagreement beyond 1e-10.
void validate_euler_gamma();

bool is_fundamental_discriminant(std::int64_t d);
/// Throws DomainError naming the failed condition.
void require_fundamental_discriminant(std::int64_t d);

/// L(1, chi_d) for a fundamental discriminant d != 1.
double dirichlet_L1(std::int64_t d);

struct Sym2Residue {
  double value;
  double tail_estimate;
};

/// L(1, sym^2 Delta) as the Euler product over p <= P.
Sym2Residue sym2_residue(std::uint32_t p_max);

}  // namespace olx
