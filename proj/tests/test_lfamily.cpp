#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "olx/characters.hpp"
#include "olx/errors.hpp"
#include "olx/lfamily.hpp"
#include "olx/primes.hpp"
#include "olx/tau.hpp"

using namespace olx;
using C = std::complex<double>;

namespace {

std::vector<C> roots_of(const LFunctionModel& m, std::uint64_t p) { return local_roots(m, p).roots; }

bool same_multiset(std::vector<C> a, std::vector<C> b, double tol) {
  if (a.size() != b.size()) return false;
  for (const auto& x : a) {
    auto it = std::find_if(b.begin(), b.end(), [&](const C& y) { return std::abs(x - y) <= tol; });
    if (it == b.end()) return false;
    b.erase(it);
  }
  return true;
}

}  // namespace

TEST_SUITE("lfamily") {
  TEST_CASE("zeta powers") {
    const auto z = make_zeta_power(1);
    CHECK(roots_of(z, 7) == std::vector<C>{1.0});
    CHECK(roots_of(z, 10007) == std::vector<C>{1.0});
    CHECK(z.degree() == 1);
    CHECK(z.pole_order() == 1);
    CHECK(z.residue() == 1.0);
    const auto z2 = make_zeta_power(2);
    CHECK(z2.gamma_F() == doctest::Approx(1.1544313).epsilon(1e-7));
    CHECK(roots_of(z2, 101) == std::vector<C>{1.0, 1.0});
    CHECK(roots_of(make_zeta_power(3), 2) == std::vector<C>{1.0, 1.0, 1.0});
    CHECK_THROWS_AS(make_zeta_power(0), DomainError);
    CHECK_THROWS_AS(make_zeta_power(kMaxZetaPower + 1), DomainError);
  }

  TEST_CASE("dedekind roots") {
    const auto k = make_dedekind_quadratic(-4);
    CHECK(roots_of(k, 5) == std::vector<C>{1.0, 1.0});
    CHECK(roots_of(k, 3) == std::vector<C>{1.0, -1.0});
    CHECK(roots_of(k, 2) == std::vector<C>{1.0, 0.0});
    CHECK(roots_of(make_dedekind_quadratic(5), 11) == std::vector<C>{1.0, 1.0});
    CHECK(k.degree() == 2);
    CHECK(k.pole_order() == 1);
    CHECK(k.discriminant() == -4);
  }

  TEST_CASE("fundamental discriminants") {
    for (std::int64_t d : {-4, -3, 5, 8, -8, 12, -7, 13, -20, 24, 28, -15}) CHECK_MESSAGE(is_fundamental_discriminant(d), d);
    for (std::int64_t d : {0, -1, 2, 3, 4, -12, 9, 16, 20, 25, -16, 32, 45}) {
      CHECK_MESSAGE(!is_fundamental_discriminant(d), d);
    }
    CHECK(is_fundamental_discriminant(1));
    CHECK_THROWS_AS(make_dedekind_quadratic(9), DomainError);
    CHECK_THROWS_AS(make_dedekind_quadratic(1), DomainError);
    CHECK_THROWS_AS(make_dedekind_quadratic(3), DomainError);
    CHECK_THROWS_AS(make_dedekind_quadratic(-2000004), DomainError);
    try {
      require_fundamental_discriminant(45);
      FAIL("45 accepted");
    } catch (const DomainError& e) {
      CHECK(std::string(e.what()).find("squarefree") != std::string::npos);
    }
  }

  TEST_CASE("rankin-selberg roots") {
    const auto rs = make_rankin_selberg_delta(1000);
    const auto r2 = roots_of(rs, 2);
    C sum = 0.0, prod = 1.0;
    for (const auto& a : r2) {
      sum += a;
      prod *= a;
    }
    CHECK(sum.real() == doctest::Approx(0.28125).epsilon(1e-15));
    CHECK(std::abs(sum.imag()) < 1e-15);
    CHECK(std::abs(prod - 1.0) < 1e-14);
    CHECK(rs.degree() == 4);
    CHECK(rs.coeff_cutoff() == 1000);
    CHECK_THROWS_AS(local_roots(rs, 1009), RangeError);
    CHECK_THROWS_AS(make_rankin_selberg_delta(kTauBudget + 1), ResourceError);

    const TauTable tau = tau_table(1000);
    for (std::uint32_t p : sieve_primes(1000)) {
      const auto r = roots_of(rs, p);
      std::vector<C> conj;
      C s = 0.0;
      for (const auto& a : r) {
        conj.push_back(std::conj(a));
        s += a;
        CHECK(std::abs(a) <= 1.0 + kRootModulusSlack);
      }
      CHECK(same_multiset(r, conj, 1e-14));
      const double t = static_cast<double>(tau(p));
      const double lambda2 = t * t / std::pow(static_cast<double>(p), 11.0);
      CHECK(std::abs(s.real() - lambda2) <= 1e-10);
    }
  }

  TEST_CASE("local_roots preconditions") {
    CHECK_THROWS_AS(local_roots(make_zeta_power(1), 9), DomainError);
    CHECK_THROWS_AS(local_roots(make_zeta_power(1), 1), DomainError);
  }

  TEST_CASE("non-negative local coefficients") {
    const std::vector<LFunctionModel> models = {make_zeta_power(1),          make_zeta_power(3),
                                                make_dedekind_quadratic(-4), make_dedekind_quadratic(5),
                                                make_dedekind_quadratic(-3), make_dedekind_quadratic(8),
                                                make_rankin_selberg_delta(1000)};
    for (const auto& m : models) {
      for (std::uint32_t p : sieve_primes(1000)) {
        const auto coeffs = local_series(local_roots(m, p).roots, 6);
        for (const auto& c : coeffs) {
          REQUIRE_MESSAGE(std::abs(c.imag()) <= 1e-10, m.label() << " p=" << p);
          REQUIRE_MESSAGE(c.real() >= -1e-10, m.label() << " p=" << p);
        }
      }
    }
  }

  TEST_CASE("dedekind local factor splits as (1 - x)(1 - chi(p) x)") {
    for (std::int64_t d : {-4, -3, 5, 8}) {
      const auto m = make_dedekind_quadratic(d);
      for (std::uint32_t p : sieve_primes(1000)) {
        const auto r = roots_of(m, p);
        // prod (1 - a_j x) = 1 - (a1 + a2) x + a1 a2 x^2
        const double chi = kronecker(d, p);
        CHECK(std::abs((r[0] + r[1]).real() - (1.0 + chi)) <= 1e-14);
        CHECK(std::abs((r[0] * r[1]).real() - chi) <= 1e-14);
      }
    }
  }

  TEST_CASE("gamma_F consistency") {
    for (const auto& spec : {"zeta", "zeta^2", "zeta^5", "dedekind:-4", "dedekind:5", "rs-delta:500"}) {
      const auto m = parse_model(spec);
      CHECK(std::abs(m.gamma_F() - (m.pole_order() * kEulerGamma + std::log(m.residue()))) <= 1e-12);
      CHECK(std::abs(gamma_F_of(m.pole_order(), m.residue()) - m.gamma_F()) <= 1e-12);
      CHECK(m.pole_order() >= 1);
      CHECK(m.residue() > 0.0);
    }
    CHECK_NOTHROW(validate_euler_gamma());
  }

  TEST_CASE("model grammar") {
    CHECK(parse_model("zeta").label() == "zeta");
    CHECK(parse_model("zeta^3").degree() == 3);
    CHECK(parse_model("dedekind:-4").discriminant() == -4);
    CHECK(parse_model("rs-delta:200").coeff_cutoff() == 200);
    for (const auto& bad : {"", "zeta^", "zeta^0", "zeta^x", "Zeta", "dedekind:", "dedekind:abc", "dedekind:9",
                            "rs-delta:", "rs-delta:-3", "rs-delta:1", "foo", "zeta^2 "}) {
      CHECK_THROWS_AS_MESSAGE(parse_model(bad), DomainError, bad);
    }
  }

  TEST_CASE("L(1, chi_d) against closed forms") {
    const double pi = std::numbers::pi;
    CHECK(std::abs(dirichlet_L1(-4) - pi / 4.0) <= 1e-9);
    CHECK(std::abs(dirichlet_L1(-3) - pi / (3.0 * std::sqrt(3.0))) <= 1e-9);
    CHECK(std::abs(dirichlet_L1(5) - 2.0 / std::sqrt(5.0) * std::log((1.0 + std::sqrt(5.0)) / 2.0)) <= 1e-9);
    CHECK(std::abs(dirichlet_L1(8) - std::log(1.0 + std::sqrt(2.0)) / std::sqrt(2.0)) <= 1e-9);
    // h(-23) = 3, w = 2: L = pi h / sqrt(23)
    CHECK(std::abs(dirichlet_L1(-23) - pi * 3.0 / std::sqrt(23.0)) <= 1e-9);
  }

  TEST_CASE("class number integrality for large |d|") {
    // For d < -4: h = sqrt|d| L(1) / pi must be a positive integer.
    for (std::int64_t d : {-999983LL, -700003LL, -104723LL, -4004LL}) {
      if (!is_fundamental_discriminant(d)) continue;
      const double h = std::sqrt(static_cast<double>(-d)) * dirichlet_L1(d) / std::numbers::pi;
      CHECK_MESSAGE(std::abs(h - std::round(h)) <= 1e-6, "d=" << d << " h=" << h);
    }
    CHECK_THROWS_AS(dirichlet_L1(2000003), Error);
  }

  TEST_CASE("character series off s = 1") {
    // Catalan's constant.
    CHECK(std::abs(character_series(-4, 2.0).value - 0.915965594177219015) <= 1e-12);
    const C a = character_series(-4, C(1.0, 7.0)).value;
    const C b = character_series(-4, C(1.0, -7.0)).value;
    CHECK(std::abs(a - std::conj(b)) <= 1e-12);
  }

  TEST_CASE("symmetric-square residue") {
    const Sym2Residue r100 = sym2_residue(100);
    CHECK(r100.value >= 0.5);
    CHECK(r100.value <= 2.0);
    const Sym2Residue r1e3 = sym2_residue(1000);
    const Sym2Residue r5e3 = sym2_residue(5000);
    const Sym2Residue r1e4 = sym2_residue(10000);
    CHECK(std::abs(r1e4.value - r5e3.value) <= 0.01);
    CHECK(r100.tail_estimate > r1e3.tail_estimate);
    CHECK(r1e3.tail_estimate > r1e4.tail_estimate);
    CHECK(r1e4.tail_estimate > 0.0);
    CHECK(std::abs(r1e4.value - r1e3.value) <= r1e3.tail_estimate);
    CHECK_THROWS_AS(sym2_residue(1), DomainError);
    CHECK(make_rankin_selberg_delta(10000).residue() == r1e4.value);
  }
}
