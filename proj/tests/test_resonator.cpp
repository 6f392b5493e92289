#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "olx/errors.hpp"
#include "olx/lfamily.hpp"
#include "olx/mertens.hpp"
#include "olx/primes.hpp"
#include "olx/resonator.hpp"
#include "support.hpp"

using namespace olx;
using olx::test::rel_diff;

TEST_SUITE("resonator") {
  TEST_CASE("configuration") {
    const auto c = resonator_config_from_log(600.0);
    CHECK(c.X == doctest::Approx(100.0 * std::log(600.0)).epsilon(1e-15));
    CHECK(c.X == doctest::Approx(639.69).epsilon(1e-5));
    CHECK(c.eps > 0.0);
    CHECK(c.eps < 1.0);
    CHECK_THROWS_AS(resonator_config(std::exp(std::numbers::e)), DomainError);
    CHECK_THROWS_AS(resonator_config(2.0), DomainError);
    CHECK_THROWS_AS(resonator_config(-1.0), DomainError);
    CHECK(resonator_config(1e3).eps > resonator_config(1e6).eps);
    CHECK(resonator_config(1e6).eps > resonator_config(1e9).eps);
    const auto t = resonator_config(1e8);
    CHECK(t.X == resonator_config(1e8).X);
    CHECK(t.X == std::log(1e8) * std::log(std::log(1e8)) / 6.0);
    const auto x10 = resonator_config_for_cutoff(10.0);
    CHECK(x10.X == 10.0);
    CHECK(x10.log_T * std::log(x10.log_T) / 6.0 == doctest::Approx(10.0).epsilon(1e-13));
  }

  TEST_CASE("weights") {
    CHECK(q_of_prime(5, 10.0) == 0.5);
    CHECK(q_of_prime(101, 100.0) == 0.0);
    CHECK(q_of_prime(2, 10.0) == doctest::Approx(0.8));
    CHECK(q_of_prime(3, 10.0) == doctest::Approx(0.7));
    CHECK(q_of_prime(7, 10.0) == doctest::Approx(0.3));
    CHECK(q_of_int(1, 10.0) == 1.0);
    CHECK(q_of_int(12, 100.0) == doctest::Approx(0.931588).epsilon(1e-12));
    CHECK(q_of_int(2 * 103, 100.0) == 0.0);
    for (std::uint64_t m = 1; m <= 1000; ++m) {
      for (std::uint64_t n = 1; n <= 1000; ++n) {
        if (std::gcd(m, n) != 1) continue;
        REQUIRE(std::abs(q_of_int(m * n, 100.0) - q_of_int(m, 100.0) * q_of_int(n, 100.0)) <= 1e-15);
      }
    }
  }

  TEST_CASE("resonance product at X = 10") {
    const auto cfg = resonator_config_for_cutoff(10.0);
    const ResonanceReport r = resonance_product(make_zeta_power(1), cfg);
    double direct = 1.0;
    for (int p : {2, 3, 5, 7}) direct /= 1.0 - (1.0 - p / 10.0) / p;
    CHECK(r.resonance_product == doctest::Approx(direct).epsilon(1e-14));
    CHECK(r.resonance_product == doctest::Approx(2.52362).epsilon(1e-5));
    CHECK(r.mertens_factor == doctest::Approx(4.375).epsilon(1e-14));
    CHECK(r.defect == doctest::Approx(0.576827).epsilon(1e-5));
    const ResonanceReport r2 = resonance_product(make_zeta_power(2), cfg);
    CHECK(rel_diff(r2.resonance_product, r.resonance_product * r.resonance_product) <= 1e-12);
  }

  TEST_CASE("factorization, domination and defect range") {
    for (const auto& spec : {"zeta", "zeta^2", "dedekind:-4", "dedekind:5", "rs-delta:1000"}) {
      const auto m = parse_model(spec);
      for (double X : {10.0, 100.0, 1000.0}) {
        const ResonanceReport r = resonance_product(m, resonator_config_for_cutoff(X));
        CHECK_MESSAGE(rel_diff(r.resonance_product, r.mertens_factor * r.defect) <= 1e-12, spec << " X=" << X);
        CHECK(r.resonance_product <= r.mertens_factor);
        CHECK(r.defect > 0.0);
        CHECK(r.defect <= 1.0);
        CHECK(rel_diff(r.mertens_factor, truncated_product_at_1(m, X)) <= 1e-12);
      }
    }
  }

  TEST_CASE("defect trend constant") {
    double c = 0.0;
    for (double X : {1e2, 1e3, 1e4}) {
      const ResonanceReport r = resonance_product(make_zeta_power(1), resonator_config_for_cutoff(X));
      c = std::max(c, (1.0 - r.defect) * std::log(X));
    }
    MESSAGE("measured c in 1 - defect <= c / ln X: " << c);
    CHECK(std::isfinite(c));
    CHECK(c > 0.0);
  }

  TEST_CASE("asymptotic bound") {
    const double e = std::numbers::e;
    const double eg = std::exp(kEulerGamma);
    CHECK(asymptotic_bound_from_log(make_zeta_power(1), std::exp(e)) == doctest::Approx(eg * (e + 1.0)).epsilon(1e-14));
    CHECK(asymptotic_bound_from_log(make_zeta_power(1), std::exp(e)) == doctest::Approx(6.6222).epsilon(1e-4));
    CHECK(asymptotic_bound(make_zeta_power(1), 1e8) == doctest::Approx(7.094).epsilon(2e-4));
    CHECK(asymptotic_bound(make_zeta_power(2), 1e8) == doctest::Approx(50.33).epsilon(2e-4));
    CHECK_THROWS_AS(asymptotic_bound(make_zeta_power(1), std::exp(e)), DomainError);
    const auto k = make_dedekind_quadratic(-4);
    const double l2 = std::log(std::log(1e8));
    CHECK(asymptotic_bound(k, 1e8) == doctest::Approx(std::exp(k.gamma_F()) * (l2 + std::log(l2))).epsilon(1e-14));
  }

  TEST_CASE("resonator values") {
    CHECK(std::abs(R_eval(0.0, 10.0) - 47.61905) <= 1e-5);
    CHECK(std::abs(R_eval(0.0, 10.0) - 10000.0 / 210.0) <= 1e-12);
    CHECK(R_eval(3.0, 1.5) == std::complex<double>(1.0, 0.0));
    for (double t : {1.0, 10.0, 100.0}) {
      CHECK(std::abs(R_eval(-t, 50.0) - std::conj(R_eval(t, 50.0))) <= 1e-12 * std::abs(R_eval(t, 50.0)));
    }
  }
}
