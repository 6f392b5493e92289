#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>

#include "olx/errors.hpp"
#include "olx/lfamily.hpp"
#include "olx/mertens.hpp"
#include "olx/primes.hpp"
#include "support.hpp"

using namespace olx;
using olx::test::rel_diff;

TEST_SUITE("mertens") {
  TEST_CASE("rational products") {
    CHECK(truncated_product_at_1(make_zeta_power(1), 10) == doctest::Approx(4.375).epsilon(1e-14));
    CHECK(truncated_product_at_1(make_zeta_power(2), 10) == doctest::Approx(19.140625).epsilon(1e-14));
    CHECK(truncated_product_at_1(make_dedekind_quadratic(-4), 5) == doctest::Approx(3.515625).epsilon(1e-14));
    CHECK(truncated_product_at_1(make_zeta_power(1), 2) == doctest::Approx(2.0).epsilon(1e-15));
  }

  TEST_CASE("predictions") {
    const double l = std::log(1e6);
    CHECK(mertens_prediction(make_zeta_power(1), 1e6) == doctest::Approx(24.606).epsilon(1e-4));
    CHECK(mertens_prediction(make_zeta_power(2), 1e6) == doctest::Approx(605.5).epsilon(1e-3));
    CHECK(mertens_prediction(make_dedekind_quadratic(-4), 1e6) == doctest::Approx(19.325).epsilon(1e-4));
    CHECK(mertens_prediction(make_zeta_power(1), 1e6) ==
          doctest::Approx(std::exp(kEulerGamma) * l).epsilon(1e-15));
    CHECK_THROWS_AS(mertens_prediction(make_zeta_power(1), 1.0), DomainError);
  }

  TEST_CASE("lambda coefficients") {
    CHECK(lambda_coeff(make_zeta_power(1), 7, 2) == std::complex<double>(0.5, 0.0));
    const auto k = make_dedekind_quadratic(-4);
    CHECK(std::abs(lambda_coeff(k, 3, 1)) == 0.0);
    CHECK(lambda_coeff(k, 3, 2).real() == doctest::Approx(1.0));
    CHECK_THROWS_AS(lambda_coeff(make_rankin_selberg_delta(100), 101, 1), RangeError);
    CHECK_THROWS_AS(lambda_coeff(k, 3, 0), DomainError);
  }

  TEST_CASE("lambda bound k/r and realness") {
    for (const auto& spec : {"zeta", "zeta^3", "dedekind:-4", "dedekind:5", "rs-delta:1000"}) {
      const auto m = parse_model(spec);
      for (std::uint32_t p : sieve_primes(1000)) {
        for (int r = 1; r <= 20; ++r) {
          const auto v = lambda_coeff(m, p, r);
          REQUIRE(std::abs(v) <= static_cast<double>(m.degree()) / r + 1e-12);
          REQUIRE(std::abs(v.imag()) <= 1e-12);
        }
      }
    }
  }

  TEST_CASE("power law for zeta^m") {
    for (double x : {1e3, 1e6}) {
      const double base = truncated_product_at_1(make_zeta_power(1), x);
      for (int m = 1; m <= 3; ++m) {
        CHECK(rel_diff(truncated_product_at_1(make_zeta_power(m), x), std::pow(base, m)) <= 1e-12);
      }
    }
  }

  TEST_CASE("dedekind split against a direct character product") {
    for (std::int64_t d : {-4, -3, 5, 8}) {
      for (double x : {1e3, 1e5}) {
        long double chi_product = 1.0L;
        for (std::uint32_t p : sieve_primes(static_cast<std::uint64_t>(x))) {
          chi_product /= 1.0L - static_cast<long double>(kronecker(d, p)) / p;
        }
        const double expected = truncated_product_at_1(make_zeta_power(1), x) * static_cast<double>(chi_product);
        CHECK(rel_diff(truncated_product_at_1(make_dedekind_quadratic(d), x), expected) <= 1e-12);
      }
    }
  }

  TEST_CASE("report on a decade grid") {
    const std::vector<double> grid = {1e2, 1e3, 1e4, 1e5, 1e6};
    const MertensReport r = mertens_report(make_zeta_power(1), grid);
    REQUIRE(r.ratio.size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(r.product[i] > 0.0);
      CHECK(r.prediction[i] > 0.0);
      CHECK(r.ratio[i] == doctest::Approx(r.product[i] / r.prediction[i]).epsilon(1e-15));
      if (i > 0) CHECK(std::abs(r.ratio[i] - 1.0) < std::abs(r.ratio[i - 1] - 1.0));
    }
    CHECK(r.ratio.back() >= 0.995);
    CHECK(r.ratio.back() <= 1.005);
    CHECK(mertens_report(make_zeta_power(1), {}).grid.empty());
    const std::vector<double> bad = {10.0, 10.0};
    CHECK_THROWS_AS(mertens_report(make_zeta_power(1), bad), DomainError);
  }

  TEST_CASE("preconditions") {
    CHECK_THROWS_AS(truncated_product_at_1(make_zeta_power(1), 1.5), DomainError);
    CHECK_THROWS_AS(truncated_product_at_1(make_rankin_selberg_delta(100), 200), RangeError);
    CHECK_THROWS_AS(truncated_product_at_1(make_zeta_power(1), 1e10), ResourceError);
  }

  TEST_CASE("worker count does not change the product") {
    double one = 0.0, four = 0.0;
    {
      olx::test::ScopedEnv env("OLX_THREADS", "1");
      one = truncated_product_at_1(make_dedekind_quadratic(5), 3e6);
    }
    {
      olx::test::ScopedEnv env("OLX_THREADS", "4");
      four = truncated_product_at_1(make_dedekind_quadratic(5), 3e6);
    }
    CHECK(std::memcmp(&one, &four, sizeof one) == 0);
  }
}
