#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "olx/errors.hpp"
#include "olx/primes.hpp"
#include "olx/tau.hpp"

using namespace olx;

namespace {

// q prod (1 - q^n)^24 by 24 naive multiplications by each (1 - q^n).
std::vector<Int128> tau_naive(int n_max) {
  std::vector<Int128> poly(n_max, 0);  // coefficient of q^k, k < n_max
  poly[0] = 1;
  for (int n = 1; n < n_max; ++n) {
    for (int rep = 0; rep < 24; ++rep) {
      for (int k = n_max - 1; k >= n; --k) poly[k] -= poly[k - n];
    }
  }
  std::vector<Int128> tau(n_max + 1, 0);
  for (int k = 0; k < n_max; ++k) tau[k + 1] = poly[k];
  return tau;
}

}  // namespace

TEST_SUITE("tau") {
  TEST_CASE("hand values") {
    const TauTable t = tau_table(100);
    CHECK(t(1) == 1);
    CHECK(t(2) == -24);
    CHECK(t(3) == 252);
    CHECK(t(6) == -6048);
    CHECK(t(6) == t(2) * t(3));
  }

  TEST_CASE("matches naive expansion") {
    const int n = 300;
    const TauTable t = tau_table(n);
    const auto oracle = tau_naive(n);
    for (int k = 1; k <= n; ++k) REQUIRE_MESSAGE(t(k) == oracle[k], "n=" << k);
  }

  TEST_CASE("multiplicativity and Hecke relation") {
    const std::uint32_t n = 3000;
    const TauTable t = tau_table(n);
    for (std::uint32_t a = 2; a <= n; ++a) {
      for (std::uint32_t b = 2; a * b <= n; ++b) {
        if (std::gcd(a, b) == 1) REQUIRE(t(a * b) == t(a) * t(b));
      }
    }
    for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 37u, 53u}) {
      Int128 p11 = 1;
      for (int i = 0; i < 11; ++i) p11 *= p;
      CHECK(t(p * p) == t(p) * t(p) - p11);
    }
  }

  TEST_CASE("Deligne bound") {
    const TauTable t = tau_table(3000);
    for (std::uint32_t p : sieve_primes(3000)) {
      const double v = static_cast<double>(t(p));
      CHECK(std::abs(v) <= 2.0 * std::pow(static_cast<double>(p), 5.5));
    }
  }

  TEST_CASE("budget") {
    CHECK_THROWS_AS(tau_table(kTauBudget + 1), ResourceError);
    CHECK(to_string(tau_table(12)(12)) == "-370944");
  }
}
