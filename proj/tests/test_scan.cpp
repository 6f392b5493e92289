#include <doctest.h>

#include <cmath>
#include <numbers>

#include "olx/errors.hpp"
#include "olx/evaluate.hpp"
#include "olx/lfamily.hpp"
#include "olx/resonator.hpp"
#include "olx/scan.hpp"
#include "support.hpp"

using namespace olx;

namespace {

bool same_records(const std::vector<ScanRecord>& a, const std::vector<ScanRecord>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].t != b[i].t || a[i].magnitude != b[i].magnitude || a[i].phase != b[i].phase) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("scan") {
  TEST_CASE("single point and short grids") {
    const auto z = make_zeta_power(1);
    const auto one = grid_scan(z, 50.0, 50.0, 0.1, 1e3, 5);
    REQUIRE(one.size() == 1);
    CHECK(one[0].t == 50.0);
    CHECK(!one[0].refined);
    const auto all = grid_scan(z, 10.0, 11.0, 0.25, 1e3, 100);
    REQUIRE(all.size() == 5);
    for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1].magnitude >= all[i].magnitude);
    // grid ending short of t_max picks up t_max itself
    const auto ragged = grid_scan(z, 10.0, 11.1, 0.25, 1e3, 100);
    CHECK(ragged.size() == 6);
  }

  TEST_CASE("top-k equals brute force over the grid") {
    for (const auto& spec : {"zeta", "zeta^2", "dedekind:-4", "dedekind:5", "rs-delta:500"}) {
      const auto m = parse_model(spec);
      const double t0 = 100.0, step = 0.05, Y = 500.0;
      std::vector<ScanRecord> brute;
      for (int j = 0; j <= 4000; ++j) {
        const double t = t0 + j * step;
        const auto v = euler_product_on_line(m, t, Y);
        brute.push_back({t, std::abs(v), std::arg(v), Y, false});
      }
      std::stable_sort(brute.begin(), brute.end(), [](const ScanRecord& a, const ScanRecord& b) {
        return a.magnitude > b.magnitude;
      });
      const auto scan = grid_scan(m, t0, t0 + 4000 * step, step, Y, 7);
      REQUIRE(scan.size() == 7);
      for (int i = 0; i < 7; ++i) {
        CHECK_MESSAGE(scan[i].t == brute[i].t, spec << " rank " << i);
        CHECK(scan[i].magnitude == brute[i].magnitude);
      }
    }
  }

  TEST_CASE("records reproduce standalone evaluations") {
    const auto k = make_dedekind_quadratic(-3);
    for (const auto& r : grid_scan(k, 1000.0, 1100.0, 0.01, 1e4, 10)) {
      CHECK(r.magnitude > 0.0);
      CHECK(r.t >= 1000.0);
      CHECK(r.t <= 1100.0);
      const double again = std::abs(euler_product_on_line(k, r.t, r.Y));
      CHECK(std::abs(again - r.magnitude) <= 1e-12 * again);
    }
  }

  TEST_CASE("max is monotone under grid refinement") {
    const auto z = make_zeta_power(1);
    double previous = 0.0;
    for (double step : {0.4, 0.2, 0.1, 0.05, 0.025}) {
      const double top = grid_scan(z, 500.0, 900.0, step, 1e4, 1)[0].magnitude;
      CHECK(top >= previous);
      previous = top;
    }
  }

  TEST_CASE("peak refinement") {
    const auto z = make_zeta_power(1);
    const double step = 0.05;
    const auto grid = grid_scan(z, 500.0, 900.0, step, 1e4, 3);
    for (const auto& g : grid) {
      const ScanRecord r = refine_peak(z, g.t, 1e4, 1e-6, step);
      CHECK(r.refined);
      CHECK(r.magnitude >= g.magnitude);
      CHECK(std::abs(r.t - g.t) <= step);
      const ScanRecord finer = refine_peak(z, g.t, 1e4, 1e-7, step);
      CHECK(finer.magnitude >= r.magnitude);
    }
    const ScanRecord same = refine_peak(z, grid[0].t, 1e4, 2 * step, step);
    CHECK(same.t == grid[0].t);
    CHECK(same.magnitude == grid[0].magnitude);
    const ScanRecord clipped = refine_peak(z, 500.0, 1e4, 1e-6, 1.0, 500.0, 900.0);
    CHECK(clipped.t >= 500.0);
    CHECK_THROWS_AS(refine_peak(z, 500.0, 1e4, 1e-10, 0.1), DomainError);
  }

  TEST_CASE("bound report") {
    const auto z = make_zeta_power(1);
    const auto records = grid_scan(z, 1000.0, 1010.0, 0.05, 1e3, 4);
    const BoundReport b = bound_report(records, z, 1e6);
    const double l2 = std::log(std::log(1e6));
    CHECK(b.bound == doctest::Approx(6.396).epsilon(2e-4));
    CHECK(b.bound == doctest::Approx(std::exp(kEulerGamma) * (l2 + std::log(l2))).epsilon(1e-14));
    CHECK(b.max_magnitude == records[0].magnitude);
    CHECK(b.ratio > 0.0);
    CHECK(std::isfinite(b.ratio));
    CHECK(b.difference == b.max_magnitude - b.bound);
    CHECK(b.has_conjecture);
    CHECK(b.conjecture_base == b.bound);

    const auto z2 = make_zeta_power(2);
    const BoundReport b2 = bound_report(grid_scan(z2, 1000.0, 1010.0, 0.05, 1e3, 2), z2, 1e6);
    CHECK(b2.bound == doctest::Approx(std::exp(2 * kEulerGamma) * std::pow(l2 + std::log(l2), 2)).epsilon(1e-14));
    CHECK(!b2.has_conjecture);
    CHECK_THROWS_AS(bound_report({}, z, 1e6), DomainError);
  }

  TEST_CASE("preconditions") {
    const auto z = make_zeta_power(1);
    CHECK_THROWS_AS(grid_scan(z, 2.0, 1.0, 0.1, 1e3, 1), DomainError);
    CHECK_THROWS_AS(grid_scan(z, 1.0, 2.0, 5.0, 1e3, 1), DomainError);
    CHECK_THROWS_AS(grid_scan(z, 1.0, 2.0, 0.1, 1e3, 0), DomainError);
    CHECK_THROWS_AS(grid_scan(z, 0.0, 1e9, 1.0, 1e3, 1), ResourceError);
    CHECK_THROWS_AS(grid_scan(z, 0.0, 1e3, 1e-7, 1e3, 1), ResourceError);
  }

  TEST_CASE("worker count does not change the records") {
    const auto k = make_dedekind_quadratic(8);
    std::vector<ScanRecord> one, four;
    {
      olx::test::ScopedEnv env("OLX_THREADS", "1");
      one = grid_scan(k, 2000.0, 2300.0, 0.01, 1e4, 8);
    }
    {
      olx::test::ScopedEnv env("OLX_THREADS", "4");
      four = grid_scan(k, 2000.0, 2300.0, 0.01, 1e4, 8);
    }
    CHECK(same_records(one, four));
  }
}
