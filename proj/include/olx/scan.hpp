#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "olx/lfamily.hpp"

namespace olx {

inline constexpr double kScanMaxPoints = 1e9;
/// Grid points times primes below Y.
inline constexpr double kScanMaxWork = 1e13;
inline constexpr double kScanMaxT = 1e8;

struct ScanRecord {
  double t;
  double magnitude;
  double phase;
  double Y;
  bool refined;
};

/// |F(1+it; Y)| on t_min, t_min + step, ... (plus t_max itself when the grid
/// falls short of it). Returns the top_k grid values in descending magnitude,
/// ties toward smaller t. Values are screened with per-prime phasor recurrences
/// and the leading candidates recomputed by euler_product_on_line, so every
/// reported magnitude equals that function's value at the recorded t.
std::vector<ScanRecord> grid_scan(const LFunctionModel& model, double t_min, double t_max, double step, double Y,
                                  std::size_t top_k);

/// Golden-section maximization of |F(1+it; Y)| on [t_seed - half_width, t_seed + half_width],
/// clipped to [lo, hi], until the bracket is shorter than tol. Never returns a
/// value below the seed's.
ScanRecord refine_peak(const LFunctionModel& model, double t_seed, double Y, double tol, double half_width,
                       double lo = -std::numeric_limits<double>::infinity(),
                       double hi = std::numeric_limits<double>::infinity());

struct BoundReport {
  std::string label;
  double T;
  double max_t;
  double max_magnitude;
  /// e^{gamma_F} (ln2 T + ln3 T)^m
  double bound;
  double difference;
  double ratio;
  /// m = 1 only: e^{gamma_F} (ln2 T + ln3 T), to be read with "+ C1" left symbolic.
  bool has_conjecture;
  double conjecture_base;
};

BoundReport bound_report(std::span<const ScanRecord> records, const LFunctionModel& model, double T);

}  // namespace olx
