#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace olx {

using Int128 = __int128;

inline constexpr std::uint32_t kTauBudget = 20000;

/// Ramanujan tau(1..N), exact.
class TauTable {
 public:
  TauTable(std::uint32_t n, std::vector<Int128> values) : n_(n), values_(std::move(values)) {}

  std::uint32_t size() const { return n_; }
  /// tau(n) for 1 <= n <= size().
  Int128 operator()(std::uint32_t n) const { return values_.at(n); }

 private:
  std::uint32_t n_;
  std::vector<Int128> values_;  // index 0 unused
};

/// Coefficients of q * prod_{n>=1} (1 - q^n)^24 up to q^N, by multiplying the
/// pentagonal-number series into itself 24 times in exact integer arithmetic.
/// Throws ResourceError when N > kTauBudget.
TauTable tau_table(std::uint32_t n);

std::string to_string(Int128 v);

}  // namespace olx
