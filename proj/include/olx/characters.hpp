#pragma once

#include <complex>
#include <cstdint>

namespace olx {

struct CharacterSeriesValue {
  std::complex<double> value;
  /// Magnitude of the last Euler-Maclaurin correction applied to the tail.
  double tail_estimate;
  std::uint64_t terms;
};

/// L(s, chi_d) = sum chi_d(n) n^{-s} for Re(s) >= 1 and d fundamental, d != 1.
/// The series is summed exactly over whole periods up to N = c|d|; the
/// remaining periods are summed by Euler-Maclaurin in the period index.
CharacterSeriesValue character_series(std::int64_t d, std::complex<double> s);

}  // namespace olx
