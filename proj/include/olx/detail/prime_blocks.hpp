#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <type_traits>
#include <vector>

#include "olx/parallel.hpp"
#include "olx/summation.hpp"

namespace olx::detail {

inline constexpr std::size_t kPrimeBlock = std::size_t{1} << 16;

/// Sum of term(p) over `primes`, compensated within fixed blocks of
/// kPrimeBlock primes and then across blocks in ascending order. The result
/// does not depend on the worker count.
template <class T, class Term>
T block_ordered_sum(std::span<const std::uint32_t> primes, Term&& term) {
  using Acc = std::conditional_t<std::is_same_v<T, double>, CompensatedSum, CompensatedComplexSum>;
  const std::size_t blocks = (primes.size() + kPrimeBlock - 1) / kPrimeBlock;
  const auto partial = ordered_map<T>(blocks, [&](std::size_t b) {
    Acc acc;
    const std::size_t lo = b * kPrimeBlock;
    const std::size_t hi = std::min(primes.size(), lo + kPrimeBlock);
    for (std::size_t i = lo; i < hi; ++i) acc.add(term(primes[i]));
    return acc.value();
  });
  Acc total;
  for (const T& v : partial) total.add(v);
  return total.value();
}

}  // namespace olx::detail
