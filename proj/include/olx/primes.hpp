#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace olx {

inline constexpr std::uint64_t kSieveLimitMax = std::uint64_t{1} << 32;
inline constexpr std::size_t kDefaultSegmentSize = std::size_t{1} << 20;

/// All primes up to `limit`, ascending.
class PrimeTable {
 public:
  PrimeTable(std::uint64_t limit, std::vector<std::uint32_t> primes)
      : limit_(limit), primes_(std::move(primes)) {}

  std::uint64_t limit() const { return limit_; }
  std::size_t size() const { return primes_.size(); }
  std::span<const std::uint32_t> primes() const { return primes_; }
  auto begin() const { return primes_.begin(); }
  auto end() const { return primes_.end(); }
  std::uint32_t operator[](std::size_t i) const { return primes_[i]; }

  /// Leading run of primes <= x (x may exceed limit(); the run is then the whole table).
  std::span<const std::uint32_t> up_to(double x) const;

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> primes_;
};

/// Segmented sieve of Eratosthenes. Calls `emit` once per segment with the
/// primes found there, in ascending order. Working memory is O(segment_size + sqrt(limit)).
void for_each_prime_segment(std::uint64_t limit,
                            const std::function<void(std::span<const std::uint32_t>)>& emit,
                            std::size_t segment_size = kDefaultSegmentSize);

/// Requires 2 <= limit <= 2^32.
PrimeTable sieve_primes(std::uint64_t limit, std::size_t segment_size = kDefaultSegmentSize);

/// Process-wide cached table covering at least `limit`. Thread-safe.
std::shared_ptr<const PrimeTable> shared_primes(std::uint64_t limit);

/// Kronecker symbol (d/n) for d != 0, n >= 1, by quadratic reciprocity.
int kronecker(std::int64_t d, std::uint64_t n);

bool is_prime(std::uint64_t n);

}  // namespace olx
