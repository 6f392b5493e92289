#include "olx/primes.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "olx/errors.hpp"

namespace olx {

std::span<const std::uint32_t> PrimeTable::up_to(double x) const {
  if (!(x >= 2.0)) return {};
  const double capped = std::min(x, static_cast<double>(kSieveLimitMax));
  const auto bound = static_cast<std::uint64_t>(std::floor(capped));
  auto it = std::upper_bound(primes_.begin(), primes_.end(), bound,
                             [](std::uint64_t v, std::uint32_t p) { return v < p; });
  return {primes_.data(), static_cast<std::size_t>(it - primes_.begin())};
}

namespace {

void check_limit(std::uint64_t limit) {
  if (limit < 2 || limit > kSieveLimitMax) {
    throw DomainError("sieve limit must satisfy 2 <= limit <= 2^32, got " + std::to_string(limit));
  }
}

std::vector<std::uint32_t> small_primes(std::uint32_t bound) {
  std::vector<char> composite(bound + 1, 0);
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = std::uint64_t{i} * i; j <= bound; j += i) composite[j] = 1;
  }
  return out;
}

}  // namespace

void for_each_prime_segment(std::uint64_t limit,
                            const std::function<void(std::span<const std::uint32_t>)>& emit,
                            std::size_t segment_size) {
  check_limit(limit);
  if (segment_size < 64) throw DomainError("segment size must be at least 64");

  // Segments hold odd numbers only: slot i of the segment starting at `low` is low + 2i.
  const auto root = static_cast<std::uint32_t>(std::sqrt(static_cast<double>(limit))) + 1;
  const std::vector<std::uint32_t> sievers = small_primes(root);
  std::vector<std::uint64_t> next_multiple;  // next odd multiple for each odd siever
  next_multiple.reserve(sievers.size());
  for (std::uint32_t p : sievers) {
    if (p != 2) next_multiple.push_back(std::uint64_t{p} * p);
  }

  std::vector<char> sieve(segment_size);
  std::vector<std::uint32_t> found;
  found.reserve(segment_size / 4);

  found.push_back(2);
  const std::uint64_t span_per_segment = 2 * static_cast<std::uint64_t>(segment_size);
  for (std::uint64_t low = 3; low <= limit; low += span_per_segment) {
    const std::uint64_t high = std::min(limit, low + span_per_segment - 1);
    const std::size_t slots = static_cast<std::size_t>((high - low) / 2 + 1);
    std::fill(sieve.begin(), sieve.begin() + static_cast<std::ptrdiff_t>(slots), 1);

    for (std::size_t k = 0; k < next_multiple.size(); ++k) {
      const std::uint64_t p = sievers[k + 1];
      if (p * p > high) break;
      std::uint64_t m = next_multiple[k];
      if (m < low) {
        // catch up to the first odd multiple >= low
        m = ((low + p - 1) / p) * p;
        if ((m & 1) == 0) m += p;
      }
      for (; m <= high; m += 2 * p) sieve[(m - low) / 2] = 0;
      next_multiple[k] = m;
    }

    for (std::size_t i = 0; i < slots; ++i) {
      if (sieve[i]) found.push_back(static_cast<std::uint32_t>(low + 2 * i));
    }
    if (!found.empty()) emit(found);
    found.clear();
  }
  if (!found.empty()) emit(found);  // limit == 2
}

PrimeTable sieve_primes(std::uint64_t limit, std::size_t segment_size) {
  check_limit(limit);
  std::vector<std::uint32_t> primes;
  if (limit > 100) {
    primes.reserve(static_cast<std::size_t>(1.26 * limit / std::log(static_cast<double>(limit))));
  }
  for_each_prime_segment(
      limit, [&](std::span<const std::uint32_t> seg) { primes.insert(primes.end(), seg.begin(), seg.end()); },
      segment_size);
  return PrimeTable(limit, std::move(primes));
}

std::shared_ptr<const PrimeTable> shared_primes(std::uint64_t limit) {
  static std::mutex mutex;
  static std::shared_ptr<const PrimeTable> cached;
  check_limit(limit);
  std::lock_guard lock(mutex);
  if (cached && cached->limit() >= limit) return cached;
  std::uint64_t target = std::max<std::uint64_t>(limit, std::uint64_t{1} << 20);
  if (cached) target = std::max(target, std::min(kSieveLimitMax, 2 * cached->limit()));
  cached = std::make_shared<const PrimeTable>(sieve_primes(target));
  return cached;
}

int kronecker(std::int64_t d, std::uint64_t n) {
  if (d == 0) throw DomainError("kronecker symbol requires d != 0");
  if (n == 0) throw DomainError("kronecker symbol requires n >= 1");

  int result = 1;
  const auto d_mod8 = static_cast<int>(((d % 8) + 8) % 8);
  while ((n & 1) == 0) {
    if ((d & 1) == 0) return 0;
    if (d_mod8 == 3 || d_mod8 == 5) result = -result;
    n >>= 1;
  }
  if (n == 1) return result;

  // Jacobi symbol (a/n) for odd n; depends only on d mod n.
  const auto sn = static_cast<std::int64_t>(n);
  std::uint64_t a = static_cast<std::uint64_t>(((d % sn) + sn) % sn);
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      const std::uint64_t r = n & 7;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if ((a & 3) == 3 && (n & 3) == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t f = 3; f * f <= n; f += 2) {
    if (n % f == 0) return false;
  }
  return true;
}

}  // namespace olx
