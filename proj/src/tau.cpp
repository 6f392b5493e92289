#include "olx/tau.hpp"

#include <algorithm>
#include <utility>

#include "olx/errors.hpp"

namespace olx {

TauTable tau_table(std::uint32_t n) {
  if (n == 0) throw DomainError("tau table size must be positive");
  if (n > kTauBudget) {
    throw ResourceError("tau table size " + std::to_string(n) + " exceeds budget " + std::to_string(kTauBudget));
  }
  const std::size_t len = n;  // degrees 0 .. n-1 of the eta product

  // prod (1 - q^k) = sum_j (-1)^j q^{j(3j-1)/2}, j over all integers
  std::vector<std::pair<std::size_t, int>> pentagonal;
  for (long j = 0;; ++j) {
    bool any = false;
    for (long s : {j, -j}) {
      const long e = s * (3 * s - 1) / 2;
      if (e < static_cast<long>(len)) {
        pentagonal.emplace_back(static_cast<std::size_t>(e), (j % 2 == 0) ? 1 : -1);
        any = true;
      }
      if (j == 0) break;
    }
    if (!any) break;
  }
  std::sort(pentagonal.begin(), pentagonal.end());

  std::vector<Int128> poly(len, 0);
  poly[0] = 1;
  std::vector<Int128> next(len);
  for (int power = 0; power < 24; ++power) {
    std::fill(next.begin(), next.end(), 0);
    for (std::size_t i = 0; i < len; ++i) {
      Int128 acc = 0;
      for (const auto& [e, sign] : pentagonal) {
        if (e > i) break;
        const Int128 term = poly[i - e];
        const bool overflow = sign > 0 ? __builtin_add_overflow(acc, term, &acc)
                                       : __builtin_sub_overflow(acc, term, &acc);
        if (overflow) throw NumericError("128-bit overflow in tau expansion");
      }
      next[i] = acc;
    }
    poly.swap(next);
  }

  std::vector<Int128> values(static_cast<std::size_t>(n) + 1, 0);
  for (std::uint32_t k = 1; k <= n; ++k) values[k] = poly[k - 1];
  return TauTable(n, std::move(values));
}

std::string to_string(Int128 v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  unsigned __int128 mag = negative ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  std::string digits;
  while (mag > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

}  // namespace olx
