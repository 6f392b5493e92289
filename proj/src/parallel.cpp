#include "olx/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <string>
#include <string_view>

#include "olx/errors.hpp"

namespace olx {

unsigned worker_count() {
  const char* env = std::getenv("OLX_THREADS");
  if (env == nullptr || *env == '\0') {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
  }
  std::string_view text(env);
  unsigned value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value == 0) {
    throw DomainError("OLX_THREADS must be a positive integer, got '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace olx
