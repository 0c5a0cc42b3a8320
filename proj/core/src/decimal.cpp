#include "cophtree/decimal.hpp"

#include <charconv>
#include <cstdio>

namespace cophtree {

std::string format_double(double value, int max_significant) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  std::string shortest(buf, ptr);
  if (max_significant <= 0) return shortest;
  int significant = 0;
  bool leading_zero = true;
  for (char c : shortest) {
    if (c == 'e' || c == 'E') break;
    if (c < '0' || c > '9') continue;
    if (leading_zero && c == '0') continue;
    leading_zero = false;
    ++significant;
  }
  if (significant <= max_significant) return shortest;
  int written = std::snprintf(buf, sizeof(buf), "%.*g", max_significant, value);
  return std::string(buf, buf + written);
}

}  // namespace cophtree
