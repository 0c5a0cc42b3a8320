#pragma once

#include <string>

namespace cophtree {

// Shortest decimal form that round-trips back to the same double. With
// max_significant > 0 the output is additionally capped to that many
// significant digits (no longer guaranteed to round-trip).
std::string format_double(double value, int max_significant = 0);

}  // namespace cophtree
