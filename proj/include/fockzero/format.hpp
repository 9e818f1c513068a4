#pragma once

#include <string>

namespace fockzero {

/// Shortest round-trip decimal form, independent of the locale. Infinities
/// print as inf / -inf, NaN as nan.
std::string format_double(double v);

}  // namespace fockzero
