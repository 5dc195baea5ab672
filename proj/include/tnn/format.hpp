#pragma once

#include <string>

namespace tnn {

/// Shortest-round-trip-safe decimal with 17 significant digits, locale
/// independent ("%.17g" semantics via std::to_chars).
std::string format_real(double value);

}  // namespace tnn
