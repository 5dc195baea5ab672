#include "tnn/format.hpp"

#include <array>
#include <charconv>

namespace tnn {

std::string format_real(double value) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
  return std::string(buf.data(), end);
}

}  // namespace tnn
