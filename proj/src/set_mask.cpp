#include "uclosed/set_mask.hpp"

namespace uclosed {

std::vector<int> SetMask::elements() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
  return out;
}

std::string to_string(SetMask s) {
  std::string out = "{";
  bool first = true;
  for (int e : s.elements()) {
    if (!first) out += ',';
    out += std::to_string(e);
    first = false;
  }
  out += '}';
  return out;
}

std::string describe_within(SetMask s, int n) {
  const SetMask missing = SetMask::full(n) - s;
  const std::string whole = "[" + std::to_string(n) + "]";
  if (missing.empty()) return whole;
  if (missing.size() < s.size()) return whole + "\\" + to_string(missing);
  return to_string(s);
}

} // namespace uclosed
