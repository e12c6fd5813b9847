#include "qent/format.hpp"

#include <charconv>
#include <stdexcept>

namespace qent {

namespace {
constexpr int kSignificantDigits = 12;
}

std::string format_sig(double value) {
  char buf[48];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::general, kSignificantDigits);
  if (res.ec != std::errc()) {
    throw std::runtime_error("format_sig: to_chars failed");
  }
  return std::string(buf, res.ptr);
}

double round_sig(double value) {
  const std::string text = format_sig(value);
  double out = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), out);
  if (res.ec != std::errc()) {
    throw std::runtime_error("round_sig: from_chars failed");
  }
  return out;
}

}  // namespace qent
