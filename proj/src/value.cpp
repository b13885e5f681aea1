#include "fairc/value.hpp"

#include <cctype>

namespace fairc {

namespace {

Value parse_digits(const std::string& text, const std::string& whole) {
  if (text.empty()) throw InputError("malformed ratio '" + whole + "'");
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw InputError("malformed ratio '" + whole + "'");
    }
  }
  return Value(text);
}

}  // namespace

Ratio Ratio::parse(const std::string& text) {
  Ratio r;
  auto slash = text.find('/');
  if (slash == std::string::npos) {
    r.num = parse_digits(text, text);
    r.den = 1;
  } else {
    r.num = parse_digits(text.substr(0, slash), text);
    r.den = parse_digits(text.substr(slash + 1), text);
  }
  if (r.den == 0) throw InputError("ratio '" + text + "' has zero denominator");
  return r;
}

std::string Ratio::str() const {
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::uint64_t bounded_power(std::uint64_t base, std::uint64_t exp, std::uint64_t limit) {
  std::uint64_t result = 1;
  for (std::uint64_t k = 0; k < exp; ++k) {
    if (base != 0 && result > limit / base) return limit + 1;
    result *= base;
    if (result > limit) return limit + 1;
  }
  return result;
}

}  // namespace fairc
