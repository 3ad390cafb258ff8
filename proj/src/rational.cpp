#include "fiberlab/rational.hpp"

#include <stdexcept>

#include "fiberlab/error.hpp"

namespace fiberlab {

std::string to_string(const Rational &q) {
  if (q.denominator() == 1)
    return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

Rational parse_rational(const std::string &text) {
  try {
    const auto slash = text.find('/');
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const std::int64_t num = std::stoll(text, &used);
      if (used != text.size())
        throw std::invalid_argument(text);
      return Rational(num);
    }
    const std::string a = text.substr(0, slash);
    const std::string b = text.substr(slash + 1);
    const std::int64_t num = std::stoll(a, &used);
    if (used != a.size())
      throw std::invalid_argument(text);
    const std::int64_t den = std::stoll(b, &used);
    if (used != b.size() || den == 0)
      throw std::invalid_argument(text);
    return Rational(num, den);
  } catch (const std::exception &) {
    throw Error(ErrorCode::InvalidInput, "malformed rational '" + text + "'");
  }
}

} // namespace fiberlab
