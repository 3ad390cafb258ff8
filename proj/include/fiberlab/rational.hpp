#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace fiberlab {

using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational &q);

/// Parses "p/q" or "p". Throws Error(InvalidInput) on malformed text or q == 0.
Rational parse_rational(const std::string &text);

} // namespace fiberlab
