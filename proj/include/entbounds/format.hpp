#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace entb {

/// Locale-independent decimal rendering (never exponent notation) rounded to `significant`
/// digits, trailing zeros removed. Non-finite values render as nan, inf, -inf.
std::string format_decimal(double value, int significant = 12);

/// Comma-separated doubles, e.g. "0.5,1,1.5". Throws std::invalid_argument on bad tokens.
std::vector<double> parse_double_list(std::string_view text);

}  // namespace entb
