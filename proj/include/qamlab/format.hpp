#pragma once

#include <span>
#include <string>
#include <string_view>

namespace qamlab {

/// Shortest decimal form that parses back to the same double.
std::string format_short(double x);

/// Fixed 17-significant-digit form used in every CSV column.
std::string format_full(double x);

/// "[a, b, c]" with format_short elements.
std::string format_list(std::span<const double> xs);

/// Quotes a CSV field when it contains a separator, quote, or newline.
std::string csv_field(std::string_view s);

}  // namespace qamlab
