#include "qamlab/format.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace qamlab {

namespace {

std::string printf_real(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

}  // namespace

std::string format_short(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  for (int digits = 1; digits < 17; ++digits) {
    std::string s = printf_real(x, digits);
    if (std::strtod(s.c_str(), nullptr) == x) return s;
  }
  return printf_real(x, 17);
}

std::string format_full(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return printf_real(x, 17);
}

std::string format_list(std::span<const double> xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) s += ", ";
    s += format_short(xs[i]);
  }
  return s + "]";
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace qamlab
