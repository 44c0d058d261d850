#include "cantor/real.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cstdio>
#include <cstdlib>
#include <regex>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

// 256 bits comfortably covers every hi+lo pair whose limbs are within 150
// binary orders of each other, which is all the library ever produces.
using Wide = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<256, boost::multiprecision::digit_base_2>>;

const std::regex& decimal_pattern() {
  static const std::regex re(R"(^\s*[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?\s*$)");
  return re;
}

Wide parse_wide_decimal(std::string_view text) {
  const std::string s(text);
  if (!std::regex_match(s, decimal_pattern())) {
    throw InvalidInput("not a decimal number: '" + s + "'");
  }
  return Wide(s);
}

Wide parse_wide(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_wide_decimal(text);
  const Wide num = parse_wide_decimal(text.substr(0, slash));
  const Wide den = parse_wide_decimal(text.substr(slash + 1));
  if (den == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
  return num / den;
}

}  // namespace

template <>
double parse_real<double>(std::string_view text) {
  const Wide w = parse_wide(text);
  return w.convert_to<double>();
}

template <>
DoubleDouble parse_real<DoubleDouble>(std::string_view text) {
  const Wide w = parse_wide(text);
  const double hi = w.convert_to<double>();
  const double lo = Wide(w - Wide(hi)).convert_to<double>();
  return DoubleDouble::from_parts(hi, lo);
}

template <>
std::string format_real<double>(const double& x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <>
std::string format_real<DoubleDouble>(const DoubleDouble& x) {
  if (!std::isfinite(x.hi())) return format_real<double>(x.hi());
  if (x.hi() == 0.0) return "0";
  const Wide w = Wide(x.hi()) + Wide(x.lo());
  // In scientific notation the precision counts digits after the point.
  return w.str(RealTraits<DoubleDouble>::decimal_digits - 1, std::ios_base::scientific);
}

std::string_view precision_name(Precision p) {
  return p == Precision::Double ? "double" : "double-double";
}

Precision parse_precision(std::string_view name) {
  if (name == "double") return Precision::Double;
  if (name == "double-double" || name == "dd") return Precision::DoubleDouble;
  throw InvalidInput("unknown precision '" + std::string(name) + "'");
}

}  // namespace cantor
