#include "cantor/gamma.hpp"

#include <algorithm>
#include <cmath>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::string_view gamma_kind_name(GammaKind kind) {
  switch (kind) {
    case GammaKind::Constant: return "constant";
    case GammaKind::List: return "list";
    case GammaKind::Periodic: return "periodic";
  }
  return "constant";
}

GammaKind parse_gamma_kind(std::string_view name) {
  if (name == "constant") return GammaKind::Constant;
  if (name == "list") return GammaKind::List;
  if (name == "periodic") return GammaKind::Periodic;
  throw InvalidInput("unknown gamma kind '" + std::string(name) + "'");
}

GammaDescriptor GammaDescriptor::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw InvalidInput("gamma descriptor must look like kind:v1,v2,... (got '" + std::string(text) + "')");
  }
  GammaDescriptor d;
  d.kind = parse_gamma_kind(trim(text.substr(0, colon)));
  std::string_view rest = text.substr(colon + 1);
  while (true) {
    const auto comma = rest.find(',');
    std::string item = trim(rest.substr(0, comma));
    if (item.empty()) throw InvalidInput("empty value in gamma descriptor");
    d.values.push_back(std::move(item));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return d;
}

std::string GammaDescriptor::to_string() const {
  std::string s(gamma_kind_name(kind));
  s += ':';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ',';
    s += values[i];
  }
  return s;
}

GammaSequence::GammaSequence(GammaDescriptor descriptor, GammaDomain domain)
    : descriptor_(std::move(descriptor)), domain_(domain) {
  if (descriptor_.values.empty()) throw InvalidInput("gamma descriptor has no values");
  if (descriptor_.kind == GammaKind::Constant && descriptor_.values.size() != 1) {
    throw InvalidInput("constant gamma descriptor takes exactly one value");
  }
  for (const auto& text : descriptor_.values) {
    const double vd = parse_real<double>(text);
    const DoubleDouble vdd = parse_real<DoubleDouble>(text);
    const bool closed = domain_ == GammaDomain::ChebyshevLimit;
    const bool upper_ok = closed ? vdd <= DoubleDouble(0.25) : vdd < DoubleDouble(0.25);
    if (!(vdd > DoubleDouble(0.0) && upper_ok)) {
      throw InvalidInput("gamma value " + text + (closed ? " outside (0, 1/4]" : " outside (0, 1/4)"));
    }
    values_d_.push_back(vd);
    values_dd_.push_back(vdd);
  }
}

GammaSequence GammaSequence::constant(std::string_view value, GammaDomain domain) {
  return GammaSequence(GammaDescriptor{GammaKind::Constant, {std::string(value)}}, domain);
}

GammaSequence GammaSequence::parse(std::string_view descriptor_text, GammaDomain domain) {
  return GammaSequence(GammaDescriptor::parse(descriptor_text), domain);
}

std::size_t GammaSequence::slot(int k) const {
  const auto n = values_d_.size();
  const auto idx = static_cast<std::size_t>(k - 1);
  switch (descriptor_.kind) {
    case GammaKind::Constant: return 0;
    case GammaKind::List: return std::min(idx, n - 1);
    case GammaKind::Periodic: return idx % n;
  }
  return 0;
}

template <>
double GammaSequence::value<double>(int k) const {
  if (k < 0) throw InvalidInput("gamma index must be >= 0");
  return k == 0 ? 1.0 : values_d_[slot(k)];
}

template <>
DoubleDouble GammaSequence::value<DoubleDouble>(int k) const {
  if (k < 0) throw InvalidInput("gamma index must be >= 0");
  return k == 0 ? DoubleDouble(1.0) : values_dd_[slot(k)];
}

template <Real T>
T GammaSequence::delta(int s) const {
  if (s < 0) throw InvalidInput("delta index must be >= 0");
  T d(1.0);
  for (int k = 1; k <= s; ++k) d = d * value<T>(k);
  return d;
}

template <Real T>
T GammaSequence::infimum() const {
  T m = value<T>(1);
  for (int k = 1; k <= static_cast<int>(values_d_.size()); ++k) {
    const T v = value<T>(k);
    if (v < m) m = v;
  }
  return m;
}

double GammaSequence::summability_partial_sum(int depth) const {
  double s = 0.0;
  for (int k = 1; k <= depth; ++k) s += std::ldexp(std::log(1.0 / value<double>(k)), -k);
  return s;
}

double GammaSequence::parreau_widom_partial_sum(int depth) const {
  double s = 0.0;
  for (int k = 1; k <= depth; ++k) s += std::sqrt(1.0 - 4.0 * value<double>(k));
  return s;
}

bool GammaSequence::all_at_most_one_sixth() const {
  const DoubleDouble sixth = parse_real<DoubleDouble>("1/6");
  return std::all_of(values_dd_.begin(), values_dd_.end(),
                     [&](const DoubleDouble& v) { return v <= sixth; });
}

template double GammaSequence::delta<double>(int) const;
template DoubleDouble GammaSequence::delta<DoubleDouble>(int) const;
template double GammaSequence::infimum<double>() const;
template DoubleDouble GammaSequence::infimum<DoubleDouble>() const;

}  // namespace cantor
