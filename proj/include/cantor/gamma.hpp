#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cantor/real.hpp"

namespace cantor {

/// How a finite descriptor is extended to an infinite sequence.
enum class GammaKind {
  Constant,  ///< one value repeated
  List,      ///< explicit prefix, then the last value repeated
  Periodic,  ///< the values cycled
};

/// Admissible parameter range. The standing assumption is the open interval;
/// the closed end gamma = 1/4 (where K = [0, 1] and the polynomials are
/// shifted Chebyshev) is only accepted on request, for oracle runs.
enum class GammaDomain {
  Open,           ///< 0 < gamma < 1/4
  ChebyshevLimit  ///< 0 < gamma <= 1/4
};

/// Reproducible finite description of gamma_1, gamma_2, ...
/// Values are kept as the decimal (or p/q) text they were given in, so that
/// each precision mode parses them independently and exactly.
struct GammaDescriptor {
  GammaKind kind = GammaKind::Constant;
  std::vector<std::string> values;

  /// "constant:1/6", "list:0.2,0.1", "periodic:1/6,1/5"
  static GammaDescriptor parse(std::string_view text);
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const GammaDescriptor&, const GammaDescriptor&) = default;
};

std::string_view gamma_kind_name(GammaKind kind);
GammaKind parse_gamma_kind(std::string_view name);

/// The parameter sequence with gamma_0 := 1 and the products
/// delta_s = gamma_0 gamma_1 ... gamma_s.
///
/// Every stored value lies in the requested domain; construction throws
/// InvalidInput otherwise. Immutable, so freely shared across threads.
class GammaSequence {
 public:
  explicit GammaSequence(GammaDescriptor descriptor, GammaDomain domain = GammaDomain::Open);

  static GammaSequence constant(std::string_view value, GammaDomain domain = GammaDomain::Open);
  static GammaSequence parse(std::string_view descriptor_text, GammaDomain domain = GammaDomain::Open);

  [[nodiscard]] const GammaDescriptor& descriptor() const noexcept { return descriptor_; }
  [[nodiscard]] GammaDomain domain() const noexcept { return domain_; }

  /// gamma_k for k >= 0 (gamma_0 = 1).
  template <Real T>
  [[nodiscard]] T value(int k) const;

  /// delta_s for s >= 0.
  template <Real T>
  [[nodiscard]] T delta(int s) const;

  /// Smallest value over the whole (infinite) sequence; finite descriptors
  /// make this a minimum over the listed values.
  template <Real T>
  [[nodiscard]] T infimum() const;

  /// Partial sums sum_{k<=depth} 2^-k log(1/gamma_k); informational only.
  [[nodiscard]] double summability_partial_sum(int depth) const;
  /// Partial sums sum_{k<=depth} sqrt(1 - 4 gamma_k); informational only.
  [[nodiscard]] double parreau_widom_partial_sum(int depth) const;
  /// True when every listed value is <= 1/6 (so the materialised prefix is
  /// consistent with the singular-continuous regime). Informational only.
  [[nodiscard]] bool all_at_most_one_sixth() const;

 private:
  [[nodiscard]] std::size_t slot(int k) const;

  GammaDescriptor descriptor_;
  GammaDomain domain_;
  std::vector<double> values_d_;
  std::vector<DoubleDouble> values_dd_;
};

template <>
double GammaSequence::value<double>(int k) const;
template <>
DoubleDouble GammaSequence::value<DoubleDouble>(int k) const;

}  // namespace cantor
