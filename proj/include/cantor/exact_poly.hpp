#pragma once

// The map family f_1(z) = 2z(z-1)/gamma_1 + 1, f_n(z) = z^2/(2 gamma_n) + 1 - 1/(2 gamma_n)
// and what follows from it in closed form: F_n = f_n o ... o f_1, the leading
// coefficients tau_n, the monic orthogonal polynomials P_{2^m} = F_m / tau_m,
// their zeros (pulled back through the inverse branches) and the critical
// points of F_n.

#include <string_view>
#include <vector>

#include "cantor/gamma.hpp"
#include "cantor/kernels.hpp"
#include "cantor/real.hpp"

namespace cantor {

enum class ZeroProvenance { ExactBranch, Eigensolve };

std::string_view provenance_name(ZeroProvenance p);

/// Sorted, strictly increasing zeros of a degree-`degree` polynomial.
template <Real T>
struct ZeroSet {
  int degree = 0;
  std::vector<T> points;
  ZeroProvenance provenance = ZeroProvenance::ExactBranch;
};

/// The 2^level - 1 critical points of F_level, sorted.
template <Real T>
struct CriticalSet {
  int level = 0;
  std::vector<T> points;
};

class MapFamily {
 public:
  explicit MapFamily(GammaSequence gamma) : gamma_(std::move(gamma)) {}

  [[nodiscard]] const GammaSequence& gamma() const noexcept { return gamma_; }

  /// f_n(z).
  template <Real T>
  [[nodiscard]] T f(int n, const T& z) const;
  /// f_n'(z).
  template <Real T>
  [[nodiscard]] T f_derivative(int n, const T& z) const;
  /// Coefficient a_{n,j} of z^j in f_n (j = 0, 1, 2).
  template <Real T>
  [[nodiscard]] T coefficient(int n, int j) const;
  /// tau_n, the leading coefficient of F_n (tau_1 = 2/gamma_1,
  /// tau_{n+1} = tau_n^2 / (2 gamma_{n+1})). Overflows to inf for deep n.
  template <Real T>
  [[nodiscard]] T tau(int n) const;
  /// log2(tau_n), finite at any depth.
  [[nodiscard]] double log2_tau(int n) const;

 private:
  GammaSequence gamma_;
};

/// F_n(z) by forward composition. Throws RangeError if the orbit overflows.
template <Real T>
T evaluate_F(const MapFamily& fam, int n, const T& z);

/// F_n'(z) via the chain rule.
template <Real T>
T evaluate_F_derivative(const MapFamily& fam, int n, const T& z);

/// P_{2^m}(z) = F_m(z) / tau_m, evaluated through
/// P_{2^m} = P_{2^{m-1}}^2 - (1 - 2 gamma_m) / tau_{m-1}^2 so that tau_m itself
/// never has to be formed. Throws RangeError when tau_{m-1} overflows.
template <Real T>
T monic_opoly_exact(const MapFamily& fam, int m, const T& z);

/// Zeros of P_{2^m}: closed form for m = 1, inverse-branch pullback of
/// +-sqrt(1 - 2 gamma_m) for m >= 2.
template <Real T>
ZeroSet<T> exact_zeros(const MapFamily& fam, int m, ExecPolicy policy = ExecPolicy::Parallel);

/// {1/2} u Z_2 u Z_4 u ... u Z_{2^{n-1}}.
template <Real T>
CriticalSet<T> critical_set(const MapFamily& fam, int n, ExecPolicy policy = ExecPolicy::Parallel);

/// Post-condition check for a computed zero of P_{2^m}:
/// |F_m(z)| <= 2^m * (E + eps |z F_m'(z)|), where E is a running forward-error
/// bound of the composition: P_{2^m} vanishes at z up to evaluation error and
/// a relative displacement of z by eps.
template <Real T>
bool zero_residual_ok(const MapFamily& fam, int m, const T& z);

}  // namespace cantor
