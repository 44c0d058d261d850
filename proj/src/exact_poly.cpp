#include "cantor/exact_poly.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include "cantor/errors.hpp"

namespace cantor {

std::string_view provenance_name(ZeroProvenance p) {
  return p == ZeroProvenance::ExactBranch ? "exact-branch" : "eigensolve";
}

namespace {

void check_level(int n) {
  if (n < 1) throw InvalidInput("map index must be >= 1");
}

}  // namespace

template <Real T>
T MapFamily::f(int n, const T& z) const {
  check_level(n);
  const T g = gamma_.value<T>(n);
  if (n == 1) return T(2.0) * z * (z - T(1.0)) / g + T(1.0);
  const T two_g = T(2.0) * g;
  return z * z / two_g + (T(1.0) - T(1.0) / two_g);
}

template <Real T>
T MapFamily::f_derivative(int n, const T& z) const {
  check_level(n);
  const T g = gamma_.value<T>(n);
  if (n == 1) return (T(4.0) * z - T(2.0)) / g;
  return z / g;
}

template <Real T>
T MapFamily::coefficient(int n, int j) const {
  check_level(n);
  if (j < 0 || j > 2) throw InvalidInput("f_n is quadratic: coefficient index must be 0, 1 or 2");
  const T g = gamma_.value<T>(n);
  if (n == 1) {
    switch (j) {
      case 2: return T(2.0) / g;
      case 1: return T(-2.0) / g;
      default: return T(1.0);
    }
  }
  switch (j) {
    case 2: return T(1.0) / (T(2.0) * g);
    case 1: return T(0.0);
    default: return T(1.0) - T(1.0) / (T(2.0) * g);
  }
}

template <Real T>
T MapFamily::tau(int n) const {
  check_level(n);
  T t = T(2.0) / gamma_.value<T>(1);
  for (int k = 2; k <= n; ++k) t = t * t / (T(2.0) * gamma_.value<T>(k));
  return t;
}

double MapFamily::log2_tau(int n) const {
  check_level(n);
  double lt = 1.0 - std::log2(gamma_.value<double>(1));
  for (int k = 2; k <= n; ++k) lt = 2.0 * lt - 1.0 - std::log2(gamma_.value<double>(k));
  return lt;
}

template <Real T>
T evaluate_F(const MapFamily& fam, int n, const T& z) {
  check_level(n);
  T v = z;
  for (int k = 1; k <= n; ++k) {
    v = fam.f(k, v);
    if (!finite(v)) throw RangeError("F_n overflowed at composition step " + std::to_string(k));
  }
  return v;
}

template <Real T>
T evaluate_F_derivative(const MapFamily& fam, int n, const T& z) {
  check_level(n);
  T v = z;
  T d(1.0);
  for (int k = 1; k <= n; ++k) {
    d = d * fam.f_derivative(k, v);
    v = fam.f(k, v);
    if (!finite(v) || !finite(d)) throw RangeError("F_n' overflowed at composition step " + std::to_string(k));
  }
  return d;
}

template <Real T>
T monic_opoly_exact(const MapFamily& fam, int m, const T& z) {
  check_level(m);
  const auto& gamma = fam.gamma();
  T p = z * z - z + gamma.value<T>(1) / T(2.0);
  T tau = T(2.0) / gamma.value<T>(1);
  for (int k = 2; k <= m; ++k) {
    if (!finite(tau)) throw RangeError("tau overflowed before level " + std::to_string(k));
    const T g = gamma.value<T>(k);
    p = p * p - (T(1.0) - T(2.0) * g) / (tau * tau);
    tau = tau * tau / (T(2.0) * g);
    if (!finite(p)) throw RangeError("P overflowed at level " + std::to_string(k));
  }
  return p;
}

namespace {

template <Real T>
void check_zeros(const MapFamily& fam, int m, const std::vector<T>& points) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0 && !(points[i - 1] < points[i])) {
      throw NumericalFailure("zeros of P_" + std::to_string(1 << std::min(m, 30)) + " not strictly increasing");
    }
    if (!zero_residual_ok(fam, m, points[i])) {
      throw NumericalFailure("residual check failed for zero " + std::to_string(i + 1) + " of level " +
                             std::to_string(m));
    }
  }
}

}  // namespace

template <Real T>
ZeroSet<T> exact_zeros(const MapFamily& fam, int m, ExecPolicy policy) {
  check_level(m);
  ZeroSet<T> zs;
  zs.degree = 1 << m;
  zs.provenance = ZeroProvenance::ExactBranch;
  if (m == 1) {
    const T root = sqrtval(T(1.0) - T(2.0) * fam.gamma().value<T>(1));
    zs.points = {(T(1.0) - root) / T(2.0), (T(1.0) + root) / T(2.0)};
    check_zeros(fam, m, zs.points);
    return zs;
  }
  // Zeros of F_m are the preimages of t = 0, i.e. innermost argument gamma_m / 2.
  zs.points = kernels::branch_pullback(fam.gamma(), m, fam.gamma().value<T>(m) / T(2.0), policy);
  check_zeros(fam, m, zs.points);
  return zs;
}

template <Real T>
CriticalSet<T> critical_set(const MapFamily& fam, int n, ExecPolicy policy) {
  check_level(n);
  CriticalSet<T> cs;
  cs.level = n;
  cs.points = {T(0.5)};
  for (int k = 1; k < n; ++k) {
    const auto z = exact_zeros<T>(fam, k, policy);
    std::vector<T> merged;
    merged.reserve(cs.points.size() + z.points.size());
    std::merge(cs.points.begin(), cs.points.end(), z.points.begin(), z.points.end(),
               std::back_inserter(merged));
    cs.points = std::move(merged);
  }
  return cs;
}

template <Real T>
bool zero_residual_ok(const MapFamily& fam, int m, const T& z) {
  check_level(m);
  const T eps(RealTraits<T>::epsilon());
  // Running forward-error bound of the composition: each step amplifies the
  // incoming error by |f_k'| and adds one rounding of its own terms.
  T v = z;
  T err(0.0);
  T dF(1.0);
  for (int k = 1; k <= m; ++k) {
    const T a2 = fam.coefficient<T>(k, 2);
    const T a1 = fam.coefficient<T>(k, 1);
    const T a0 = fam.coefficient<T>(k, 0);
    const T d = fam.f_derivative(k, v);
    const T next = fam.f(k, v);
    err = absval(d) * err + eps * (absval(a2 * v * v) + absval(a1 * v) + absval(a0) + absval(next));
    dF = dF * d;
    v = next;
    if (!finite(v) || !finite(err)) return false;
  }
  // Plus a relative displacement eps of z itself.
  const T tol = T(std::ldexp(1.0, m)) * (err + eps * absval(z * dF));
  return absval(v) <= tol;
}

#define CANTOR_INSTANTIATE_EXACT(T)                                           \
  template T MapFamily::f<T>(int, const T&) const;                            \
  template T MapFamily::f_derivative<T>(int, const T&) const;                 \
  template T MapFamily::coefficient<T>(int, int) const;                       \
  template T MapFamily::tau<T>(int) const;                                    \
  template T evaluate_F<T>(const MapFamily&, int, const T&);                  \
  template T evaluate_F_derivative<T>(const MapFamily&, int, const T&);       \
  template T monic_opoly_exact<T>(const MapFamily&, int, const T&);           \
  template ZeroSet<T> exact_zeros<T>(const MapFamily&, int, ExecPolicy);      \
  template CriticalSet<T> critical_set<T>(const MapFamily&, int, ExecPolicy); \
  template bool zero_residual_ok<T>(const MapFamily&, int, const T&);

CANTOR_INSTANTIATE_EXACT(double)
CANTOR_INSTANTIATE_EXACT(DoubleDouble)

#undef CANTOR_INSTANTIATE_EXACT

}  // namespace cantor
