#include "cantor/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cantor/errors.hpp"

namespace cantor {

// ---------------------------------------------------------------------------
// DiscreteMeasure / JacobiMatrix

template <Real T>
T DiscreteMeasure<T>::total_mass() const {
  T s(0.0);
  for (const T& w : weights) s += w;
  return s;
}

template <Real T>
void DiscreteMeasure<T>::validate() const {
  if (nodes.empty()) throw InvalidInput("measure has no nodes");
  if (nodes.size() != weights.size()) throw InvalidInput("measure nodes/weights length mismatch");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!finite(nodes[i]) || !finite(weights[i])) throw InvalidInput("measure has non-finite entries");
    if (!(weights[i] > T(0.0))) throw InvalidInput("measure weight " + std::to_string(i) + " is not positive");
    if (i > 0 && !(nodes[i] > nodes[i - 1])) throw InvalidInput("measure nodes are not strictly increasing");
  }
  if (absval(total_mass() - T(1.0)) > T(1e-12)) throw InvalidInput("measure weights do not sum to 1");
}

template <Real T>
void JacobiMatrix<T>::validate() const {
  if (a.size() != b.size()) throw InvalidInput("jacobi a/b length mismatch");
  if (valid_length < 0 || static_cast<std::size_t>(valid_length) > b.size()) {
    throw InvalidInput("jacobi valid_length out of range");
  }
  for (int k = 1; k <= valid_length; ++k) {
    const T ak = a_at(k);
    const T bk = b_at(k);
    if (!finite(ak) || !finite(bk)) throw InvalidInput("jacobi coefficient " + std::to_string(k) + " not finite");
    if (!(bk > T(0.0) && bk < T(1.0))) throw InvalidInput("b_" + std::to_string(k) + " outside (0, 1)");
    if (!(ak < T(1.0))) throw InvalidInput("a_" + std::to_string(k) + " >= 1");
    if (k < valid_length ? !(ak > T(0.0)) : ak < T(0.0)) {
      throw InvalidInput("a_" + std::to_string(k) + " is not positive");
    }
  }
}

template <Real T>
JacobiMatrix<T> JacobiMatrix<T>::truncated(int k) const {
  if (k < 0 || k > valid_length) throw InvalidInput("truncation beyond valid length");
  JacobiMatrix<T> out;
  out.a.assign(a.begin(), a.begin() + k);
  out.b.assign(b.begin(), b.begin() + k);
  out.valid_length = k;
  return out;
}

template <Real T>
JacobiMatrix<DoubleDouble> widen(const JacobiMatrix<T>& j) {
  JacobiMatrix<DoubleDouble> out;
  out.valid_length = j.valid_length;
  for (const T& v : j.a) out.a.push_back(DoubleDouble::from_parts(to_double(v), to_double(v - T(to_double(v)))));
  for (const T& v : j.b) out.b.push_back(DoubleDouble::from_parts(to_double(v), to_double(v - T(to_double(v)))));
  return out;
}

double StabilizationStep::max_delta() const {
  double m = 0.0;
  for (double d : delta_a) m = std::max(m, d);
  for (double d : delta_b) m = std::max(m, d);
  return m;
}

// ---------------------------------------------------------------------------
// Refinement measures and recurrence recovery

template <Real T>
DiscreteMeasure<T> refinement_measure(const MapFamily& fam, int depth, const T& a_target,
                                      ExecPolicy policy) {
  if (depth < 1 || depth > 24) throw InvalidInput("refinement depth must be in [1, 24]");
  if (!(absval(a_target) < T(1.0))) throw InvalidInput("refinement target must satisfy |a| < 1");
  const T g = fam.gamma().value<T>(depth);
  // F_N(z) = a  <=>  innermost argument t~ = gamma_N (1 - a) / 2.
  DiscreteMeasure<T> m;
  m.nodes = kernels::branch_pullback(fam.gamma(), depth, g * (T(1.0) - a_target) / T(2.0), policy);
  m.weights.assign(m.nodes.size(), T(std::ldexp(1.0, -depth)));
  return m;
}

template <Real T>
JacobiMatrix<T> stieltjes_lanczos(const DiscreteMeasure<T>& measure, int count, ExecPolicy policy) {
  const std::size_t n = measure.size();
  if (count < 1) throw InvalidInput("coefficient count must be >= 1");
  if (static_cast<std::size_t>(count) > n) throw InvalidInput("coefficient count exceeds number of nodes");

  T scale(0.0);
  for (const T& x : measure.nodes) scale = std::max(scale, absval(x));
  const T exhausted = T(1e3 * RealTraits<T>::epsilon()) * (scale > T(0.0) ? scale : T(1.0));

  // q_k holds sqrt(w_i) p_k(x_i) for the orthonormal p_k.
  std::vector<std::vector<T>> basis;
  basis.reserve(static_cast<std::size_t>(count) + 1);
  std::vector<T> q(n);
  for (std::size_t i = 0; i < n; ++i) q[i] = sqrtval(measure.weights[i]);
  {
    const T norm = sqrtval(kernels::dot<T>(q, q, policy));
    for (T& v : q) v /= norm;
  }
  basis.push_back(q);

  JacobiMatrix<T> out;
  out.a.reserve(static_cast<std::size_t>(count));
  out.b.reserve(static_cast<std::size_t>(count));
  std::vector<T> v(n);
  for (int k = 1; k <= count; ++k) {
    const auto& cur = basis.back();
    for (std::size_t i = 0; i < n; ++i) v[i] = measure.nodes[i] * cur[i];
    const T bk = kernels::dot<T>(cur, v, policy);
    for (std::size_t i = 0; i < n; ++i) v[i] -= bk * cur[i];
    if (k > 1) {
      const T ak_prev = out.a.back();
      const auto& prev = basis[basis.size() - 2];
      for (std::size_t i = 0; i < n; ++i) v[i] -= ak_prev * prev[i];
    }
    // Two passes of classical Gram-Schmidt against the whole basis.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& qj : basis) {
        const T c = kernels::dot<T>(qj, v, policy);
        for (std::size_t i = 0; i < n; ++i) v[i] -= c * qj[i];
      }
    }
    const T ak = sqrtval(kernels::dot<T>(v, v, policy));
    out.b.push_back(bk);
    out.valid_length = k;
    if (!(ak > exhausted)) {
      // The measure has no more independent directions (or rounding ate a_k^2).
      out.a.push_back(T(0.0));
      break;
    }
    out.a.push_back(ak);
    if (k < count) {
      for (std::size_t i = 0; i < n; ++i) v[i] /= ak;
      basis.push_back(v);
    }
  }
  return out;
}

int minimum_depth_for(int count) {
  if (count < 1) throw InvalidInput("coefficient count must be >= 1");
  int depth = 2;
  while ((1LL << (depth - 2)) < count) ++depth;
  return depth;
}

template <Real T>
JacobiRecovery<T> jacobi_for_gamma(const MapFamily& fam, int count, const JacobiControl& control,
                                   ExecPolicy policy) {
  if (!(control.tolerance > 0.0)) throw InvalidInput("stabilisation tolerance must be positive");
  int depth = std::max(control.min_depth, minimum_depth_for(count));
  if (depth > control.max_depth) {
    throw InvalidInput("depth budget " + std::to_string(control.max_depth) + " too small for " +
                       std::to_string(count) + " coefficients (need K <= 2^(N-2))");
  }
  auto recover = [&](int d) {
    return stieltjes_lanczos(refinement_measure(fam, d, T(0.0), policy), count, policy);
  };
  auto to_double_matrix = [](const JacobiMatrix<T>& j) {
    JacobiMatrix<double> out;
    out.valid_length = j.valid_length;
    for (const T& v : j.a) out.a.push_back(to_double(v));
    for (const T& v : j.b) out.b.push_back(to_double(v));
    return out;
  };

  JacobiMatrix<T> previous = recover(depth - 1);
  while (true) {
    JacobiMatrix<T> current = recover(depth);
    StabilizationStep step;
    step.depth = depth;
    const int common = std::min(previous.valid_length, current.valid_length);
    for (int k = 1; k <= common; ++k) {
      step.delta_a.push_back(to_double(absval(current.a_at(k) - previous.a_at(k))));
      step.delta_b.push_back(to_double(absval(current.b_at(k) - previous.b_at(k))));
    }
    const bool complete = current.valid_length == count && previous.valid_length == count;
    if (complete && step.max_delta() <= control.tolerance) {
      return JacobiRecovery<T>{std::move(current), depth, std::move(step)};
    }
    if (depth >= control.max_depth) {
      throw JacobiNonConvergence("recurrence coefficients did not stabilise to " +
                                     std::to_string(control.tolerance) + " by depth " +
                                     std::to_string(depth),
                                 to_double_matrix(previous), to_double_matrix(current), std::move(step));
    }
    previous = std::move(current);
    ++depth;
  }
}

// ---------------------------------------------------------------------------
// Evaluation, zeros, Gauss measures

template <Real T>
T opoly_eval(const JacobiMatrix<T>& j, int n, const T& x) {
  return opoly_eval_with_derivative(j, n, x).first;
}

template <Real T>
std::pair<T, T> opoly_eval_with_derivative(const JacobiMatrix<T>& j, int n, const T& x) {
  if (n < 0) throw InvalidInput("degree must be >= 0");
  if (n > j.valid_length) throw InvalidInput("degree " + std::to_string(n) + " exceeds valid length");
  T p_prev(0.0), p(1.0);
  T d_prev(0.0), d(0.0);
  for (int k = 0; k < n; ++k) {
    const T shift = x - j.b_at(k + 1);
    const T a2 = k > 0 ? j.a_at(k) * j.a_at(k) : T(0.0);
    const T p_next = shift * p - a2 * p_prev;
    const T d_next = p + shift * d - a2 * d_prev;
    p_prev = p;
    p = p_next;
    d_prev = d;
    d = d_next;
  }
  return {p, d};
}

namespace {

template <Real T>
void check_degree(const JacobiMatrix<T>& j, int n) {
  if (n < 1) throw InvalidInput("degree must be >= 1");
  if (n > j.valid_length) throw InvalidInput("degree " + std::to_string(n) + " exceeds valid length");
}

template <Real T>
T gershgorin_width(std::span<const T> diag, std::span<const T> off) {
  T lo = diag[0], hi = diag[0];
  for (std::size_t i = 0; i < diag.size(); ++i) {
    T r(0.0);
    if (i > 0) r += absval(off[i - 1]);
    if (i + 1 < diag.size()) r += absval(off[i]);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
  return hi - lo;
}

template <Real T>
int default_iterations() {
  return RealTraits<T>::precision == Precision::Double ? 1100 : 2200;
}

/// Solves (T - shift I) x = rhs for a symmetric tridiagonal T by Gaussian
/// elimination with partial pivoting; zero pivots are nudged to `tiny`.
template <Real T>
std::vector<T> tridiagonal_solve(std::span<const T> diag, std::span<const T> off, const T& shift,
                                 std::vector<T> rhs, const T& tiny) {
  const std::size_t n = diag.size();
  // Row i of U has entries u0[i] (diagonal), u1[i], u2[i] (two superdiagonals).
  std::vector<T> u0(n), u1(n, T(0.0)), u2(n, T(0.0)), mult(n, T(0.0));
  std::vector<bool> swapped(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    u0[i] = diag[i] - shift;
    if (i + 1 < n) u1[i] = off[i];
  }
  // Pending sub-diagonal entry below row i.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const T sub = off[i];
    if (absval(sub) > absval(u0[i])) {
      // Swap rows i and i+1.
      swapped[i] = true;
      const T r0 = sub, r1 = diag[i + 1] - shift, r2 = (i + 2 < n) ? off[i + 1] : T(0.0);
      const T m = u0[i] / r0;
      mult[i] = m;
      const T new_next0 = u1[i] - m * r1;
      const T new_next1 = u2[i] - m * r2;
      u0[i] = r0;
      u1[i] = r1;
      u2[i] = r2;
      u0[i + 1] = new_next0;
      if (i + 1 < n) u1[i + 1] = new_next1;
      std::swap(rhs[i], rhs[i + 1]);
      rhs[i + 1] -= m * rhs[i];
    } else {
      const T piv = absval(u0[i]) < tiny ? tiny : u0[i];
      u0[i] = piv;
      const T m = sub / piv;
      mult[i] = m;
      u0[i + 1] -= m * u1[i];
      rhs[i + 1] -= m * rhs[i];
    }
  }
  if (absval(u0[n - 1]) < tiny) u0[n - 1] = tiny;
  std::vector<T> x(n);
  for (std::size_t k = n; k-- > 0;) {
    T s = rhs[k];
    if (k + 1 < n) s -= u1[k] * x[k + 1];
    if (k + 2 < n) s -= u2[k] * x[k + 2];
    x[k] = s / u0[k];
  }
  return x;
}

}  // namespace

template <Real T>
ZeroSet<T> eigen_zeros(const JacobiMatrix<T>& j, int n, const EigenOptions& options) {
  check_degree(j, n);
  ZeroSet<T> zs;
  zs.degree = n;
  zs.provenance = ZeroProvenance::Eigensolve;
  const std::span<const T> diag(j.b.data(), static_cast<std::size_t>(n));
  const std::span<const T> off(j.a.data(), static_cast<std::size_t>(n - 1));
  if (n == 1) {
    zs.points = {j.b_at(1)};
    return zs;
  }
  const T abs_tol = T(options.rel_tol) * gershgorin_width(diag, off);
  const int iters = options.max_iterations > 0 ? options.max_iterations : default_iterations<T>();
  zs.points = kernels::bisect_eigenvalues<T>(diag, off, abs_tol, iters, options.policy);
  for (std::size_t i = 1; i < zs.points.size(); ++i) {
    if (!(zs.points[i] > zs.points[i - 1])) {
      throw NumericalFailure("eigenvalues " + std::to_string(i - 1) + " and " + std::to_string(i) +
                             " are not resolved in " + RealTraits<T>::name + " precision");
    }
  }
  return zs;
}

EscalatedZeros eigen_zeros_auto(const JacobiMatrix<double>& j, int n, const EigenOptions& options) {
  EscalatedZeros out;
  bool needs_escalation = false;
  try {
    out.zeros = eigen_zeros(j, n, options);
    const std::span<const double> diag(j.b.data(), static_cast<std::size_t>(n));
    const std::span<const double> off(j.a.data(), static_cast<std::size_t>(std::max(n - 1, 0)));
    const double threshold = 1e3 * RealTraits<double>::epsilon() * (n > 1 ? gershgorin_width(diag, off) : 1.0);
    for (std::size_t i = 1; i < out.zeros.points.size(); ++i) {
      if (out.zeros.points[i] - out.zeros.points[i - 1] < threshold) needs_escalation = true;
    }
  } catch (const NumericalFailure&) {
    needs_escalation = true;
  }
  if (!needs_escalation) return out;
  const auto wide = eigen_zeros(widen(j), n, options);
  out.escalated = true;
  out.zeros.degree = n;
  out.zeros.provenance = ZeroProvenance::Eigensolve;
  out.zeros.points.clear();
  for (const auto& z : wide.points) out.zeros.points.push_back(z.to_double());
  for (std::size_t i = 1; i < out.zeros.points.size(); ++i) {
    if (!(out.zeros.points[i] > out.zeros.points[i - 1])) {
      throw NumericalFailure("zeros of degree " + std::to_string(n) + " collide after rounding to double");
    }
  }
  return out;
}

template <Real T>
DiscreteMeasure<T> gauss_measure(const JacobiMatrix<T>& j, int r, const EigenOptions& options) {
  check_degree(j, r);
  DiscreteMeasure<T> m;
  m.nodes = eigen_zeros(j, r, options).points;
  if (r == 1) {
    m.weights = {T(1.0)};
    return m;
  }
  const std::span<const T> diag(j.b.data(), static_cast<std::size_t>(r));
  const std::span<const T> off(j.a.data(), static_cast<std::size_t>(r - 1));
  const T tiny = T(RealTraits<T>::epsilon()) * gershgorin_width(diag, off);
  m.weights.resize(static_cast<std::size_t>(r));
  const auto count = static_cast<std::ptrdiff_t>(r);
  auto weight_at = [&](std::ptrdiff_t idx) {
    std::vector<T> x(static_cast<std::size_t>(r), T(1.0));
    for (int it = 0; it < 3; ++it) {
      x = tridiagonal_solve<T>(diag, off, m.nodes[static_cast<std::size_t>(idx)], std::move(x), tiny);
      T norm(0.0);
      for (const T& v : x) norm += v * v;
      norm = sqrtval(norm);
      for (T& v : x) v /= norm;
    }
    m.weights[static_cast<std::size_t>(idx)] = x[0] * x[0];
  };
  if (options.policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < count; ++i) weight_at(i);
  } else {
    for (std::ptrdiff_t i = 0; i < count; ++i) weight_at(i);
  }
  for (std::size_t i = 0; i < m.weights.size(); ++i) {
    if (!(m.weights[i] > T(0.0))) throw NumericalFailure("non-positive Gauss weight at node " + std::to_string(i));
  }
  return m;
}

template <Real T>
T integrate_polynomial(const JacobiMatrix<T>& j, std::span<const T> coefficients) {
  if (coefficients.empty()) return T(0.0);
  const int degree = static_cast<int>(coefficients.size()) - 1;
  const int needed = degree / 2 + 1;
  if (j.valid_length < needed) throw InvalidInput("jacobi matrix too short for this polynomial degree");
  const int size = std::min(j.valid_length, degree + 1);
  // Horner in the matrix: v <- J v + c_i e_1.
  std::vector<T> v(static_cast<std::size_t>(size), T(0.0));
  std::vector<T> next(v.size());
  v[0] = coefficients[static_cast<std::size_t>(degree)];
  for (int i = degree - 1; i >= 0; --i) {
    for (int r = 0; r < size; ++r) {
      T s = j.b_at(r + 1) * v[static_cast<std::size_t>(r)];
      if (r > 0) s += j.a_at(r) * v[static_cast<std::size_t>(r - 1)];
      if (r + 1 < size) s += j.a_at(r + 1) * v[static_cast<std::size_t>(r + 1)];
      next[static_cast<std::size_t>(r)] = s;
    }
    next[0] += coefficients[static_cast<std::size_t>(i)];
    std::swap(v, next);
  }
  return v[0];
}

template <Real T>
T integrate_polynomial(const DiscreteMeasure<T>& m, std::span<const T> coefficients) {
  T total(0.0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    T p(0.0);
    for (std::size_t c = coefficients.size(); c-- > 0;) p = p * m.nodes[i] + coefficients[c];
    total += m.weights[i] * p;
  }
  return total;
}

#define CANTOR_INSTANTIATE_JACOBI(T)                                                              \
  template struct DiscreteMeasure<T>;                                                             \
  template struct JacobiMatrix<T>;                                                                \
  template JacobiMatrix<DoubleDouble> widen<T>(const JacobiMatrix<T>&);                           \
  template DiscreteMeasure<T> refinement_measure<T>(const MapFamily&, int, const T&, ExecPolicy); \
  template JacobiMatrix<T> stieltjes_lanczos<T>(const DiscreteMeasure<T>&, int, ExecPolicy);      \
  template JacobiRecovery<T> jacobi_for_gamma<T>(const MapFamily&, int, const JacobiControl&,     \
                                                 ExecPolicy);                                     \
  template T opoly_eval<T>(const JacobiMatrix<T>&, int, const T&);                                \
  template std::pair<T, T> opoly_eval_with_derivative<T>(const JacobiMatrix<T>&, int, const T&);  \
  template ZeroSet<T> eigen_zeros<T>(const JacobiMatrix<T>&, int, const EigenOptions&);           \
  template DiscreteMeasure<T> gauss_measure<T>(const JacobiMatrix<T>&, int, const EigenOptions&); \
  template T integrate_polynomial<T>(const JacobiMatrix<T>&, std::span<const T>);                 \
  template T integrate_polynomial<T>(const DiscreteMeasure<T>&, std::span<const T>);

CANTOR_INSTANTIATE_JACOBI(double)
CANTOR_INSTANTIATE_JACOBI(DoubleDouble)

#undef CANTOR_INSTANTIATE_JACOBI

}  // namespace cantor
