#pragma once

// Three-term recurrence machinery for rho_{K(gamma)}:
//
//   x P_n(x) = P_{n+1}(x) + b_{n+1} P_n(x) + a_n^2 P_{n-1}(x),  P_{-1} = 0, P_0 = 1.
//
// The coefficients are recovered numerically from the equal-weight
// refinement measures nu_N (the 2^N solutions of F_N(z) = a), zeros of
// arbitrary degree come from a Sturm-bisection eigensolver on the Jacobi
// matrix, and Gauss measures mu^(r) from the same matrix.

#include <optional>
#include <span>
#include <vector>

#include "cantor/errors.hpp"
#include "cantor/exact_poly.hpp"
#include "cantor/kernels.hpp"
#include "cantor/real.hpp"

namespace cantor {

/// Finite node/weight list; nodes strictly increasing, weights positive and
/// summing to 1 within 1e-12.
template <Real T>
struct DiscreteMeasure {
  std::vector<T> nodes;
  std::vector<T> weights;

  [[nodiscard]] std::size_t size() const noexcept { return nodes.size(); }
  [[nodiscard]] T total_mass() const;
  /// Throws InvalidInput when an invariant is violated.
  void validate() const;
};

/// Recurrence coefficients. b[k-1] = b_k and a[k-1] = a_k for k = 1..size();
/// P_0..P_valid_length are certified. a_{valid_length} may be 0 when the
/// underlying measure has exactly valid_length support points.
template <Real T>
struct JacobiMatrix {
  std::vector<T> a;
  std::vector<T> b;
  int valid_length = 0;

  [[nodiscard]] T a_at(int k) const { return a[static_cast<std::size_t>(k - 1)]; }
  [[nodiscard]] T b_at(int k) const { return b[static_cast<std::size_t>(k - 1)]; }
  /// Checks a_k > 0 (k < valid_length), a_k >= 0 at k = valid_length, and the
  /// support-in-[0,1] bounds 0 < b_k < 1, a_k < 1. Throws InvalidInput.
  void validate() const;
  /// Copy truncated to the first k coefficients.
  [[nodiscard]] JacobiMatrix truncated(int k) const;
};

template <Real T>
JacobiMatrix<DoubleDouble> widen(const JacobiMatrix<T>& j);

/// nu_N^a: the 2^N solutions of F_N(z) = a_target with weight 2^-N each.
/// Requires |a_target| < 1.
template <Real T>
DiscreteMeasure<T> refinement_measure(const MapFamily& fam, int depth, const T& a_target,
                                      ExecPolicy policy = ExecPolicy::Parallel);

/// Discretised Stieltjes procedure in its normalised (Lanczos) form on the
/// node/weight arrays, with full re-orthogonalisation. Returns b_1..b_K and
/// a_1..a_K. If a_k^2 is lost to rounding the result is truncated and
/// valid_length marks the last safe index.
template <Real T>
JacobiMatrix<T> stieltjes_lanczos(const DiscreteMeasure<T>& measure, int count,
                                  ExecPolicy policy = ExecPolicy::Parallel);

struct JacobiControl {
  double tolerance = 1e-10;  ///< max coefficient change between consecutive depths
  int max_depth = 12;        ///< depth budget N
  int min_depth = 1;         ///< start no shallower than this
};

/// Coefficient differences between the last two depths tried.
struct StabilizationStep {
  int depth = 0;
  std::vector<double> delta_a;
  std::vector<double> delta_b;
  [[nodiscard]] double max_delta() const;
};

template <Real T>
struct JacobiRecovery {
  JacobiMatrix<T> matrix;
  int depth = 0;  ///< refinement depth the returned coefficients come from
  StabilizationStep last_step;
};

/// Thrown by jacobi_for_gamma; carries the two last iterates.
class JacobiNonConvergence : public ConvergenceFailure {
 public:
  JacobiNonConvergence(const std::string& what, JacobiMatrix<double> previous,
                       JacobiMatrix<double> last, StabilizationStep step)
      : ConvergenceFailure(what),
        previous_(std::move(previous)),
        last_(std::move(last)),
        step_(std::move(step)) {}

  [[nodiscard]] const JacobiMatrix<double>& previous() const noexcept { return previous_; }
  [[nodiscard]] const JacobiMatrix<double>& last() const noexcept { return last_; }
  [[nodiscard]] const StabilizationStep& step() const noexcept { return step_; }

 private:
  JacobiMatrix<double> previous_;
  JacobiMatrix<double> last_;
  StabilizationStep step_;
};

/// Smallest depth N with K <= 2^{N-2} (and N >= control.min_depth).
int minimum_depth_for(int count);

/// Runs stieltjes_lanczos on refinement_measure(N, 0) for increasing N,
/// starting at minimum_depth_for(K), and compares coefficients 1..K with
/// depth N-1. Returns the depth-N matrix once the largest change is below
/// control.tolerance; throws JacobiNonConvergence past control.max_depth.
template <Real T>
JacobiRecovery<T> jacobi_for_gamma(const MapFamily& fam, int count, const JacobiControl& control = {},
                                   ExecPolicy policy = ExecPolicy::Parallel);

/// P_n(x) by the monic recurrence. Requires n <= valid_length.
template <Real T>
T opoly_eval(const JacobiMatrix<T>& j, int n, const T& x);

/// P_n(x) and P_n'(x) together (differentiated recurrence).
template <Real T>
std::pair<T, T> opoly_eval_with_derivative(const JacobiMatrix<T>& j, int n, const T& x);

struct EigenOptions {
  /// Bisection stops below rel_tol * (spectral width); 0 means bisect until
  /// the bracket cannot be split.
  double rel_tol = 0.0;
  int max_iterations = 0;  ///< 0: precision-dependent default
  ExecPolicy policy = ExecPolicy::Parallel;
};

/// Zeros of P_n: eigenvalues of the leading n x n block. 1 <= n <= valid_length.
template <Real T>
ZeroSet<T> eigen_zeros(const JacobiMatrix<T>& j, int n, const EigenOptions& options = {});

struct EscalatedZeros {
  ZeroSet<double> zeros;
  bool escalated = false;  ///< re-solved in double-double
};

/// eigen_zeros in double, re-run in double-double when two consecutive zeros
/// are closer than 1e3 * eps * (spectral width).
EscalatedZeros eigen_zeros_auto(const JacobiMatrix<double>& j, int n, const EigenOptions& options = {});

/// mu^(r): nodes = zeros of P_r, weights = squared first components of the
/// normalised eigenvectors (inverse iteration at each eigenvalue).
template <Real T>
DiscreteMeasure<T> gauss_measure(const JacobiMatrix<T>& j, int r, const EigenOptions& options = {});

/// Integral of the polynomial sum_i c_i x^i against the measure encoded by
/// the matrix: e_1^T pi(J) e_1 over the first min(size, degree/2 + 1) rows.
template <Real T>
T integrate_polynomial(const JacobiMatrix<T>& j, std::span<const T> coefficients);

/// Same integral against a discrete measure, for comparison.
template <Real T>
T integrate_polynomial(const DiscreteMeasure<T>& m, std::span<const T> coefficients);

}  // namespace cantor
