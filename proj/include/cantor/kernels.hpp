#pragma once

// Data-parallel inner loops. Each kernel has an OpenMP implementation and a
// plain serial reference with the same contract; tests assert that both
// agree bit for bit and the benchmark target compares their throughput.
// Without OpenMP the parallel variants run serially.

#include <cstdint>
#include <span>
#include <vector>

#include "cantor/gamma.hpp"
#include "cantor/real.hpp"

namespace cantor {

enum class ExecPolicy { Serial, Parallel };

/// Number of OpenMP threads the parallel kernels will use (1 without OpenMP).
int parallel_threads();

namespace kernels {

/// All 2^level branch values at a common innermost argument t~ in
/// [0, gamma_level], in increasing order.
///
/// Parallel: one independent composition per position (word decoded from
/// its position), written straight into its sorted slot.
/// Serial: level-by-level doubling of the value set followed by a sort;
/// a different evaluation order, which is what makes it a useful check.
template <Real T>
std::vector<T> branch_pullback(const GammaSequence& gamma, int level, const T& inner,
                               ExecPolicy policy);

/// Number of eigenvalues of the symmetric tridiagonal matrix (diag, offdiag)
/// that are strictly less than x (Sturm sequence sign count).
template <Real T>
int sturm_count(std::span<const T> diag, std::span<const T> offdiag_sq, const T& x);

/// All eigenvalues of the tridiagonal matrix by independent bisection per
/// index, sorted ascending. Bisection stops when the bracket is narrower
/// than abs_tol or cannot be split further; the midpoint is returned.
/// Throws NumericalFailure if max_iterations is exhausted first.
template <Real T>
std::vector<T> bisect_eigenvalues(std::span<const T> diag, std::span<const T> offdiag,
                                  const T& abs_tol, int max_iterations, ExecPolicy policy);

/// sum_i x[i] * y[i] with a fixed reduction order (deterministic under any
/// schedule: per-block partial sums, blocks combined in index order).
template <Real T>
T dot(std::span<const T> x, std::span<const T> y, ExecPolicy policy);

}  // namespace kernels
}  // namespace cantor
