#include "cantor/kernels.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cantor/errors.hpp"
#include "cantor/geometry.hpp"
#include "detail/u_arg.hpp"

namespace cantor {

int parallel_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace kernels {

namespace {

constexpr std::ptrdiff_t kDotBlock = 256;

template <Real T>
T tiny_pivot() {
  return T(std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon());
}

template <Real T>
std::vector<T> pullback_parallel(const GammaSequence& gamma, int level, const T& inner) {
  // Same breadth-first arithmetic as the serial version, one parallel sweep per level.
  std::vector<detail::UArg<T>> args{detail::inner_arg(inner)};
  for (int l = level; l > 1; --l) {
    const T g = gamma.value<T>(l - 1);
    std::vector<detail::UArg<T>> next(args.size() * 2);
    const auto count = static_cast<std::ptrdiff_t>(args.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      const T w = detail::u_of(args[static_cast<std::size_t>(i)]);
      next[2 * static_cast<std::size_t>(i)] = detail::next_arg(g, w, Letter::L);
      next[2 * static_cast<std::size_t>(i) + 1] = detail::next_arg(g, w, Letter::R);
    }
    args = std::move(next);
  }
  std::vector<T> out(args.size() * 2);
  const auto count = static_cast<std::ptrdiff_t>(args.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const T w = detail::u_of(args[static_cast<std::size_t>(i)]);
    out[2 * static_cast<std::size_t>(i)] = w;
    out[2 * static_cast<std::size_t>(i) + 1] = T(1.0) - w;
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <Real T>
std::vector<T> pullback_serial(const GammaSequence& gamma, int level, const T& inner) {
  // Breadth-first over levels n, n-1, ..., 1; every node performs the same
  // per-level arithmetic as the word-wise composition.
  std::vector<detail::UArg<T>> args{detail::inner_arg(inner)};
  for (int l = level; l > 1; --l) {
    const T g = gamma.value<T>(l - 1);
    std::vector<detail::UArg<T>> next;
    next.reserve(args.size() * 2);
    for (const auto& a : args) {
      const T w = detail::u_of(a);
      next.push_back(detail::next_arg(g, w, Letter::L));
      next.push_back(detail::next_arg(g, w, Letter::R));
    }
    args = std::move(next);
  }
  std::vector<T> out;
  out.reserve(args.size() * 2);
  for (const auto& a : args) {
    const T w = detail::u_of(a);
    out.push_back(w);
    out.push_back(T(1.0) - w);
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <Real T>
T bisect_one(std::span<const T> diag, std::span<const T> offdiag_sq, int index, T lo, T hi,
             const T& abs_tol, int max_iterations) {
  for (int it = 0; it < max_iterations; ++it) {
    const T mid = (lo + hi) / T(2.0);
    if (hi - lo <= abs_tol || !(mid > lo && mid < hi)) return mid;
    if (sturm_count(diag, offdiag_sq, mid) > index) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  throw NumericalFailure("eigenvalue bisection did not converge for index " + std::to_string(index));
}

}  // namespace

template <Real T>
std::vector<T> branch_pullback(const GammaSequence& gamma, int level, const T& inner,
                               ExecPolicy policy) {
  if (level < 1 || level > 30) throw InvalidInput("pullback level must be in [1, 30]");
  return policy == ExecPolicy::Parallel ? pullback_parallel(gamma, level, inner)
                                        : pullback_serial(gamma, level, inner);
}

template <Real T>
int sturm_count(std::span<const T> diag, std::span<const T> offdiag_sq, const T& x) {
  const T pivmin = tiny_pivot<T>();
  int count = 0;
  T q = diag[0] - x;
  for (std::size_t i = 0;; ++i) {
    if (absval(q) < pivmin) q = -pivmin;
    if (q < T(0.0)) ++count;
    if (i + 1 == diag.size()) break;
    q = (diag[i + 1] - x) - offdiag_sq[i] / q;
  }
  return count;
}

template <Real T>
std::vector<T> bisect_eigenvalues(std::span<const T> diag, std::span<const T> offdiag,
                                  const T& abs_tol, int max_iterations, ExecPolicy policy) {
  const std::size_t n = diag.size();
  if (n == 0) return {};
  if (offdiag.size() + 1 < n) throw InvalidInput("tridiagonal off-diagonal too short");
  std::vector<T> offsq(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i + 1 < n; ++i) offsq[i] = offdiag[i] * offdiag[i];

  // Gershgorin enclosure, widened slightly so both ends are strict.
  T lo = diag[0];
  T hi = diag[0];
  for (std::size_t i = 0; i < n; ++i) {
    T r(0.0);
    if (i > 0) r += absval(offdiag[i - 1]);
    if (i + 1 < n) r += absval(offdiag[i]);
    if (diag[i] - r < lo) lo = diag[i] - r;
    if (diag[i] + r > hi) hi = diag[i] + r;
  }
  const T pad = (hi - lo) * T(1e-14) + tiny_pivot<T>();
  lo -= pad;
  hi += pad;

  std::vector<T> eig(n);
  const std::span<const T> sq(offsq);
  const auto count = static_cast<std::ptrdiff_t>(n);
  if (policy == ExecPolicy::Parallel) {
    // Exceptions may not escape an OpenMP region; record and rethrow.
    bool failed = false;
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
      try {
        eig[static_cast<std::size_t>(k)] =
            bisect_one(diag, sq, static_cast<int>(k), lo, hi, abs_tol, max_iterations);
      } catch (const NumericalFailure&) {
#pragma omp atomic write
        failed = true;
      }
    }
    if (failed) throw NumericalFailure("eigenvalue bisection did not converge");
  } else {
    for (std::ptrdiff_t k = 0; k < count; ++k) {
      eig[static_cast<std::size_t>(k)] =
          bisect_one(diag, sq, static_cast<int>(k), lo, hi, abs_tol, max_iterations);
    }
  }
  return eig;
}

template <Real T>
T dot(std::span<const T> x, std::span<const T> y, ExecPolicy policy) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  const std::ptrdiff_t blocks = (n + kDotBlock - 1) / kDotBlock;
  std::vector<T> partial(static_cast<std::size_t>(blocks), T(0.0));
  auto block_sum = [&](std::ptrdiff_t b) {
    T s(0.0);
    const std::ptrdiff_t end = std::min(n, (b + 1) * kDotBlock);
    for (std::ptrdiff_t i = b * kDotBlock; i < end; ++i) {
      s += x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)];
    }
    partial[static_cast<std::size_t>(b)] = s;
  };
  if (policy == ExecPolicy::Parallel && blocks > 1) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < blocks; ++b) block_sum(b);
  } else {
    for (std::ptrdiff_t b = 0; b < blocks; ++b) block_sum(b);
  }
  T total(0.0);
  for (const T& p : partial) total += p;
  return total;
}

#define CANTOR_INSTANTIATE_KERNELS(T)                                                              \
  template std::vector<T> branch_pullback<T>(const GammaSequence&, int, const T&, ExecPolicy);     \
  template int sturm_count<T>(std::span<const T>, std::span<const T>, const T&);                   \
  template std::vector<T> bisect_eigenvalues<T>(std::span<const T>, std::span<const T>, const T&,  \
                                                int, ExecPolicy);                                  \
  template T dot<T>(std::span<const T>, std::span<const T>, ExecPolicy);

CANTOR_INSTANTIATE_KERNELS(double)
CANTOR_INSTANTIATE_KERNELS(DoubleDouble)

#undef CANTOR_INSTANTIATE_KERNELS

}  // namespace kernels
}  // namespace cantor
