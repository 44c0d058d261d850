#pragma once

// Zero-spacing quantities and the inequalities they satisfy for
// rho_{K(gamma)}:
//
//   M_n                  minimal distance between distinct zeros of P_n
//   d(A, B)              distance between two finite sets
//   d(Z_l, Z_m) <= M_n                             (l > m > n > 1)
//   d(Z_{2^{1+k}}, Y_{2^{1+k}}) <= d(Z_{2^{1+k}}, Z_{2^{1+k'}})     (k > k')
//   M_r <= min_i |x_{i+2,n} - x_{i,n}|             (r >= n, with x_0 = 0, x_{n+1} = 1)
//   branch-difference chain >= u(g1 u(... u(g_n/2))) >= l_{1,n+1} >= delta_{n+1}
//   delta_{s+2} <= M_n <= (pi^2/4) delta_{s-2}     (2^{s-1} <= n < 2^s)
//   c^2 delta_s <= M_n <= pi^2/(4c^2) delta_s      (c = inf gamma_k)

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cantor/exact_poly.hpp"
#include "cantor/geometry.hpp"
#include "cantor/jacobi.hpp"

namespace cantor {

struct SpacingResult {
  double value = 0.0;
  std::size_t left_index = 0;  ///< 0-based index of the left zero of the attaining pair
};

/// M_n for a sorted point list (|points| >= 2).
template <Real T>
T min_spacing(std::span<const T> points);

template <Real T>
T min_spacing(const ZeroSet<T>& z) {
  return min_spacing<T>(std::span<const T>(z.points));
}

/// Index of the left point of the first pair attaining the minimum.
template <Real T>
std::size_t min_spacing_index(std::span<const T> points);

/// d(A, B) for sorted nonempty lists, by a linear merge.
template <Real T>
T set_distance(std::span<const T> a, std::span<const T> b);

/// Largest distance between consecutive sorted points.
template <Real T>
T max_spacing(std::span<const T> points);

/// Outcome of one inequality check: lhs <= rhs.
struct BoundCheck {
  std::string name;
  std::string detail;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
  bool informational = false;  ///< recorded but not part of the pass/fail verdict
};

/// Caches eigen-solved zero sets of a Jacobi matrix by degree.
class ZeroCache {
 public:
  explicit ZeroCache(const JacobiMatrix<double>& j, EigenOptions options = {})
      : j_(j), options_(options) {}

  const ZeroSet<double>& zeros(int n);
  [[nodiscard]] bool any_escalated() const noexcept { return escalated_; }
  [[nodiscard]] const JacobiMatrix<double>& matrix() const noexcept { return j_; }

 private:
  const JacobiMatrix<double>& j_;
  EigenOptions options_;
  std::vector<std::optional<ZeroSet<double>>> cache_;
  bool escalated_ = false;
};

/// d(Z_l, Z_m) <= M_n; requires l > m > n > 1 and l <= valid_length.
BoundCheck verify_interlacing_bound(ZeroCache& zeros, int l, int m, int n);
BoundCheck verify_interlacing_bound(const JacobiMatrix<double>& j, int l, int m, int n);

/// d(Z_{2^{1+k}}, Y_{2^{1+k}}) <= d(Z_{2^{1+k}}, Z_{2^{1+k'}}) on exact sets;
/// requires k > k' >= 0.
template <Real T>
BoundCheck verify_critical_bound(const MapFamily& fam, int k, int k_prime);

/// Z_{2^{1+k'}} subset of Y_{2^{1+k}} within `tol` (each point of the
/// smaller set within tol of the critical set); requires k > k' >= 0.
template <Real T>
BoundCheck verify_critical_containment(const MapFamily& fam, int k, int k_prime, double tol);

/// M_r <= min_{0<=i<=n-1} |x_{i+2,n} - x_{i,n}| with x_{0,n} = 0, x_{n+1,n} = 1;
/// requires r > 1, r >= n, r <= valid_length.
BoundCheck verify_second_neighbor_bound(ZeroCache& zeros, int r, int n);
BoundCheck verify_second_neighbor_bound(const JacobiMatrix<double>& j, int r, int n);

/// One instance of the branch-difference chain.
struct BranchLemmaInstance {
  BranchWord word;
  double min_difference = 0.0;  ///< min over t~ in {0, gamma_n} of |g(t~) - g(gamma_n/2)|
  double chain_u = 0.0;         ///< u(gamma_1 u(... u(gamma_n/2)))
  double leftmost = 0.0;        ///< l_{1,n+1}
  double delta = 0.0;           ///< delta_{n+1}
  bool pass = false;
};

template <Real T>
BranchLemmaInstance check_branch_chain(const MapFamily& fam, const BranchWord& word);

struct BranchLemmaReport {
  int n = 0;
  int trials = 0;
  int violations = 0;
  double worst_margin = 0.0;  ///< min over trials of min_difference / chain_u
  BoundCheck critical_chain;  ///< d(Z_{2^n}, Y_{2^n}) >= min over all words and endpoints
};

/// `trials` random words (seeded, reproducible) plus the exhaustive
/// critical-distance chain for level n.
template <Real T>
BranchLemmaReport verify_branch_lemma(const MapFamily& fam, int n, int trials, std::uint64_t seed);

/// Interlacing of Z_s inside Z_r (s < r): every zero of P_s lies strictly
/// inside (min Z_r, max Z_r) and each [x_{j,r}, x_{j+1,r}] holds at most one.
struct InterlacingResult {
  int s = 0;
  int r = 0;
  bool pass = false;
  std::string detail;
};
InterlacingResult check_interlacing(std::span<const double> zeros_s, std::span<const double> zeros_r);

/// One row of the spacing report.
struct SpacingRow {
  int n = 0;
  int s = 0;
  double m_n = 0.0;
  std::size_t argmin = 0;  ///< left index of the attaining pair (0-based)
  double lower_eq1 = 0.0;
  double upper_eq1 = 0.0;
  std::optional<double> lower_eq2;
  std::optional<double> upper_eq2;
  bool pass_eq1 = false;
  std::optional<bool> pass_eq2;
  double margin_lo = 0.0;  ///< M_n / lower_eq1
  double margin_hi = 0.0;  ///< upper_eq1 / M_n
  bool exact = false;      ///< n is dyadic and M_n came from exact zeros
  std::optional<double> cross_check;  ///< max |exact - eigen| when both were computed
};

struct SpacingReport {
  std::vector<SpacingRow> rows;
  bool precision_notice = false;  ///< some spacing approached double resolution
  [[nodiscard]] bool all_pass() const;
};

struct SpacingOptions {
  std::optional<double> c;           ///< declared inf gamma_k
  double cross_check_tol = 1e-9;     ///< exact vs eigensolve zeros at dyadic degrees
  EigenOptions eigen{};
};

/// s with 2^{s-1} <= n < 2^s.
int spacing_level(int n);

SpacingReport spacing_report(const MapFamily& fam, const JacobiMatrix<double>& j,
                             std::span<const int> degrees, const SpacingOptions& options = {});
SpacingReport spacing_report(const MapFamily& fam, ZeroCache& zeros, std::span<const int> degrees,
                             const SpacingOptions& options = {});

}  // namespace cantor
