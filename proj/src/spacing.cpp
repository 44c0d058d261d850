#include "cantor/spacing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "cantor/errors.hpp"
#include "cantor/geometry.hpp"

namespace cantor {

template <Real T>
T min_spacing(std::span<const T> points) {
  return points[min_spacing_index(points) + 1] - points[min_spacing_index(points)];
}

template <Real T>
std::size_t min_spacing_index(std::span<const T> points) {
  if (points.size() < 2) throw InvalidInput("minimal spacing needs at least two zeros");
  std::size_t best = 0;
  T gap = points[1] - points[0];
  for (std::size_t i = 1; i + 1 < points.size(); ++i) {
    const T g = points[i + 1] - points[i];
    if (g < gap) {
      gap = g;
      best = i;
    }
  }
  return best;
}

template <Real T>
T max_spacing(std::span<const T> points) {
  if (points.size() < 2) throw InvalidInput("spacing needs at least two points");
  T gap = points[1] - points[0];
  for (std::size_t i = 1; i + 1 < points.size(); ++i) gap = std::max(gap, points[i + 1] - points[i]);
  return gap;
}

template <Real T>
T set_distance(std::span<const T> a, std::span<const T> b) {
  if (a.empty() || b.empty()) throw InvalidInput("set distance needs nonempty sets");
  std::size_t i = 0, j = 0;
  T best = absval(a[0] - b[0]);
  while (i < a.size() && j < b.size()) {
    const T d = absval(a[i] - b[j]);
    if (d < best) best = d;
    if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------

const ZeroSet<double>& ZeroCache::zeros(int n) {
  if (n < 1 || n > j_.valid_length) {
    throw InvalidInput("degree " + std::to_string(n) + " outside the certified Jacobi range");
  }
  if (cache_.size() <= static_cast<std::size_t>(n)) cache_.resize(static_cast<std::size_t>(n) + 1);
  auto& slot = cache_[static_cast<std::size_t>(n)];
  if (!slot) {
    auto result = eigen_zeros_auto(j_, n, options_);
    escalated_ = escalated_ || result.escalated;
    slot = std::move(result.zeros);
  }
  return *slot;
}

BoundCheck verify_interlacing_bound(ZeroCache& zeros, int l, int m, int n) {
  if (!(l > m && m > n && n > 1)) throw InvalidInput("interlacing bound needs l > m > n > 1");
  const auto& zl = zeros.zeros(l).points;
  const auto& zm = zeros.zeros(m).points;
  const auto& zn = zeros.zeros(n).points;
  BoundCheck c;
  c.name = "zero-set-distance";
  c.detail = "d(Z_" + std::to_string(l) + ", Z_" + std::to_string(m) + ") <= M_" + std::to_string(n);
  c.lhs = set_distance<double>(zl, zm);
  c.rhs = min_spacing<double>(std::span<const double>(zn));
  c.pass = c.lhs <= c.rhs;
  return c;
}

BoundCheck verify_interlacing_bound(const JacobiMatrix<double>& j, int l, int m, int n) {
  ZeroCache cache(j);
  return verify_interlacing_bound(cache, l, m, n);
}

template <Real T>
BoundCheck verify_critical_bound(const MapFamily& fam, int k, int k_prime) {
  if (!(k > k_prime && k_prime >= 0)) throw InvalidInput("critical bound needs k > k' >= 0");
  const auto z = exact_zeros<T>(fam, 1 + k);
  const auto y = critical_set<T>(fam, 1 + k);
  const auto zp = exact_zeros<T>(fam, 1 + k_prime);
  BoundCheck c;
  c.name = "critical-distance";
  c.detail = "d(Z_" + std::to_string(1 << (1 + k)) + ", Y_" + std::to_string(1 << (1 + k)) + ") <= d(Z_" +
             std::to_string(1 << (1 + k)) + ", Z_" + std::to_string(1 << (1 + k_prime)) + ")";
  c.lhs = to_double(set_distance<T>(z.points, y.points));
  c.rhs = to_double(set_distance<T>(z.points, zp.points));
  c.pass = c.lhs <= c.rhs;
  return c;
}

template <Real T>
BoundCheck verify_critical_containment(const MapFamily& fam, int k, int k_prime, double tol) {
  if (!(k > k_prime && k_prime >= 0)) throw InvalidInput("critical containment needs k > k' >= 0");
  const auto zp = exact_zeros<T>(fam, 1 + k_prime);
  const auto y = critical_set<T>(fam, 1 + k);
  BoundCheck c;
  c.name = "critical-containment";
  c.detail = "Z_" + std::to_string(1 << (1 + k_prime)) + " in Y_" + std::to_string(1 << (1 + k));
  // Largest distance from a point of Z' to the critical set.
  T worst(0.0);
  for (const T& p : zp.points) {
    const std::span<const T> single(&p, 1);
    worst = std::max(worst, set_distance<T>(single, y.points));
  }
  c.lhs = to_double(worst);
  c.rhs = tol;
  c.pass = c.lhs <= c.rhs;
  return c;
}

BoundCheck verify_second_neighbor_bound(ZeroCache& zeros, int r, int n) {
  if (!(r > 1 && r >= n && n >= 1)) throw InvalidInput("second-neighbour bound needs r > 1, r >= n >= 1");
  const auto& zr = zeros.zeros(r).points;
  const auto& zn = zeros.zeros(n).points;
  // x_{0,n} and x_{n+1,n} are the ends of the support, 0 and 1.
  std::vector<double> ext;
  ext.reserve(zn.size() + 2);
  ext.push_back(0.0);
  ext.insert(ext.end(), zn.begin(), zn.end());
  ext.push_back(1.0);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 2 < ext.size(); ++i) best = std::min(best, ext[i + 2] - ext[i]);
  BoundCheck c;
  c.name = "second-neighbour";
  c.detail = "M_" + std::to_string(r) + " <= min |x_{i+2," + std::to_string(n) + "} - x_{i," + std::to_string(n) + "}|";
  c.lhs = min_spacing<double>(std::span<const double>(zr));
  c.rhs = best;
  c.pass = c.lhs <= c.rhs;
  return c;
}

BoundCheck verify_second_neighbor_bound(const JacobiMatrix<double>& j, int r, int n) {
  ZeroCache cache(j);
  return verify_second_neighbor_bound(cache, r, n);
}

template <Real T>
BranchLemmaInstance check_branch_chain(const MapFamily& fam, const BranchWord& word) {
  const auto& gamma = fam.gamma();
  const int n = word.length();
  const T gn = gamma.value<T>(n);
  const T half = gn / T(2.0);
  const T d0 = absval(branch_difference<T>(gamma, word, T(0.0), half));
  const T d1 = absval(branch_difference<T>(gamma, word, gn, half));
  const T min_diff = std::min(d0, d1);
  const T chain = branch_value_inner<T>(gamma, BranchWord::all_left(n), half);
  const T left = leftmost_length<T>(gamma, n + 1);
  const T del = gamma.delta<T>(n + 1);
  BranchLemmaInstance inst{word, to_double(min_diff), to_double(chain), to_double(left), to_double(del), false};
  inst.pass = min_diff >= chain && chain >= left && left >= del;
  return inst;
}

template <Real T>
BranchLemmaReport verify_branch_lemma(const MapFamily& fam, int n, int trials, std::uint64_t seed) {
  if (n < 1) throw InvalidInput("branch lemma needs n >= 1");
  if (trials < 0) throw InvalidInput("trial count must be >= 0");
  BranchLemmaReport rep;
  rep.n = n;
  rep.trials = trials;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  for (int t = 0; t < trials; ++t) {
    std::vector<Letter> letters(static_cast<std::size_t>(n));
    for (auto& l : letters) l = coin(rng) ? Letter::R : Letter::L;
    const auto inst = check_branch_chain<T>(fam, BranchWord(std::move(letters)));
    if (!inst.pass) ++rep.violations;
    rep.worst_margin = std::min(rep.worst_margin, inst.min_difference / inst.chain_u);
  }

  // d(Z_{2^n}, Y_{2^n}) >= min over every word and endpoint of the same difference.
  const auto& gamma = fam.gamma();
  const T gn = gamma.value<T>(n);
  const T half = gn / T(2.0);
  T min_all = std::numeric_limits<double>::infinity();
  const std::uint64_t words = std::uint64_t{1} << n;
  for (std::uint64_t p = 0; p < words; ++p) {
    const auto w = BranchWord::from_position(p, n);
    min_all = std::min(min_all, absval(branch_difference<T>(gamma, w, T(0.0), half)));
    min_all = std::min(min_all, absval(branch_difference<T>(gamma, w, gn, half)));
  }
  const auto z = exact_zeros<T>(fam, n);
  const auto y = critical_set<T>(fam, n);
  BoundCheck& c = rep.critical_chain;
  c.name = "critical-chain";
  c.detail = "min branch difference <= d(Z_" + std::to_string(1 << n) + ", Y_" + std::to_string(1 << n) + ")";
  c.lhs = to_double(min_all);
  c.rhs = to_double(set_distance<T>(z.points, y.points));
  c.pass = min_all <= set_distance<T>(z.points, y.points);
  return rep;
}

InterlacingResult check_interlacing(std::span<const double> zeros_s, std::span<const double> zeros_r) {
  InterlacingResult res;
  res.s = static_cast<int>(zeros_s.size());
  res.r = static_cast<int>(zeros_r.size());
  if (zeros_s.empty() || zeros_r.size() < 2) throw InvalidInput("interlacing needs |Z_s| >= 1 and |Z_r| >= 2");
  if (!(zeros_s.front() > zeros_r.front() && zeros_s.back() < zeros_r.back())) {
    res.detail = "zeros of P_s not strictly inside the zero hull of P_r";
    return res;
  }
  // Walk both sorted lists; count zeros of P_s per closed interval [x_j, x_{j+1}].
  std::size_t i = 0;
  for (std::size_t j = 0; j + 1 < zeros_r.size(); ++j) {
    while (i < zeros_s.size() && zeros_s[i] < zeros_r[j]) ++i;
    std::size_t k = i;
    int inside = 0;
    while (k < zeros_s.size() && zeros_s[k] <= zeros_r[j + 1]) {
      ++inside;
      ++k;
    }
    if (inside > 1) {
      res.detail = "interval " + std::to_string(j + 1) + " of Z_r holds " + std::to_string(inside) + " zeros of P_s";
      return res;
    }
  }
  res.pass = true;
  return res;
}

// ---------------------------------------------------------------------------

int spacing_level(int n) {
  if (n < 1) throw InvalidInput("degree must be >= 1");
  int s = 0;
  while ((1LL << s) <= n) ++s;
  return s;
}

bool SpacingReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const SpacingRow& r) {
    return r.pass_eq1 && r.pass_eq2.value_or(true);
  });
}

SpacingReport spacing_report(const MapFamily& fam, const JacobiMatrix<double>& j, std::span<const int> degrees,
                             const SpacingOptions& options) {
  ZeroCache cache(j, options.eigen);
  return spacing_report(fam, cache, degrees, options);
}

SpacingReport spacing_report(const MapFamily& fam, ZeroCache& zeros, std::span<const int> degrees,
                             const SpacingOptions& options) {
  const auto& gamma = fam.gamma();
  if (options.c) {
    if (!(*options.c > 0.0)) throw InvalidInput("declared c must be positive");
    if (*options.c > gamma.infimum<double>()) throw InvalidInput("declared c exceeds inf gamma_k");
  }
  constexpr double kQuarterPiSq = std::numbers::pi * std::numbers::pi / 4.0;
  SpacingReport rep;
  std::vector<int> sorted(degrees.begin(), degrees.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (int n : sorted) {
    if (n < 2) throw InvalidInput("spacing report degrees must be > 1");
    SpacingRow row;
    row.n = n;
    row.s = spacing_level(n);
    const auto& eig = zeros.zeros(n).points;
    const bool dyadic = (n & (n - 1)) == 0;
    if (dyadic) {
      const int m = std::countr_zero(static_cast<unsigned>(n));
      const auto exact = exact_zeros<double>(fam, m);
      double diff = 0.0;
      for (std::size_t i = 0; i < exact.points.size(); ++i) diff = std::max(diff, std::abs(exact.points[i] - eig[i]));
      row.cross_check = diff;
      row.exact = true;
      row.argmin = min_spacing_index<double>(exact.points);
      row.m_n = min_spacing<double>(std::span<const double>(exact.points));
    } else {
      row.argmin = min_spacing_index<double>(eig);
      row.m_n = min_spacing<double>(std::span<const double>(eig));
    }
    row.lower_eq1 = gamma.delta<double>(row.s + 2);
    row.upper_eq1 = kQuarterPiSq * gamma.delta<double>(row.s - 2);
    row.pass_eq1 = row.lower_eq1 <= row.m_n && row.m_n <= row.upper_eq1;
    row.margin_lo = row.m_n / row.lower_eq1;
    row.margin_hi = row.upper_eq1 / row.m_n;
    if (options.c) {
      const double c = *options.c;
      const double ds = gamma.delta<double>(row.s);
      row.lower_eq2 = c * c * ds;
      row.upper_eq2 = kQuarterPiSq / (c * c) * ds;
      row.pass_eq2 = *row.lower_eq2 <= row.m_n && row.m_n <= *row.upper_eq2;
    }
    if (row.cross_check && *row.cross_check > options.cross_check_tol) row.pass_eq1 = false;
    if (row.m_n < 1e3 * RealTraits<double>::epsilon()) rep.precision_notice = true;
    rep.rows.push_back(row);
  }
  rep.precision_notice = rep.precision_notice || zeros.any_escalated();
  return rep;
}

#define CANTOR_INSTANTIATE_SPACING(T)                                                               \
  template T min_spacing<T>(std::span<const T>);                                                    \
  template std::size_t min_spacing_index<T>(std::span<const T>);                                    \
  template T max_spacing<T>(std::span<const T>);                                                    \
  template T set_distance<T>(std::span<const T>, std::span<const T>);                               \
  template BoundCheck verify_critical_bound<T>(const MapFamily&, int, int);                         \
  template BoundCheck verify_critical_containment<T>(const MapFamily&, int, int, double);           \
  template BranchLemmaInstance check_branch_chain<T>(const MapFamily&, const BranchWord&);          \
  template BranchLemmaReport verify_branch_lemma<T>(const MapFamily&, int, int, std::uint64_t);

CANTOR_INSTANTIATE_SPACING(double)
CANTOR_INSTANTIATE_SPACING(DoubleDouble)

#undef CANTOR_INSTANTIATE_SPACING

}  // namespace cantor
