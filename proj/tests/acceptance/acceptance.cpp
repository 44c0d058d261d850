// Acceptance run: one PASS/FAIL line per criterion, exit 0 only if all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "cantor/errors.hpp"
#include "cantor/spacing.hpp"
#include "oracles.hpp"

using namespace cantor;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2over4 = kPi * kPi / 4.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const MapFamily& cheb() {
  static const MapFamily f(GammaSequence::constant("1/4", GammaDomain::ChebyshevLimit));
  return f;
}
const MapFamily& sixth() {
  static const MapFamily f(GammaSequence::constant("1/6"));
  return f;
}
const MapFamily& periodic() {
  static const MapFamily f(GammaSequence::parse("periodic:1/6,1/5"));
  return f;
}

// K = 256 at the depth budget N = 10.
const JacobiMatrix<double>& matrix_for(const MapFamily& fam) {
  static std::vector<std::pair<const MapFamily*, JacobiMatrix<double>>> cache;
  for (const auto& [f, j] : cache)
    if (f == &fam) return j;
  cache.emplace_back(&fam, jacobi_for_gamma<double>(fam, 256, {1e-10, 10, 1}).matrix);
  return cache.back().second;
}

Outcome chebyshev_oracle() {
  double exact_err = 0.0;
  for (int n = 1; n <= 10; ++n) {
    const auto z = exact_zeros<double>(cheb(), n);
    const auto want = oracle::chebyshev_zeros(1 << n);
    for (std::size_t i = 0; i < want.size(); ++i)
      exact_err = std::max(exact_err, static_cast<double>(std::abs(z.points[i] - want[i])));
  }
  const auto j = jacobi_for_gamma<double>(cheb(), 64, {1e-10, 8, 1}).matrix;
  double eigen_err = 0.0;
  for (int n = 1; n <= 6; ++n) {
    const auto z = eigen_zeros(j, 1 << n);
    const auto want = oracle::chebyshev_zeros(1 << n);
    for (std::size_t i = 0; i < want.size(); ++i)
      eigen_err = std::max(eigen_err, static_cast<double>(std::abs(z.points[i] - want[i])));
  }
  return {exact_err <= 1e-12 && eigen_err <= 1e-9,
          fmt("exact max err %.2e (tol 1e-12, n<=10); eigen max err %.2e (tol 1e-9, n<=6)", exact_err, eigen_err)};
}

Outcome jacobi_recovery() {
  const auto j = stieltjes_lanczos(refinement_measure(cheb(), 8, 0.0), 32);
  double err = 0.0;
  for (int k = 1; k <= 32; ++k) {
    err = std::max(err, std::abs(j.b_at(k) - 0.5));
    err = std::max(err, std::abs(j.a_at(k) - (k == 1 ? std::sqrt(0.125) : 0.25)));
  }
  return {j.valid_length == 32 && err <= 1e-10, fmt("K=32 at depth 8: max coefficient err %.2e (tol 1e-10)", err)};
}

Outcome spacing_sweep(bool with_c) {
  std::vector<int> degrees;
  for (int n = 2; n <= 256; ++n) degrees.push_back(n);
  std::string detail;
  bool pass = true;
  for (const MapFamily* fam : {&sixth(), &periodic()}) {
    SpacingOptions opt;
    if (with_c) opt.c = fam->gamma().infimum<double>();
    const auto r = spacing_report(*fam, matrix_for(*fam), degrees, opt);
    int failures = 0;
    double lo = INFINITY, hi = INFINITY, lo2 = INFINITY, hi2 = INFINITY;
    for (const auto& row : r.rows) {
      const bool ok = with_c ? row.pass_eq2.value_or(false) : row.pass_eq1;
      if (!ok) ++failures;
      lo = std::min(lo, row.margin_lo);
      hi = std::min(hi, row.margin_hi);
      if (with_c) {
        lo2 = std::min(lo2, row.m_n / *row.lower_eq2);
        hi2 = std::min(hi2, *row.upper_eq2 / row.m_n);
      }
    }
    pass = pass && failures == 0 && r.rows.size() == 255;
    if (!detail.empty()) detail += "; ";
    detail += fam->gamma().descriptor().to_string() + fmt(": %d failures, min margins lo %.3g hi %.3g", failures,
                                             with_c ? lo2 : lo, with_c ? hi2 : hi);
  }
  return {pass, detail};
}

Outcome interlacing_suite() {
  int violations = 0, checks = 0;
  for (const MapFamily* fam : {&sixth(), &periodic()}) {
    ZeroCache cache(matrix_for(*fam));
    for (int s = 2; s < 64; ++s)
      for (int r = s + 1; r <= 64; ++r) {
        ++checks;
        if (!check_interlacing(cache.zeros(s).points, cache.zeros(r).points).pass) ++violations;
      }
  }
  return {violations == 0, fmt("%d pairs 2<=s<r<=64 on two sequences, %d violations", checks, violations)};
}

Outcome distance_triples() {
  oracle::Gen g(2024);
  int violations = 0;
  double worst = INFINITY;
  ZeroCache cache(matrix_for(sixth()));
  for (int t = 0; t < 50; ++t) {
    const int l = g.integer(4, 128);
    const int m = g.integer(3, l - 1);
    const int n = g.integer(2, m - 1);
    const auto c = verify_interlacing_bound(cache, l, m, n);
    if (!c.pass) ++violations;
    worst = std::min(worst, c.rhs / std::max(c.lhs, 1e-300));
  }
  return {violations == 0, fmt("50 random triples, l<=128: %d violations, min rhs/lhs %.3g", violations, worst)};
}

Outcome critical_suite() {
  int violations = 0, checks = 0;
  for (const MapFamily* fam : {&sixth(), &periodic()})
    for (int k = 1; k <= 5; ++k)
      for (int kp = 0; kp < k; ++kp) {
        checks += 2;
        if (!verify_critical_containment<double>(*fam, k, kp, 1e-12).pass) ++violations;
        if (!verify_critical_bound<double>(*fam, k, kp).pass) ++violations;
      }
  return {violations == 0, fmt("k<=5, k'<k on two sequences: %d checks, %d violations", checks, violations)};
}

Outcome branch_chain() {
  oracle::Gen g(7);
  int violations = 0;
  double worst = INFINITY;
  for (int t = 0; t < 1000; ++t) {
    const MapFamily fam(GammaSequence::parse(g.gamma_descriptor()));
    const int n = g.integer(1, 8);
    const auto inst = check_branch_chain<double>(fam, BranchWord::parse(g.word(n)));
    if (!inst.pass) ++violations;
    worst = std::min(worst, inst.min_difference / inst.chain_u);
  }
  return {violations == 0, fmt("1000 random instances: %d violations, min ratio %.6f", violations, worst)};
}

Outcome leftmost_scale() {
  int violations = 0;
  double lo = INFINITY, hi = INFINITY;
  const MapFamily small(GammaSequence::parse("list:0.05,0.1,0.15,0.2,0.24"));
  for (const MapFamily* fam : {&sixth(), &periodic(), &small}) {
    for (int s = 0; s <= 24; ++s) {
      double l, d;
      bool ok;
      if (s > 14) {
        const auto lq = leftmost_length<DoubleDouble>(fam->gamma(), s);
        const auto dq = fam->gamma().delta<DoubleDouble>(s);
        ok = dq <= lq && lq <= DoubleDouble(kPi2over4) * dq;
        l = lq.to_double();
        d = dq.to_double();
      } else {
        l = leftmost_length<double>(fam->gamma(), s);
        d = fam->gamma().delta<double>(s);
        ok = d <= l && l <= kPi2over4 * d;
      }
      if (!ok) ++violations;
      lo = std::min(lo, l / d);
      hi = std::min(hi, kPi2over4 * d / l);
    }
  }
  return {violations == 0, fmt("s<=24 on three sequences: %d violations, min l/delta %.4f, min bound/l %.4f",
                               violations, lo, hi)};
}

Outcome gauss_consistency() {
  double err = 0.0;
  for (const MapFamily* fam : {&sixth(), &periodic()}) {
    const auto& j = matrix_for(*fam);
    for (int r : {4, 8, 16}) {
      const auto mu = gauss_measure(j, r);
      const auto back = stieltjes_lanczos(mu, r - 1);
      for (int k = 1; k < r; ++k) {
        err = std::max(err, std::abs(back.b_at(k) - j.b_at(k)));
        err = std::max(err, std::abs(back.a_at(k) - j.a_at(k)));
      }
    }
  }
  return {err <= 1e-12, fmt("r in {4,8,16} on two sequences: max err %.2e (tol 1e-12)", err)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"Chebyshev oracle", chebyshev_oracle},
      {"Jacobi recovery", jacobi_recovery},
      {"spacing sweep, scale-shifted bounds", [] { return spacing_sweep(false); }},
      {"spacing sweep, infimum bounds", [] { return spacing_sweep(true); }},
      {"interlacing", interlacing_suite},
      {"zero-set distance triples", distance_triples},
      {"critical-set containment and distance", critical_suite},
      {"branch-difference chain", branch_chain},
      {"leftmost interval scale", leftmost_scale},
      {"Gauss consistency", gauss_consistency},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("criterion %zu %s: %s (%s) [%.2fs]\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
