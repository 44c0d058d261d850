#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cantor/errors.hpp"
#include "cantor/exact_poly.hpp"
#include "cantor/geometry.hpp"
#include "oracles.hpp"

using namespace cantor;
using oracle::Big;

namespace {

const MapFamily kCheb(GammaSequence::constant("1/4", GammaDomain::ChebyshevLimit));
const MapFamily kSixth(GammaSequence::constant("1/6"));

Big big(const DoubleDouble& x) { return Big(x.hi()) + Big(x.lo()); }

std::vector<Big> big_gammas(const GammaSequence& g, int n) {
  std::vector<Big> out;
  for (int k = 1; k <= n; ++k) out.push_back(big(g.value<DoubleDouble>(k)));
  return out;
}

}  // namespace

TEST_CASE("single maps") {
  const double g = 1.0 / 6.0;
  CHECK(kSixth.f(1, 0.0) == 1.0);
  CHECK(kSixth.f(1, 1.0) == 1.0);
  CHECK(kSixth.f(1, 0.5) == doctest::Approx(1.0 - 1.0 / (2.0 * g)));
  CHECK(kSixth.f(2, 1.0) == doctest::Approx(1.0));
  CHECK(kSixth.f(2, -1.0) == doctest::Approx(1.0));
  CHECK(kSixth.f_derivative(1, 0.5) == 0.0);
  CHECK(kSixth.f_derivative(2, 0.0) == 0.0);
  CHECK(kSixth.coefficient<double>(1, 2) == doctest::Approx(2.0 / g));
  CHECK(kSixth.coefficient<double>(2, 1) == 0.0);
  CHECK(kSixth.coefficient<double>(2, 0) == doctest::Approx(1.0 - 1.0 / (2.0 * g)));
  CHECK_THROWS_AS(kSixth.coefficient<double>(2, 3), InvalidInput);
  CHECK_THROWS_AS(kSixth.f(0, 0.1), InvalidInput);
}

TEST_CASE("leading coefficients") {
  oracle::Gen g(31);
  for (int trial = 0; trial < 20; ++trial) {
    const MapFamily fam(GammaSequence::parse(g.gamma_descriptor()));
    // tau_n from the leading coefficient of the composed polynomial in 100 digits.
    Big lead = 2 / big(fam.gamma().value<DoubleDouble>(1));
    for (int n = 1; n <= 8; ++n) {
      if (n > 1) lead = lead * lead / (2 * big(fam.gamma().value<DoubleDouble>(n)));
      const double want_log = static_cast<double>(boost::multiprecision::log2(lead));
      CHECK(fam.log2_tau(n) == doctest::Approx(want_log).epsilon(1e-12));
      if (want_log < 1000) CHECK(fam.tau<double>(n) == doctest::Approx(static_cast<double>(lead)).epsilon(1e-13));
    }
  }
  CHECK(std::isinf(kSixth.tau<double>(12)));
  CHECK(std::isfinite(kSixth.log2_tau(40)));
}

TEST_CASE("F_n and P_{2^m} against 100-digit composition") {
  oracle::Gen g(32);
  for (int trial = 0; trial < 30; ++trial) {
    const MapFamily fam(GammaSequence::parse(g.gamma_descriptor()));
    const int m = g.integer(1, 6);
    const auto bg = big_gammas(fam.gamma(), m);
    Big tau = 2 / bg[0];
    for (int k = 2; k <= m; ++k) tau = tau * tau / (2 * bg[static_cast<std::size_t>(k - 1)]);
    for (int i = 0; i < 10; ++i) {
      const double x = g.uniform(0.0, 1.0);
      const Big f = oracle::F(bg, m, Big(x));
      CHECK(evaluate_F(fam, m, x) == doctest::Approx(static_cast<double>(f)).epsilon(1e-9));
      const auto p = monic_opoly_exact(fam, m, DoubleDouble(x));
      const Big want = f / tau;
      CHECK(static_cast<double>(boost::multiprecision::abs(big(p) - want)) <=
            1e-24 * std::max(1.0, static_cast<double>(boost::multiprecision::abs(want))));
    }
  }
  CHECK_THROWS_AS(evaluate_F(kSixth, 30, 10.0), RangeError);
  CHECK_THROWS_AS(monic_opoly_exact(kSixth, 40, 0.3), RangeError);
}

TEST_CASE("Chebyshev identity at gamma = 1/4") {
  for (int m = 1; m <= 6; ++m) {
    const int n = 1 << m;
    for (double x : {0.0, 0.03, 0.31, 0.5, 0.77, 1.0}) {
      const long double t = std::cos(n * std::acos(2.0L * x - 1.0L));
      // Monic T_N(2x - 1) has leading factor 2^{2N-1}.
      const double scaled = std::ldexp(monic_opoly_exact(kCheb, m, x), 2 * n - 1);
      CHECK(scaled == doctest::Approx(static_cast<double>(t)).scale(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("exact zeros: closed forms") {
  const auto z1 = exact_zeros<double>(kSixth, 1);
  const auto [lo, hi] = oracle::quadratic_roots(1.0L / 6.0L);
  CHECK(z1.points.size() == 2);
  CHECK(z1.points[0] == doctest::Approx(static_cast<double>(lo)).epsilon(1e-15));
  CHECK(z1.points[1] == doctest::Approx(static_cast<double>(hi)).epsilon(1e-15));
  CHECK(z1.degree == 2);
  CHECK(z1.provenance == ZeroProvenance::ExactBranch);

  for (int m = 1; m <= 10; ++m) {
    const auto z = exact_zeros<double>(kCheb, m);
    const auto want = oracle::chebyshev_zeros(1 << m);
    REQUIRE(z.points.size() == want.size());
    double err = 0.0;
    for (std::size_t i = 0; i < want.size(); ++i) err = std::max(err, static_cast<double>(std::abs(z.points[i] - want[i])));
    CAPTURE(m);
    CHECK(err <= 1e-12);
  }
}

TEST_CASE("exact zeros are the roots of F_m (property)") {
  oracle::Gen g(33);
  for (int trial = 0; trial < 25; ++trial) {
    const MapFamily fam(GammaSequence::parse(g.gamma_descriptor()));
    const int m = g.integer(1, 9);
    const auto want = oracle::preimages(big_gammas(fam.gamma(), m), m, Big(0));
    const auto zd = exact_zeros<double>(fam, m);
    const auto zq = exact_zeros<DoubleDouble>(fam, m);
    REQUIRE(zd.points.size() == want.size());
    const auto intervals = basic_intervals<DoubleDouble>(fam.gamma(), m);
    for (std::size_t i = 0; i < want.size(); ++i) {
      CHECK(std::abs(zd.points[i] - static_cast<double>(want[i])) < 1e-14);
      CHECK(static_cast<double>(boost::multiprecision::abs(big(zq.points[i]) - want[i])) < 1e-29);
      CHECK(intervals[i].contains(zq.points[i]));
      if (i > 0) CHECK(zd.points[i - 1] < zd.points[i]);
    }
  }
}

TEST_CASE("zero residual post-condition") {
  for (int m = 1; m <= 8; ++m) {
    const auto z = exact_zeros<double>(kSixth, m);
    for (double x : z.points) CHECK(zero_residual_ok(kSixth, m, x));
    // Points where F_m = 1/2 inside the first and last basic intervals.
    CHECK_FALSE(zero_residual_ok(kSixth, m, branch_value(kSixth.gamma(), BranchWord::all_left(m), 0.5)));
    CHECK_FALSE(zero_residual_ok(kSixth, m, branch_value(kSixth.gamma(), BranchWord::from_position((1u << m) - 1, m), 0.5)));
    CHECK_FALSE(zero_residual_ok(kSixth, m, z.points.front() * (1 + 1e-6)));
  }
}

TEST_CASE("critical sets") {
  for (int n = 1; n <= 8; ++n) {
    const auto y = critical_set<double>(kCheb, n);
    const auto want = oracle::chebyshev_critical(1 << n);
    REQUIRE(y.points.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(std::abs(y.points[i] - static_cast<double>(want[i])) < 1e-13);
  }
  oracle::Gen g(34);
  for (int trial = 0; trial < 20; ++trial) {
    const MapFamily fam(GammaSequence::parse(g.gamma_descriptor()));
    const int n = g.integer(1, 7);
    const auto y = critical_set<DoubleDouble>(fam, n);
    REQUIRE(y.points.size() == (std::size_t{1} << n) - 1);
    const auto bg = big_gammas(fam.gamma(), n);
    for (const auto& p : y.points) {
      // F_n' vanishes where some F_{k-1} hits the critical point of f_k.
      Big v = big(p);
      Big best = boost::multiprecision::abs(v - Big(1) / 2);
      for (int k = 1; k < n; ++k) {
        v = oracle::F(bg, k, big(p));
        best = std::min(best, Big(boost::multiprecision::abs(v)));
      }
      CHECK(static_cast<double>(best) < 1e-25);
    }
    for (std::size_t i = 1; i < y.points.size(); ++i) CHECK(y.points[i - 1] < y.points[i]);
  }
}

TEST_CASE("serial and parallel pullback agree bit for bit") {
  const MapFamily fam(GammaSequence::parse("periodic:1/6,1/5,0.11"));
  for (int m = 1; m <= 12; ++m) {
    const auto a = exact_zeros<double>(fam, m, ExecPolicy::Serial);
    const auto b = exact_zeros<double>(fam, m, ExecPolicy::Parallel);
    CHECK(a.points == b.points);
  }
}

TEST_CASE("critical points lie in gaps, where |F_n| > 1 (property)") {
  oracle::Gen g(35);
  for (int trial = 0; trial < 20; ++trial) {
    const MapFamily fam(GammaSequence::parse(g.gamma_descriptor()));
    const int n = g.integer(1, 8);
    const auto y = critical_set<DoubleDouble>(fam, n);
    const auto iv = basic_intervals<DoubleDouble>(fam.gamma(), n);
    const auto bg = big_gammas(fam.gamma(), n);
    std::size_t j = 0;
    for (const auto& p : y.points) {
      CHECK(boost::multiprecision::abs(oracle::F(bg, n, big(p))) > 1);
      while (j < iv.size() && iv[j].hi < p) ++j;
      CHECK((j == iv.size() || p < iv[j].lo));
    }
  }
}

TEST_CASE("P_{2^m} is monic: top divided difference equals 1") {
  oracle::Gen g(36);
  for (int trial = 0; trial < 10; ++trial) {
    const MapFamily fam(GammaSequence::parse(g.gamma_descriptor()));
    for (int m = 1; m <= 4; ++m) {
      const int deg = 1 << m;
      std::vector<Big> x, d;
      for (int i = 0; i <= deg; ++i) {
        // Chebyshev-style nodes on [-0.5, 1.5].
        const double t = 0.5 + std::cos((2.0 * i + 1.0) * std::numbers::pi / (2.0 * (deg + 1)));
        x.push_back(Big(t));
        d.push_back(big(monic_opoly_exact(fam, m, DoubleDouble(t))));
      }
      for (int k = 1; k <= deg; ++k)
        for (int i = deg; i >= k; --i) d[static_cast<std::size_t>(i)] = (d[static_cast<std::size_t>(i)] - d[static_cast<std::size_t>(i - 1)]) / (x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(i - k)]);
      CHECK(static_cast<double>(d[static_cast<std::size_t>(deg)]) == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}
