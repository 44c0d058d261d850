#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cantor/errors.hpp"
#include "cantor/spacing.hpp"
#include "oracles.hpp"

using namespace cantor;

namespace {

const MapFamily kCheb(GammaSequence::constant("1/4", GammaDomain::ChebyshevLimit));
const MapFamily kSixth(GammaSequence::constant("1/6"));
const MapFamily kPeriodic(GammaSequence::parse("periodic:1/6,1/5"));
constexpr double kPi = std::numbers::pi;

const JacobiMatrix<double>& cheb_matrix() {
  static const auto j = jacobi_for_gamma<double>(kCheb, 64).matrix;
  return j;
}
const JacobiMatrix<double>& sixth_matrix() {
  static const auto j = jacobi_for_gamma<double>(kSixth, 64).matrix;
  return j;
}

std::span<const double> sp(const std::vector<double>& v) { return {v.data(), v.size()}; }

}  // namespace

TEST_CASE("minimal spacing") {
  const std::vector<double> z{0.2, 0.5, 0.6};
  CHECK(min_spacing<double>(sp(z)) == doctest::Approx(0.1));
  CHECK(min_spacing_index<double>(sp(z)) == 1);
  CHECK(max_spacing<double>(sp(z)) == doctest::Approx(0.3));
  const std::vector<double> one{0.3};
  CHECK_THROWS_AS(min_spacing<double>(sp(one)), InvalidInput);

  CHECK(min_spacing(exact_zeros<double>(kSixth, 1)) == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-15));
  for (int n = 1; n <= 10; ++n) {
    const auto z1 = exact_zeros<double>(kCheb, n);
    const double want = std::sin(kPi / std::ldexp(1.0, n + 1)) * std::sin(kPi / std::ldexp(1.0, n));
    CHECK(min_spacing(z1) == doctest::Approx(want).epsilon(1e-9));
    const auto w = oracle::chebyshev_zeros(1 << n);
    CHECK(min_spacing(z1) == doctest::Approx(static_cast<double>(w[1] - w[0])).epsilon(1e-9));
  }
}

TEST_CASE("set distance: examples and brute force") {
  const std::vector<double> a{0.1, 0.9}, b{0.5};
  CHECK(set_distance<double>(sp(a), sp(b)) == doctest::Approx(0.4));
  CHECK(set_distance<double>(sp(a), sp(a)) == 0.0);
  oracle::Gen g(61);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> x(static_cast<std::size_t>(g.integer(1, 30))), y(static_cast<std::size_t>(g.integer(1, 30)));
    for (auto& v : x) v = g.uniform(0, 1);
    for (auto& v : y) v = g.uniform(0, 1);
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    CHECK(set_distance<double>(sp(x), sp(y)) == oracle::brute_distance(x, y));
    if (x.size() >= 2) CHECK(min_spacing<double>(sp(x)) == oracle::brute_min_gap(x));
  }
}

TEST_CASE("interlacing distance bound") {
  const auto c = verify_interlacing_bound(cheb_matrix(), 8, 4, 2);
  CHECK(c.pass);
  // Cosine values: nearest zeros of T_8 and T_4, and the T_2 gap.
  const auto z8 = oracle::chebyshev_zeros(8), z4 = oracle::chebyshev_zeros(4), z2 = oracle::chebyshev_zeros(2);
  CHECK(c.lhs == doctest::Approx(static_cast<double>(oracle::brute_distance(z8, z4))).epsilon(1e-9));
  CHECK(c.rhs == doctest::Approx(static_cast<double>(z2[1] - z2[0])).epsilon(1e-9));
  CHECK(verify_interlacing_bound(sixth_matrix(), 4, 3, 2).pass);
  CHECK_THROWS_AS(verify_interlacing_bound(sixth_matrix(), 4, 4, 2), InvalidInput);
  CHECK_THROWS_AS(verify_interlacing_bound(sixth_matrix(), 4, 3, 1), InvalidInput);
  CHECK_THROWS_AS(verify_interlacing_bound(sixth_matrix(), 65, 3, 2), InvalidInput);
}

TEST_CASE("interlacing distance bound on random triples (property)") {
  oracle::Gen g(62);
  ZeroCache cache(sixth_matrix());
  for (int trial = 0; trial < 60; ++trial) {
    const int l = g.integer(4, 64);
    const int m = g.integer(3, l - 1);
    const int n = g.integer(2, m - 1);
    CAPTURE(l);
    CAPTURE(m);
    CAPTURE(n);
    const auto r = verify_interlacing_bound(cache, l, m, n);
    CHECK(r.pass);
    CHECK(r.lhs <= r.rhs);
  }
}

TEST_CASE("critical set bounds") {
  const auto c = verify_critical_bound<double>(kCheb, 1, 0);
  CHECK(c.pass);
  // Z_4 vs Y_4 = {1/2} u Z_2 and Z_4 vs Z_2, from cosines.
  const auto z4 = oracle::chebyshev_zeros(4), z2 = oracle::chebyshev_zeros(2), y4 = oracle::chebyshev_critical(4);
  CHECK(c.lhs == doctest::Approx(static_cast<double>(oracle::brute_distance(z4, y4))).epsilon(1e-9));
  CHECK(c.rhs == doctest::Approx(static_cast<double>(oracle::brute_distance(z4, z2))).epsilon(1e-9));
  CHECK(verify_critical_bound<double>(kSixth, 2, 0).pass);
  CHECK(verify_critical_bound<DoubleDouble>(kPeriodic, 5, 3).pass);
  CHECK_THROWS_AS(verify_critical_bound<double>(kSixth, 1, 1), InvalidInput);
  CHECK_THROWS_AS(verify_critical_bound<double>(kSixth, 1, -1), InvalidInput);
  for (int k = 1; k <= 5; ++k)
    for (int kp = 0; kp < k; ++kp) CHECK(verify_critical_containment<double>(kSixth, k, kp, 1e-12).pass);
  CHECK_THROWS_AS(verify_critical_containment<double>(kSixth, 2, 2, 1e-12), InvalidInput);
}

TEST_CASE("second-neighbour bound") {
  for (int n = 2; n <= 10; ++n) CHECK(verify_second_neighbor_bound(sixth_matrix(), n, n).pass);
  CHECK(verify_second_neighbor_bound(cheb_matrix(), 16, 4).pass);
  CHECK(verify_second_neighbor_bound(sixth_matrix(), 8, 4).pass);
  oracle::Gen g(63);
  ZeroCache cache(sixth_matrix());
  for (int trial = 0; trial < 40; ++trial) {
    const int r = g.integer(2, 64);
    CHECK(verify_second_neighbor_bound(cache, r, g.integer(1, r)).pass);
  }
  CHECK_THROWS_AS(verify_second_neighbor_bound(sixth_matrix(), 1, 1), InvalidInput);
  CHECK_THROWS_AS(verify_second_neighbor_bound(sixth_matrix(), 4, 5), InvalidInput);
}

TEST_CASE("branch chain") {
  // n = 1: the t~ = 0 endpoint gives |u(0) - u(g/2)| = u(g/2), equality with the chain.
  for (const auto* text : {"1/6", "0.2", "0.03"}) {
    const MapFamily fam(GammaSequence::constant(text));
    const double g = fam.gamma().value<double>(1);
    for (const char* w : {"L", "R"}) {
      const auto inst = check_branch_chain<double>(fam, BranchWord::parse(w));
      CHECK(inst.pass);
      CHECK(inst.chain_u == doctest::Approx(static_cast<double>(oracle::u_closed(oracle::Big(g) / 2))).epsilon(1e-14));
      CHECK(inst.min_difference == doctest::Approx(inst.chain_u).epsilon(1e-14));
    }
  }
  const auto rep = verify_branch_lemma<double>(kCheb, 3, 100, 7);
  CHECK(rep.violations == 0);
  CHECK(rep.trials == 100);
  CHECK(rep.worst_margin >= 1.0 - 1e-12);
  CHECK(rep.critical_chain.pass);
  // Same seed, same report.
  const auto again = verify_branch_lemma<double>(kCheb, 3, 100, 7);
  CHECK(again.worst_margin == rep.worst_margin);
}

TEST_CASE("branch chain on random words (property)") {
  oracle::Gen g(64);
  for (int trial = 0; trial < 300; ++trial) {
    const MapFamily fam(GammaSequence::parse(g.gamma_descriptor()));
    const int n = g.integer(1, 8);
    const auto inst = check_branch_chain<double>(fam, BranchWord::parse(g.word(n)));
    CHECK(inst.pass);
    CHECK(inst.min_difference >= inst.chain_u);
    CHECK(inst.chain_u >= inst.leftmost);
    CHECK(inst.leftmost >= inst.delta);
  }
}

TEST_CASE("interlacing check") {
  const std::vector<double> r{0.1, 0.4, 0.7, 0.9};
  CHECK(check_interlacing(sp(std::vector<double>{0.2, 0.8}), sp(r)).pass);
  CHECK_FALSE(check_interlacing(sp(std::vector<double>{0.2, 0.3}), sp(r)).pass);
  CHECK_FALSE(check_interlacing(sp(std::vector<double>{0.05, 0.8}), sp(r)).pass);
  CHECK_FALSE(check_interlacing(sp(std::vector<double>{0.5, 0.95}), sp(r)).pass);
  ZeroCache cache(sixth_matrix());
  for (int s = 2; s < 24; ++s)
    for (int t = s + 1; t <= 24; ++t) CHECK(check_interlacing(sp(cache.zeros(s).points), sp(cache.zeros(t).points)).pass);
}

TEST_CASE("spacing level") {
  CHECK(spacing_level(2) == 2);
  CHECK(spacing_level(3) == 2);
  CHECK(spacing_level(4) == 3);
  CHECK(spacing_level(255) == 8);
  CHECK(spacing_level(256) == 9);
  CHECK(spacing_level(1) == 1);
  CHECK_THROWS_AS(spacing_level(0), InvalidInput);
}

TEST_CASE("spacing report examples") {
  const std::vector<int> two{2};
  const auto c = spacing_report(kCheb, cheb_matrix(), two);
  REQUIRE(c.rows.size() == 1);
  CHECK(c.rows[0].s == 2);
  CHECK(c.rows[0].lower_eq1 == doctest::Approx(1.0 / 256.0));
  CHECK(c.rows[0].upper_eq1 == doctest::Approx(kPi * kPi / 4.0));
  CHECK(c.rows[0].m_n == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(c.rows[0].pass_eq1);
  CHECK(c.rows[0].exact);
  CHECK(c.all_pass());

  const auto s = spacing_report(kSixth, sixth_matrix(), two);
  CHECK(s.rows[0].m_n == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));
  CHECK(s.rows[0].lower_eq1 == doctest::Approx(std::pow(6.0, -4)));
  CHECK(s.rows[0].pass_eq1);
  CHECK_FALSE(s.rows[0].pass_eq2.has_value());

  const std::vector<int> eight{8};
  SpacingOptions opt;
  opt.c = 1.0 / 6.0;
  const auto e = spacing_report(kSixth, sixth_matrix(), eight, opt);
  REQUIRE(e.rows[0].lower_eq2.has_value());
  CHECK(e.rows[0].s == 4);
  CHECK(*e.rows[0].lower_eq2 == doctest::Approx(std::pow(6.0, -4) / 36.0));
  CHECK(*e.rows[0].upper_eq2 == doctest::Approx(9.0 * kPi * kPi * std::pow(6.0, -4)));
  CHECK(*e.rows[0].pass_eq2);
  CHECK(*e.rows[0].cross_check < 1e-9);

  opt.c = 0.2;
  CHECK_THROWS_AS(spacing_report(kSixth, sixth_matrix(), eight, opt), InvalidInput);
  opt.c = 0.0;
  CHECK_THROWS_AS(spacing_report(kSixth, sixth_matrix(), eight, opt), InvalidInput);
  const std::vector<int> bad{1};
  CHECK_THROWS_AS(spacing_report(kSixth, sixth_matrix(), bad), InvalidInput);
}

TEST_CASE("spacing report: margins are consistent and degrees sorted") {
  std::vector<int> degrees{9, 3, 64, 3, 17, 2};
  SpacingOptions opt;
  opt.c = 1.0 / 6.0;
  const auto r = spacing_report(kPeriodic, jacobi_for_gamma<double>(kPeriodic, 64).matrix, degrees, opt);
  REQUIRE(r.rows.size() == 5);
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const auto& row = r.rows[i];
    if (i > 0) CHECK(r.rows[i - 1].n < row.n);
    CHECK(row.margin_lo == doctest::Approx(row.m_n / row.lower_eq1));
    CHECK(row.margin_hi == doctest::Approx(row.upper_eq1 / row.m_n));
    CHECK(row.pass_eq1);
    CHECK(*row.pass_eq2);
    CHECK(row.exact == ((row.n & (row.n - 1)) == 0));
  }
  CHECK(r.all_pass());
}
