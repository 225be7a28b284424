#include <doctest.h>

#include <cmath>
#include <random>

#include "sil/intervals.hpp"

using namespace sil;

namespace {

IntervalSystem standard(u64 X) { return build_system(X, 0.1, 0.15, 0.05, 1.0, 1.5, 3.0); }

const ConditionItem* find_item(const IntervalSystem& s, const std::string& name) {
  for (const auto& c : s.report)
    if (c.name == name) return &c;
  return nullptr;
}

IntervalSystem four_pairs(u64 X) {
  return system_from_pairs(X, {{1.5, 3}, {3, 10}, {10, 40}, {40, 200}}, {0.1, 0.15, 0.05, 1.0});
}

}  // namespace

TEST_CASE("build_system with a large Q1 gives J = 1") {
  const u64 X = 100000000;
  const double Q1 = std::exp(std::sqrt(std::log(double(X)))) * 1.01;
  const auto s = build_system(X, 0.1, 0.15, 0.05, 1.0, 2.0, Q1);
  CHECK(s.J == 1);
  REQUIRE(s.pairs.size() == 3);
  CHECK(s.pairs[0].P == 2.0);
  CHECK(s.pairs[0].Q == Q1);
}

TEST_CASE("build_system at X = 10^8") {
  const u64 X = 100000000;
  const double Q1 = 1000, P1 = std::pow(Q1, 0.25);
  const auto s = build_system(X, 0.1, 0.15, 0.05, 1.0, P1, Q1);
  REQUIRE(s.pairs.size() == std::size_t(s.J + 2));
  const double logX = std::log(double(X));
  const auto& a = s.pairs[std::size_t(s.J)];
  const auto& b = s.pairs[std::size_t(s.J + 1)];
  CHECK(a.P == doctest::Approx(std::pow(double(X), 0.1)));
  CHECK(a.Q == doctest::Approx(std::exp(std::sqrt(0.1 * 0.15) * logX)));
  CHECK(b.P == a.Q);
  CHECK(b.Q == doctest::Approx(std::pow(double(X), 0.15)));
  for (const auto& pr : s.pairs) CHECK(pr.P < pr.Q);
  CHECK_FALSE(s.report.empty());
  for (const auto& c : s.report) CHECK(c.pass == (c.margin >= 0));
  // the asymptotic lower bound on nu1 cannot hold at desk scale
  const auto* nl = find_item(s, "nu1lower");
  REQUIRE(nl);
  CHECK_FALSE(nl->pass);
  CHECK_FALSE(s.all_pass());
  // ordered items agree with Q_j <= P_{j+1}
  for (const auto& c : s.report)
    if (c.name == "ordered")
      CHECK(c.pass == (s.pairs[std::size_t(c.j)].P >= s.pairs[std::size_t(c.j - 1)].Q * (1 - 1e-12)));
}

TEST_CASE("build_system errors") {
  CHECK_THROWS_AS(build_system(10, 0.1, 0.15, 0.05, 1, 1.5, 3), std::domain_error);
  CHECK_THROWS_AS(build_system(1000000, 0.15, 0.1, 0.05, 1, 1.5, 3), std::domain_error);
  CHECK_THROWS_AS(build_system(1000000, 0.1, 0.2, 0.05, 1, 1.5, 3), std::domain_error);
  CHECK_THROWS_AS(build_system(1000000, 0.0, 0.15, 0.05, 1, 1.5, 3), std::domain_error);
  CHECK_THROWS_AS(build_system(1000000, 0.1, 0.15, 0.2, 1, 1.5, 3), std::domain_error);
  CHECK_THROWS_AS(build_system(1000000, 0.1, 0.15, 0.05, 0, 1.5, 3), std::domain_error);
  CHECK_THROWS_AS(build_system(1000000, 0.1, 0.15, 0.05, 1, 1.2, 3), std::domain_error);
  CHECK_THROWS_AS(build_system(1000000, 0.1, 0.15, 0.05, 1, 3, 3), std::domain_error);
  CHECK_THROWS_AS(system_from_pairs(1000, {{1.5, 3}, {3, 10}}, {0.1, 0.15, 0.05, 1}), std::domain_error);
  CHECK_THROWS_AS(system_from_pairs(1000, {{1.5, 3}, {3, 3}, {5, 9}}, {0.1, 0.15, 0.05, 1}), std::domain_error);
  CHECK_THROWS_AS(system_from_pairs(1000, {{1.5, 3}, {3, 5}, {5, 9}}, {0.1, 0.15, 0, 1}), std::domain_error);
}

TEST_CASE("system_membership") {
  const auto s = four_pairs(100000);
  const auto fw = factor_window(2, 200000);
  CHECK_FALSE(system_membership(s, 199999, fw));  // a prime beyond Q_{J+2}
  CHECK(system_membership(s, 2 * 5 * 11 * 41, fw));
  CHECK(system_membership(s, 2 * 2 * 7 * 37 * 101, fw));
  CHECK(system_membership(s, 3 * 5 * 11 * 41, fw));  // pairs are half-open (P, Q]
  CHECK_FALSE(system_membership(s, 2 * 5 * 11, fw));
  CHECK_FALSE(system_membership(s, 7 * 5 * 11 * 41, fw));  // nothing in (1.5, 3]
  CHECK_THROWS_AS(system_membership(s, 300000, fw), std::out_of_range);
}

TEST_CASE("membership is monotone under widening a pair") {
  const auto s = four_pairs(100000);
  const auto w = system_from_pairs(100000, {{1.5, 3}, {3, 20}, {10, 40}, {40, 200}}, s.params);
  const auto fw = factor_window(100001, 20000);
  for (u64 n = 100001; n < 120001; ++n)
    if (system_membership(s, n, fw)) CHECK(system_membership(w, n, fw));
}

TEST_CASE("inclusion_exclusion_residual") {
  const auto fw = factor_window(100001, 10000);
  const auto s3 = standard(100000);
  const auto s4 = four_pairs(100000);
  for (const auto* s : {&s3, &s4}) {
    std::vector<std::int64_t> ones(fw.len(), 1);
    CHECK(inclusion_exclusion_residual(*s, fw, ones) == 0);
    const auto mu = window_eval_int(builtin_fn("moebius"), fw);
    std::vector<std::int64_t> m(mu.begin(), mu.end());
    CHECK(inclusion_exclusion_residual(*s, fw, m) == 0);
    std::mt19937_64 rng(1);
    std::normal_distribution<double> nd;
    std::vector<cplx> a(fw.len());
    for (auto& v : a) v = cplx(nd(rng), nd(rng));
    CHECK(inclusion_exclusion_residual(*s, fw, a) <= 1e-12 * double(fw.len()));
  }
  std::vector<std::int64_t> wrong(5, 1);
  CHECK_THROWS_AS(inclusion_exclusion_residual(s3, fw, wrong), std::domain_error);
}

TEST_CASE("system_density_report") {
  const auto wide = system_from_pairs(100000, {{1.5, 1e6}, {1.5, 1e6}, {1.5, 1e6}}, {0.1, 0.15, 0.05, 1});
  CHECK(system_density_report(wide, 100000).inS == 1.0);
  for (u64 X : {u64{1000000}, u64{10000000}}) {
    const auto s = standard(X);
    const auto r = system_density_report(s, X);
    CHECK(r.inS >= 0);
    CHECK(r.inS <= 1);
    CHECK(1 - r.inS <= 1.3 * r.complement_bound);
    CHECK(r.members == u64(std::llround(r.inS * double(X))));
  }
  // density against an exhaustive membership scan
  const auto s = four_pairs(100000);
  const auto fw = factor_window(100001, 100000);
  u64 count = 0;
  for (u64 n = 100001; n <= 200000; ++n) count += system_membership(s, n, fw);
  CHECK(system_density_report(s, 100000).members == count);
  CHECK_THROWS_AS(system_density_report(s, 1), std::domain_error);
}
