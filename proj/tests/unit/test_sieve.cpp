#include <doctest.h>

#include <cmath>
#include <set>

#include "sil/pretence.hpp"
#include "sil/sieve.hpp"

using namespace sil;

namespace {

constexpr double euler_gamma = 0.57721566490153286;

bool squarefree(u64 d) {
  for (u64 p = 2; p * p <= d; ++p)
    if (d % (p * p) == 0) return false;
  return true;
}

std::vector<u64> prime_factors(u64 d) {
  std::vector<u64> out;
  for (u64 p = 2; p * p <= d; ++p)
    if (d % p == 0) {
      out.push_back(p);
      while (d % p == 0) d /= p;
    }
  if (d > 1) out.push_back(d);
  return out;
}

int mu_sf(u64 d) { return prime_factors(d).size() % 2 ? -1 : 1; }

// count n <= N where 1[(n, P(z)) = 1] > sum_{d | n, d in S+} mu(d)
u64 upper_bound_failures(const std::vector<u64>& splus, u64 z, u64 N) {
  std::vector<int> rhs(N + 1, 0);
  for (u64 d : splus)
    for (u64 m = d; m <= N; m += d) rhs[m] += mu_sf(d);
  std::vector<bool> rough(N + 1, true);
  for (u64 p : shared_primes(z)->upto(z - 1))
    for (u64 m = p; m <= N; m += p) rough[m] = false;
  u64 bad = 0;
  for (u64 n = 1; n <= N; ++n) bad += (rough[n] ? 1 : 0) > rhs[n];
  return bad;
}

// a hand-built plan with a truncated block (1,5] allowing one prime
SievePlan small_truncated_plan() {
  SievePlan plan;
  plan.X = 1000;
  plan.K = 2;
  // truncations are even, as in real plans, so the Bonferroni cut stays an upper bound
  SieveBlock t{1, 1.0, 5.0, BlockRule::truncation, 2, 0, 0};
  SieveBlock l{2, 5.0, 20.0, BlockRule::linear, 0, 400.0, 20.0};
  SieveBlock e{3, 20.0, 4000.0, BlockRule::exclude_all, 0, 0, 0};
  plan.blocks = {t, l, e};
  plan.splus = linear_sieve_support(400.0, 20.0, shared_primes(20)->between(5, 20));
  return plan;
}

}  // namespace

TEST_CASE("linear_sieve_support examples") {
  const std::vector<u64> p235{2, 3, 5};
  CHECK(linear_sieve_support(u64{6}, u64{6}, p235) == std::vector<u64>{1});
  const std::vector<u64> p2357{2, 3, 5, 7};
  const auto s = linear_sieve_support(u64{1000}, u64{10}, p2357);
  CHECK(s.size() == 16);
  for (u64 d : s) CHECK(210 % d == 0);
  CHECK(s.front() == 1);
  CHECK_THROWS_AS(linear_sieve_support(u64{5}, u64{10}, p2357), std::domain_error);
  CHECK_THROWS_AS(linear_sieve_support(0.5, 0.5, p2357), std::domain_error);
}

TEST_CASE("linear_sieve_support respects the odd-index cube condition") {
  const auto ps = shared_primes(100)->upto(99);
  const auto s = linear_sieve_support(u64{10000}, u64{100}, ps);
  for (u64 d : s) {
    CHECK(d <= 10000);
    CHECK(squarefree(d));
    auto f = prime_factors(d);
    std::sort(f.rbegin(), f.rend());
    u64 prefix = 1;
    for (std::size_t l = 1; l <= f.size(); ++l) {
      if (l % 2 == 1) CHECK(prefix * f[l - 1] * f[l - 1] * f[l - 1] <= 10000);
      prefix *= f[l - 1];
    }
  }
}

TEST_CASE("S+ upper-bound property") {
  for (auto [D, z] : {std::pair<u64, u64>{1000, 100}, {10000, 100}}) {
    const auto s = linear_sieve_support(D, z, shared_primes(z)->upto(z - 1));
    CHECK(upper_bound_failures(s, z, 100000) == 0);
  }
}

TEST_CASE("linear sieve quality against 2 e^gamma / s") {
  for (auto [D, z] : {std::pair<u64, u64>{100, 100}, {1000, 100}, {10000, 100}, {1000000, 100}}) {
    const auto s = linear_sieve_support(D, z, shared_primes(z)->upto(z - 1));
    double sum = 0;
    for (u64 d : s) sum += mu_sf(d) / double(d);
    double V = 1;
    for (u64 p : shared_primes(z)->upto(z - 1)) V *= 1 - 1.0 / double(p);
    const double sv = std::log(double(D)) / std::log(double(z));
    CHECK(sum <= (2 * std::exp(euler_gamma) / sv + 0.25) * V);
    CHECK(sum >= V);  // upper-bound sieve
  }
}

TEST_CASE("brun_hooley_plan at 10^6") {
  const auto plan = brun_hooley_plan(1000000, 3.0);
  CHECK(plan.K >= 1);
  REQUIRE(plan.blocks.size() == std::size_t(plan.K + 1));
  CHECK(plan.blocks.front().lo == 1.0);
  CHECK(plan.blocks.back().hi == 4e6);
  for (std::size_t i = 1; i < plan.blocks.size(); ++i) CHECK(plan.blocks[i].lo == plan.blocks[i - 1].hi);
  const auto& lin = plan.blocks[std::size_t(plan.K - 1)];
  CHECK(lin.rule == BlockRule::linear);
  CHECK(lin.D == doctest::Approx(std::pow(1e6, 0.4 - 0.001)));
  CHECK(lin.z == doctest::Approx(std::pow(1e6, 1.0 / 7)));
  CHECK(plan.blocks.back().rule == BlockRule::exclude_all);
  CHECK(std::binary_search(plan.splus.begin(), plan.splus.end(), u64{1}));
}

TEST_CASE("brun_hooley_plan with truncated blocks and errors") {
  // log_3 of 10^7 is about 1.02, so tau = 1.5 keeps K = 2
  const auto plan = brun_hooley_plan(10000000, 1.5);
  CHECK(plan.K == 2);
  CHECK(plan.blocks[0].rule == BlockRule::truncation);
  CHECK(plan.blocks[0].truncation == 30 * int(std::floor(iterated_log(1e7, 2))));
  CHECK_THROWS_AS(brun_hooley_plan(99, 3.0), std::domain_error);
  CHECK_THROWS_AS(brun_hooley_plan(1000000, 1e9), std::domain_error);
  CHECK_THROWS_AS(brun_hooley_plan(1000000, std::nan("")), std::domain_error);
  CHECK_THROWS_AS(brun_hooley_plan(1000000, 1.0), std::domain_error);   // linear block empty
  CHECK_THROWS_AS(brun_hooley_plan(10000000, 1.0), std::domain_error);  // K = 3 and the linear block is empty
}

TEST_CASE("iterated_log") {
  CHECK(iterated_log(std::exp(std::exp(1.0)), 2) == doctest::Approx(1.0));
  CHECK(std::isnan(iterated_log(0.5, 2)));
}

TEST_CASE("chi_value") {
  const auto plan = brun_hooley_plan(1000000, 3.0);
  CHECK(chi_value(plan, 1) == 1);
  CHECK(chi_value(plan, 2 * 23) == 0);  // 23 > X^{1/7}
  CHECK(chi_value(plan, 1000003) == 0);
  const auto fw = factor_window(2, 100);
  CHECK(chi_value(plan, 30, fw) == chi_value(plan, 30));
  CHECK_THROWS_AS(chi_value(plan, 0), std::domain_error);

  const auto t = small_truncated_plan();
  CHECK(chi_value(t, 2) == 1);
  CHECK(chi_value(t, 6) == 1);
  CHECK(chi_value(t, 30) == 0);  // three primes of I_1 exceed m_1 = 2
  CHECK(chi_value(t, 2 * 7) == 1);
  CHECK(chi_value(t, 23) == 0);
}

TEST_CASE("lambda_weights examples") {
  const auto plan = brun_hooley_plan(1000000, 3.0);
  const auto one = lambda_weights(plan, builtin_fn("one"));
  REQUIRE(one.entries.size() == 1);
  CHECK(one.entries[0].d == 1);
  CHECK(one.entries[0].lambda == 1.0);

  const auto zero = lambda_weights(plan, builtin_fn("prime_zero"));
  CHECK(zero.exact);
  CHECK(zero.entries.size() == plan.splus.size());
  for (const auto& e : zero.entries) CHECK(e.lambda == mu_sf(e.d) * chi_value(plan, e.d));

  const auto ts = lambda_weights(plan, builtin_fn("two_squares"));
  CHECK(ts.g_name == "two_squares");
  CHECK(ts.entries.front().d == 1);
  CHECK(ts.entries.front().lambda == 1.0);
  for (const auto& e : ts.entries) {
    CHECK(std::abs(e.lambda) <= 1.0);
    CHECK(squarefree(e.d));
    CHECK(e.d <= ts.D_bound);
    for (u64 p : prime_factors(e.d)) CHECK(p % 4 == 3);
  }
  CHECK_THROWS_AS(lambda_weights(plan, builtin_fn("moebius")), std::domain_error);
  CHECK_THROWS_AS(lambda_weights(plan, parse_fn("nit(1)")), std::domain_error);
}

TEST_CASE("lambda_weights on a truncated plan") {
  const auto t = small_truncated_plan();
  const auto w = lambda_weights(t, builtin_fn("prime_zero"));
  for (const auto& e : w.entries) {
    CHECK(e.lambda == mu_sf(e.d) * chi_value(t, e.d));
    CHECK(chi_value(t, e.d) == 1);
  }
  std::set<u64> ds;
  for (const auto& e : w.entries) ds.insert(e.d);
  CHECK(ds.count(2));
  CHECK(ds.count(6));
  CHECK_FALSE(ds.count(30));
  CHECK(majorant_violations(w, builtin_fn("prime_zero"), 20000) == 0);
}

TEST_CASE("majorant_violations") {
  const auto plan = brun_hooley_plan(100000, 3.0);
  const double half = 0.5;
  for (const MultFn& g : {builtin_fn("one"), builtin_fn("prime_zero"), builtin_fn("two_squares"),
                          builtin_fn("omega_geom", std::span(&half, 1))})
    CHECK(majorant_violations(lambda_weights(plan, g), g, 100000) == 0);
  CHECK(majorant_violations(lambda_weights(plan, builtin_fn("one")), builtin_fn("one"), 0) == 0);
  // a deliberately broken weight list is caught
  SieveWeights broken;
  broken.entries = {{1, 1.0}, {2, -1.0}};
  broken.exact = true;
  CHECK(majorant_violations(broken, builtin_fn("one"), 10) > 0);
}

TEST_CASE("weight_sum_report") {
  const auto plan = brun_hooley_plan(100000, 3.0);
  const auto r1 = weight_sum_report(lambda_weights(plan, builtin_fn("one")), builtin_fn("one"), 100000);
  CHECK(r1.s1 == 1.0);
  CHECK(r1.b1 == 9.0);
  CHECK(r1.s2 == doctest::Approx(1.0));
  CHECK(r1.b2 == 1.0);
  const double half = 0.5;
  for (const MultFn& g : {builtin_fn("two_squares"), builtin_fn("omega_geom", std::span(&half, 1)),
                          builtin_fn("prime_zero")}) {
    const auto w = lambda_weights(plan, g);
    const auto r = weight_sum_report(w, g, 100000);
    CHECK(r.s1 <= r.b1);
    CHECK(r.s2 > 0);
    CHECK(r.b2 > 0);
    // b1 is nine times the mean factor
    CHECK(r.b1 == doctest::Approx(9 * euler_products(g, 100000).mean_factor));
  }
}

TEST_CASE("survivor_scan") {
  const auto one = builtin_fn("one");
  const auto e = survivor_scan(one, 1000000, 10, 50, 50, 0.1);
  CHECK(e.fraction == 0.0);
  CHECK(e.samples >= 10000);
  CHECK(e.stride == 100);
  CHECK(e.threshold == doctest::Approx(20.1));

  // decay as (P, Q] widens, f = two_squares, X = 10^7, h within X^{1/6}
  const auto ts = builtin_fn("two_squares");
  double prev = 1.0;
  for (double Q : {20.0, 200.0, 2000.0}) {
    const auto s = survivor_scan(ts, 10000000, 14, 10, Q, 0.1);
    CHECK(s.fraction <= prev + 0.02);
    prev = s.fraction;
  }
  const auto wide = survivor_scan(one, 10000000, 14, std::pow(14.0, 0.9), 14, 0.1);
  CHECK(wide.fraction >= 0.0);
  CHECK(wide.fraction <= 1.0);

  CHECK_THROWS_AS(survivor_scan(one, 1000000, 11, 5, 10, 0.1), std::domain_error);
  CHECK_THROWS_AS(survivor_scan(one, 1000000, 10, 20, 10, 0.1), std::domain_error);
  CHECK_THROWS_AS(survivor_scan(one, 1000000, 10, 5, 1e5, 0.1), std::domain_error);
  CHECK_THROWS_AS(survivor_scan(one, 1000000, 10, 5, 10, 0.0), std::domain_error);
}
