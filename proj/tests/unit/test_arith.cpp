#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "sil/arith.hpp"

using namespace sil;

namespace {

u64 trial_division_count(u64 limit) {
  u64 c = 0;
  for (u64 n = 2; n <= limit; ++n) {
    bool prime = true;
    for (u64 d = 2; d * d <= n; ++d)
      if (n % d == 0) {
        prime = false;
        break;
      }
    c += prime;
  }
  return c;
}

u64 reconstruct(std::span<const PrimePower> fac) {
  u64 n = 1;
  for (const auto& pp : fac)
    for (unsigned k = 0; k < pp.e; ++k) n *= pp.p;
  return n;
}

}  // namespace

TEST_CASE("sieve_primes small tables") {
  CHECK(sieve_primes(10).primes() == std::vector<u64>{2, 3, 5, 7});
  CHECK(sieve_primes(2).primes() == std::vector<u64>{2});
  CHECK(sieve_primes(3).primes() == std::vector<u64>{2, 3});
  CHECK_THROWS_AS(sieve_primes(1), std::domain_error);
  CHECK_THROWS_AS(sieve_primes(0), std::domain_error);
}

TEST_CASE("sieve_primes matches trial division at 10^6") {
  const auto t = sieve_primes(1000000);
  CHECK(t.size() == 78498);
  CHECK(trial_division_count(100000) == sieve_primes(100000).size());
}

TEST_CASE("PrimeTable queries") {
  const auto t = sieve_primes(100);
  CHECK(t.upto(10).size() == 4);
  CHECK(t.upto(1000).size() == 25);
  CHECK(t.between(10, 20).size() == 4);  // 11 13 17 19
  CHECK(t.is_prime(97));
  CHECK_FALSE(t.is_prime(91));
  CHECK_THROWS_AS(t.is_prime(101), std::out_of_range);
  CHECK(shared_primes(1000)->limit() >= 1000);
}

TEST_CASE("factor_window examples") {
  const auto fw = factor_window(10, 3);
  auto f10 = fw.of(10);
  REQUIRE(f10.size() == 2);
  CHECK(f10[0].p == 2);
  CHECK(f10[0].e == 1);
  CHECK(f10[1].p == 5);
  CHECK(fw.of(11).size() == 1);
  auto f12 = fw.of(12);
  REQUIRE(f12.size() == 2);
  CHECK(f12[0].p == 2);
  CHECK(f12[0].e == 2);
  CHECK(f12[1].p == 3);
  CHECK_THROWS_AS(fw.of(13), std::out_of_range);
  CHECK_THROWS_AS(fw.of(9), std::out_of_range);

  const auto big = factor_window(1000000, 1);
  auto f = big.of(1000000);
  REQUIRE(f.size() == 2);
  CHECK((f[0].p == 2 && f[0].e == 6 && f[1].p == 5 && f[1].e == 6));
}

TEST_CASE("factor_window errors") {
  CHECK_THROWS_AS(factor_window(1, 5), std::domain_error);
  CHECK_THROWS_AS(factor_window(10, 0), std::domain_error);
  const auto small = sieve_primes(10);
  CHECK_THROWS_AS(factor_window(1000, 10, small), precondition_error);
}

TEST_CASE("factor_window reconstruction near 10^9") {
  const auto fw = factor_window(1000000000, 10000);
  for (u64 i = 0; i < fw.len(); ++i) {
    CHECK(reconstruct(fw.at(i)) == fw.start() + i);
    auto fac = fw.at(i);
    for (std::size_t k = 1; k < fac.size(); ++k) CHECK(fac[k - 1].p < fac[k].p);
  }
}

TEST_CASE("builtin functions") {
  const auto fw = factor_window(2, 100);
  const auto mu = builtin_fn("moebius");
  CHECK(eval_fn_int(mu, 4, fw) == 0);
  CHECK(eval_fn_int(mu, 6, fw) == 1);
  CHECK(eval_fn_int(mu, 30, fw) == -1);
  CHECK(eval_factored_int(mu, {}) == 1);

  const auto ts = builtin_fn("two_squares");
  for (u64 n : {5, 9, 45, 2, 50}) CHECK(eval_fn_int(ts, n, fw) == 1);
  for (u64 n : {3, 21, 27, 6}) CHECK(eval_fn_int(ts, n, fw) == 0);

  const double half = 0.5;
  const auto og = builtin_fn("omega_geom", std::span(&half, 1));
  CHECK(eval_fn(og, 12, fw).real() == doctest::Approx(0.125));

  const auto lam = builtin_fn("liouville");
  CHECK(eval_fn_int(lam, 12, fw) == -1);
  CHECK(eval_fn_int(lam, 36, fw) == 1);

  const auto chi = builtin_fn("char_mod4");
  CHECK(eval_fn_int(chi, 5, fw) == 1);
  CHECK(eval_fn_int(chi, 3, fw) == -1);
  CHECK(eval_fn_int(chi, 4, fw) == 0);
  CHECK(eval_fn_int(chi, 15, fw) == -1);

  const auto sm = parse_fn("smooth_at(0.5,100)");  // primes <= 10
  CHECK(eval_fn_int(sm, 70, fw) == 1);
  CHECK(eval_fn_int(sm, 22, fw) == 0);
}

TEST_CASE("nit has modulus one and the right phase") {
  const auto fw = factor_window(2, 100);
  const auto f = parse_fn("nit(5)");
  CHECK_FALSE(f.integral());
  for (u64 n : {2, 12, 97}) {
    const cplx v = eval_fn(f, n, fw);
    CHECK(std::abs(v) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(v - std::polar(1.0, 5.0 * std::log(double(n)))) < 1e-12);
  }
}

TEST_CASE("builtin_fn and parse_fn errors") {
  CHECK_THROWS_AS(builtin_fn("nope"), std::domain_error);
  CHECK_THROWS_AS(builtin_fn("nit"), std::domain_error);
  const double bad = 2.0;
  CHECK_THROWS_AS(builtin_fn("omega_geom", std::span(&bad, 1)), std::domain_error);
  CHECK_THROWS_AS(parse_fn("nit(5"), std::domain_error);
  CHECK_THROWS_AS(parse_fn("nit(abc)"), std::domain_error);
  CHECK_THROWS_AS(parse_fn("smooth_at(2,100)"), std::domain_error);
  CHECK_THROWS_AS(eval_fn_int(parse_fn("nit(1)"), 5, factor_window(2, 10)), std::domain_error);
}

TEST_CASE("window_eval agrees with eval_fn") {
  const auto fw = factor_window(10, 3);
  const auto mu = window_eval_int(builtin_fn("moebius"), fw);
  CHECK(mu == std::vector<std::int8_t>{1, -1, 0});
  const auto ones = window_eval(builtin_fn("one"), factor_window(1000, 50));
  for (auto v : ones) CHECK(v == cplx(1.0));

  const auto big = factor_window(1000000, 20000);
  const double eps = 0.3;
  for (const MultFn& f : {builtin_fn("two_squares"), parse_fn("nit(3)"), builtin_fn("omega_geom", std::span(&eps, 1))}) {
    const auto w = window_eval(f, big);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<u64> pick(0, big.len() - 1);
    for (int k = 0; k < 1000; ++k) {
      const u64 i = pick(rng);
      CHECK(std::abs(w[i] - eval_fn(f, big.start() + i, big)) < 1e-12);
    }
  }
}

TEST_CASE("range_values agrees with window_eval") {
  const auto f = parse_fn("nit(2)");
  const auto fw = factor_window(500000, 3000);
  const auto a = window_eval(f, fw);
  const auto b = range_values(f, 500000, 3000);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-12);
  const auto mi = range_values_int(builtin_fn("moebius"), 1, 13);
  CHECK(mi == std::vector<std::int8_t>{1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0, -1});
  CHECK_THROWS_AS(range_values(f, 0, 5), std::domain_error);
  CHECK_THROWS_AS(range_values_int(f, 1, 5), std::domain_error);
}

TEST_CASE("range_smooth_exact") {
  // 64 = 2^6 is 0.5-smooth; 2*37 = 74 is not (37 > sqrt 74)
  const auto m = range_smooth_exact(64, 11, 0.5);
  CHECK(m[0] == 1);
  CHECK(m[74 - 64] == 0);
  CHECK(m[72 - 64] == 1);
  CHECK_THROWS_AS(range_smooth_exact(0, 5, 0.5), std::domain_error);
}

TEST_CASE("multiplicativity on coprime pairs") {
  const auto fw = factor_window(2, 20000);
  const auto chi = builtin_fn("char_mod4");
  const auto nt = parse_fn("nit(1.5)");
  for (u64 m = 2; m < 140; ++m)
    for (u64 n = 2; n < 140; ++n) {
      if (std::gcd(m, n) != 1) continue;
      CHECK(eval_fn_int(chi, m * n, fw) == eval_fn_int(chi, m, fw) * eval_fn_int(chi, n, fw));
      CHECK(std::abs(eval_fn(nt, m * n, fw) - eval_fn(nt, m, fw) * eval_fn(nt, n, fw)) < 1e-12);
    }
}

TEST_CASE("MultFn adapters") {
  const auto fw = factor_window(2, 100);
  const auto mu = builtin_fn("moebius");
  CHECK(eval_fn(mu.modulus(), 30, fw) == cplx(1.0));
  CHECK(eval_fn(mu.vanishing_on(4, 6), 30, fw) == cplx(0.0));
  CHECK(eval_fn(mu.vanishing_on(4, 6), 6, fw) == cplx(1.0));
  const cplx v = eval_fn(builtin_fn("one").twisted(2.0), 7, fw);
  CHECK(std::abs(v - std::polar(1.0, 2.0 * std::log(7.0))) < 1e-12);
}

TEST_CASE("for_each_factored visits in order") {
  u64 expect = 100;
  for_each_factored(100, 500, [&](u64 n, std::span<const PrimePower> fac) {
    CHECK(n == expect++);
    CHECK(reconstruct(fac) == n);
  });
  CHECK(expect == 600);
  CHECK_THROWS_AS(for_each_factored(0, 5, [](u64, std::span<const PrimePower>) {}), std::domain_error);
}

TEST_CASE("long_mean") {
  CHECK(std::abs(long_mean(builtin_fn("one"), 1000, 0) - cplx(1.0)) < 1e-12);
  CHECK(std::abs(long_mean(builtin_fn("moebius"), 1000000, 0)) < 0.01);
  const cplx ts = long_mean(builtin_fn("two_squares"), 1000000, 0);
  CHECK(ts.real() > 0);
  CHECK(ts.imag() == 0.0);
  CHECK(ts.real() < 0.3);
  CHECK_THROWS_AS(long_mean(builtin_fn("one"), 1, 0), std::domain_error);
}
