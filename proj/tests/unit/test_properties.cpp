#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "sil/lab.hpp"
#include "sil/normform.hpp"
#include "sil/pretence.hpp"

using namespace sil;

namespace {

// prod_{p <= x} (1 + (|f(p)| - 1)/p)
double mertens_product(const MultFn& f, u64 x) {
  double prod = 1;
  const auto table = sieve_primes(x);
  for (u64 p : table.primes()) prod *= 1 + (std::abs(f.at(p, 1)) - 1) / double(p);
  return prod;
}

}  // namespace

TEST_CASE("multiplicativity on random coprime pairs") {
  std::mt19937_64 rng(11);
  const auto fw = factor_window(2, 1000000);
  const double e = 0.5;
  const std::vector<MultFn> fns{builtin_fn("moebius"), builtin_fn("liouville"), builtin_fn("two_squares"),
                                builtin_fn("char_mod4"), parse_fn("nit(7)"), builtin_fn("omega_geom", std::span(&e, 1))};
  std::uniform_int_distribution<u64> d(2, 1000);
  int tested = 0;
  while (tested < 2000) {
    const u64 m = d(rng), n = d(rng);
    if (std::gcd(m, n) != 1) continue;
    ++tested;
    for (const auto& f : fns) {
      if (f.integral()) CHECK(eval_fn_int(f, m * n, fw) == eval_fn_int(f, m, fw) * eval_fn_int(f, n, fw));
      CHECK(std::abs(eval_fn(f, m * n, fw) - eval_fn(f, m, fw) * eval_fn(f, n, fw)) <= 1e-12);
    }
  }
}

TEST_CASE("rearrangement never gives lhs < rhs on random rationals") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> num(0, 12), den(1, 12), len(1, 9);
  for (int it = 0; it < 2000; ++it) {
    const int N = len(rng);
    std::vector<Rational> a, b;
    Rational sa(0);
    for (int i = 0; i < N; ++i) {
      const int q = den(rng);
      a.emplace_back(std::min(num(rng), q), q);
      b.emplace_back(num(rng), den(rng));
      sa += a.back();
    }
    const auto n0 = static_cast<std::size_t>(numerator(sa) / denominator(sa));
    if (n0 == 0) continue;
    const auto [l, r] = rearrangement_check(a, b, n0);
    CHECK(l >= r);
  }
}

TEST_CASE("rho_alpha is positive and strictly increasing") {
  double prev = 0;
  for (int k = 1; k <= 1000; ++k) {
    const double r = rho_alpha(k / 1000.0);
    CHECK(r > 0);
    CHECK(r > prev);
    prev = r;
  }
}

TEST_CASE("mean of non-negative functions against the Mertens cap") {
  const double e = 0.5;
  for (u64 X : {u64{10000}, u64{100000}, u64{1000000}}) {
    const double th[2] = {0.3, double(X)};
    const std::vector<MultFn> fns{builtin_fn("one"), builtin_fn("prime_zero"), builtin_fn("two_squares"),
                                  builtin_fn("omega_geom", std::span(&e, 1)), builtin_fn("smooth_at", th)};
    for (const auto& f : fns) {
      const double mean = long_mean(f, X, 0).real();
      CHECK(mean <= 10 * mertens_product(f, X));
      CHECK(mean >= 0);
    }
  }
}

TEST_CASE("short sums of sparse functions scale with the Mertens product") {
  const double e = 0.5;
  for (const auto& f : {builtin_fn("two_squares"), builtin_fn("omega_geom", std::span(&e, 1))}) {
    std::vector<double> ratios;
    for (u64 x : {u64{100000}, u64{1000000}, u64{10000000}}) {
      const u64 y = u64(std::pow(double(x), 0.6));
      double s = 0;
      for (const cplx& v : range_values(f, x + 1, y)) s += std::abs(v);
      ratios.push_back(s / (double(y) * mertens_product(f, x)));
    }
    const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
    CHECK(*hi / *lo <= 3.0);
  }
}

TEST_CASE("exceptional fraction is non-increasing in h") {
  const std::vector<double> deltas{0.1};
  double prev = 2;
  for (u64 h : {u64{100}, u64{1000}, u64{10000}}) {
    const auto r = run_scan(builtin_fn("moebius"), 100000000, h, 0, deltas);  // h <= X^{1/2}
    const double frac = r.exceptional_fraction[0].second;
    CHECK(frac <= prev + 0.02);
    prev = frac;
  }
}

TEST_CASE("every bound ratio is finite, positive and stable") {
  for (const auto& id : bound_ids()) {
    CAPTURE(id);
    const auto r = measure_bound(id, {}, 1);
    CHECK(std::isfinite(r.ratio));
    CHECK(r.ratio > 0);
    CHECK(r.rhs > 0);
    CHECK(r.ratio == doctest::Approx(r.lhs / r.rhs));
    for (const auto& s : r.sweep) {
      CHECK(std::isfinite(s.ratio));
      CHECK(s.ratio > 0);
    }
    CHECK(r.sweep_spread() < 4.0);
  }
}

TEST_CASE("element norms never exceed ideal norms") {
  const auto fw = factor_window(2, 19999);
  for (const char* poly : {"x^2+1", "x^2+5", "x^2+6", "x^2+14", "x^3-2"}) {
    CAPTURE(poly);
    const auto K = parse_field(poly);
    for (u64 n = 2; n <= 20000; ++n) CHECK(normform_indicator(K, n, fw) <= ideal_norm_indicator(K, n, fw));
  }
}
