#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sil/error.hpp"

namespace sil {

using u64 = std::uint64_t;
using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

class PrimeTable {
 public:
  PrimeTable() = default;
  PrimeTable(u64 limit, std::vector<u64> primes) : limit_(limit), primes_(std::move(primes)) {}

  u64 limit() const { return limit_; }
  const std::vector<u64>& primes() const { return primes_; }
  std::size_t size() const { return primes_.size(); }

  // primes p <= x (x clipped to limit)
  std::span<const u64> upto(u64 x) const;
  // primes in (lo, hi]
  std::span<const u64> between(double lo, double hi) const;
  bool is_prime(u64 n) const;

 private:
  u64 limit_ = 0;
  std::vector<u64> primes_;
};

PrimeTable sieve_primes(u64 limit);

// Process-wide cache: returns a table with limit >= `limit`. Tables are immutable.
std::shared_ptr<const PrimeTable> shared_primes(u64 limit);

struct PrimePower {
  u64 p;
  std::uint8_t e;
};

class FactorWindow {
 public:
  FactorWindow() = default;

  u64 start() const { return start_; }
  u64 len() const { return len_; }
  bool contains(u64 n) const { return n >= start_ && n - start_ < len_; }

  // factorization of start+i, ascending primes
  std::span<const PrimePower> at(u64 i) const {
    return {pp_.data() + off_[i], pp_.data() + off_[i + 1]};
  }
  // factorization of n; throws std::out_of_range outside the window
  std::span<const PrimePower> of(u64 n) const;

 private:
  friend FactorWindow factor_window(u64, u64, const PrimeTable&);
  u64 start_ = 0, len_ = 0;
  std::vector<std::uint32_t> off_;
  std::vector<PrimePower> pp_;
};

FactorWindow factor_window(u64 start, u64 len, const PrimeTable& aux);
// convenience: uses the shared prime cache
FactorWindow factor_window(u64 start, u64 len);

// Multiplicative function given on prime powers. Integral functions (values in
// {-1,0,1}) also carry an exact integer rule.
class MultFn {
 public:
  using Rule = std::function<cplx(u64, unsigned)>;
  using IntRule = std::function<int(u64, unsigned)>;

  MultFn() = default;
  MultFn(std::string name, Rule rule, bool almost_real = false, IntRule int_rule = {})
      : name_(std::move(name)), rule_(std::move(rule)), int_rule_(std::move(int_rule)),
        almost_real_(almost_real) {}

  const std::string& name() const { return name_; }
  bool almost_real() const { return almost_real_; }
  bool integral() const { return static_cast<bool>(int_rule_); }

  cplx at(u64 p, unsigned k) const { return rule_(p, k); }
  int int_at(u64 p, unsigned k) const { return int_rule_(p, k); }

  // n -> f(n) n^{i tau}
  MultFn twisted(double tau) const;
  // n -> |f(n)|
  MultFn modulus() const;
  // zero on every prime power p^k with p in (lo, hi]
  MultFn vanishing_on(double lo, double hi) const;

 private:
  std::string name_;
  Rule rule_;
  IntRule int_rule_;
  bool almost_real_ = false;
};

// one, moebius, liouville, nit(tau), omega_geom(eps), two_squares,
// smooth_at(theta, X), char_mod4, prime_zero
MultFn builtin_fn(std::string_view name, std::span<const double> params = {});
// "nit(5)", "smooth_at(0.3,1e6)", "moebius"
MultFn parse_fn(std::string_view spec);

cplx eval_fn(const MultFn& f, u64 n, const FactorWindow& fw);
int eval_fn_int(const MultFn& f, u64 n, const FactorWindow& fw);
cplx eval_factored(const MultFn& f, std::span<const PrimePower> fac);
int eval_factored_int(const MultFn& f, std::span<const PrimePower> fac);

std::vector<cplx> window_eval(const MultFn& f, const FactorWindow& fw);
std::vector<std::int8_t> window_eval_int(const MultFn& f, const FactorWindow& fw);

// Values on [start, start+len) by a multiplicative sieve (no stored factorizations).
// start >= 1.
std::vector<cplx> range_values(const MultFn& f, u64 start, u64 len);
std::vector<std::int8_t> range_values_int(const MultFn& f, u64 start, u64 len);
// 1 iff every prime factor of n is <= n^theta (the exact, non-multiplicative set)
std::vector<std::uint8_t> range_smooth_exact(u64 start, u64 len, double theta);

// Calls fn(n, factorization) for n in [start, start+len), in ascending order.
void for_each_factored(u64 start, u64 len,
                       const std::function<void(u64, std::span<const PrimePower>)>& fn);

// (1/X) sum_{X<n<=2X} f(n) n^{-it}
cplx long_mean(const MultFn& f, u64 X, double t);

}  // namespace sil
