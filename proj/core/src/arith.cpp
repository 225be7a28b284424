#include "sil/arith.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace sil {

namespace {

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Lazily filled table of f(p^k), k = 0..63, for one prime at a time.
template <class T, class Get>
struct PowerCache {
  u64 p = 0;
  T vals[64];
  bool have[64];
  Get get;
  explicit PowerCache(Get g) : get(std::move(g)) {}
  T operator()(u64 q, unsigned k) {
    if (q != p) {
      p = q;
      std::fill(std::begin(have), std::end(have), false);
    }
    if (!have[k]) {
      vals[k] = get(q, k);
      have[k] = true;
    }
    return vals[k];
  }
};

constexpr u64 chunk_len = u64{1} << 18;

// Multiplicative sieve over [start, start+len): apply(i, p, k) for each prime
// power exactly dividing start+i, then apply(i, q, 1) for the cofactor prime q.
template <class Apply>
void sieve_chunk(u64 start, u64 len, const PrimeTable& pt, std::vector<u64>& rem, Apply&& apply) {
  rem.resize(len);
  for (u64 i = 0; i < len; ++i) rem[i] = start + i;
  const u64 last = start + len - 1;
  const u64 r = isqrt(last);
  for (u64 p : pt.upto(r)) {
    u64 m = (start + p - 1) / p * p;
    for (; m <= last; m += p) {
      const u64 i = m - start;
      u64 x = rem[i];
      unsigned k = 0;
      do {
        x /= p;
        ++k;
      } while (x % p == 0);
      rem[i] = x;
      apply(i, p, k);
    }
  }
  for (u64 i = 0; i < len; ++i)
    if (rem[i] > 1) apply(i, rem[i], 1u);
}

}  // namespace

std::span<const u64> PrimeTable::upto(u64 x) const {
  auto it = std::upper_bound(primes_.begin(), primes_.end(), x);
  return {primes_.data(), static_cast<std::size_t>(it - primes_.begin())};
}

std::span<const u64> PrimeTable::between(double lo, double hi) const {
  auto a = std::upper_bound(primes_.begin(), primes_.end(), lo,
                            [](double v, u64 p) { return v < static_cast<double>(p); });
  auto b = std::upper_bound(primes_.begin(), primes_.end(), hi,
                            [](double v, u64 p) { return v < static_cast<double>(p); });
  if (b < a) b = a;
  return {primes_.data() + (a - primes_.begin()), static_cast<std::size_t>(b - a)};
}

bool PrimeTable::is_prime(u64 n) const {
  if (n > limit_) throw std::out_of_range("is_prime: n beyond table limit");
  return std::binary_search(primes_.begin(), primes_.end(), n);
}

PrimeTable sieve_primes(u64 limit) {
  if (limit < 2) throw std::domain_error("sieve_primes: limit must be >= 2");
  // odd-only sieve; bit i stands for 2i+1
  std::vector<std::uint8_t> composite(limit / 2 + 1, 0);
  for (u64 i = 1; (2 * i + 1) * (2 * i + 1) <= limit; ++i) {
    if (composite[i]) continue;
    const u64 p = 2 * i + 1;
    for (u64 j = p * p / 2; j <= limit / 2; j += p) composite[j] = 1;
  }
  std::vector<u64> primes;
  primes.reserve(static_cast<std::size_t>(1.1 * limit / std::max(1.0, std::log(double(limit)) - 1.1)) + 8);
  primes.push_back(2);
  for (u64 i = 1; 2 * i + 1 <= limit; ++i)
    if (!composite[i]) primes.push_back(2 * i + 1);
  return PrimeTable(limit, std::move(primes));
}

std::shared_ptr<const PrimeTable> shared_primes(u64 limit) {
  static std::mutex mu;
  static std::shared_ptr<const PrimeTable> cached;
  std::lock_guard<std::mutex> lock(mu);
  if (!cached || cached->limit() < limit) {
    u64 want = std::max<u64>(limit, cached ? cached->limit() * 2 : 1u << 16);
    cached = std::make_shared<const PrimeTable>(sieve_primes(want));
  }
  return cached;
}

std::span<const PrimePower> FactorWindow::of(u64 n) const {
  if (!contains(n)) throw std::out_of_range("FactorWindow: n=" + std::to_string(n) + " outside window");
  return at(n - start_);
}

FactorWindow factor_window(u64 start, u64 len, const PrimeTable& aux) {
  if (start < 2) throw std::domain_error("factor_window: start must be >= 2");
  if (len == 0) throw std::domain_error("factor_window: len must be positive");
  if (aux.limit() < isqrt(start + len)) throw precondition_error("factor_window: prime table too small");

  struct Triple {
    std::uint32_t i;
    PrimePower pp;
  };
  std::vector<Triple> trip;
  trip.reserve(len * 3);
  std::vector<u64> rem;
  sieve_chunk(start, len, aux, rem,
              [&](u64 i, u64 p, unsigned k) { trip.push_back({static_cast<std::uint32_t>(i), {p, static_cast<std::uint8_t>(k)}}); });

  FactorWindow fw;
  fw.start_ = start;
  fw.len_ = len;
  fw.off_.assign(len + 1, 0);
  for (const auto& t : trip) ++fw.off_[t.i + 1];
  for (u64 i = 0; i < len; ++i) fw.off_[i + 1] += fw.off_[i];
  fw.pp_.resize(trip.size());
  std::vector<std::uint32_t> pos(fw.off_.begin(), fw.off_.end() - 1);
  // primes were emitted in ascending order per n (the cofactor comes last)
  for (const auto& t : trip) fw.pp_[pos[t.i]++] = t.pp;
  return fw;
}

FactorWindow factor_window(u64 start, u64 len) {
  return factor_window(start, len, *shared_primes(isqrt(start + len) + 1));
}

MultFn MultFn::twisted(double tau) const {
  if (tau == 0.0) return *this;
  auto r = rule_;
  return MultFn(name_ + "*n^it", [r, tau](u64 p, unsigned k) {
    return r(p, k) * std::polar(1.0, tau * k * std::log(static_cast<double>(p)));
  });
}

MultFn MultFn::modulus() const {
  auto r = rule_;
  IntRule ir;
  if (int_rule_) {
    auto i0 = int_rule_;
    ir = [i0](u64 p, unsigned k) { return std::abs(i0(p, k)); };
  }
  return MultFn("|" + name_ + "|", [r](u64 p, unsigned k) { return cplx(std::abs(r(p, k)), 0.0); }, true, ir);
}

MultFn MultFn::vanishing_on(double lo, double hi) const {
  auto r = rule_;
  auto in = [lo, hi](u64 p) { return static_cast<double>(p) > lo && static_cast<double>(p) <= hi; };
  IntRule ir;
  if (int_rule_) {
    auto i0 = int_rule_;
    ir = [i0, in](u64 p, unsigned k) { return in(p) ? 0 : i0(p, k); };
  }
  return MultFn(name_, [r, in](u64 p, unsigned k) { return in(p) ? cplx(0.0) : r(p, k); }, almost_real_, ir);
}

namespace {

MultFn integral_fn(std::string name, std::function<int(u64, unsigned)> rule) {
  auto c = [rule](u64 p, unsigned k) { return cplx(rule(p, k), 0.0); };
  return MultFn(std::move(name), c, true, rule);
}

void want_params(std::string_view name, std::span<const double> params, std::size_t n) {
  if (params.size() != n)
    throw std::domain_error("builtin_fn: " + std::string(name) + " takes " + std::to_string(n) + " parameter(s)");
  for (double v : params)
    if (!std::isfinite(v)) throw std::domain_error("builtin_fn: non-finite parameter");
}

std::string fmt_param(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

MultFn builtin_fn(std::string_view name, std::span<const double> params) {
  if (name == "one") {
    want_params(name, params, 0);
    return integral_fn("one", [](u64, unsigned) { return 1; });
  }
  if (name == "moebius") {
    want_params(name, params, 0);
    return integral_fn("moebius", [](u64, unsigned k) { return k == 1 ? -1 : 0; });
  }
  if (name == "liouville") {
    want_params(name, params, 0);
    return integral_fn("liouville", [](u64, unsigned k) { return (k & 1) ? -1 : 1; });
  }
  if (name == "prime_zero") {
    want_params(name, params, 0);
    return integral_fn("prime_zero", [](u64, unsigned) { return 0; });
  }
  if (name == "two_squares") {
    want_params(name, params, 0);
    return integral_fn("two_squares", [](u64 p, unsigned k) { return (p % 4 == 3 && (k & 1)) ? 0 : 1; });
  }
  if (name == "char_mod4") {
    want_params(name, params, 0);
    return integral_fn("char_mod4", [](u64 p, unsigned k) {
      if (p == 2) return 0;
      return (p % 4 == 3 && (k & 1)) ? -1 : 1;
    });
  }
  if (name == "nit") {
    want_params(name, params, 1);
    const double tau = params[0];
    if (tau == 0.0) return integral_fn("nit(0)", [](u64, unsigned) { return 1; });
    return MultFn("nit(" + fmt_param(tau) + ")", [tau](u64 p, unsigned k) {
      return std::polar(1.0, tau * k * std::log(static_cast<double>(p)));
    });
  }
  if (name == "omega_geom") {
    want_params(name, params, 1);
    const double eps = params[0];
    if (eps < 0.0 || eps > 1.0) throw std::domain_error("builtin_fn: omega_geom needs eps in [0,1]");
    return MultFn("omega_geom(" + fmt_param(eps) + ")",
                  [eps](u64, unsigned k) { return cplx(std::pow(eps, static_cast<int>(k)), 0.0); }, true);
  }
  if (name == "smooth_at") {
    want_params(name, params, 2);
    const double theta = params[0], X = params[1];
    if (!(theta > 0.0 && theta <= 1.0) || X < 2.0)
      throw std::domain_error("builtin_fn: smooth_at needs theta in (0,1] and X >= 2");
    const double bound = std::pow(X, theta);
    return integral_fn("smooth_at(" + fmt_param(theta) + "," + fmt_param(X) + ")",
                       [bound](u64 p, unsigned) { return static_cast<double>(p) <= bound ? 1 : 0; });
  }
  throw std::domain_error("builtin_fn: unknown function '" + std::string(name) + "'");
}

MultFn parse_fn(std::string_view spec) {
  auto lp = spec.find('(');
  if (lp == std::string_view::npos) return builtin_fn(spec);
  if (spec.back() != ')') throw std::domain_error("parse_fn: malformed '" + std::string(spec) + "'");
  std::string_view name = spec.substr(0, lp);
  std::string_view args = spec.substr(lp + 1, spec.size() - lp - 2);
  std::vector<double> params;
  while (!args.empty()) {
    auto comma = args.find(',');
    std::string tok(args.substr(0, comma));
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw std::domain_error("parse_fn: bad parameter '" + tok + "'");
    }
    if (used != tok.size()) throw std::domain_error("parse_fn: bad parameter '" + tok + "'");
    params.push_back(v);
    if (comma == std::string_view::npos) break;
    args.remove_prefix(comma + 1);
  }
  return builtin_fn(name, params);
}

cplx eval_factored(const MultFn& f, std::span<const PrimePower> fac) {
  cplx v = 1.0;
  for (const auto& pp : fac) v *= f.at(pp.p, pp.e);
  return v;
}

int eval_factored_int(const MultFn& f, std::span<const PrimePower> fac) {
  if (!f.integral()) throw std::domain_error("eval_fn_int: " + f.name() + " is not integral");
  int v = 1;
  for (const auto& pp : fac) {
    v *= f.int_at(pp.p, pp.e);
    if (v == 0) break;
  }
  return v;
}

cplx eval_fn(const MultFn& f, u64 n, const FactorWindow& fw) {
  if (f.integral()) return static_cast<double>(eval_factored_int(f, fw.of(n)));
  return eval_factored(f, fw.of(n));
}

int eval_fn_int(const MultFn& f, u64 n, const FactorWindow& fw) { return eval_factored_int(f, fw.of(n)); }

std::vector<cplx> window_eval(const MultFn& f, const FactorWindow& fw) {
  std::vector<cplx> out(fw.len());
  for (u64 i = 0; i < fw.len(); ++i)
    out[i] = f.integral() ? cplx(eval_factored_int(f, fw.at(i))) : eval_factored(f, fw.at(i));
  return out;
}

std::vector<std::int8_t> window_eval_int(const MultFn& f, const FactorWindow& fw) {
  std::vector<std::int8_t> out(fw.len());
  for (u64 i = 0; i < fw.len(); ++i) out[i] = static_cast<std::int8_t>(eval_factored_int(f, fw.at(i)));
  return out;
}

namespace {

template <class T, class Get>
std::vector<T> range_generic(u64 start, u64 len, Get get) {
  if (start < 1) throw std::domain_error("range_values: start must be >= 1");
  std::vector<T> out(len, T(1));
  if (len == 0) return out;
  auto pt = shared_primes(isqrt(start + len) + 1);
  PowerCache<T, Get> cache(get);
  std::vector<u64> rem;
  for (u64 c0 = 0; c0 < len; c0 += chunk_len) {
    const u64 cl = std::min(chunk_len, len - c0);
    T* base = out.data() + c0;
    sieve_chunk(start + c0, cl, *pt, rem, [&](u64 i, u64 p, unsigned k) {
      if (base[i] != T(0)) base[i] = static_cast<T>(base[i] * (k == 1 && p > 1000 ? get(p, k) : cache(p, k)));
    });
  }
  return out;
}

}  // namespace

std::vector<cplx> range_values(const MultFn& f, u64 start, u64 len) {
  return range_generic<cplx>(start, len, [&f](u64 p, unsigned k) { return f.at(p, k); });
}

std::vector<std::int8_t> range_values_int(const MultFn& f, u64 start, u64 len) {
  if (!f.integral()) throw std::domain_error("range_values_int: " + f.name() + " is not integral");
  return range_generic<std::int8_t>(start, len,
                                    [&f](u64 p, unsigned k) { return static_cast<std::int8_t>(f.int_at(p, k)); });
}

std::vector<std::uint8_t> range_smooth_exact(u64 start, u64 len, double theta) {
  if (start < 1) throw std::domain_error("range_smooth_exact: start must be >= 1");
  std::vector<std::uint8_t> out(len, 1);
  if (len == 0) return out;
  auto pt = shared_primes(isqrt(start + len) + 1);
  std::vector<u64> rem, big(std::min(chunk_len, len));
  for (u64 c0 = 0; c0 < len; c0 += chunk_len) {
    const u64 cl = std::min(chunk_len, len - c0);
    std::fill(big.begin(), big.begin() + cl, 1);
    sieve_chunk(start + c0, cl, *pt, rem, [&](u64 i, u64 p, unsigned) { big[i] = std::max(big[i], p); });
    for (u64 i = 0; i < cl; ++i) {
      const double n = static_cast<double>(start + c0 + i);
      out[c0 + i] = std::log(static_cast<double>(big[i])) <= theta * std::log(n) + 1e-12;
    }
  }
  return out;
}

void for_each_factored(u64 start, u64 len, const std::function<void(u64, std::span<const PrimePower>)>& fn) {
  if (len == 0) return;
  if (start == 0) throw std::domain_error("for_each_factored: start must be >= 1");
  if (start == 1) {
    fn(1, {});
    ++start;
    --len;
  }
  constexpr u64 step = u64{1} << 16;
  for (u64 c0 = 0; c0 < len; c0 += step) {
    const u64 cl = std::min(step, len - c0);
    FactorWindow fw = factor_window(start + c0, cl);
    for (u64 i = 0; i < cl; ++i) fn(start + c0 + i, fw.at(i));
  }
}

cplx long_mean(const MultFn& f, u64 X, double t) {
  if (X < 2) throw std::domain_error("long_mean: X must be >= 2");
  cplx total = 0.0;
  for (u64 c0 = 0; c0 < X; c0 += chunk_len) {
    const u64 cl = std::min(chunk_len, X - c0);
    const u64 s = X + 1 + c0;
    cplx part = 0.0;
    if (f.integral()) {
      auto v = range_values_int(f, s, cl);
      for (u64 i = 0; i < cl; ++i)
        if (v[i]) part += static_cast<double>(v[i]) * (t == 0.0 ? cplx(1.0) : std::polar(1.0, -t * std::log(double(s + i))));
    } else {
      auto v = range_values(f, s, cl);
      for (u64 i = 0; i < cl; ++i)
        part += v[i] * (t == 0.0 ? cplx(1.0) : std::polar(1.0, -t * std::log(double(s + i))));
    }
    total += part;
  }
  return total / static_cast<double>(X);
}

}  // namespace sil
