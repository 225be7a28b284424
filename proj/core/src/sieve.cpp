#include "sil/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace sil {

double iterated_log(double x, int k) {
  for (int i = 0; i < k; ++i) {
    if (!(x > 0.0)) return std::nan("");
    x = std::log(x);
  }
  return x;
}

std::size_t SievePlan::block_of(u64 p) const {
  const double v = static_cast<double>(p);
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (v > blocks[i].lo && v <= blocks[i].hi) return i;
  return blocks.size() - 1;  // beyond 4X: no-large-prime rule
}

std::vector<u64> linear_sieve_support(double D, double z, std::span<const u64> P) {
  if (!(z >= 1.0 && D >= z)) throw std::domain_error("linear_sieve_support: need D >= z >= 1");
  std::vector<u64> ps;
  for (u64 p : P)
    if (static_cast<double>(p) < z) ps.push_back(p);
  std::sort(ps.begin(), ps.end(), std::greater<>());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());

  std::vector<u64> out{1};
  // d = p_1 > p_2 > ... ; `prefix` is p_1...p_{l-1} when choosing p_l
  std::function<void(std::size_t, long double, int)> rec = [&](std::size_t from, long double prefix, int r) {
    for (std::size_t i = from; i < ps.size(); ++i) {
      const long double p = static_cast<long double>(ps[i]);
      const long double d = prefix * p;
      if (d > D) continue;
      const int l = r + 1;
      if ((l & 1) && prefix * p * p * p > D) continue;
      out.push_back(static_cast<u64>(d));
      rec(i + 1, d, l);
    }
  };
  rec(0, 1.0L, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<u64> linear_sieve_support(u64 D, u64 z, std::span<const u64> P) {
  return linear_sieve_support(static_cast<double>(D), static_cast<double>(z), P);
}

SievePlan brun_hooley_plan(u64 X, double tau) {
  if (X < 100) throw std::domain_error("brun_hooley_plan: X must be >= 100");
  if (!std::isfinite(tau)) throw std::domain_error("brun_hooley_plan: tau must be finite");
  const double x = static_cast<double>(X);
  int K = 0;
  for (int k = 1;; ++k) {
    const double l = iterated_log(x, k);
    if (!(l > tau)) break;
    K = k;
  }
  if (K == 0) throw std::domain_error("brun_hooley_plan: tau leaves no block (K = 0)");
  const double logX = std::log(x);
  const double top = std::exp(logX / 7.0);
  auto edge = [&](int k) { return k == 1 ? 1.0 : std::exp(logX / std::pow(iterated_log(x, k), 2.0)); };
  if (!(edge(K) < top)) throw std::domain_error("brun_hooley_plan: tau too small, linear-sieve block is empty");

  SievePlan plan;
  plan.X = X;
  plan.tau = tau;
  plan.K = K;
  for (int k = 1; k < K; ++k) {
    SieveBlock b;
    b.k = k;
    b.lo = edge(k);
    b.hi = edge(k + 1);
    b.rule = BlockRule::truncation;
    b.truncation = 30 * static_cast<int>(std::floor(iterated_log(x, k + 1)));
    plan.blocks.push_back(b);
  }
  SieveBlock lin;
  lin.k = K;
  lin.lo = edge(K);
  lin.hi = top;
  lin.rule = BlockRule::linear;
  lin.D = std::exp((0.4 - 0.001) * logX);
  lin.z = top;
  plan.blocks.push_back(lin);
  SieveBlock ex;
  ex.k = K + 1;
  ex.lo = top;
  ex.hi = 4.0 * x;
  ex.rule = BlockRule::exclude_all;
  plan.blocks.push_back(ex);

  auto pt = shared_primes(static_cast<u64>(top) + 2);
  auto ps = pt->between(lin.lo, lin.hi);
  // every prime of I_K lies below z except possibly z itself; pass z slightly above
  plan.splus = linear_sieve_support(lin.D, std::nextafter(lin.z, INFINITY), ps);
  return plan;
}

int chi_value(const SievePlan& plan, std::span<const PrimePower> fac) {
  std::vector<int> count(plan.blocks.size(), 0);
  u64 lin = 1;
  for (const auto& pp : fac) {
    const std::size_t b = plan.block_of(pp.p);
    const auto& blk = plan.blocks[b];
    if (blk.rule == BlockRule::exclude_all) return 0;
    if (blk.rule == BlockRule::linear) {
      lin *= pp.p;
    } else if (++count[b] > blk.truncation) {
      return 0;
    }
  }
  return std::binary_search(plan.splus.begin(), plan.splus.end(), lin) ? 1 : 0;
}

int chi_value(const SievePlan& plan, u64 d, const FactorWindow& fw) { return chi_value(plan, fw.of(d)); }

int chi_value(const SievePlan& plan, u64 d) {
  if (d == 0) throw std::domain_error("chi_value: d must be positive");
  std::vector<PrimePower> fac;
  for (u64 p = 2; p * p <= d; ++p) {
    if (d % p) continue;
    std::uint8_t e = 0;
    while (d % p == 0) {
      d /= p;
      ++e;
    }
    fac.push_back({p, e});
  }
  if (d > 1) fac.push_back({d, 1});
  return chi_value(plan, fac);
}

SieveWeights lambda_weights(const SievePlan& plan, const MultFn& g) {
  SieveWeights w;
  w.g_name = g.name();
  w.exact = g.integral();
  auto gstar = [&g](u64 p) {
    const cplx v = g.at(p, 1);
    if (std::abs(v.imag()) > 0.0 || v.real() < 0.0 || v.real() > 1.0)
      throw std::domain_error("lambda_weights: g must take values in [0,1]");
    return 1.0 - v.real();
  };
  const auto& lin = plan.blocks[static_cast<std::size_t>(plan.K - 1)];
  // linear part: members of S+ with g* != 0 on every prime
  std::map<u64, double> linear;
  for (u64 s : plan.splus) {
    double v = 1.0;
    u64 r = s;
    int mu = 1;
    for (u64 p = 2; p * p <= r; ++p) {
      if (r % p) continue;
      r /= p;
      v *= gstar(p);
      mu = -mu;
    }
    if (r > 1) {
      v *= gstar(r);
      mu = -mu;
    }
    if (v != 0.0) linear[s] = mu * v;
  }
  // truncated blocks: squarefree products with at most m_k primes from I_k
  std::vector<std::pair<u64, double>> trunc{{1, 1.0}};
  auto pt = shared_primes(static_cast<u64>(lin.lo) + 2);
  for (int k = 0; k + 1 < plan.K; ++k) {
    const auto& blk = plan.blocks[static_cast<std::size_t>(k)];
    std::vector<std::pair<u64, double>> part{{1, 1.0}};
    std::vector<int> omega{0};
    for (u64 p : pt->between(blk.lo, blk.hi)) {
      const double gs = gstar(p);
      if (gs == 0.0) continue;
      const std::size_t n = part.size();
      for (std::size_t i = 0; i < n; ++i) {
        if (omega[i] + 1 > blk.truncation) continue;
        part.push_back({part[i].first * p, -part[i].second * gs});
        omega.push_back(omega[i] + 1);
      }
    }
    std::vector<std::pair<u64, double>> next;
    for (const auto& a : trunc)
      for (const auto& b : part) next.push_back({a.first * b.first, a.second * b.second});
    trunc.swap(next);
  }
  for (const auto& [a, va] : trunc)
    for (const auto& [s, vs] : linear) w.entries.push_back({a * s, va * vs});
  std::sort(w.entries.begin(), w.entries.end(), [](const SieveEntry& x, const SieveEntry& y) { return x.d < y.d; });
  w.D_bound = w.entries.empty() ? 1 : w.entries.back().d;
  return w;
}

u64 majorant_violations(const SieveWeights& w, const MultFn& g, u64 N) {
  if (N == 0) return 0;
  u64 bad = 0;
  if (w.exact && g.integral()) {
    std::vector<std::int64_t> rhs(N + 1, 0);
    for (const auto& e : w.entries)
      for (u64 m = e.d; m <= N; m += e.d) rhs[m] += static_cast<std::int64_t>(std::llround(e.lambda));
    auto mu = range_values_int(builtin_fn("moebius"), 1, N);
    auto gv = range_values_int(g, 1, N);
    for (u64 n = 1; n <= N; ++n) {
      const std::int64_t lhs = mu[n - 1] != 0 ? gv[n - 1] : 0;
      if (lhs > rhs[n]) ++bad;
    }
    return bad;
  }
  // dyadic weights (e.g. omega_geom(1/2)) sum exactly in double; others carry 1e-12 slack
  std::vector<double> rhs(N + 1, 0.0);
  for (const auto& e : w.entries)
    for (u64 m = e.d; m <= N; m += e.d) rhs[m] += e.lambda;
  auto mu = range_values_int(builtin_fn("moebius"), 1, N);
  auto gv = range_values(g, 1, N);
  for (u64 n = 1; n <= N; ++n) {
    const double lhs = mu[n - 1] != 0 ? gv[n - 1].real() : 0.0;
    if (lhs > rhs[n] + 1e-12) ++bad;
  }
  return bad;
}

WeightSums weight_sum_report(const SieveWeights& w, const MultFn& g, u64 X) {
  WeightSums r;
  std::map<u64, double> inner;  // d -> sum_e lambda_{de}/e
  for (const auto& e : w.entries) {
    r.s1 += e.lambda / static_cast<double>(e.d);
    // divisors of the squarefree support element
    std::vector<u64> primes;
    u64 m = e.d;
    for (u64 p = 2; p * p <= m; ++p)
      if (m % p == 0) {
        primes.push_back(p);
        m /= p;
      }
    if (m > 1) primes.push_back(m);
    const std::size_t np = primes.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << np); ++mask) {
      u64 d = 1;
      for (std::size_t i = 0; i < np; ++i)
        if (mask >> i & 1) d *= primes[i];
      inner[d] += e.lambda * static_cast<double>(d) / static_cast<double>(e.d);
    }
  }
  for (const auto& [d, v] : inner) r.s2 += v * v / static_cast<double>(d);
  double p1 = 1.0, p2 = 1.0;
  auto pt = shared_primes(X);
  for (u64 p : pt->upto(X)) {
    const double gp = g.at(p, 1).real();
    p1 *= 1.0 + (gp - 1.0) / static_cast<double>(p);
    p2 *= 1.0 + (gp * gp - 1.0) / static_cast<double>(p);
  }
  r.b1 = 9.0 * p1;
  r.b2 = p2;
  return r;
}

SurvivorScan survivor_scan(const MultFn& f, u64 X, u64 h, double P, double Q, double Delta) {
  const double x = static_cast<double>(X);
  if (h < 1 || static_cast<double>(h) > std::pow(x, 1.0 / 6.0) * (1.0 + 1e-12))
    throw std::domain_error("survivor_scan: need 1 <= h <= X^{1/6}");
  if (!(P >= 1.0 && P <= Q && Q <= std::pow(x, 0.75))) throw std::domain_error("survivor_scan: need 1 <= P <= Q <= X^{3/4}");
  if (!(Delta > 0.0)) throw std::domain_error("survivor_scan: Delta must be positive");
  SurvivorScan s;
  double mean = 1.0, pq = 1.0;
  auto pt = shared_primes(std::max<u64>(X, static_cast<u64>(Q) + 1));
  for (u64 p : pt->upto(X)) mean *= 1.0 + (std::abs(f.at(p, 1)) - 1.0) / static_cast<double>(p);
  for (u64 p : pt->between(P, Q)) pq *= 1.0 - std::abs(f.at(p, 1)) / static_cast<double>(p);
  s.threshold = mean * (Delta + 20.0 * pq);
  s.stride = std::max<u64>(1, X / 10000);
  const MultFn g = f.modulus().vanishing_on(P, Q);
  u64 hits = 0;
  // sample x = X + k*stride; window (x, x+h]
  for (u64 x0 = X; x0 <= 2 * X; x0 += s.stride) {
    auto v = range_values(g, x0 + 1, h);
    double sum = 0.0;
    for (const auto& c : v) sum += c.real();
    ++s.samples;
    if (sum / static_cast<double>(h) >= s.threshold) ++hits;
  }
  s.fraction = static_cast<double>(hits) / static_cast<double>(s.samples);
  return s;
}

}  // namespace sil
