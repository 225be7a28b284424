#include "sil/intervals.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "compensated.hpp"

namespace sil {

bool IntervalSystem::all_pass() const {
  return std::all_of(report.begin(), report.end(), [](const ConditionItem& c) { return c.pass; });
}

namespace {

void evaluate_conditions(IntervalSystem& s) {
  const double logX = std::log(static_cast<double>(s.X));
  const double eta = s.params.eta;
  const int J = s.J;
  auto P = [&](int j) { return s.pairs[static_cast<std::size_t>(j - 1)].P; };
  auto Q = [&](int j) { return s.pairs[static_cast<std::size_t>(j - 1)].Q; };
  s.report.clear();
  auto add = [&](const char* name, int j, double margin) { s.report.push_back({name, j, margin >= 0.0, margin}); };

  add("nu1lower", 0, s.params.nu1 - std::pow(logX, -0.1));
  add("PJQJsize", J, std::log(P(J)) - 2.0 / eta * std::log(logX));
  add("QJsmall", J, J == 1 ? 0.0 : std::sqrt(logX) - std::log(Q(J)));
  for (int j = 2; j <= J; ++j) {
    const double jj = static_cast<double>(j) * j;
    const double den = std::log(P(j - 1)) - 1.0;
    const double lhs = den > 0.0 ? std::log(std::log(Q(j))) / den : INFINITY;
    add("nottoofar", j, eta / (4.0 * jj) - lhs);
    add("nottooclose", j, eta / jj * std::log(P(j)) - 16.0 * std::log(Q(j - 1)) - 16.0 * std::log(double(j)));
  }
  for (std::size_t j = 1; j < s.pairs.size(); ++j)
    add("ordered", static_cast<int>(j), std::log(s.pairs[j].P) - std::log(s.pairs[j - 1].Q));
}

}  // namespace

IntervalSystem build_system(u64 X, double nu1, double nu2, double eta, double beta0, double P1, double Q1) {
  if (X < 16) throw std::domain_error("build_system: X too small");
  const double logX = std::log(static_cast<double>(X));
  // the lower bound (log X)^{-1/10} < nu1 is asymptotic and goes to the condition report
  if (!(0.0 < nu1 && nu1 < nu2 && nu2 < 1.0 / 6.0)) throw std::domain_error("build_system: need 0 < nu1 < nu2 < 1/6");
  if (!(eta > 0.0 && eta < 1.0 / 6.0 - nu2 / 3.0)) throw std::domain_error("build_system: need 0 < eta < 1/6 - nu2/3");
  if (!(beta0 > 0.0 && beta0 <= 1.0)) throw std::domain_error("build_system: need beta0 in (0,1]");
  if (!(P1 >= 1.5 && P1 < Q1)) throw std::domain_error("build_system: need 3/2 <= P1 < Q1");

  IntervalSystem s;
  s.X = X;
  s.params = {nu1, nu2, eta, beta0};
  const double lP1 = std::log(P1), lQ1 = std::log(Q1), cap = std::sqrt(logX);
  // log P_j and log Q_j, in logs to stay finite
  auto logP = [&](int j) { return std::pow(double(j), 8.0 * j / beta0) * std::pow(lQ1, j - 1) * lP1; };
  auto logQ = [&](int j) { return std::pow(double(j), (8.0 * j + 6.0) / beta0) * std::pow(lQ1, j); };
  int J = 1;
  if (lQ1 < cap)
    while (logQ(J + 1) <= cap) ++J;
  for (int j = 1; j <= J; ++j) s.pairs.push_back({std::exp(logP(j)), j == 1 ? Q1 : std::exp(logQ(j))});
  s.pairs.front().P = P1;
  const double mid = std::sqrt(nu1 * nu2);
  s.pairs.push_back({std::exp(nu1 * logX), std::exp(mid * logX)});
  s.pairs.push_back({std::exp(mid * logX), std::exp(nu2 * logX)});
  s.J = J;
  evaluate_conditions(s);
  return s;
}

IntervalSystem system_from_pairs(u64 X, std::vector<IntervalPair> pairs, IntervalParams params) {
  if (pairs.size() < 3) throw std::domain_error("system_from_pairs: need at least three pairs");
  for (const auto& pr : pairs)
    if (!(pr.P >= 1.0 && pr.P < pr.Q)) throw std::domain_error("system_from_pairs: need 1 <= P_j < Q_j");
  if (!(params.eta > 0.0)) throw std::domain_error("system_from_pairs: eta must be positive");
  IntervalSystem s;
  s.X = X;
  s.pairs = std::move(pairs);
  s.params = params;
  s.J = static_cast<int>(s.pairs.size()) - 2;
  evaluate_conditions(s);
  return s;
}

unsigned membership_mask(const IntervalSystem& sys, std::span<const PrimePower> fac) {
  unsigned mask = 0;
  for (const auto& pp : fac) {
    const double p = static_cast<double>(pp.p);
    for (std::size_t j = 0; j < sys.pairs.size(); ++j)
      if (p > sys.pairs[j].P && p <= sys.pairs[j].Q) mask |= 1u << j;
  }
  return mask;
}

bool system_membership(const IntervalSystem& sys, u64 n, const FactorWindow& fw) {
  const unsigned full = (1u << sys.pairs.size()) - 1;
  return membership_mask(sys, fw.of(n)) == full;
}

namespace {

template <class T>
T incl_excl(const IntervalSystem& sys, const FactorWindow& fw, std::span<const T> a, T& lhs) {
  if (a.size() != fw.len()) throw std::domain_error("inclusion_exclusion_residual: a must match the window");
  const std::size_t m = sys.pairs.size();
  if (m > 16) throw std::domain_error("inclusion_exclusion_residual: too many pairs");
  const unsigned full = (1u << m) - 1;
  detail::Accumulator<T> in_s;
  for (u64 i = 0; i < fw.len(); ++i)
    if (membership_mask(sys, fw.at(i)) == full) in_s.add(a[i]);
  lhs = in_s.value();
  // right side: g_S is completely multiplicative, vanishing on primes of the chosen pairs
  detail::Accumulator<T> rhs;
  for (unsigned S = 0; S <= full; ++S) {
    detail::Accumulator<T> part;
    for (u64 i = 0; i < fw.len(); ++i) {
      bool g = true;
      for (const auto& pp : fw.at(i)) {
        const double p = static_cast<double>(pp.p);
        for (std::size_t j = 0; j < m && g; ++j)
          if ((S >> j & 1) && p > sys.pairs[j].P && p <= sys.pairs[j].Q) g = false;
        if (!g) break;
      }
      if (g) part.add(a[i]);
    }
    rhs.add(std::popcount(S) & 1 ? T(0) - part.value() : part.value());
  }
  return rhs.value();
}

}  // namespace

double inclusion_exclusion_residual(const IntervalSystem& sys, const FactorWindow& fw, std::span<const cplx> a) {
  cplx lhs;
  const cplx rhs = incl_excl<cplx>(sys, fw, a, lhs);
  return std::abs(lhs - rhs);
}

std::int64_t inclusion_exclusion_residual(const IntervalSystem& sys, const FactorWindow& fw,
                                          std::span<const std::int64_t> a) {
  std::int64_t lhs;
  const std::int64_t rhs = incl_excl<std::int64_t>(sys, fw, a, lhs);
  return lhs > rhs ? lhs - rhs : rhs - lhs;
}

DensityReport system_density_report(const IntervalSystem& sys, u64 X) {
  if (X < 2) throw std::domain_error("system_density_report: X must be >= 2");
  const std::size_t m = sys.pairs.size();
  if (m > 8) throw std::domain_error("system_density_report: at most eight pairs supported");
  double qmax = 0;
  for (const auto& pr : sys.pairs) qmax = std::max(qmax, pr.Q);
  auto pt = shared_primes(static_cast<u64>(std::min<double>(qmax, 2.0 * static_cast<double>(X))) + 1);
  std::vector<std::uint8_t> mask(X, 0);  // n = X+1+i
  DensityReport r;
  for (std::size_t j = 0; j < m; ++j) {
    double prod = 1.0;
    for (u64 p : pt->between(sys.pairs[j].P, sys.pairs[j].Q)) {
      prod *= 1.0 - 1.0 / static_cast<double>(p);
      for (u64 n = (X / p + 1) * p; n <= 2 * X; n += p) mask[n - X - 1] |= static_cast<std::uint8_t>(1u << j);
    }
    r.complement_bound += prod;
  }
  const auto full = static_cast<std::uint8_t>((1u << m) - 1);
  for (auto v : mask) r.members += v == full;
  r.inS = static_cast<double>(r.members) / static_cast<double>(X);
  return r;
}

}  // namespace sil
