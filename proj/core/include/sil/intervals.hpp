#pragma once

#include <span>
#include <string>
#include <vector>

#include "sil/arith.hpp"

namespace sil {

struct IntervalPair {
  double P = 0, Q = 0;  // primes in (P, Q]
};

struct IntervalParams {
  double nu1 = 0, nu2 = 0, eta = 0, beta0 = 1;
};

struct ConditionItem {
  std::string name;  // nu1lower, PJQJsize, QJsmall, nottoofar, nottooclose, ordered
  int j = 0;
  bool pass = false;
  double margin = 0;  // >= 0 iff pass
};

struct IntervalSystem {
  u64 X = 0;
  std::vector<IntervalPair> pairs;  // j = 1..J+2
  IntervalParams params;
  int J = 1;
  std::vector<ConditionItem> report;

  bool all_pass() const;
};

IntervalSystem build_system(u64 X, double nu1, double nu2, double eta, double beta0, double P1, double Q1);
// explicit pairs (scaled variants); J = pairs.size() - 2
IntervalSystem system_from_pairs(u64 X, std::vector<IntervalPair> pairs, IntervalParams params);

// bit j-1 set iff n has a prime factor in (P_j, Q_j]
unsigned membership_mask(const IntervalSystem& sys, std::span<const PrimePower> fac);
bool system_membership(const IntervalSystem& sys, u64 n, const FactorWindow& fw);

double inclusion_exclusion_residual(const IntervalSystem& sys, const FactorWindow& fw, std::span<const cplx> a);
std::int64_t inclusion_exclusion_residual(const IntervalSystem& sys, const FactorWindow& fw,
                                          std::span<const std::int64_t> a);

struct DensityReport {
  double inS = 0;
  double complement_bound = 0;
  u64 members = 0;
};

DensityReport system_density_report(const IntervalSystem& sys, u64 X);

}  // namespace sil
