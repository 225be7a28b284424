#pragma once

#include <span>
#include <string>
#include <vector>

#include "sil/arith.hpp"

namespace sil {

enum class BlockRule { truncation, linear, exclude_all };

struct SieveBlock {
  int k = 0;            // 1-based block index
  double lo = 0, hi = 0;  // primes in (lo, hi]
  BlockRule rule = BlockRule::truncation;
  int truncation = 0;   // m_k for truncated blocks
  double D = 0, z = 0;  // linear-sieve level and sifting limit
};

struct SievePlan {
  u64 X = 0;
  double tau = 3.0;
  int K = 0;
  std::vector<SieveBlock> blocks;  // I_1..I_{K+1}
  std::vector<u64> splus;          // S+ over the primes of I_K, ascending

  // index into blocks of the block containing prime p
  std::size_t block_of(u64 p) const;
};

// k-fold iterated logarithm; NaN once an intermediate value drops to <= 0
double iterated_log(double x, int k);

// Upper-bound linear sieve support over the primes of P below z.
std::vector<u64> linear_sieve_support(u64 D, u64 z, std::span<const u64> P);
std::vector<u64> linear_sieve_support(double D, double z, std::span<const u64> P);

SievePlan brun_hooley_plan(u64 X, double tau = 3.0);

int chi_value(const SievePlan& plan, std::span<const PrimePower> fac);
int chi_value(const SievePlan& plan, u64 d, const FactorWindow& fw);
int chi_value(const SievePlan& plan, u64 d);

struct SieveEntry {
  u64 d;
  double lambda;
};

struct SieveWeights {
  std::vector<SieveEntry> entries;  // ascending d
  u64 D_bound = 1;                  // largest d in the support
  std::string g_name;
  bool exact = false;               // every lambda is an integer
};

SieveWeights lambda_weights(const SievePlan& plan, const MultFn& g);

// number of n <= N with |mu(n)| g(n) > sum_{d|n} lambda_d
u64 majorant_violations(const SieveWeights& w, const MultFn& g, u64 N);

struct WeightSums {
  double s1 = 0, s2 = 0, b1 = 0, b2 = 0;
};

WeightSums weight_sum_report(const SieveWeights& w, const MultFn& g, u64 X);

struct SurvivorScan {
  double fraction = 0;
  double threshold = 0;
  u64 stride = 1;
  u64 samples = 0;
};

SurvivorScan survivor_scan(const MultFn& f, u64 X, u64 h, double P, double Q, double Delta);

}  // namespace sil
