#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sil/arith.hpp"

namespace sil {

struct ScanRow {
  u64 x = 0;
  cplx short_avg, main_term;
  double disc = 0;  // |short_avg - main_term|
};

struct ScanResult {
  u64 X = 0, h = 0;
  std::string fn_name;
  double t_star = 0;
  bool twisted = false;     // main term uses t_star rather than 0
  double normalizer = 1;    // prod (1 + (|f(p)|-1)/p) for sparse f, else 1
  std::vector<ScanRow> rows;
  std::vector<std::pair<double, double>> exceptional_fraction;  // (delta, fraction), ascending delta
  u64 sample_stride = 1;
};

// stride 0 picks max(1, X / 10^4)
ScanResult run_scan(const MultFn& f, u64 X, u64 h, u64 stride, std::span<const double> deltas);

// Counts of an indicator in windows (x, x + h] with h = h0 / density over x in (X, 2X]
struct ConcentrationReport {
  u64 X = 0, h = 0;
  double density = 1;  // delta(N; X)
  double mean_count = 0;
  double deviant_fraction = 0;  // windows with |count - mean| > rel * mean
  double rel = 0.5;
  u64 windows = 0, stride = 1;
};

ConcentrationReport concentration_scan(const MultFn& indicator, u64 X, double h0, u64 stride, double rel = 0.5);

struct GapReport {
  std::string set_name;
  u64 X = 0;
  u64 member_count = 0;
  u64 first = 0, last = 0;
  double density = 1;  // delta(N; X)
  std::vector<double> gammas, moment_sums, normalizers, ratios;
};

// sum over consecutive members of (n_{i+1} - n_i)^gamma, one entry per gamma
std::vector<double> gap_moments(std::span<const u64> members, std::span<const double> gammas);

GapReport gap_report(std::string set_name, std::span<const u64> members, u64 X, double density,
                     std::span<const double> gammas);
// members of the multiplicative {0,1} indicator in (X, 2X]; density from its Euler product
GapReport run_gaps(const MultFn& indicator, u64 X, std::span<const double> gammas);
// raw predicate: mask[i] marks X + 1 + i, normalized by X * density^(1 - gamma)
GapReport run_gaps_mask(std::string set_name, std::span<const std::uint8_t> mask, u64 X, double density,
                        std::span<const double> gammas);

struct SweepPoint {
  std::string label;  // swept parameter name
  double value = 0;
  double lhs = 0, rhs = 0, ratio = 0;
};

struct BoundReport {
  std::string bound_id;
  std::map<std::string, double> params;
  double lhs = 0, rhs = 0, ratio = 0;  // at the base point
  std::vector<SweepPoint> sweep;
  // max ratio / min ratio over the sweep
  double sweep_spread() const;
};

const std::vector<std::string>& bound_ids();
// default parameters of an id; the swept parameter is scaled by 1/sweep_factor, 1, sweep_factor
std::map<std::string, double> bound_defaults(std::string_view bound_id);
// params override the defaults of each id and unknown keys are rejected; fn (empty for the
// id default) names the multiplicative function where the inequality takes one
BoundReport measure_bound(std::string_view bound_id, const std::map<std::string, double>& params, u64 seed,
                          std::string_view fn = {});

}  // namespace sil
