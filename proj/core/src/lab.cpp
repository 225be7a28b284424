#include "sil/lab.hpp"

#include <algorithm>
#include <cmath>

#include "sil/pretence.hpp"

namespace sil {

namespace {

constexpr u64 chunk_span = u64{1} << 20;

u64 auto_stride(u64 X, u64 stride) { return stride ? stride : std::max<u64>(1, X / 10000); }

// prefix sums of f over [start, start + len)
std::vector<cplx> prefix_values(const MultFn& f, u64 start, u64 len) {
  std::vector<cplx> pre(len + 1, cplx(0.0));
  if (f.integral()) {
    auto v = range_values_int(f, start, len);
    for (u64 i = 0; i < len; ++i) pre[i + 1] = pre[i] + static_cast<double>(v[i]);
  } else {
    auto v = range_values(f, start, len);
    for (u64 i = 0; i < len; ++i) pre[i + 1] = pre[i] + v[i];
  }
  return pre;
}

// Calls fn(x, sum_{x<n<=x+h} f(n)) for x = X, X + stride, ... <= 2X in order
template <class Fn>
void for_each_window(const MultFn& f, u64 X, u64 h, u64 stride, Fn&& fn) {
  const u64 count = X / stride + 1;
  const u64 per_chunk = std::max<u64>(1, chunk_span / stride);
  for (u64 k0 = 0; k0 < count; k0 += per_chunk) {
    const u64 k1 = std::min(count, k0 + per_chunk);
    const u64 x0 = X + k0 * stride, xl = X + (k1 - 1) * stride;
    // values at x0+1 .. xl+h
    const auto pre = prefix_values(f, x0 + 1, xl - x0 + h);
    for (u64 k = k0; k < k1; ++k) {
      const u64 off = (k - k0) * stride;
      fn(X + k * stride, pre[off + h] - pre[off]);
    }
  }
}

}  // namespace

ScanResult run_scan(const MultFn& f, u64 X, u64 h, u64 stride, std::span<const double> deltas) {
  if (X < 4) throw std::domain_error("run_scan: X must be >= 4");
  if (h < 2 || static_cast<double>(h) > std::sqrt(static_cast<double>(X)))
    throw std::domain_error("run_scan: need 2 <= h <= X^{1/2}");
  for (double d : deltas)
    if (!(d > 0.0)) throw std::domain_error("run_scan: deltas must be positive");
  ScanResult r;
  r.X = X;
  r.h = h;
  r.fn_name = f.name();
  r.sample_stride = auto_stride(X, stride);
  const ProductReport prod = euler_products(f, X);
  const bool sparse = prod.mean_factor < 1.0 - 1e-9;
  if (sparse) r.normalizer = prod.mean_factor;
  if (!f.almost_real()) {
    r.t_star = minimize_pretend(f, X, sparse ? Variant::sparse : Variant::dense).t_star;
    r.twisted = true;
  }
  const double t = r.t_star;
  const cplx lm = long_mean(f, X, t);
  const double hd = static_cast<double>(h);
  auto main_term = [&](double x) {
    if (t == 0.0) return lm;
    const cplx s(1.0, t);
    const cplx diff = std::pow(cplx(x + hd), s) - std::pow(cplx(x), s);
    return lm * diff / (s * hd);
  };
  for_each_window(f, X, h, r.sample_stride, [&](u64 x, cplx sum) {
    ScanRow row;
    row.x = x;
    row.short_avg = sum / hd;
    row.main_term = main_term(static_cast<double>(x));
    row.disc = std::abs(row.short_avg - row.main_term);
    r.rows.push_back(row);
  });
  std::vector<double> ds(deltas.begin(), deltas.end());
  std::sort(ds.begin(), ds.end());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  for (double d : ds) {
    const double thr = d * r.normalizer;
    const auto bad = std::count_if(r.rows.begin(), r.rows.end(), [&](const ScanRow& row) { return row.disc > thr; });
    r.exceptional_fraction.emplace_back(d, static_cast<double>(bad) / static_cast<double>(r.rows.size()));
  }
  return r;
}

ConcentrationReport concentration_scan(const MultFn& indicator, u64 X, double h0, u64 stride, double rel) {
  if (X < 4) throw std::domain_error("concentration_scan: X must be >= 4");
  if (!(h0 >= 1.0)) throw std::domain_error("concentration_scan: h0 must be >= 1");
  if (!(rel > 0.0)) throw std::domain_error("concentration_scan: rel must be positive");
  const ProductReport prod = euler_products(indicator, X);
  if (!prod.set_density) throw std::domain_error("concentration_scan: indicator must be {0,1}-valued on primes");
  ConcentrationReport r;
  r.X = X;
  r.density = *prod.set_density;
  r.h = static_cast<u64>(std::llround(h0 / r.density));
  if (r.h > X) throw std::domain_error("concentration_scan: window longer than X");
  r.rel = rel;
  r.stride = auto_stride(X, stride);
  std::vector<double> counts;
  for_each_window(indicator, X, r.h, r.stride, [&](u64, cplx sum) { counts.push_back(std::abs(sum.real())); });
  r.windows = counts.size();
  double total = 0.0;
  for (double c : counts) total += c;
  r.mean_count = total / static_cast<double>(counts.size());
  const auto bad = std::count_if(counts.begin(), counts.end(),
                                 [&](double c) { return std::abs(c - r.mean_count) > rel * r.mean_count; });
  r.deviant_fraction = static_cast<double>(bad) / static_cast<double>(counts.size());
  return r;
}

std::vector<double> gap_moments(std::span<const u64> members, std::span<const double> gammas) {
  std::vector<double> out(gammas.size(), 0.0);
  for (std::size_t i = 1; i < members.size(); ++i) {
    if (members[i] <= members[i - 1]) throw std::domain_error("gap_moments: members must be strictly ascending");
    const double g = static_cast<double>(members[i] - members[i - 1]);
    for (std::size_t j = 0; j < gammas.size(); ++j) out[j] += gammas[j] == 1.0 ? g : std::pow(g, gammas[j]);
  }
  return out;
}

GapReport gap_report(std::string set_name, std::span<const u64> members, u64 X, double density,
                     std::span<const double> gammas) {
  for (double g : gammas)
    if (!(g >= 1.0 && g < 2.0)) throw std::domain_error("run_gaps: gamma must lie in [1, 2)");
  if (members.size() < 2) throw std::domain_error("run_gaps: the set needs at least two members in (X, 2X]");
  if (!(density > 0.0 && density <= 1.0)) throw std::domain_error("run_gaps: density must lie in (0, 1]");
  GapReport r;
  r.set_name = std::move(set_name);
  r.X = X;
  r.member_count = members.size();
  r.first = members.front();
  r.last = members.back();
  r.density = density;
  r.gammas.assign(gammas.begin(), gammas.end());
  r.moment_sums = gap_moments(members, gammas);
  for (std::size_t j = 0; j < gammas.size(); ++j) {
    r.normalizers.push_back(static_cast<double>(X) * std::pow(density, 1.0 - gammas[j]));
    r.ratios.push_back(r.moment_sums[j] / r.normalizers[j]);
  }
  return r;
}

GapReport run_gaps_mask(std::string set_name, std::span<const std::uint8_t> mask, u64 X, double density,
                        std::span<const double> gammas) {
  if (mask.size() != X) throw std::domain_error("run_gaps: mask must cover (X, 2X]");
  std::vector<u64> members;
  for (u64 i = 0; i < X; ++i)
    if (mask[i]) members.push_back(X + 1 + i);
  return gap_report(std::move(set_name), members, X, density, gammas);
}

GapReport run_gaps(const MultFn& indicator, u64 X, std::span<const double> gammas) {
  if (X < 2) throw std::domain_error("run_gaps: X must be >= 2");
  const ProductReport prod = euler_products(indicator, X);
  if (!prod.set_density) throw std::domain_error("run_gaps: indicator must be {0,1}-valued on primes");
  std::vector<std::uint8_t> mask(X);
  if (indicator.integral()) {
    auto v = range_values_int(indicator, X + 1, X);
    for (u64 i = 0; i < X; ++i) mask[i] = v[i] != 0;
  } else {
    auto v = range_values(indicator, X + 1, X);
    for (u64 i = 0; i < X; ++i) mask[i] = std::abs(v[i]) > 0.5;
  }
  return run_gaps_mask(indicator.name(), mask, X, *prod.set_density, gammas);
}

double BoundReport::sweep_spread() const {
  if (sweep.empty()) return 1.0;
  double lo = sweep.front().ratio, hi = lo;
  for (const auto& s : sweep) {
    lo = std::min(lo, s.ratio);
    hi = std::max(hi, s.ratio);
  }
  return hi / lo;
}

}  // namespace sil
