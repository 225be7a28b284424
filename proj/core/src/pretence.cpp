#include "sil/pretence.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <numeric>

#include "phasor.hpp"

namespace sil {

const char* to_string(Variant v) { return v == Variant::dense ? "dense" : "sparse"; }

Variant parse_variant(std::string_view s) {
  if (s == "dense") return Variant::dense;
  if (s == "sparse") return Variant::sparse;
  throw std::domain_error("variant must be dense or sparse, got '" + std::string(s) + "'");
}

double rho_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::domain_error("rho_alpha: alpha must lie in (0,1]");
  return alpha / 3.0 - 2.0 / (3.0 * pi) * std::sin(pi * alpha / 2.0);
}

DistanceEvaluator::DistanceEvaluator(const MultFn& f, u64 X, Variant v) {
  if (X < 2) throw std::domain_error("pretend_distance: X must be >= 2");
  auto pt = shared_primes(X);
  auto ps = pt->upto(X);
  logp_.reserve(ps.size());
  wr_.reserve(ps.size());
  wi_.reserve(ps.size());
  for (u64 p : ps) {
    const cplx fp = f.at(p, 1);
    const double inv = 1.0 / static_cast<double>(p);
    base_ += (v == Variant::dense ? 1.0 : std::abs(fp)) * inv;
    logp_.push_back(std::log(static_cast<double>(p)));
    wr_.push_back(fp.real() * inv);
    wi_.push_back(fp.imag() * inv);
    if (fp.imag() != 0.0) real_ = false;
  }
}

double DistanceEvaluator::operator()(double t) const {
  // Re(w e^{-i t log p}) = wr cos + wi sin
  double s = 0.0;
  for (std::size_t i = 0; i < logp_.size(); ++i) {
    const double a = t * logp_[i];
    s += wr_[i] * std::cos(a) + wi_[i] * std::sin(a);
  }
  return std::max(0.0, base_ - s);
}

void DistanceEvaluator::grid(double t0, double dt, std::size_t n, double* out) const {
  std::vector<double> acc(n, 0.0);
  detail::phasor_sum(logp_.data(), wr_.data(), wi_.data(), logp_.size(), t0, dt, n, acc.data(), nullptr);
  for (std::size_t j = 0; j < n; ++j) out[j] = std::max(0.0, base_ - acc[j]);
}

double pretend_distance(const MultFn& f, double t, u64 X, Variant v) { return DistanceEvaluator(f, X, v)(t); }

PretendSummary minimize_pretend(const MultFn& f, u64 X, Variant v, double t_max) {
  const DistanceEvaluator D(f, X, v);
  const double logX = std::log(static_cast<double>(X));
  GridSpec g;
  g.t_max = t_max > 0 ? std::min(t_max, static_cast<double>(X)) : static_cast<double>(X);
  g.fine_range = std::min(g.t_max, 1000.0);
  g.spacing = 1.0 / (8.0 * logX);
  g.log_points = g.t_max > g.fine_range ? 600 : 0;
  g.refine_cells = 5;

  const bool sym = D.real_valued();  // D(-t) = D(t) exactly
  const auto K = static_cast<std::int64_t>(std::floor(g.fine_range / g.spacing));
  const std::int64_t k0 = sym ? 0 : -K;
  std::vector<double> vals(static_cast<std::size_t>(K - k0 + 1));
  D.grid(static_cast<double>(k0) * g.spacing, g.spacing, vals.size(), vals.data());

  struct Cand {
    double t, val;
  };
  std::vector<Cand> cands;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const bool left = i == 0 || vals[i] <= vals[i - 1];
    const bool right = i + 1 == vals.size() || vals[i] <= vals[i + 1];
    if (left && right) cands.push_back({static_cast<double>(k0 + static_cast<std::int64_t>(i)) * g.spacing, vals[i]});
  }
  for (std::size_t i = 1; i <= g.log_points; ++i) {
    const double t = g.fine_range * std::pow(g.t_max / g.fine_range, static_cast<double>(i) / g.log_points);
    cands.push_back({t, D(t)});
    if (!sym) cands.push_back({-t, D(-t)});
  }
  auto less = [](const Cand& a, const Cand& b) { return a.val < b.val || (a.val == b.val && a.t < b.t); };
  std::sort(cands.begin(), cands.end(), less);

  const std::size_t nref = std::min<std::size_t>(g.refine_cells, cands.size());
  // grid values carry phasor rounding; compare refinements against exact values
  for (std::size_t c = 0; c < nref; ++c) cands[c].val = D(cands[c].t);
  std::sort(cands.begin(), cands.begin() + static_cast<std::ptrdiff_t>(nref), less);
  Cand best = cands.front();
  for (std::size_t c = 0; c < nref; ++c) {
    const double lo = std::max(cands[c].t - g.spacing, sym ? 0.0 : -g.t_max);
    const double hi = std::min(cands[c].t + g.spacing, g.t_max);
    auto r = boost::math::tools::brent_find_minima([&D](double t) { return D(t); }, lo, hi, 50);
    Cand rc{r.first, r.second};
    // refinement must strictly improve, so exact grid minima such as t = 0 are kept
    if (rc.val < best.val - 1e-12) best = rc;
  }
  PretendSummary out;
  out.variant = v;
  // lowest-t tie-break across the mirrored pair
  out.t_star = sym ? -best.t : best.t;
  if (out.t_star == 0.0) out.t_star = 0.0;
  out.M_value = best.val;
  out.grid = g;
  return out;
}

ProductReport euler_products(const MultFn& f, u64 X) {
  if (X < 2) throw std::domain_error("euler_products: X must be >= 2");
  ProductReport r;
  r.X = X;
  bool indicator = true;
  double density = 1.0;
  auto pt = shared_primes(X);
  for (u64 p : pt->upto(X)) {
    const double a = std::abs(f.at(p, 1));
    const double ip = 1.0 / static_cast<double>(p);
    r.mean_factor *= 1.0 + (a - 1.0) * ip;
    r.square_factor *= 1.0 + (a * a - 1.0) * ip;
    r.H_value *= 1.0 + (a - 1.0) * (a - 1.0) * ip;
    if (a == 0.0) {
      density *= 1.0 - ip;
      r.vanishing_square_product *= 1.0 - ip * ip;
    } else if (a != 1.0) {
      indicator = false;
    }
  }
  if (indicator) r.set_density = density;
  return r;
}

double lipschitz_discrepancy(const MultFn& f, u64 X, u64 y, double t) {
  if (X < 3) throw std::domain_error("lipschitz_discrepancy: X must be >= 3");
  const double lo = static_cast<double>(X) / std::log(static_cast<double>(X));
  if (static_cast<double>(y) < lo || y > X) throw std::domain_error("lipschitz_discrepancy: need X/log X <= y <= X");
  auto vals = range_values(f, X + 1, y);
  cplx s = 0.0;
  for (u64 i = 0; i < y; ++i) s += vals[i] * std::polar(1.0, -t * std::log(static_cast<double>(X + 1 + i)));
  const cplx shrt = s / static_cast<double>(y);
  const cplx lng = long_mean(f, X, t);
  return std::abs(shrt - lng) / euler_products(f, X).mean_factor;
}

namespace {

template <class T>
std::pair<T, T> rearrangement_impl(std::span<const T> alphas, std::span<const T> bs, std::size_t N0) {
  if (alphas.size() != bs.size()) throw std::domain_error("rearrangement_check: length mismatch");
  if (N0 == 0 || alphas.size() < N0) throw std::domain_error("rearrangement_check: need 1 <= N0 <= N");
  T sa(0), lhs(0);
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (alphas[i] < T(0) || alphas[i] > T(1)) throw std::domain_error("rearrangement_check: alphas must lie in [0,1]");
    if (bs[i] < T(0)) throw std::domain_error("rearrangement_check: bs must be non-negative");
    sa += alphas[i];
    lhs += alphas[i] * bs[i];
  }
  if (sa < T(static_cast<std::int64_t>(N0))) throw precondition_error("rearrangement_check: sum of alphas below N0");
  std::vector<T> sorted(bs.begin(), bs.end());
  std::partial_sort(sorted.begin(), sorted.begin() + N0, sorted.end());
  T rhs(0);
  for (std::size_t i = 0; i < N0; ++i) rhs += sorted[i];
  return {lhs, rhs};
}

}  // namespace

std::pair<double, double> rearrangement_check(std::span<const double> alphas, std::span<const double> bs,
                                              std::size_t N0) {
  return rearrangement_impl<double>(alphas, bs, N0);
}

std::pair<Rational, Rational> rearrangement_check(std::span<const Rational> alphas, std::span<const Rational> bs,
                                                  std::size_t N0) {
  return rearrangement_impl<Rational>(alphas, bs, N0);
}

CosCheck appendix_cos_check(const MultFn& f, double t, u64 X, double theta, double eps, double alpha) {
  if (X < 3 || !(theta > 0.0 && theta <= 1.0) || !(eps > 0.0) || !(alpha > 0.0 && alpha <= 1.0))
    throw std::domain_error("appendix_cos_check: parameters out of range");
  const double logX = std::log(static_cast<double>(X));
  const double at = std::abs(t);
  if (at < 2.0 / (theta * logX) || at > 2.0 * static_cast<double>(X))
    throw std::domain_error("appendix_cos_check: need 2/(theta log X) <= |t| <= 2X");
  const double logY = std::max(std::pow(logX, 2.0 / 3.0 + eps), 1.0 / at);
  const double logZ = theta * logX;
  if (logY >= logZ) throw std::domain_error("appendix_cos_check: Y >= X^theta, empty prime range");
  CosCheck c;
  c.Y = std::exp(logY);
  auto pt = shared_primes(static_cast<u64>(std::exp(logZ)) + 1);
  for (u64 p : pt->between(c.Y, std::exp(logZ))) {
    const double x = t * std::log(static_cast<double>(p)) / (2.0 * pi);
    const double dist = std::abs(x - std::nearbyint(x));
    c.lhs += std::abs(f.at(p, 1)) / static_cast<double>(p) * (1.0 - std::abs(std::cos(pi * dist)));
  }
  // 2 * int_0^{alpha/2} (1 - cos pi x) dx = alpha - (2/pi) sin(pi alpha / 2)
  c.rhs_main = (alpha - 2.0 / pi * std::sin(pi * alpha / 2.0)) * std::log(logZ / logY);
  return c;
}

}  // namespace sil
