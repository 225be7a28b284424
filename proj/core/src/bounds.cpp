#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "sil/dirpoly.hpp"
#include "sil/lab.hpp"
#include "sil/pretence.hpp"
#include "sil/sieve.hpp"

namespace sil {

namespace {

using Params = std::map<std::string, double>;

struct Point {
  double lhs = 0, rhs = 0;
};

struct BoundDef {
  std::string id;
  std::string default_fn;  // empty when the inequality takes no f
  Params defaults;         // must contain the swept key and sweep_factor
  std::string swept;
  std::function<Point(const Params&, const MultFn&, u64 seed)> eval;
};

u64 as_u64(double v) { return static_cast<u64>(std::llround(v)); }

// sum over (n, c_n) pairs of the Dirichlet polynomial sum c_n n^{-sigma-it}:
// int_{-T}^{T} |.|^2 dt in closed form
double mean_square_exact(const std::vector<std::pair<u64, cplx>>& terms, double sigma, double T) {
  const std::size_t K = terms.size();
  std::vector<double> logn(K);
  std::vector<cplx> w(K);
  for (std::size_t i = 0; i < K; ++i) {
    logn[i] = std::log(static_cast<double>(terms[i].first));
    w[i] = terms[i].second * std::exp(-sigma * logn[i]);
  }
  double diag = 0.0, off = 0.0;
  for (std::size_t i = 0; i < K; ++i) {
    diag += std::norm(w[i]);
    double row = 0.0;
    for (std::size_t j = i + 1; j < K; ++j) {
      const double L = logn[j] - logn[i];
      row += (w[i].real() * w[j].real() + w[i].imag() * w[j].imag()) * std::sin(T * L) / L;
    }
    off += row;
  }
  return 2.0 * T * diag + 4.0 * off;
}

std::vector<std::pair<u64, cplx>> nonzero(const DirPoly& P) {
  std::vector<std::pair<u64, cplx>> out;
  for (std::size_t i = 0; i < P.coeffs.size(); ++i)
    if (P.coeffs[i] != cplx(0.0)) out.emplace_back(P.lo + i, P.coeffs[i]);
  return out;
}

DirPoly window_poly(const MultFn& f, u64 lo, u64 len) { return from_window(range_values(f, lo, len), lo); }

// grid points of |A(sigma+it)| on [-T, T]; greedily the largest values at mutual distance >= 1
std::vector<double> top_spaced_values(const DirPoly& A, double sigma, double T, std::size_t count) {
  const double step = nyquist_step(A);
  const auto n = static_cast<std::size_t>(std::floor(2.0 * T / step)) + 1;
  const auto vals = evaluate_grid(A, sigma, -T, step, n);
  std::vector<std::size_t> order(n);
  for (std::size_t k = 0; k < n; ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double va = std::abs(vals[a]), vb = std::abs(vals[b]);
    return va > vb || (va == vb && a < b);
  });
  std::vector<double> picked_t, out;
  for (std::size_t k : order) {
    if (out.size() == count) break;
    const double t = -T + static_cast<double>(k) * step;
    if (std::any_of(picked_t.begin(), picked_t.end(), [&](double u) { return std::abs(t - u) < 1.0; })) continue;
    picked_t.push_back(t);
    out.push_back(std::norm(vals[k]));
  }
  return out;
}

double sum_sq(const std::vector<std::pair<u64, cplx>>& terms) {
  double s = 0.0;
  for (const auto& [n, c] : terms) s += std::norm(c);
  return s;
}

Point shiu(const Params& p, const MultFn& f, u64) {
  const u64 x = as_u64(p.at("x"));
  const u64 y = as_u64(std::pow(static_cast<double>(x), p.at("theta")));
  const auto v = range_values(f, x + 1, y);
  double lhs = 0.0;
  for (const auto& c : v) lhs += std::abs(c);
  return {lhs, static_cast<double>(y) * euler_products(f, x).mean_factor};
}

Point henriot(const Params& p, const MultFn& f, u64) {
  const u64 x = as_u64(p.at("x"));
  const u64 y = as_u64(std::pow(static_cast<double>(x), p.at("theta")));
  const u64 K = as_u64(p.at("K"));
  if (K >= x) throw std::domain_error("henriot: need K < x");
  // values on (x - K, x + y + K]
  const u64 lo = x - K + 1;
  const auto v = range_values(f, lo, y + 2 * K);
  double lhs = 0.0;
  for (u64 n = x + 1; n <= x + y; ++n)
    for (u64 k = 1; k <= K; ++k) lhs += std::abs(v[n - lo]) * (std::abs(v[n + k - lo]) + std::abs(v[n - k - lo]));
  double prod = 1.0;
  auto pt = shared_primes(x);
  for (u64 q : pt->upto(x)) prod *= 1.0 + (2.0 * std::abs(f.at(q, 1)) - 2.0) / static_cast<double>(q);
  return {lhs, static_cast<double>(K) * static_cast<double>(y) * prod};
}

Point mvt_sparse(const Params& p, const MultFn& f, u64) {
  const u64 x = as_u64(p.at("x"));
  const double T = p.at("T_over_x") * static_cast<double>(x);
  const u64 y = as_u64(std::pow(static_cast<double>(x), p.at("theta")));
  const auto terms = nonzero(window_poly(f, x + 1, y));
  const ProductReport pr = euler_products(f, x);
  double prod2 = 1.0;
  auto pt = shared_primes(x);
  for (u64 q : pt->upto(x)) prod2 *= 1.0 + (2.0 * std::abs(f.at(q, 1)) - 2.0) / static_cast<double>(q);
  const double xd = static_cast<double>(x), yd = static_cast<double>(y);
  return {mean_square_exact(terms, 1.0, T), T * yd / (xd * xd) * pr.square_factor + yd / xd * prod2};
}

Point contmvt2(const Params& p, const MultFn& f, u64) {
  const u64 N = as_u64(p.at("N"));
  const double T = p.at("T");
  const auto v = range_values(f, 1, N);
  const auto terms = nonzero(from_window(v, 1));
  double diag = 0.0, cross = 0.0;
  for (u64 n = 1; n <= N; ++n) {
    const double an = std::abs(v[n - 1]);
    diag += an * an;
    if (an == 0.0) continue;
    const u64 kmax = static_cast<u64>(std::floor(static_cast<double>(n) / T));
    for (u64 k = 1; k <= kmax; ++k) {
      if (n + k <= N) cross += an * std::abs(v[n + k - 1]);
      if (k < n) cross += an * std::abs(v[n - k - 1]);
    }
  }
  return {mean_square_exact(terms, 0.0, T), T * diag + T * cross};
}

Point halmont_int(const Params& p, const MultFn& f, u64) {
  const u64 N = as_u64(p.at("N"));
  const double T = p.at("T_over_N") * static_cast<double>(N);
  const auto count = static_cast<std::size_t>(p.at("count"));
  const DirPoly A = window_poly(f, 1, N);
  const auto vals = top_spaced_values(A, 0.0, T, count);
  double lhs = 0.0;
  for (double v : vals) lhs += v;
  const double rhs = (static_cast<double>(N) + static_cast<double>(vals.size()) * std::sqrt(T)) *
                     std::log(2.0 * T) * sum_sq(nonzero(A));
  return {lhs, rhs};
}

Point halmont_primes(const Params& p, const MultFn&, u64 seed) {
  const u64 N = as_u64(p.at("N"));
  const double T = p.at("T_over_N") * static_cast<double>(N);
  const double eta = p.at("eta"), epsp = p.at("eps");
  const auto count = static_cast<std::size_t>(p.at("count"));
  if (static_cast<double>(N) > T * T) throw std::domain_error("halmont_primes: need N <= T^2");
  // random unimodular coefficients on the primes of (N, 2N]
  std::seed_seq sq{seed, u64{6}};
  std::mt19937_64 rng(sq);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * pi);
  DirPoly P;
  P.lo = N + 1;
  P.coeffs.assign(N, cplx(0.0));
  auto pt = shared_primes(2 * N);
  for (u64 q : pt->between(static_cast<double>(N), 2.0 * static_cast<double>(N)))
    P.coeffs[q - P.lo] = std::polar(1.0, ang(rng));
  // sum a(p) p^{it} at t is the n^{-it} polynomial at -t, and [-T, T] is symmetric
  const auto vals = top_spaced_values(P, 0.0, T, count);
  double lhs = 0.0;
  for (double v : vals) lhs += v;
  const double Nd = static_cast<double>(N), lT = std::log(T);
  const double rhs = (Nd / std::log(Nd) + static_cast<double>(vals.size()) * std::pow(T, 4.5 * std::pow(eta, 1.5)) *
                                              lT * lT * std::pow(Nd, 1.0 - eta * (1.0 - epsp))) *
                     sum_sq(nonzero(P));
  return {lhs, rhs};
}

Point huxley(const Params& p, const MultFn&, u64) {
  const u64 N = as_u64(p.at("N"));
  const double T = p.at("T"), Vrel = p.at("V_rel");
  DirPoly A;
  A.lo = N + 1;
  A.coeffs.assign(N, cplx(0.0));
  auto pt = shared_primes(2 * N);
  double trivial = 0.0, G = 0.0;
  for (u64 q : pt->between(static_cast<double>(N), 2.0 * static_cast<double>(N))) {
    A.coeffs[q - A.lo] = 1.0;
    const double iq = 1.0 / static_cast<double>(q);
    trivial += iq;
    G += iq * iq;
  }
  // |A(1+it)| >= 1/V with 1/V the trivial bound divided by V_rel
  const double V = Vrel / trivial;
  const SpacedSet S = large_value_set(A, 1.0, T, 1.0 / V);
  const double Nd = static_cast<double>(N), lT = std::log(T);
  const double rhs = (G * Nd * V * V + G * G * G * Nd * T * std::pow(V, 6.0)) * std::pow(lT, 6.0);
  return {static_cast<double>(S.points.size()), rhs};
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

Point moment(const Params& p, const MultFn& g, u64) {
  const u64 X = as_u64(p.at("X"));
  const double T = p.at("T"), Y1 = p.at("Y1"), Y2 = p.at("Y2");
  if (Y2 > std::pow(static_cast<double>(X), 0.2) * (1.0 + 1e-12)) throw std::domain_error("moment: need Y2 <= X^{1/5}");
  if (!(Y1 >= 2.0 && Y2 >= Y1)) throw std::domain_error("moment: need 2 <= Y1 <= Y2");
  const int ell = static_cast<int>(std::ceil(std::log(Y2) / std::log(Y1) - 1e-12));
  DirPoly Q;
  Q.lo = static_cast<u64>(std::floor(Y1)) + 1;
  Q.coeffs.assign(static_cast<u64>(std::floor(2.0 * Y1)) - Q.lo + 1, cplx(0.0));
  auto pt = shared_primes(static_cast<u64>(2.0 * Y1) + 1);
  for (u64 q : pt->between(Y1, 2.0 * Y1)) Q.coeffs[q - Q.lo] = 1.0;
  const u64 mlo = static_cast<u64>(std::floor(static_cast<double>(X) / Y2)) + 1;
  const u64 mhi = static_cast<u64>(std::floor(2.0 * static_cast<double>(X) / Y2));
  DirPoly prod = window_poly(g, mlo, mhi - mlo + 1);
  for (int i = 0; i < ell; ++i) {
    const auto c = dirichlet_product(Q, prod);
    DirPoly next;
    next.lo = c.front().first;
    next.coeffs.assign(c.back().first - next.lo + 1, cplx(0.0));
    for (const auto& [n, v] : c) next.coeffs[n - next.lo] += v;
    prod = std::move(next);
  }
  const ProductReport pr = euler_products(g, X);
  double prod2 = 1.0;
  auto pX = shared_primes(X);
  for (u64 q : pX->upto(X)) prod2 *= 1.0 + (2.0 * std::abs(g.at(q, 1)) - 2.0) / static_cast<double>(q);
  const double l2 = factorial(ell) * factorial(ell);
  return {mean_square_exact(nonzero(prod), 1.0, T), l2 * (T / static_cast<double>(X) * pr.square_factor + prod2)};
}

Point parseval(const Params& p, const MultFn& f, u64) {
  const u64 X = as_u64(p.at("X"));
  const double y = p.at("y");
  const double T0 = p.at("T0_factor") * static_cast<double>(X) / y;
  const auto samples = static_cast<u64>(p.at("samples"));
  // A supported on (X/2, 4X] so that T0 * y >= hi/4 for the Perron step
  const u64 lo = X / 2 + 1;
  const DirPoly A = window_poly(f, lo, 4 * X - lo + 1);
  // midpoint rule over x in [X, 2X]; the inner integral is 2 pi y * perron_short_average
  double acc = 0.0;
  const double Xd = static_cast<double>(X);
  for (u64 k = 0; k < samples; ++k) {
    const double x = Xd + (static_cast<double>(k) + 0.5) * Xd / static_cast<double>(samples);
    acc += std::norm(2.0 * pi * y * perron_short_average(A, x, y, T0));
  }
  const double lhs = acc / static_cast<double>(samples) / (y * y);
  // max over T >= X/y of (X/y)/T int_{[-T,T] cap [-T0,T0]} |A(1+it)|^2, on a doubling grid up to T0
  const auto terms = nonzero(A);
  double rhs = 0.0;
  for (double T = Xd / y;; T *= 2.0) {
    const double Te = std::min(T, T0);
    rhs = std::max(rhs, (Xd / y) / T * mean_square_exact(terms, 1.0, Te));
    if (T >= T0) break;
  }
  return {lhs, rhs};
}

Point halasz_sparse(const Params& p, const MultFn& f, u64) {
  const u64 X = as_u64(p.at("X"));
  const u64 x = as_u64(p.at("x"));
  const double alpha = p.at("alpha");
  if (x > X || x < 2) throw std::domain_error("halasz_sparse: need 2 <= x <= X");
  const PretendSummary ps = minimize_pretend(f, X, Variant::sparse);
  const double t = f.almost_real() ? 0.0 : ps.t_star;
  const auto v = range_values(f, x + 1, x);
  cplx s = 0.0;
  for (u64 i = 0; i < x; ++i) {
    const double n = static_cast<double>(x + 1 + i);
    s += v[i] * std::polar(1.0 / n, -t * std::log(n));
  }
  double prod = 1.0;
  auto pt = shared_primes(X);
  for (u64 q : pt->upto(X)) prod *= 1.0 + std::abs(f.at(q, 1)) / static_cast<double>(q);
  const double M = ps.M_value, lX = std::log(static_cast<double>(X));
  const double rhs = (M / std::exp(0.5 * M) + std::pow(lX, -alpha)) / (alpha * std::log(static_cast<double>(x))) * prod;
  return {std::abs(s), rhs};
}

Point halappl(const Params& p, const MultFn& f, u64) {
  const u64 X = as_u64(p.at("X"));
  const double P = p.at("P"), rho = p.at("rho"), t = p.at("t");
  const u64 x = as_u64(p.at("x_over_X") * static_cast<double>(X));
  if (!(P >= 2.0 && static_cast<double>(x) > P && x <= X)) throw std::domain_error("halappl: need 2 <= P < x <= X");
  // r(n) = (-1)^{number of prime factors > P, with multiplicity}
  const MultFn r("liouville_above", [P](u64 q, unsigned k) {
    return cplx(static_cast<double>(q) > P && (k & 1) ? -1.0 : 1.0, 0.0);
  }, true);
  const auto fv = range_values(f, x + 1, x);
  const auto rv = range_values(r, x + 1, x);
  cplx s = 0.0;
  for (u64 i = 0; i < x; ++i) {
    const double n = static_cast<double>(x + 1 + i);
    s += fv[i] * rv[i] * std::polar(1.0 / n, -t * std::log(n));
  }
  const double tf = f.almost_real() ? 0.0 : minimize_pretend(f, X, Variant::dense).t_star;
  const double lX = std::log(static_cast<double>(X)), llX = std::log(lX);
  const double rhs = lX / std::log(P) * (std::pow(lX, -rho / 2.0) + llX * llX / std::sqrt(std::abs(t - tf) + 1.0));
  return {std::abs(s), rhs};
}

Point grkoma(const Params& p, const MultFn& f, u64) {
  const u64 X = as_u64(p.at("X"));
  const auto v = range_values(f, X + 1, X);
  double s = 0.0;
  for (const auto& c : v) {
    if (std::abs(c.imag()) > 1e-12 || c.real() < -1e-12 || c.real() > 1.0 + 1e-12)
      throw std::domain_error("grkoma: f must take values in [0,1]");
    s += c.real();
  }
  double prod = 1.0;
  auto pt = shared_primes(X);
  for (u64 q : pt->upto(X)) prod *= 1.0 + (f.at(q, 1).real() - 1.0) / static_cast<double>(q);
  return {s / static_cast<double>(X), prod};
}

Point fried(const Params& p, const MultFn&, u64) {
  const u64 X = as_u64(p.at("X"));
  const u64 h = as_u64(p.at("h"));
  const double D = p.at("D"), z = p.at("z"), A = p.at("A");
  auto pt = shared_primes(static_cast<u64>(z) + 1);
  const auto splus = linear_sieve_support(D, z, pt->upto(static_cast<u64>(z)));
  // lambda_d = mu(d) on S+
  std::map<u64, double> lam;
  for (u64 d : splus) {
    int sign = 1;
    for (u64 q : pt->upto(static_cast<u64>(z)))
      if (d % q == 0) sign = -sign;
    lam[d] = sign;
  }
  const u64 D_real = lam.rbegin()->first;
  // w(n) = sum_{d | n} lambda_d on (X, 2X + h]
  const u64 len = X + h;
  std::vector<double> w(len, 0.0);
  for (const auto& [d, l] : lam)
    for (u64 n = (X / d + 1) * d; n <= 2 * X + h; n += d) w[n - X - 1] += l;
  double mean = 0.0;
  for (const auto& [d, l] : lam) mean += l / static_cast<double>(d);
  std::vector<double> pre(len + 1, 0.0);
  for (u64 i = 0; i < len; ++i) pre[i + 1] = pre[i] + w[i];
  // the window sum is constant for x in [m, m+1), so the integral is a sum over integers
  double lhs = 0.0;
  const double hd = static_cast<double>(h);
  for (u64 m = 0; m < X; ++m) {
    const double e = pre[m + h] - pre[m] - hd * mean;
    lhs += e * e;
  }
  double main = 0.0;
  for (const auto& [d, l] : lam) {
    double inner = 0.0;
    for (auto it = lam.find(d); it != lam.end(); ++it)
      if (it->first % d == 0) inner += it->second / static_cast<double>(it->first / d);
    main += inner * inner / static_cast<double>(d);
  }
  const double Xd = static_cast<double>(X), lX = std::log(Xd), Dd = static_cast<double>(D_real);
  const double rhs = Xd * hd * main + hd * hd * Dd * Dd * std::pow(lX, A + 8.0) + hd * Xd * std::pow(lX, -A);
  return {lhs, rhs};
}

Point distest(const Params& p, const MultFn& f, u64) {
  const u64 X = as_u64(p.at("X"));
  const double t = p.at("t"), rho = p.at("rho");
  const double tf = f.almost_real() ? 0.0 : minimize_pretend(f, X, Variant::dense).t_star;
  const double lhs = pretend_distance(f, t, X, Variant::dense);
  const double lX = std::log(static_cast<double>(X));
  const double rhs = rho * std::min(std::log(lX), 3.0 * std::log(std::abs(t - tf) * lX + 1.0));
  if (!(rhs > 0.0)) throw std::domain_error("distest: t must differ from t_f");
  return {lhs, rhs};
}

const std::vector<BoundDef>& registry() {
  static const std::vector<BoundDef> defs = {
      {"shiu", "two_squares", {{"x", 1e6}, {"theta", 0.6}, {"sweep_factor", 10}}, "x", shiu},
      {"henriot", "two_squares", {{"x", 1e6}, {"theta", 0.6}, {"K", 10}, {"sweep_factor", 10}}, "x", henriot},
      {"mvt_sparse", "two_squares", {{"x", 1e5}, {"theta", 0.6}, {"T_over_x", 1}, {"sweep_factor", 10}}, "x", mvt_sparse},
      {"contmvt2", "two_squares", {{"N", 1e4}, {"T", 1e3}, {"sweep_factor", 10}}, "T", contmvt2},
      {"halmont_int", "one", {{"N", 1000}, {"T_over_N", 1}, {"count", 10}, {"sweep_factor", 2}}, "N", halmont_int},
      {"halmont_primes", "", {{"N", 1000}, {"T_over_N", 1}, {"eta", 0.25}, {"eps", 0.1}, {"count", 10}, {"sweep_factor", 2}}, "count", halmont_primes},
      {"huxley", "", {{"N", 1000}, {"T", 1000}, {"V_rel", 2}, {"sweep_factor", 2}}, "N", huxley},
      {"moment", "two_squares", {{"X", 1e5}, {"T", 100}, {"Y1", 10}, {"Y2", 10}, {"sweep_factor", 10}}, "T", moment},
      {"parseval", "moebius", {{"X", 2000}, {"y", 50}, {"T0_factor", 2}, {"samples", 64}, {"sweep_factor", 2}}, "y", parseval},
      {"halasz_sparse", "two_squares", {{"X", 1e6}, {"x", 1e5}, {"alpha", 0.5}, {"sweep_factor", 10}}, "x", halasz_sparse},
      {"halappl", "moebius", {{"X", 1e6}, {"P", 100}, {"x_over_X", 0.5}, {"rho", 0.1}, {"t", 0}, {"sweep_factor", 10}}, "P", halappl},
      {"grkoma", "two_squares", {{"X", 1e5}, {"sweep_factor", 10}}, "X", grkoma},
      {"fried", "", {{"X", 1e5}, {"h", 100}, {"D", 1000}, {"z", 20}, {"A", 1}, {"sweep_factor", 10}}, "X", fried},
      {"distest", "moebius", {{"X", 1e6}, {"t", 10}, {"rho", 0.1}, {"sweep_factor", 10}}, "t", distest},
  };
  return defs;
}

const BoundDef& find_def(std::string_view id) {
  for (const auto& d : registry())
    if (d.id == id) return d;
  throw std::domain_error("measure_bound: unknown bound id '" + std::string(id) + "'");
}

}  // namespace

const std::vector<std::string>& bound_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& d : registry()) v.push_back(d.id);
    return v;
  }();
  return ids;
}

std::map<std::string, double> bound_defaults(std::string_view bound_id) { return find_def(bound_id).defaults; }

BoundReport measure_bound(std::string_view bound_id, const std::map<std::string, double>& params, u64 seed,
                          std::string_view fn) {
  const BoundDef& def = find_def(bound_id);
  Params merged = def.defaults;
  for (const auto& [k, v] : params) {
    if (!merged.count(k)) throw std::domain_error("measure_bound: unknown parameter '" + k + "' for " + def.id);
    if (!std::isfinite(v)) throw std::domain_error("measure_bound: parameter '" + k + "' must be finite");
    merged[k] = v;
  }
  if (!fn.empty() && def.default_fn.empty())
    throw std::domain_error("measure_bound: " + def.id + " takes no function");
  const MultFn f = def.default_fn.empty() ? MultFn() : parse_fn(fn.empty() ? std::string_view(def.default_fn) : fn);
  const double factor = merged.at("sweep_factor");
  if (!(factor > 1.0)) throw std::domain_error("measure_bound: sweep_factor must exceed 1");
  BoundReport r;
  r.bound_id = def.id;
  r.params = merged;
  const double base = merged.at(def.swept);
  for (double s : {1.0 / factor, 1.0, factor}) {
    Params pp = merged;
    pp[def.swept] = base * s;
    const Point pt = def.eval(pp, f, seed);
    if (!(pt.rhs > 0.0) || !std::isfinite(pt.rhs)) throw std::runtime_error("measure_bound: non-positive rhs for " + def.id);
    r.sweep.push_back({def.swept, base * s, pt.lhs, pt.rhs, pt.lhs / pt.rhs});
  }
  r.lhs = r.sweep[1].lhs;
  r.rhs = r.sweep[1].rhs;
  r.ratio = r.sweep[1].ratio;
  return r;
}

}  // namespace sil
