#include "sil/dirpoly.hpp"

#include <algorithm>
#include <cmath>

#include "compensated.hpp"
#include "phasor.hpp"

namespace sil {

DirPoly from_window(std::span<const cplx> values, u64 start, Normalize normalize) {
  if (values.empty()) throw std::domain_error("from_window: empty values");
  if (start < 1) throw std::domain_error("from_window: start must be >= 1");
  DirPoly P;
  P.lo = start;
  P.norm = normalize;
  P.coeffs.assign(values.begin(), values.end());
  if (normalize == Normalize::over_n)
    for (std::size_t i = 0; i < P.coeffs.size(); ++i) P.coeffs[i] /= static_cast<double>(start + i);
  return P;
}

namespace {

using detail::Compensated;

struct Terms {
  std::vector<double> l, wr, wi;
};

Terms nonzero_terms(const DirPoly& P, double sigma) {
  Terms t;
  for (std::size_t i = 0; i < P.coeffs.size(); ++i) {
    const cplx a = P.coeffs[i];
    if (a == cplx(0.0)) continue;
    const double n = static_cast<double>(P.lo + i);
    const double scale = sigma == 0.0 ? 1.0 : std::pow(n, -sigma);
    t.l.push_back(std::log(n));
    t.wr.push_back(a.real() * scale);
    t.wi.push_back(a.imag() * scale);
  }
  return t;
}

}  // namespace

cplx evaluate(const DirPoly& P, double sigma, double t) {
  Compensated re, im;
  for (std::size_t i = 0; i < P.coeffs.size(); ++i) {
    const cplx a = P.coeffs[i];
    if (a == cplx(0.0)) continue;
    const double n = static_cast<double>(P.lo + i);
    const cplx v = a * std::pow(n, -sigma) * std::polar(1.0, -t * std::log(n));
    re.add(v.real());
    im.add(v.imag());
  }
  return {re.value(), im.value()};
}

std::vector<cplx> evaluate_grid(const DirPoly& P, double sigma, double t0, double dt, std::size_t n) {
  const Terms tm = nonzero_terms(P, sigma);
  std::vector<double> re(n, 0.0), im(n, 0.0);
  detail::phasor_sum(tm.l.data(), tm.wr.data(), tm.wi.data(), tm.l.size(), t0, dt, n, re.data(), im.data());
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = {re[k], im[k]};
  return out;
}

double nyquist_step(const DirPoly& P) {
  return 1.0 / (4.0 * std::log(std::max<double>(2.0, static_cast<double>(P.hi()))));
}

double mean_square_grid(const DirPoly& P, double sigma, double T, double step) {
  if (!(T > 0.0)) throw std::domain_error("mean_square_grid: T must be positive");
  if (!(step > 0.0) || step > nyquist_step(P) * (1.0 + 1e-12))
    throw precondition_error("mean_square_grid: step must be <= 1/(4 log hi)");
  const Terms tm = nonzero_terms(P, sigma);
  auto sample_sum = [&](double t0, double dt, std::size_t n) {
    std::vector<double> re(n, 0.0), im(n, 0.0);
    detail::phasor_sum(tm.l.data(), tm.wr.data(), tm.wi.data(), tm.l.size(), t0, dt, n, re.data(), im.data());
    std::vector<double> sq(n);
    for (std::size_t k = 0; k < n; ++k) sq[k] = re[k] * re[k] + im[k] * im[k];
    return sq;
  };
  std::size_t n = static_cast<std::size_t>(std::ceil(2.0 * T / step));
  double h = 2.0 * T / static_cast<double>(n);
  auto sq = sample_sum(-T, h, n + 1);
  Compensated acc;
  acc.add(0.5 * (sq.front() + sq.back()));
  for (std::size_t k = 1; k < n; ++k) acc.add(sq[k]);
  double sum = acc.value();  // sum of trapezoid weights / h
  double cur = sum * h;
  for (int it = 0; it < 10; ++it) {
    // midpoints of the current grid refine the trapezoid rule
    auto mid = sample_sum(-T + 0.5 * h, h, n);
    Compensated m;
    for (double v : mid) m.add(v);
    sum += m.value();
    n *= 2;
    h *= 0.5;
    const double next = sum * h;
    const bool done = std::abs(next - cur) <= 0.005 * std::abs(next);
    cur = next;
    if (done) break;
  }
  return cur;
}

SpacedSet large_value_set(const DirPoly& P, double sigma, double T, double V) {
  if (!(V > 0.0)) throw std::domain_error("large_value_set: V must be positive");
  if (!(T > 0.0)) throw std::domain_error("large_value_set: T must be positive");
  const double step = nyquist_step(P);
  const auto n = static_cast<std::size_t>(std::floor(2.0 * T / step)) + 1;
  auto vals = evaluate_grid(P, sigma, -T, step, n);
  SpacedSet out;
  out.spacing = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = -T + static_cast<double>(k) * step;
    if (std::abs(vals[k]) < V) continue;
    if (out.points.empty() || t - out.points.back() >= 1.0) out.points.push_back(t);
  }
  return out;
}

cplx perron_short_average(const DirPoly& P, double x, double h, double T) {
  if (!(h > 0.0) || !(x > 0.0)) throw std::domain_error("perron_short_average: need x, h > 0");
  const double X = static_cast<double>(P.hi()) / 4.0;
  if (T * h < X) throw precondition_error("perron_short_average: T below X/h");
  // the integrand F(1+it) y^{it} has frequencies log(y/n); Simpson on a step resolving them
  double band = 0.0;
  for (double y : {x, x + h})
    for (double n : {static_cast<double>(P.lo), static_cast<double>(P.hi())})
      band = std::max(band, std::abs(std::log(y / n)));
  band = std::max(band, 1.0);
  const double want = 0.25 / band;
  const std::size_t half = static_cast<std::size_t>(std::ceil(T / want));
  const std::size_t n = 2 * half;  // even number of Simpson intervals
  const double dt = 2.0 * T / static_cast<double>(n);
  auto F = evaluate_grid(P, P.sigma_convention(), -T, dt, n + 1);
  const double lx = std::log(x), lxh = std::log(x + h);
  Compensated re, im;
  for (std::size_t k = 0; k <= n; ++k) {
    const double t = -T + static_cast<double>(k) * dt;
    const cplx s(1.0, t);
    const cplx ker = ((x + h) * std::polar(1.0, t * lxh) - x * std::polar(1.0, t * lx)) / s;
    const double w = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    const cplx v = w * F[k] * ker;
    re.add(v.real());
    im.add(v.imag());
  }
  const cplx integral = cplx(re.value(), im.value()) * (dt / 3.0);
  return integral / (2.0 * pi * h);
}

// ---------------------------------------------------------------------------
// Buchstab/Ramare split

namespace {

DirPoly to_dirpoly(const std::map<u64, cplx>& m) {
  DirPoly P;
  if (m.empty()) {
    P.lo = 1;
    P.coeffs.assign(1, 0.0);
    return P;
  }
  P.lo = m.begin()->first;
  P.coeffs.assign(m.rbegin()->first - P.lo + 1, 0.0);
  for (const auto& [n, c] : m) P.coeffs[n - P.lo] = c;
  return P;
}

std::map<u64, cplx> to_cplx(const ExactPoly& m) {
  std::map<u64, cplx> out;
  for (const auto& [n, c] : m) out[n] = static_cast<double>(c);
  return out;
}

template <class T>
struct SplitMaps {
  std::map<u64, T> original, boundary, collision;
  std::vector<long> nus;
  std::vector<std::map<u64, T>> q, r;
};

template <class T, class Val>
SplitMaps<T> split_maps(const FactorWindow& fw, double P, double Q, double H, Val val) {
  auto in_pq = [P, Q](u64 p) { return static_cast<double>(p) > P && static_cast<double>(p) <= Q; };
  auto omega = [&](std::span<const PrimePower> fac) {
    int w = 0;
    for (const auto& pp : fac) w += in_pq(pp.p);
    return w;
  };
  const u64 A = fw.start() - 1, B = fw.start() + fw.len() - 1;
  auto pt = shared_primes(static_cast<u64>(Q) + 1);
  auto ps = pt->between(P, Q);
  auto nu_of = [H](u64 p) { return static_cast<long>(std::ceil(H * std::log(static_cast<double>(p)))) - 1; };

  // integer m-ranges per nu: (A e^{-nu/H}, B e^{-nu/H}]
  std::map<long, std::pair<u64, u64>> mrange;
  std::map<long, std::vector<u64>> primes_of;
  for (u64 p : ps) primes_of[nu_of(p)].push_back(p);
  u64 lo_all = A / std::max<u64>(1, static_cast<u64>(Q)), hi_all = B / std::max<u64>(1, static_cast<u64>(std::floor(P))) + 1;
  for (const auto& [nu, v] : primes_of) {
    const long double sc = std::exp(-static_cast<long double>(nu) / H);
    const u64 mlo = static_cast<u64>(std::floor(static_cast<long double>(A) * sc)) + 1;
    const u64 mhi = static_cast<u64>(std::floor(static_cast<long double>(B) * sc));
    mrange[nu] = {mlo, mhi};
    lo_all = std::min(lo_all, mlo);
    hi_all = std::max(hi_all, mhi);
  }
  lo_all = std::max<u64>(1, lo_all);

  // b_m and omega(m) over the auxiliary range
  std::vector<T> bval(hi_all - lo_all + 1);
  std::vector<int> bom(hi_all - lo_all + 1);
  for_each_factored(lo_all, hi_all - lo_all + 1, [&](u64 m, std::span<const PrimePower> fac) {
    bval[m - lo_all] = val(fac);
    bom[m - lo_all] = omega(fac);
  });
  auto bterm = [&](u64 m) { return bval[m - lo_all] / T(bom[m - lo_all] + 1); };

  SplitMaps<T> out;
  for (const auto& [nu, v] : primes_of) {
    out.nus.push_back(nu);
    std::map<u64, T> q, r;
    for (u64 p : v) q[p] = val(std::span<const PrimePower>(std::vector<PrimePower>{{p, 1}}));
    const auto [mlo, mhi] = mrange[nu];
    for (u64 m = mlo; m <= mhi; ++m) {
      const T c = bterm(m);
      if (c != T(0)) r[m] = c;
    }
    out.q.push_back(std::move(q));
    out.r.push_back(std::move(r));
  }

  for (u64 i = 0; i < fw.len(); ++i) {
    const u64 n = fw.start() + i;
    auto fac = fw.at(i);
    const int w = omega(fac);
    if (w == 0) continue;
    const T an = val(fac);
    if (an != T(0)) out.original[n] = an;
    for (const auto& pp : fac) {
      if (!in_pq(pp.p)) continue;
      const T cp = val(std::span<const PrimePower>(std::vector<PrimePower>{{pp.p, 1}}));
      const T term = cp * bterm(n / pp.p);
      out.boundary[n] += term;
      if (pp.e >= 2) out.collision[n] += an / T(w) - term;
    }
  }
  for (std::size_t k = 0; k < out.nus.size(); ++k)
    for (const auto& [p, cp] : out.q[k])
      for (const auto& [m, rm] : out.r[k]) out.boundary[m * p] -= cp * rm;
  for (auto* mp : {&out.boundary, &out.collision})
    std::erase_if(*mp, [](const auto& kv) { return kv.second == T(0); });
  return out;
}

}  // namespace

SplitResult buchstab_ramare_split(const FactorWindow& fw, const MultFn& f, double P, double Q, double H) {
  // the identity is exact for any 1 <= P <= Q; the Q <= X^{1/5} scale is not enforced
  if (!(P >= 1.0 && P <= Q)) throw std::domain_error("buchstab_ramare_split: need 1 <= P <= Q");
  if (!(H > 0.0)) throw std::domain_error("buchstab_ramare_split: H must be positive");
  SplitResult res;
  res.P = P;
  res.Q = Q;
  res.H = H;
  std::map<u64, cplx> orig, bnd, col;
  std::vector<long> nus;
  std::vector<std::map<u64, cplx>> qs, rs;
  if (f.integral()) {
    auto m = split_maps<Rational>(fw, P, Q, H,
                                  [&f](std::span<const PrimePower> fac) { return Rational(eval_factored_int(f, fac)); });
    res.exact = true;
    res.original_exact = m.original;
    res.boundary_exact = m.boundary;
    res.collision_exact = m.collision;
    orig = to_cplx(m.original);
    bnd = to_cplx(m.boundary);
    col = to_cplx(m.collision);
    nus = m.nus;
    for (std::size_t k = 0; k < nus.size(); ++k) {
      SplitFactor sf;
      sf.nu = nus[k];
      sf.q_exact = m.q[k];
      sf.r_exact = m.r[k];
      sf.q_poly = to_dirpoly(to_cplx(m.q[k]));
      sf.r_poly = to_dirpoly(to_cplx(m.r[k]));
      res.factors.push_back(std::move(sf));
    }
  } else {
    auto m = split_maps<cplx>(fw, P, Q, H, [&f](std::span<const PrimePower> fac) { return eval_factored(f, fac); });
    orig = m.original;
    bnd = m.boundary;
    col = m.collision;
    for (std::size_t k = 0; k < m.nus.size(); ++k) {
      SplitFactor sf;
      sf.nu = m.nus[k];
      sf.q_poly = to_dirpoly(m.q[k]);
      sf.r_poly = to_dirpoly(m.r[k]);
      res.factors.push_back(std::move(sf));
    }
  }
  res.original = to_dirpoly(orig);
  res.boundary_error = to_dirpoly(bnd);
  res.collision_error = to_dirpoly(col);
  return res;
}

ExactPoly dirichlet_product(const ExactPoly& a, const ExactPoly& b) {
  ExactPoly out;
  for (const auto& [m, x] : a)
    for (const auto& [n, y] : b) out[m * n] += x * y;
  std::erase_if(out, [](const auto& kv) { return kv.second == Rational(0); });
  return out;
}

std::vector<std::pair<u64, cplx>> dirichlet_product(const DirPoly& a, const DirPoly& b) {
  std::map<u64, cplx> out;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i] == cplx(0.0)) continue;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j)
      if (b.coeffs[j] != cplx(0.0)) out[(a.lo + i) * (b.lo + j)] += a.coeffs[i] * b.coeffs[j];
  }
  return {out.begin(), out.end()};
}

Rational split_residual_exact(const SplitResult& s) {
  if (!s.exact) throw std::domain_error("split_residual_exact: split was not computed exactly");
  ExactPoly total;
  for (const auto& fct : s.factors)
    for (const auto& [n, c] : dirichlet_product(fct.q_exact, fct.r_exact)) total[n] += c;
  for (const auto* m : {&s.boundary_exact, &s.collision_exact})
    for (const auto& [n, c] : *m) total[n] += c;
  for (const auto& [n, c] : s.original_exact) total[n] -= c;
  Rational worst(0);
  for (const auto& [n, c] : total) worst = std::max(worst, c < Rational(0) ? -c : c);
  return worst;
}

double split_residual(const SplitResult& s) {
  std::map<u64, cplx> total;
  for (const auto& fct : s.factors)
    for (const auto& [n, c] : dirichlet_product(fct.q_poly, fct.r_poly)) total[n] += c;
  for (const DirPoly* P : {&s.boundary_error, &s.collision_error})
    for (std::size_t i = 0; i < P->coeffs.size(); ++i)
      if (P->coeffs[i] != cplx(0.0)) total[P->lo + i] += P->coeffs[i];
  for (std::size_t i = 0; i < s.original.coeffs.size(); ++i)
    if (s.original.coeffs[i] != cplx(0.0)) total[s.original.lo + i] -= s.original.coeffs[i];
  double worst = 0.0;
  for (const auto& [n, c] : total) worst = std::max(worst, std::abs(c));
  return worst;
}

}  // namespace sil
