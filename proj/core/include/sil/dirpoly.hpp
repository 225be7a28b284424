#pragma once

#include <map>
#include <span>
#include <vector>

#include "sil/arith.hpp"
#include "sil/pretence.hpp"

namespace sil {

enum class Normalize { none, over_n };

// sum_{n=lo}^{hi} a_n n^{-s}. With Normalize::over_n the stored coefficients are
// a_n/n, so evaluation at sigma = 0 gives F(1+it).
struct DirPoly {
  u64 lo = 1;
  std::vector<cplx> coeffs;
  Normalize norm = Normalize::none;

  u64 hi() const { return lo + coeffs.size() - 1; }
  cplx coeff(u64 n) const { return n < lo || n > hi() ? cplx(0.0) : coeffs[n - lo]; }
  // sigma at which this polynomial represents F(1+it)
  double sigma_convention() const { return norm == Normalize::over_n ? 0.0 : 1.0; }
};

struct SpacedSet {
  std::vector<double> points;
  double spacing = 1.0;
};

DirPoly from_window(std::span<const cplx> values, u64 start, Normalize normalize = Normalize::none);

cplx evaluate(const DirPoly& P, double sigma, double t);
// P(sigma + i(t0 + k dt)) for k < n
std::vector<cplx> evaluate_grid(const DirPoly& P, double sigma, double t0, double dt, std::size_t n);

double nyquist_step(const DirPoly& P);
// trapezoid rule for int_{-T}^{T} |P(sigma+it)|^2 dt, halving the step until the
// relative change is below 0.5%
double mean_square_grid(const DirPoly& P, double sigma, double T, double step);

SpacedSet large_value_set(const DirPoly& P, double sigma, double T, double V);

// (1/h) (1/2 pi) int_{-T}^{T} F(1+it) ((x+h)^{1+it} - x^{1+it})/(1+it) dt
cplx perron_short_average(const DirPoly& P, double x, double h, double T);

using ExactPoly = std::map<u64, Rational>;

struct SplitFactor {
  long nu = 0;
  DirPoly q_poly;  // sum over primes p in (P,Q] with nu(p) = nu of f(p) p^{-s}
  DirPoly r_poly;  // sum over m in the nu-range of f(m)/(omega(m)+1) m^{-s}
  ExactPoly q_exact, r_exact;
};

struct SplitResult {
  double P = 0, Q = 0, H = 0;
  std::vector<SplitFactor> factors;
  DirPoly original;          // f(n) 1[n has a prime factor in (P,Q]] on the window
  DirPoly boundary_error;    // products mp landing on the wrong side of the window
  DirPoly collision_error;   // n with p^2 | n for some p in (P,Q]
  bool exact = false;        // exact parts filled (f integral)
  ExactPoly original_exact, boundary_exact, collision_exact;
};

SplitResult buchstab_ramare_split(const FactorWindow& fw, const MultFn& f, double P, double Q, double H);

// coefficientwise Dirichlet product
ExactPoly dirichlet_product(const ExactPoly& a, const ExactPoly& b);
std::vector<std::pair<u64, cplx>> dirichlet_product(const DirPoly& a, const DirPoly& b);

// max over n of |original - (sum QR + boundary + collision)| in exact arithmetic
Rational split_residual_exact(const SplitResult& s);
double split_residual(const SplitResult& s);

}  // namespace sil
