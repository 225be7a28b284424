#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sil/arith.hpp"

namespace sil {

// arbitrary precision, so exact sums never overflow
using Rational = boost::multiprecision::cpp_rational;

enum class Variant { dense, sparse };

const char* to_string(Variant v);
Variant parse_variant(std::string_view s);

struct GridSpec {
  double t_max = 0;       // search range |t| <= t_max
  double fine_range = 0;  // uniform grid on |t| <= fine_range
  double spacing = 0;     // uniform grid spacing
  std::size_t log_points = 0;  // log-spaced points per sign beyond fine_range
  int refine_cells = 0;
};

struct PretendSummary {
  Variant variant = Variant::dense;
  double t_star = 0;
  double M_value = 0;
  GridSpec grid;
};

struct ProductReport {
  u64 X = 0;
  double mean_factor = 1;
  double square_factor = 1;
  double H_value = 1;
  std::optional<double> set_density;  // only when |f(p)| is 0 or 1 for all p <= X
  double vanishing_square_product = 1;  // prod over f(p)=0 of (1 - 1/p^2)
};

double rho_alpha(double alpha);

// Prime sum D(t) = sum_{p<=X} (base_p - Re f(p) p^{-it}) / p with base_p = 1 (dense)
// or |f(p)| (sparse). Precomputes f on primes once for repeated evaluation.
class DistanceEvaluator {
 public:
  DistanceEvaluator(const MultFn& f, u64 X, Variant v);

  double operator()(double t) const;
  // out[k] = D(t0 + k*dt), k < n
  void grid(double t0, double dt, std::size_t n, double* out) const;
  bool real_valued() const { return real_; }
  std::size_t prime_count() const { return logp_.size(); }

 private:
  double base_ = 0;
  bool real_ = true;
  std::vector<double> logp_, wr_, wi_;
};

double pretend_distance(const MultFn& f, double t, u64 X, Variant v);

// t_max <= 0 means the full range |t| <= X
PretendSummary minimize_pretend(const MultFn& f, u64 X, Variant v, double t_max = 0);

ProductReport euler_products(const MultFn& f, u64 X);

double lipschitz_discrepancy(const MultFn& f, u64 X, u64 y, double t);

std::pair<double, double> rearrangement_check(std::span<const double> alphas, std::span<const double> bs,
                                              std::size_t N0);
std::pair<Rational, Rational> rearrangement_check(std::span<const Rational> alphas, std::span<const Rational> bs,
                                                  std::size_t N0);

struct CosCheck {
  double lhs = 0;
  double rhs_main = 0;
  double Y = 0;
};

CosCheck appendix_cos_check(const MultFn& f, double t, u64 X, double theta, double eps, double alpha = 1.0);

}  // namespace sil
