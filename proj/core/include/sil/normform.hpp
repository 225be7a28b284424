#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sil/arith.hpp"

namespace sil {

using i64 = std::int64_t;

// Monic integer polynomial from the supported monogenic list:
// x^2 - d (d squarefree, d != 1 mod 4, |d| <= 10^4) and x^3 - 2.
struct NumberField {
  std::vector<i64> min_poly;  // descending coefficients, leading 1
  int degree = 0;
  i64 poly_disc = 0;
  bool monogenic_ok = false;
  i64 d = 0;  // radicand for x^2 - d; 2 for x^3 - 2
  std::string name;
};

struct SplitPart {
  int f = 1;  // residue degree
  int e = 1;  // ramification index
};

struct SplitType {
  u64 p = 0;
  std::vector<SplitPart> parts;  // sorted by (f, e)
  int min_degree() const;
};

using Form = std::array<i64, 3>;  // a x^2 + b xy + c y^2

struct QuadClassData {
  i64 D = 0;
  int h = 0;
  Form principal_form{};
  std::vector<Form> reduced_forms;
  // +1 if the degree-one prime above p is principal, -1 if not, 0 if p is inert
  int genus_character(u64 p) const;
};

NumberField define_field(std::span<const i64> coeffs);
// "x^2+5", "x^3-2", "x^2-7"
NumberField parse_field(std::string_view poly);

SplitType dedekind_split(const NumberField& K, u64 p);

// Delta_K(p^v) from the splitting type
int ideal_norm_prime_power(const SplitType& s, unsigned v);
int ideal_norm_indicator(const NumberField& K, std::span<const PrimePower> fac);
int ideal_norm_indicator(const NumberField& K, u64 n, const FactorWindow& fw);

int normform_indicator(const NumberField& K, std::span<const PrimePower> fac);
int normform_indicator(const NumberField& K, u64 n, const FactorWindow& fw);

Form reduce_form(Form f);
QuadClassData quad_class_data(const NumberField& K);

struct GenusDecomposition {
  MultFn f0, f1;
  std::array<double, 2> weights{0.5, 0.5};
};

GenusDecomposition genus_split_decomposition(const NumberField& K);

double delta_K_X(const NumberField& K, u64 X);

// (sum_{w<p<=z} g_K(p)/p, that sum over sum_{w<p<=z} 1/p)
std::pair<double, double> prime_normform_density(const NumberField& K, double w, double z);

}  // namespace sil
