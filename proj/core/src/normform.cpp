#include "sil/normform.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <memory>

namespace sil {

namespace {

using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 reduce_signed(i64 v, u64 p) {
  const i64 m = v % static_cast<i64>(p);
  return static_cast<u64>(m < 0 ? m + static_cast<i64>(p) : m);
}

// polynomials mod p, ascending coefficients
using Poly = std::vector<u64>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod m, m monic or with invertible leading coefficient
Poly poly_mod(Poly a, const Poly& m, u64 p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const u64 inv = powmod(m.back(), p - 2, p);
  while (a.size() > dm) {
    const u64 c = mulmod(a.back(), inv, p);
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = (a[shift + i] + p - mulmod(c, m[i], p)) % p;
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  return poly_mod(std::move(r), m, p);
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

bool is_squarefree(i64 d) {
  u64 n = static_cast<u64>(d < 0 ? -d : d);
  for (u64 q = 2; q * q <= n; ++q)
    if (n % (q * q) == 0) return false;
  return true;
}

u64 sqrt_mod(u64 a, u64 p) {
  a %= p;
  if (a == 0 || p == 2) return a;
  if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
  // Tonelli-Shanks
  u64 q = p - 1;
  int s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  u64 z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  u64 m = static_cast<u64>(s), c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    u64 i = 0, tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    u64 b = c;
    for (u64 j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

bool is_square(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r * r == n;
}

u64 product_of(std::span<const PrimePower> fac) {
  u64 n = 1;
  for (const auto& pp : fac)
    for (unsigned i = 0; i < pp.e; ++i) n *= pp.p;
  return n;
}

const char* unsupported_msg =
    "unsupported polynomial: only the monogenic fields x^2-d (d squarefree, d != 1 mod 4, |d| <= 10^4) and x^3-2 "
    "are supported";

}  // namespace

int SplitType::min_degree() const {
  int m = 1 << 20;
  for (const auto& pt : parts) m = std::min(m, pt.f);
  return m;
}

NumberField define_field(std::span<const i64> coeffs) {
  if (coeffs.empty() || coeffs.front() != 1) throw std::domain_error(std::string("define_field: polynomial must be monic; ") + unsupported_msg);
  NumberField K;
  K.min_poly.assign(coeffs.begin(), coeffs.end());
  K.degree = static_cast<int>(coeffs.size()) - 1;
  if (K.degree == 2) {
    if (coeffs[1] != 0) throw std::domain_error(unsupported_msg);
    const i64 d = -coeffs[2];
    const i64 r4 = ((d % 4) + 4) % 4;
    if (d == 0 || d == 1 || r4 == 1 || std::abs(d) > 10000 || !is_squarefree(d))
      throw std::domain_error(unsupported_msg);
    K.d = d;
    K.poly_disc = 4 * d;
    K.name = "x^2" + std::string(d < 0 ? "+" : "-") + std::to_string(std::abs(d));
  } else if (K.degree == 3) {
    if (coeffs[1] != 0 || coeffs[2] != 0 || coeffs[3] != -2) throw std::domain_error(unsupported_msg);
    K.d = 2;
    K.poly_disc = -108;
    K.name = "x^3-2";
  } else {
    throw std::domain_error(unsupported_msg);
  }
  K.monogenic_ok = true;
  return K;
}

NumberField parse_field(std::string_view poly) {
  std::string s;
  for (char c : poly)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.size() < 3 || s[0] != 'x' || s[1] != '^') throw std::domain_error(unsupported_msg);
  const int deg = s[2] - '0';
  if (deg != 2 && deg != 3) throw std::domain_error(unsupported_msg);
  i64 c0 = 0;
  std::string rest = s.substr(3);
  if (!rest.empty()) {
    if (rest[0] != '+' && rest[0] != '-') throw std::domain_error(unsupported_msg);
    std::size_t used = 0;
    try {
      c0 = std::stoll(rest, &used);
    } catch (const std::exception&) {
      throw std::domain_error(unsupported_msg);
    }
    if (used != rest.size()) throw std::domain_error(unsupported_msg);
  }
  std::vector<i64> coeffs(static_cast<std::size_t>(deg) + 1, 0);
  coeffs[0] = 1;
  coeffs.back() = c0;
  return define_field(coeffs);
}

SplitType dedekind_split(const NumberField& K, u64 p) {
  if (p < 2) throw std::domain_error("dedekind_split: p must be prime");
  SplitType st;
  st.p = p;
  Poly f(static_cast<std::size_t>(K.degree) + 1);
  for (int i = 0; i <= K.degree; ++i) f[static_cast<std::size_t>(i)] = reduce_signed(K.min_poly[static_cast<std::size_t>(K.degree - i)], p);
  const u64 disc_abs = static_cast<u64>(std::abs(K.poly_disc));
  if (disc_abs % p == 0) {
    // p small: roots with multiplicity by search, remaining factor has no roots
    Poly g = f;
    for (u64 a = 0; a < p && g.size() > 1; ++a) {
      int mult = 0;
      for (;;) {
        // synthetic division by (x - a)
        Poly q(g.size() - 1);
        u64 carry = 0;
        for (std::size_t i = g.size(); i-- > 1;) {
          carry = (g[i] + mulmod(carry, a, p)) % p;
          q[i - 1] = carry;
        }
        const u64 rem = (g[0] + mulmod(carry, a, p)) % p;
        if (rem != 0) break;
        g = std::move(q);
        ++mult;
        if (g.size() == 1) break;
      }
      if (mult) st.parts.push_back({1, mult});
    }
    if (g.size() > 1) st.parts.push_back({static_cast<int>(g.size()) - 1, 1});
  } else {
    // number of roots = deg gcd(f, x^p - x mod f)
    Poly xp = poly_mod(Poly{0, 1}, f, p);
    Poly base = xp, acc{1};
    for (u64 e = p; e; e >>= 1) {
      if (e & 1) acc = poly_mulmod(acc, base, f, p);
      base = poly_mulmod(base, base, f, p);
    }
    Poly h = acc;
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    const Poly g = poly_gcd(f, h, p);
    const int roots = g.empty() ? K.degree : static_cast<int>(g.size()) - 1;
    for (int i = 0; i < roots; ++i) st.parts.push_back({1, 1});
    const int left = K.degree - roots;
    if (left > 0) st.parts.push_back({left, 1});
  }
  std::sort(st.parts.begin(), st.parts.end(), [](const SplitPart& a, const SplitPart& b) {
    return a.f < b.f || (a.f == b.f && a.e < b.e);
  });
  return st;
}

int ideal_norm_prime_power(const SplitType& s, unsigned v) {
  // v in the numerical semigroup generated by the residue degrees
  std::vector<char> reach(v + 1, 0);
  reach[0] = 1;
  for (unsigned i = 1; i <= v; ++i)
    for (const auto& pt : s.parts)
      if (static_cast<unsigned>(pt.f) <= i && reach[i - static_cast<unsigned>(pt.f)]) {
        reach[i] = 1;
        break;
      }
  return reach[v];
}

int ideal_norm_indicator(const NumberField& K, std::span<const PrimePower> fac) {
  for (const auto& pp : fac)
    if (!ideal_norm_prime_power(dedekind_split(K, pp.p), pp.e)) return 0;
  return 1;
}

int ideal_norm_indicator(const NumberField& K, u64 n, const FactorWindow& fw) { return ideal_norm_indicator(K, fw.of(n)); }

int normform_indicator(const NumberField& K, std::span<const PrimePower> fac) {
  if (K.degree == 3) return ideal_norm_indicator(K, fac);  // class number 1, unit of norm -1
  if (K.d > 0) throw std::domain_error("normform_indicator: real quadratic fields are not supported");
  if (K.d == -1) {
    for (const auto& pp : fac)
      if (pp.p % 4 == 3 && (pp.e & 1)) return 0;
    return 1;
  }
  // x^2 + m y^2 = n with 0 <= y <= sqrt(n/m)
  const u64 n = product_of(fac);
  const u64 m = static_cast<u64>(-K.d);
  for (u64 y = 0; m * y * y <= n; ++y)
    if (is_square(n - m * y * y)) return 1;
  return 0;
}

int normform_indicator(const NumberField& K, u64 n, const FactorWindow& fw) { return normform_indicator(K, fw.of(n)); }

Form reduce_form(Form f) {
  auto [a, b, c] = f;
  const i64 D = b * b - 4 * a * c;
  if (a <= 0 || D >= 0) throw std::domain_error("reduce_form: form must be positive definite");
  for (;;) {
    if (b > a || b <= -a) {
      // b into (-a, a]
      const i64 two_a = 2 * a;
      i64 k = (a - b) / two_a;
      if ((a - b) % two_a < 0) --k;
      b += two_a * k;
      c = (b * b - D) / (4 * a);
    }
    if (a > c) {
      std::swap(a, c);
      b = -b;
      continue;
    }
    break;
  }
  if (b < 0 && (a == c || -b == a)) b = -b;
  return {a, b, c};
}

int QuadClassData::genus_character(u64 p) const {
  if (p == 2 || static_cast<u64>(-D) % p == 0) {
    // ramified: the prime above p is (p, b, c) with b^2 = D mod 4p
    for (i64 b = 0; b < 2 * static_cast<i64>(p); ++b)
      if ((b * b - D) % (4 * static_cast<i64>(p)) == 0) {
        const Form g = reduce_form({static_cast<i64>(p), b, (b * b - D) / (4 * static_cast<i64>(p))});
        return g == principal_form ? 1 : -1;
      }
    return 0;
  }
  const u64 Dm = reduce_signed(D, p);
  if (powmod(Dm, (p - 1) / 2, p) != 1) return 0;  // inert
  u64 b0 = sqrt_mod(Dm, p);
  // b = b0 mod p with b = D mod 2
  i64 b = static_cast<i64>(b0);
  if ((b - D) % 2 != 0) b += static_cast<i64>(p);
  const i64 pp = static_cast<i64>(p);
  const __int128 num = static_cast<__int128>(b) * b - D;
  const i64 c = static_cast<i64>(num / (4 * pp));
  const Form g = reduce_form({pp, b, c});
  return g == principal_form ? 1 : -1;
}

QuadClassData quad_class_data(const NumberField& K) {
  if (K.degree != 2 || K.d >= 0) throw std::domain_error("quad_class_data: imaginary quadratic field required");
  QuadClassData q;
  q.D = K.poly_disc;
  const i64 absD = -q.D;
  for (i64 a = 1; 3 * a * a <= absD; ++a)
    for (i64 b = -a + 1; b <= a; ++b) {
      if ((b * b + absD) % (4 * a) != 0) continue;
      const i64 c = (b * b + absD) / (4 * a);
      if (c < a || (c == a && b < 0)) continue;
      q.reduced_forms.push_back({a, b, c});
    }
  q.h = static_cast<int>(q.reduced_forms.size());
  q.principal_form = reduce_form({1, 0, absD / 4});
  return q;
}

GenusDecomposition genus_split_decomposition(const NumberField& K) {
  if (K.degree != 2 || K.d >= 0) throw std::domain_error("genus_split_decomposition: needs Q(sqrt(-5)) (imaginary quadratic, h = 2)");
  auto q = std::make_shared<const QuadClassData>(quad_class_data(K));
  if (q->h != 2) throw std::domain_error("genus_split_decomposition: needs class number 2 (e.g. Q(sqrt(-5)))");
  auto field = std::make_shared<const NumberField>(K);
  GenusDecomposition g;
  g.f0 = MultFn("delta_K", [field](u64 p, unsigned k) {
    return cplx(ideal_norm_prime_power(dedekind_split(*field, p), k), 0.0);
  }, true, [field](u64 p, unsigned k) { return ideal_norm_prime_power(dedekind_split(*field, p), k); });
  auto f1 = [field, q](u64 p, unsigned k) {
    const SplitType s = dedekind_split(*field, p);
    if (s.min_degree() > 1) return ideal_norm_prime_power(s, k);  // inert: matches Delta
    const int chi = q->genus_character(p);
    return (k & 1) ? chi : 1;
  };
  g.f1 = MultFn("genus_twist", [f1](u64 p, unsigned k) { return cplx(f1(p, k), 0.0); }, true, f1);
  return g;
}

double delta_K_X(const NumberField& K, u64 X) {
  if (X < 2) throw std::domain_error("delta_K_X: X must be >= 2");
  double prod = 1.0;
  auto pt = shared_primes(X);
  for (u64 p : pt->upto(X))
    if (dedekind_split(K, p).min_degree() > 1) prod *= 1.0 - 1.0 / static_cast<double>(p);
  return prod;
}

std::pair<double, double> prime_normform_density(const NumberField& K, double w, double z) {
  if (!(w >= 2.0 && w < z)) throw std::domain_error("prime_normform_density: need 2 <= w < z");
  auto pt = shared_primes(static_cast<u64>(z) + 1);
  double lhs = 0.0, all = 0.0;
  for (u64 p : pt->between(w, z)) {
    const PrimePower pp{p, 1};
    const double inv = 1.0 / static_cast<double>(p);
    all += inv;
    if (normform_indicator(K, std::span<const PrimePower>(&pp, 1))) lhs += inv;
  }
  return {lhs, all > 0.0 ? lhs / all : 0.0};
}

}  // namespace sil
