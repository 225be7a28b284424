#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace sil::detail {

// out_re/out_im[k] += sum_i (wr_i + i wi_i) e^{-i (t0 + k dt) l_i}, k < n.
// Phasors advance by a fixed rotation and are reseeded exactly every `seg` steps;
// primes are tiled so the working set stays in cache. out_im may be null.
inline void phasor_sum(const double* l, const double* wr, const double* wi, std::size_t np, double t0, double dt,
                       std::size_t n, double* out_re, double* out_im) {
  constexpr std::size_t tile = 1024, seg = 2048;
  std::vector<double> zr(tile), zi(tile), rr(tile), ri(tile);
  for (std::size_t s0 = 0; s0 < n; s0 += seg) {
    const std::size_t m = std::min(seg, n - s0);
    const double ts = t0 + static_cast<double>(s0) * dt;
    for (std::size_t p0 = 0; p0 < np; p0 += tile) {
      const std::size_t len = std::min(tile, np - p0);
      for (std::size_t i = 0; i < len; ++i) {
        const double a = ts * l[p0 + i];
        const double c = std::cos(a), s = std::sin(a);
        zr[i] = wr[p0 + i] * c + wi[p0 + i] * s;
        zi[i] = wi[p0 + i] * c - wr[p0 + i] * s;
        rr[i] = std::cos(dt * l[p0 + i]);
        ri[i] = -std::sin(dt * l[p0 + i]);
      }
      double* zrp = zr.data();
      double* zip = zi.data();
      const double* rrp = rr.data();
      const double* rip = ri.data();
      for (std::size_t j = 0; j < m; ++j) {
        double sr = 0.0, si = 0.0;
#pragma omp simd reduction(+ : sr, si)
        for (std::size_t i = 0; i < len; ++i) {
          sr += zrp[i];
          si += zip[i];
          const double a = zrp[i] * rrp[i] - zip[i] * rip[i];
          const double b = zrp[i] * rip[i] + zip[i] * rrp[i];
          zrp[i] = a;
          zip[i] = b;
        }
        out_re[s0 + j] += sr;
        if (out_im) out_im[s0 + j] += si;
      }
    }
  }
}

}  // namespace sil::detail
