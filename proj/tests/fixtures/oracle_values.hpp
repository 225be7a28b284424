#pragma once

// Generated once by sil_oracles and frozen; do not edit by hand.

namespace oracle {

// (1/X) sum over X < n <= 2X at X = 10^6
inline constexpr double long_mean_moebius_1e6 = -0.00045899999999999999;
inline constexpr double long_mean_two_squares_1e6 = 0.20462;

// min over |t| <= 1000 of the dense distance at X = 10^6 (fine grid + local rescan)
inline constexpr double M_moebius_1e6 = 1.5939860422656285;
inline constexpr double t_moebius_1e6 = 946.92274998541029;
inline constexpr double M_char_mod4_1e6 = 2.0855537899842602;
inline constexpr double t_char_mod4_1e6 = 585.77969963872886;

// sum of gaps^gamma over (X, 2X] divided by X delta^(1 - gamma), X = 10^5, 10^6, 10^7
inline constexpr double gap_two_squares_125[3] = {1.1124298167209605, 1.1159964821660207, 1.1187721365128502};
inline constexpr double gap_two_squares_125_band_lo = 0.78894010127677072;
inline constexpr double gap_two_squares_125_band_hi = 1.5778802025535414;
inline constexpr double gap_two_squares_149[3] = {1.2607334260369376, 1.2696239943019845, 1.2767202273476232};
inline constexpr double gap_two_squares_149_band_lo = 0.89732488406058664;
inline constexpr double gap_two_squares_149_band_hi = 1.7946497681211733;
inline constexpr double gap_smooth03_125[3] = {2.701784407410202, 2.7906794404542783, 2.8784766966053597};
inline constexpr double gap_smooth03_125_band_lo = 1.9723899881660596;
inline constexpr double gap_smooth03_125_band_hi = 3.9447799763321192;

// fraction of x in [X, X + 10^6) with |(1/h) sum_{x<n<=x+h} mu(n) - mean| > 0.1, X = 10^7
inline constexpr double exceptional_moebius_h100 = 0.20078499999999999;
inline constexpr double exceptional_moebius_h1000 = 6.2000000000000003e-05;

// Perron short averages: measured max error at the fixture points, and the frozen tolerance
inline constexpr double perron_err_one = 2.0192507119487502e-05;
inline constexpr double perron_tol_one = 4.1e-05;
inline constexpr double perron_err_moebius = 0.0093361945710994862;
inline constexpr double perron_tol_moebius = 0.019;
inline constexpr double perron_err_two_squares = 0.0029714422538373864;
inline constexpr double perron_tol_two_squares = 0.0060000000000000001;

}  // namespace oracle
