#pragma once

#include "hartley/quadrature.hpp"

namespace hartley::kernels {

// sqrt(xt) log(x/t) / (x^2 - t^2); equals 1/(2x) on the diagonal.
double log_ratio_kernel(double x, double t);

// log(x/t) / (x - t); equals 1/x on the diagonal.
double log_difference_kernel(double x, double t);

// t log(x/t) / (x^2 - t^2); equals 1/(2x) on the diagonal.
double log_hilbert_kernel(double x, double t);

// Series argument limit for k_c, k_s.
constexpr double psi_series_limit = 30.0;

// The psi-series kernels of the HH^2 o FC and HH^2 o FS inverses.
// kind cos gives k_c, sin gives k_s. Throws RangeNotice for u > psi_series_limit.
double psi_series_kernel(double u, quad::Trig kind);

// J(u) = int_0^inf trig(uv) sqrt(v) log v / (v^2 - 1) dv by oscillatory quadrature.
double log_sqrt_transform(double u, quad::Trig kind);

// k(u) - sqrt(2/pi) trig(u)/2: series below the limit, -sqrt(2/pi) J(u)/pi^2 beyond.
double psi_kernel_remainder(double u, quad::Trig kind);

// Full k_c or k_s at any u >= 0.
double psi_kernel(double u, quad::Trig kind);

}  // namespace hartley::kernels
