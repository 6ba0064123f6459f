#pragma once

#include <complex>

namespace hartley::specfun {

// s = 1/2 + i tau on the critical line.
struct CriticalPoint {
    double tau = 0.0;
    std::complex<double> s() const { return {0.5, tau}; }
};

inline constexpr double euler_gamma = 0.57721566490153286061;

// Gamma(1/2 + i tau), |tau| <= 200.
std::complex<double> gamma_critical(double tau);

// Gamma(z) by Lanczos for Re z >= 1/2, upward recurrence below.
std::complex<double> gamma_complex(std::complex<double> z);

// psi(1/2), the base of the downward recurrence.
double digamma_half();

// psi(-1/2 - 2k), k <= 200.
double digamma_neg_half(int k);

struct FresnelPair {
    double S;
    double C;
};

// S(x) = sqrt(2/pi) int_0^sqrt(x) sin t^2 dt and C likewise.
FresnelPair fresnel_pair(double x);

// r(u) = sin(u) S(u) + cos(u) C(u) - (sin u + cos u)/2, the non-oscillatory
// remainder of the Fresnel inverse kernel. Stable for large u.
double fresnel_kernel_remainder(double u);

double bessel_k0(double x);

// L(x) = int_0^inf y K0(y) / sqrt(y^2 + x^2) dy, x >= 0; L(0) = pi/2.
double lommel_kernel(double x);

// (2/pi) L(x): kernel of the HH o FC o FS composition.
double lommel_composition_kernel(double x);

// -(2/pi) L'(x) = (2/pi) x int y K0(y) (y^2+x^2)^{-3/2} dy: the non-trigonometric
// part of the HH^2 o FC kernel.
double lommel_derivative_kernel(double x);

struct LogMagnitude {
    double log_abs;
    int sign;
};

// (3/2)_{2k} as a double; +inf once the product overflows.
double pochhammer_3half(int k);

// (3/2)_{2k} in log space, valid for every k <= 200.
LogMagnitude pochhammer_3half_log(int k);

}  // namespace hartley::specfun
