#include "hartley/kernels.hpp"

#include <array>
#include <cmath>
#include <string>

#include "hartley/errors.hpp"

namespace hartley::kernels {

namespace {

const double sqrt_2_over_pi = std::sqrt(2.0 / M_PI);

// log(1 + e) / e with the removable point at e = 0
double log1p_ratio(double e) {
    if (std::abs(e) < 1e-4) return 1.0 - e / 2.0 + e * e / 3.0 - e * e * e / 4.0;
    return std::log1p(e) / e;
}

constexpr int series_terms = 120;

// Terms reach 1e11 at u = 30 before cancelling to O(1), so the sums run in
// binary128; log u multiplies a separately summed coefficient.
using wide = __float128;

struct SeriesTables {
    std::array<wide, series_terms> inv_poch;  // 1/(3/2)_{2k}
    std::array<wide, series_terms> psi;       // psi(-1/2 - 2k)

    SeriesTables() {
        const wide euler = static_cast<wide>(0.577215664901532860606512090082402431L);
        const wide ln2 = static_cast<wide>(0.693147180559945309417232121458176568L);
        wide p = 1;
        wide acc = -euler - 2 * ln2;
        int next = 0;  // psi(-1/2 - n) = psi(1/2) + sum_{j=0}^{n} 1/(j + 1/2)
        for (int k = 0; k < series_terms; ++k) {
            inv_poch[k] = 1 / p;
            while (next <= 2 * k) {
                acc += 1 / (static_cast<wide>(next) + static_cast<wide>(0.5));
                ++next;
            }
            psi[k] = acc;
            p *= (static_cast<wide>(1.5) + 2 * k) * (static_cast<wide>(2.5) + 2 * k);
        }
    }
};

const SeriesTables& tables() {
    static const SeriesTables t;
    return t;
}

double h_profile(double v) {
    if (v <= 0.0) return 0.0;
    return std::sqrt(v) / (1.0 + v) * log1p_ratio(v - 1.0);
}

}  // namespace

double log_ratio_kernel(double x, double t) {
    if (!(x > 0) || !(t > 0)) throw DomainError("log_ratio_kernel requires x, t > 0");
    const double r = t / x;
    return std::sqrt(r) / (x * (1.0 + r)) * log1p_ratio(r - 1.0);
}

double log_difference_kernel(double x, double t) {
    if (!(x > 0) || !(t > 0)) throw DomainError("log_difference_kernel requires x, t > 0");
    return log1p_ratio(t / x - 1.0) / x;
}

double log_hilbert_kernel(double x, double t) {
    if (!(x > 0) || !(t > 0)) throw DomainError("log_hilbert_kernel requires x, t > 0");
    const double r = t / x;
    return r / (x * (1.0 + r)) * log1p_ratio(r - 1.0);
}

double psi_series_kernel(double u, quad::Trig kind) {
    if (!(u >= 0)) throw DomainError("psi_series_kernel requires u >= 0");
    if (u > psi_series_limit) {
        throw RangeNotice("psi-series argument " + std::to_string(u) + " beyond " + std::to_string(psi_series_limit));
    }
    if (u == 0.0) return 0.0;
    const auto& tab = tables();
    const wide u2 = static_cast<wide>(u) * static_cast<wide>(u);
    // A = sum (-u^2)^k psi_k / (3/2)_{2k}, B = sum (-u^2)^k / (3/2)_{2k}
    wide a = 0, b = 0, power = 1;
    double peak = 0.0;
    for (int k = 0; k < series_terms; ++k) {
        const wide term = (k % 2 ? -power : power) * tab.inv_poch[k];
        a += term * tab.psi[k];
        b += term;
        const double mag = std::abs(static_cast<double>(term));
        peak = std::max(peak, mag);
        if (2 * k > u && mag < 1e-30 * std::max(peak, 1.0)) break;
        power *= u2;
    }
    const double two_pi = 2.0 / M_PI;
    const double A = static_cast<double>(a);
    const double B = static_cast<double>(b);
    const double bracket = kind == quad::Trig::cos ? two_pi * A + (1.0 - two_pi * std::log(u)) * B
                                                   : -two_pi * A + (1.0 + two_pi * std::log(u)) * B;
    return std::sqrt(u) / M_PI * bracket;
}

double log_sqrt_transform(double u, quad::Trig kind) {
    if (!(u > 0)) throw DomainError("log_sqrt_transform requires u > 0");
    quad::QuadratureConfig cfg;
    cfg.abs_tol = 1e-12;
    cfg.rel_tol = 1e-11;
    return quad::integrate_oscillatory(h_profile, u, kind, quad::DecayHint::algebraic(1.5, 2.0), cfg).value;
}

double psi_kernel_remainder(double u, quad::Trig kind) {
    if (u <= psi_series_limit) {
        const double trig = kind == quad::Trig::cos ? std::cos(u) : std::sin(u);
        return psi_series_kernel(u, kind) - 0.5 * sqrt_2_over_pi * trig;
    }
    return -sqrt_2_over_pi / (M_PI * M_PI) * log_sqrt_transform(u, kind);
}

double psi_kernel(double u, quad::Trig kind) {
    if (u <= psi_series_limit) return psi_series_kernel(u, kind);
    const double trig = kind == quad::Trig::cos ? std::cos(u) : std::sin(u);
    return 0.5 * sqrt_2_over_pi * trig + psi_kernel_remainder(u, kind);
}

}  // namespace hartley::kernels
