#pragma once

#include <functional>

namespace hartley::quad {

using Integrand = std::function<double(double)>;

struct QuadratureConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_subdivisions = 2000;
    double truncation_tail_bound = 1e-12;
    double pv_window = 0.1;
    // oscillatory partition: plain cells summed before acceleration starts,
    // and number of partial sums fed to the iterated averaging
    int oscillatory_lead_cells = 40;
    int oscillatory_accel_terms = 24;

    void validate() const;
    QuadratureConfig scaled(double factor) const;
};

struct IntegralResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;

    IntegralResult& operator+=(const IntegralResult& o) {
        value += o.value;
        error_estimate += o.error_estimate;
        evaluations += o.evaluations;
        return *this;
    }
};

// Asymptotic decay class of an integrand, |f(t)| <~ amplitude * profile(t / scale)
// for t >= scale.
struct DecayHint {
    enum class Kind { exponential, gaussian, algebraic };
    Kind kind = Kind::exponential;
    double rate = 1.0;   // e^{-rate t}, e^{-rate t^2}, or t^{-rate}
    double scale = 1.0;  // onset of the asymptotic regime
    // length over which the amplitude is locally smooth; 0 means scale
    double feature = 0.0;

    static DecayHint exponential(double rate, double scale = 1.0) { return {Kind::exponential, rate, scale, 0.0}; }
    static DecayHint gaussian(double rate, double scale = 1.0) { return {Kind::gaussian, rate, scale, 0.0}; }
    static DecayHint algebraic(double power, double scale = 1.0) { return {Kind::algebraic, power, scale, 0.0}; }

    // hint for f(t) * t^{-p} (p may be negative)
    DecayHint times_power(double p) const;
};

enum class Trig { sin, cos };

IntegralResult integrate_finite(const Integrand& f, double a, double b, const QuadratureConfig& cfg = {});

// int_0^inf f
IntegralResult integrate_semiinf(const Integrand& f, const DecayHint& hint, const QuadratureConfig& cfg = {});

// int_a^inf f, a >= 0
IntegralResult integrate_tail(const Integrand& f, double a, const DecayHint& hint, const QuadratureConfig& cfg = {});

// PV int_0^inf g(t)/(t - x0) dt. hint describes g.
IntegralResult integrate_pv(const Integrand& g, double x0, const QuadratureConfig& cfg = {},
                            const DecayHint& hint = DecayHint::algebraic(1.0));

// int_0^inf f(t) trig(omega t) dt
IntegralResult integrate_oscillatory(const Integrand& f, double omega, Trig kind, const DecayHint& hint,
                                     const QuadratureConfig& cfg = {});

// int_0^inf f(t) sin(omega t + phase) dt
IntegralResult integrate_oscillatory_phase(const Integrand& f, double omega, double phase, const DecayHint& hint,
                                           const QuadratureConfig& cfg = {});

}  // namespace hartley::quad
