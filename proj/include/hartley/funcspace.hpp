#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "hartley/quadrature.hpp"

namespace hartley {

namespace mellin {
struct MellinSpectrum;
}

using Evaluator = std::function<double(double)>;
using SpectrumEvaluator = std::function<std::complex<double>(double tau)>;

// Closed-form transforms attached to catalog functions.
struct References {
    Evaluator fourier_cos;
    Evaluator fourier_sin;
    Evaluator stieltjes;  // int_0^inf f(t)/(x+t) dt
};

// Sampling needs beyond the defaults. Compactly supported functions
// need a finer log grid and a wider tau window than analytic ones.
struct Resolution {
    int grid_subdivision = 1;
    double tau_extent = 40.0;
};

struct RealFunction {
    std::string label;
    Evaluator evaluator;
    quad::DecayHint decay = quad::DecayHint::exponential(1.0);
    SpectrumEvaluator known_mellin;  // f*(1/2 + i tau); empty when unknown
    References references;
    Resolution resolution;
    bool identically_zero = false;
    // set when the function is defined by sampled Mellin data
    std::shared_ptr<const mellin::MellinSpectrum> backing_spectrum;

    double operator()(double x) const { return evaluator(x); }
    bool has_known_mellin() const { return static_cast<bool>(known_mellin); }
};

RealFunction zero_function();
RealFunction scaled(const RealFunction& f, double a);
RealFunction linear_combination(double a, const RealFunction& f, double b, const RealFunction& g);

// Nodes x_k = ratio^k, k = -half_span..half_span.
struct GridSpec {
    double ratio = std::pow(2.0, 0.125);
    int half_span = 64;

    int size() const { return 2 * half_span + 1; }
    double node(int k) const { return std::pow(ratio, k); }
    double log_step() const { return std::log(ratio); }
    std::vector<double> nodes() const;
    // same span, step divided by factor
    GridSpec refined(int factor) const;
};

GridSpec default_grid();

struct GridFunction {
    GridSpec spec;
    std::vector<double> values;  // values[k + half_span] = f(ratio^k)
    std::shared_ptr<const RealFunction> source;

    double at(int k) const { return values.at(k + spec.half_span); }
    // value at 1/x_k, exact by reindexing
    double at_reciprocal(int k) const { return at(-k); }
};

GridFunction sample(const RealFunction& f, const GridSpec& spec);

// sqrt(int_0^inf f^2) from log-grid trapezoid plus tails beyond the grid
double l2_norm(const GridFunction& f);

// samples f on the default grid refined by its resolution hint
double l2_norm(const RealFunction& f);

// exp, texp, gauss, bump, recip_sym, zero
RealFunction catalog(const std::string& name);
std::vector<std::string> catalog_names();

// e^x E1(x), the Stieltjes transform of e^{-t}
double exp_stieltjes(double x);

std::string format_grid_csv(const GridFunction& f);

}  // namespace hartley
