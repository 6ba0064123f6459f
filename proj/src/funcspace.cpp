#include "hartley/funcspace.hpp"

#include <cstdio>
#include <sstream>

#include "hartley/errors.hpp"
#include "hartley/specfun.hpp"

namespace hartley {

namespace {

using cplx = std::complex<double>;
const double sqrt_2_over_pi = std::sqrt(2.0 / M_PI);

quad::DecayHint squared(const quad::DecayHint& h) {
    quad::DecayHint s = h;
    s.rate *= 2.0;
    return s;
}

// bump profile exp(-2/(1-y^2)) with y = 2 ln t / ln 2 - 1, supported on [1, 2]
double bump_profile(double t) {
    if (!(t > 1.0 && t < 2.0)) return 0.0;
    const double y = 2.0 * std::log(t) / std::log(2.0) - 1.0;
    const double d = 1.0 - y * y;
    if (d <= 0.0) return 0.0;
    return std::exp(-2.0 / d);
}

}  // namespace

RealFunction zero_function() {
    RealFunction z;
    z.label = "zero";
    z.evaluator = [](double) { return 0.0; };
    z.known_mellin = [](double) { return cplx(0.0, 0.0); };
    z.references.fourier_cos = [](double) { return 0.0; };
    z.references.fourier_sin = [](double) { return 0.0; };
    z.references.stieltjes = [](double) { return 0.0; };
    z.identically_zero = true;
    return z;
}

RealFunction scaled(const RealFunction& f, double a) { return linear_combination(a, f, 0.0, zero_function()); }

RealFunction linear_combination(double a, const RealFunction& f, double b, const RealFunction& g) {
    RealFunction h;
    h.label = f.label + "+" + g.label;
    auto fe = f.evaluator;
    auto ge = g.evaluator;
    h.evaluator = [=](double x) { return a * fe(x) + b * ge(x); };
    // the slower of the two decays governs
    auto weaker = [](const quad::DecayHint& p, const quad::DecayHint& q) {
        auto rank = [](const quad::DecayHint& d) {
            switch (d.kind) {
                case quad::DecayHint::Kind::algebraic: return 0;
                case quad::DecayHint::Kind::exponential: return 1;
                default: return 2;
            }
        };
        if (rank(p) != rank(q)) return rank(p) < rank(q) ? p : q;
        quad::DecayHint out = p.rate <= q.rate ? p : q;
        out.scale = std::max(p.scale, q.scale);
        return out;
    };
    h.decay = f.identically_zero ? g.decay : g.identically_zero ? f.decay : weaker(f.decay, g.decay);
    if (f.has_known_mellin() && g.has_known_mellin()) {
        auto fm = f.known_mellin;
        auto gm = g.known_mellin;
        h.known_mellin = [=](double tau) { return a * fm(tau) + b * gm(tau); };
    }
    auto combine = [=](const Evaluator& p, const Evaluator& q) -> Evaluator {
        if (!p || !q) return {};
        return [=](double x) { return a * p(x) + b * q(x); };
    };
    h.references.fourier_cos = combine(f.references.fourier_cos, g.references.fourier_cos);
    h.references.fourier_sin = combine(f.references.fourier_sin, g.references.fourier_sin);
    h.references.stieltjes = combine(f.references.stieltjes, g.references.stieltjes);
    h.resolution.grid_subdivision = std::max(f.resolution.grid_subdivision, g.resolution.grid_subdivision);
    h.resolution.tau_extent = std::max(f.resolution.tau_extent, g.resolution.tau_extent);
    h.identically_zero = (f.identically_zero || a == 0.0) && (g.identically_zero || b == 0.0);
    return h;
}

std::vector<double> GridSpec::nodes() const {
    std::vector<double> out;
    out.reserve(size());
    for (int k = -half_span; k <= half_span; ++k) out.push_back(node(k));
    return out;
}

GridSpec GridSpec::refined(int factor) const {
    if (factor < 1) throw ConfigError("grid refinement factor must be >= 1");
    return {std::pow(ratio, 1.0 / factor), half_span * factor};
}

GridSpec default_grid() { return {}; }

GridFunction sample(const RealFunction& f, const GridSpec& spec) {
    if (!(spec.ratio > 1.0) || spec.half_span < 1) throw ConfigError("grid needs ratio > 1 and half_span >= 1");
    GridFunction g{spec, {}, std::make_shared<RealFunction>(f)};
    g.values.reserve(spec.size());
    for (int k = -spec.half_span; k <= spec.half_span; ++k) g.values.push_back(f(spec.node(k)));
    return g;
}

double l2_norm(const GridFunction& f) {
    const auto& spec = f.spec;
    if (static_cast<int>(f.values.size()) != spec.size()) throw ConfigError("grid function length mismatch");
    const double h = spec.log_step();
    double sum = 0.0;
    for (int k = -spec.half_span; k <= spec.half_span; ++k) {
        const double v = f.at(k);
        const double w = (k == -spec.half_span || k == spec.half_span) ? 0.5 : 1.0;
        sum += w * v * v * spec.node(k);
    }
    sum *= h;
    // Euler-Maclaurin end corrections with one-sided differences in ln x
    auto g = [&](int k) {
        const double v = f.at(k);
        return v * v * spec.node(k);
    };
    if (spec.half_span >= 2) {
        const int a = -spec.half_span, b = spec.half_span;
        const double da = (-3.0 * g(a) + 4.0 * g(a + 1) - g(a + 2)) / (2.0 * h);
        const double db = (3.0 * g(b) - 4.0 * g(b - 1) + g(b - 2)) / (2.0 * h);
        sum -= h * h / 12.0 * (db - da);
    }

    const double lo = spec.node(-spec.half_span);
    const double hi = spec.node(spec.half_span);
    if (f.source && !f.source->identically_zero) {
        const auto& src = *f.source;
        auto sq = [&](double t) {
            const double v = src(t);
            return v * v;
        };
        quad::QuadratureConfig cfg;
        cfg.abs_tol = 1e-14;
        sum += quad::integrate_finite(sq, 0.0, lo, cfg).value;
        quad::DecayHint tail = squared(src.decay);
        tail.scale = std::max(tail.scale, hi);
        sum += quad::integrate_tail(sq, hi, tail, cfg).value;
    } else {
        // bounded near 0, ~1/x beyond the grid
        const double a = f.at(-spec.half_span);
        const double b = f.at(spec.half_span);
        sum += a * a * lo + b * b * hi;
    }
    return std::sqrt(sum);
}

double l2_norm(const RealFunction& f) {
    if (f.identically_zero) return 0.0;
    return l2_norm(sample(f, default_grid().refined(f.resolution.grid_subdivision)));
}

double exp_stieltjes(double x) {
    if (!(x > 0)) throw DomainError("exp_stieltjes requires x > 0");
    if (x < 40.0) return -std::exp(x) * std::expint(-x);
    // asymptotic series sum (-1)^k k!/x^{k+1}, truncated at the smallest term
    double term = 1.0 / x, sum = term;
    for (int k = 1; k < x && std::abs(term) > 1e-18 * sum; ++k) {
        term *= -k / x;
        sum += term;
    }
    return sum;
}

RealFunction catalog(const std::string& name) {
    RealFunction f;
    f.label = name;
    if (name == "exp") {
        f.evaluator = [](double t) { return std::exp(-t); };
        f.decay = quad::DecayHint::exponential(1.0);
        f.known_mellin = [](double tau) { return specfun::gamma_critical(tau); };
        f.references.fourier_cos = [](double x) { return sqrt_2_over_pi / (1.0 + x * x); };
        f.references.fourier_sin = [](double x) { return sqrt_2_over_pi * x / (1.0 + x * x); };
        f.references.stieltjes = exp_stieltjes;
    } else if (name == "texp") {
        f.evaluator = [](double t) { return t * std::exp(-t); };
        f.decay = quad::DecayHint::exponential(1.0, 2.0);
        f.known_mellin = [](double tau) {
            const cplx s(0.5, tau);
            return s * specfun::gamma_critical(tau);
        };
        f.references.fourier_cos = [](double x) {
            const double d = 1.0 + x * x;
            return sqrt_2_over_pi * (1.0 - x * x) / (d * d);
        };
        f.references.fourier_sin = [](double x) {
            const double d = 1.0 + x * x;
            return sqrt_2_over_pi * 2.0 * x / (d * d);
        };
        f.references.stieltjes = [](double x) { return 1.0 - x * exp_stieltjes(x); };
    } else if (name == "gauss") {
        f.evaluator = [](double t) { return std::exp(-t * t); };
        f.decay = quad::DecayHint::gaussian(1.0);
        f.known_mellin = [](double tau) { return 0.5 * specfun::gamma_complex(cplx(0.25, 0.5 * tau)); };
        f.references.fourier_cos = [](double x) { return std::exp(-0.25 * x * x) / std::sqrt(2.0); };
    } else if (name == "bump") {
        quad::QuadratureConfig cfg;
        cfg.abs_tol = 1e-15;
        cfg.rel_tol = 1e-14;
        const double mass =
            quad::integrate_finite([](double t) { return bump_profile(t) * bump_profile(t); }, 1.0, 2.0, cfg).value;
        const double norm = 1.0 / std::sqrt(mass);
        f.evaluator = [norm](double t) { return norm * bump_profile(t); };
        f.decay = quad::DecayHint::exponential(1.0, 2.0);
        f.resolution = {8, 160.0};
    } else if (name == "recip_sym") {
        const double t0 = 0.1;
        f.evaluator = [t0](double t) { return std::exp(-t) * std::pow(t, 1.5) / (t * t + t0 * t0); };
        f.decay = quad::DecayHint::exponential(1.0);
    } else if (name == "zero") {
        return zero_function();
    } else {
        throw NotFoundError("unknown catalog function: " + name);
    }
    return f;
}

std::vector<std::string> catalog_names() { return {"exp", "texp", "gauss", "bump", "recip_sym"}; }

std::string format_grid_csv(const GridFunction& f) {
    std::ostringstream out;
    out << "x,value\n";
    char buf[64];
    for (int k = -f.spec.half_span; k <= f.spec.half_span; ++k) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", f.spec.node(k), f.at(k));
        out << buf;
    }
    return out.str();
}

}  // namespace hartley
