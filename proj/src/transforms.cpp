#include "hartley/transforms.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "hartley/errors.hpp"
#include "hartley/kernels.hpp"
#include "hartley/specfun.hpp"

namespace hartley::transforms {

namespace {

using quad::DecayHint;
using quad::QuadratureConfig;
using quad::Trig;

const double c_norm = std::sqrt(2.0 / M_PI);
const double two_over_pi = 2.0 / M_PI;

// an integrand amplitude together with its decay
struct Source {
    Evaluator f;
    DecayHint hint;
};

Source source_of(const RealFunction& f) { return {f.evaluator, f.decay}; }

DecayHint widened(DecayHint h, double p, double scale) {
    h = h.times_power(p);
    h.scale = std::max(h.scale, scale);
    return h;
}

// int_0^inf f(t) sin(x t + phase) dt
double oscillatory(const Source& s, double x, double phase, const QuadratureConfig& cfg) {
    return quad::integrate_oscillatory_phase(s.f, x, phase, s.hint, cfg).value;
}

double cos_transform(const Source& s, double x, const QuadratureConfig& cfg) {
    return c_norm * oscillatory(s, x, 0.5 * M_PI, cfg);
}

double sin_transform(const Source& s, double x, const QuadratureConfig& cfg) {
    return c_norm * oscillatory(s, x, 0.0, cfg);
}

double hh_transform(const Source& s, double x, const QuadratureConfig& cfg) {
    return c_norm * std::sqrt(2.0) * oscillatory(s, x, 0.25 * M_PI, cfg);
}

// int_0^inf K(t) f(t) dt for a non-oscillatory kernel that decays like t^{-p}; split at the
// kernel scale and at the decay scale of f
double regular(const std::function<double(double)>& K, const Source& s, double p, double kernel_scale,
               const QuadratureConfig& cfg) {
    auto g = [&](double t) {
        const double v = s.f(t);
        return v == 0.0 ? 0.0 : K(t) * v;
    };
    std::vector<double> cuts{kernel_scale, s.hint.scale};
    std::sort(cuts.begin(), cuts.end());
    double a = 0.0;
    double total = 0.0;
    for (double b : cuts) {
        if (b > a) {
            total += quad::integrate_finite(g, a, b, cfg).value;
            a = b;
        }
    }
    return total + quad::integrate_tail(g, a, widened(s.hint, p, a), cfg).value;
}

double stieltjes(const Source& s, double x, const QuadratureConfig& cfg) {
    return regular([x](double t) { return 1.0 / (x + t); }, s, 1.0, x, cfg);
}

// PV int t f/(t^2 - x^2)
double hilbert_t(const Source& s, double x, const QuadratureConfig& cfg) {
    return quad::integrate_pv([&](double t) { return t * s.f(t) / (t + x); }, x, cfg, s.hint).value;
}

// PV int x f/(x^2 - t^2)
double hilbert_x(const Source& s, double x, const QuadratureConfig& cfg) {
    return -quad::integrate_pv([&](double t) { return x * s.f(t) / (t + x); }, x, cfg, s.hint.times_power(1.0)).value;
}

// PV int sqrt(xt) f/(t^2 - x^2)
double hilbert_sqrt(const Source& s, double x, const QuadratureConfig& cfg) {
    return quad::integrate_pv([&](double t) { return std::sqrt(x * t) * s.f(t) / (t + x); }, x, cfg,
                              s.hint.times_power(0.5))
        .value;
}

double log_ratio(const Source& s, double x, const QuadratureConfig& cfg) {
    return regular([x](double t) { return kernels::log_ratio_kernel(x, t); }, s, 1.0, x, cfg);
}

double log_hilbert(const Source& s, double x, const QuadratureConfig& cfg) {
    return regular([x](double t) { return kernels::log_hilbert_kernel(x, t); }, s, 0.5, x, cfg);
}

double lommel(const Source& s, double x, const QuadratureConfig& cfg) {
    return regular([x](double t) { return specfun::lommel_kernel(x * t); }, s, 1.0, 1.0 / x, cfg);
}

double lommel_derivative(const Source& s, double x, const QuadratureConfig& cfg) {
    return regular([x](double t) { return specfun::lommel_derivative_kernel(x * t); }, s, 2.0, 1.0 / x, cfg);
}

double fresnel_remainder(const Source& s, double x, const QuadratureConfig& cfg) {
    return regular([x](double t) { return specfun::fresnel_kernel_remainder(x * t); }, s, 1.5, 1.0 / x, cfg);
}

double psi_remainder(const Source& s, double x, Trig kind, const QuadratureConfig& cfg) {
    return regular([x, kind](double t) { return kernels::psi_kernel_remainder(x * t, kind); }, s, 1.0, 1.0 / x, cfg);
}

// ---- kernel routes -----------------------------------------------------------------

double forward_kernel(OperatorId op, const Source& s, double x, const QuadratureConfig& cfg) {
    switch (op) {
        case OperatorId::FC: return cos_transform(s, x, cfg);
        case OperatorId::FS: return sin_transform(s, x, cfg);
        case OperatorId::HH: return hh_transform(s, x, cfg);
        case OperatorId::FCFS: return two_over_pi * hilbert_t(s, x, cfg);
        case OperatorId::HH2: return 2.0 * s.f(x) + two_over_pi * stieltjes(s, x, cfg);
        case OperatorId::HHFC: return s.f(x) + two_over_pi * hilbert_x(s, x, cfg);
        case OperatorId::HHFS: return s.f(x) + two_over_pi * hilbert_t(s, x, cfg);
        case OperatorId::HHFCFS:
            return c_norm * (std::sqrt(2.0) * oscillatory(s, x, -0.25 * M_PI, cfg) + two_over_pi * lommel(s, x, cfg));
        case OperatorId::HH2FC: return 2.0 * cos_transform(s, x, cfg) + c_norm * lommel_derivative(s, x, cfg);
        case OperatorId::HH2FS: return 2.0 * sin_transform(s, x, cfg) + c_norm * two_over_pi * lommel(s, x, cfg);
        case OperatorId::HH2FCFS:
            return 4.0 / (M_PI * M_PI) * log_hilbert(s, x, cfg) + 4.0 / M_PI * hilbert_t(s, x, cfg);
    }
    return 0.0;
}

double inverse_kernel(OperatorId op, const Source& s, double x, const QuadratureConfig& cfg) {
    switch (op) {
        case OperatorId::FC: return cos_transform(s, x, cfg);
        case OperatorId::FS: return sin_transform(s, x, cfg);
        case OperatorId::HH:
            return c_norm * (std::sqrt(0.5) * oscillatory(s, x, 0.25 * M_PI, cfg) + fresnel_remainder(s, x, cfg));
        case OperatorId::FCFS: return two_over_pi * hilbert_x(s, x, cfg);
        case OperatorId::HH2: return 0.5 * s.f(x) - log_ratio(s, x, cfg) / (M_PI * M_PI);
        case OperatorId::HHFC: return 0.5 * s.f(x) + hilbert_sqrt(s, x, cfg) / M_PI;
        case OperatorId::HHFS: return 0.5 * s.f(x) - hilbert_sqrt(s, x, cfg) / M_PI;
        case OperatorId::HHFCFS:
            return c_norm * (std::sqrt(0.5) * oscillatory(s, x, -0.25 * M_PI, cfg) - fresnel_remainder(s, x, cfg));
        case OperatorId::HH2FC: return 0.5 * cos_transform(s, x, cfg) + psi_remainder(s, x, Trig::cos, cfg);
        case OperatorId::HH2FS: return 0.5 * sin_transform(s, x, cfg) + psi_remainder(s, x, Trig::sin, cfg);
        case OperatorId::HH2FCFS: return log_ratio(s, x, cfg) / (M_PI * M_PI) - hilbert_sqrt(s, x, cfg) / M_PI;
    }
    return 0.0;
}

// ---- direct (composition) routes ---------------------------------------------------

// inner stage materialized as an evaluator; images decay at least like 1/t
Source stage(std::function<double(const Source&, double, const QuadratureConfig&)> op, const Source& s,
             const QuadratureConfig& cfg) {
    const QuadratureConfig inner = cfg.scaled(0.1);
    return {[op, s, inner](double t) { return op(s, t, inner); }, DecayHint::algebraic(1.0)};
}

double hh2_kernel_on(const Source& g, double x, const QuadratureConfig& cfg) {
    return 2.0 * g.f(x) + two_over_pi * stieltjes(g, x, cfg);
}

double hh_inverse_on(const Source& s, double x, const QuadratureConfig& cfg) {
    return inverse_kernel(OperatorId::HH, s, x, cfg);
}

double hh2_inverse_on(const Source& s, double x, const QuadratureConfig& cfg) {
    return inverse_kernel(OperatorId::HH2, s, x, cfg);
}

double fcfs_on(const Source& s, double x, const QuadratureConfig& cfg) { return two_over_pi * hilbert_t(s, x, cfg); }

double fcfs_inverse_on(const Source& s, double x, const QuadratureConfig& cfg) {
    return two_over_pi * hilbert_x(s, x, cfg);
}

double forward_direct(OperatorId op, const Source& s, double x, const QuadratureConfig& cfg) {
    switch (op) {
        case OperatorId::FC: return cos_transform(s, x, cfg);
        case OperatorId::FS: return sin_transform(s, x, cfg);
        case OperatorId::HH: return cos_transform(s, x, cfg) + sin_transform(s, x, cfg);
        case OperatorId::FCFS: return cos_transform(stage(sin_transform, s, cfg), x, cfg);
        case OperatorId::HH2: return hh_transform(stage(hh_transform, s, cfg), x, cfg);
        case OperatorId::HHFC: return hh_transform(stage(cos_transform, s, cfg), x, cfg);
        case OperatorId::HHFS: return hh_transform(stage(sin_transform, s, cfg), x, cfg);
        case OperatorId::HHFCFS: return hh_transform(stage(fcfs_on, s, cfg), x, cfg);
        case OperatorId::HH2FC: return hh2_kernel_on(stage(cos_transform, s, cfg), x, cfg);
        case OperatorId::HH2FS: return hh2_kernel_on(stage(sin_transform, s, cfg), x, cfg);
        case OperatorId::HH2FCFS: return hh2_kernel_on(stage(fcfs_on, s, cfg), x, cfg);
    }
    return 0.0;
}

double inverse_direct(OperatorId op, const Source& s, double x, const QuadratureConfig& cfg) {
    switch (op) {
        case OperatorId::FC: return cos_transform(s, x, cfg);
        case OperatorId::FS: return sin_transform(s, x, cfg);
        case OperatorId::FCFS: return sin_transform(stage(cos_transform, s, cfg), x, cfg);
        case OperatorId::HHFC: return cos_transform(stage(hh_inverse_on, s, cfg), x, cfg);
        case OperatorId::HHFS: return sin_transform(stage(hh_inverse_on, s, cfg), x, cfg);
        case OperatorId::HHFCFS: return fcfs_inverse_on(stage(hh_inverse_on, s, cfg), x, cfg);
        case OperatorId::HH2FC: return cos_transform(stage(hh2_inverse_on, s, cfg), x, cfg);
        case OperatorId::HH2FS: return sin_transform(stage(hh2_inverse_on, s, cfg), x, cfg);
        case OperatorId::HH2FCFS: return fcfs_inverse_on(stage(hh2_inverse_on, s, cfg), x, cfg);
        default: break;
    }
    throw CapabilityError("no direct inverse route for " + info(op).name);
}

// ---- registry ----------------------------------------------------------------------

std::vector<OperatorInfo> build_registry() {
    using M = mellin::MultiplierId;
    const std::vector<Route> all{Route::direct, Route::kernel, Route::spectral};
    const std::vector<Route> no_direct{Route::kernel, Route::spectral};
    const NormBounds unit{1.0, 1.0};
    const NormBounds wide{1.0, 8.0};
    const NormBounds mid{1.0, 2.0 * std::sqrt(2.0)};
    return {
        {OperatorId::FC, "fc", all, all, unit, M::M_FC, "self-inverse"},
        {OperatorId::FS, "fs", all, all, unit, M::M_FS, "self-inverse"},
        {OperatorId::HH, "hh", all, no_direct, NormBounds{std::sqrt(2.0), 2.0}, M::M_HH, "Fresnel kernel"},
        {OperatorId::FCFS, "fcfs", all, all, unit, M::M_FCFS, "Hilbert kernel x/(x^2-t^2); composition FS o FC"},
        {OperatorId::HH2, "hh2", all, no_direct, wide, M::M_HH2, "iterated Stieltjes log kernel"},
        {OperatorId::HHFC, "hhfc", all, all, mid, M::M_HHFC, "F/2 + Hilbert sqrt kernel; composition FC o HH^-1"},
        {OperatorId::HHFS, "hhfs", all, all, mid, M::M_HHFS, "F/2 - Hilbert sqrt kernel; composition FS o HH^-1"},
        {OperatorId::HHFCFS, "hhfcfs", all, all, mid, M::M_HHFCFS, "Fresnel kernel; composition FCFS^-1 o HH^-1"},
        {OperatorId::HH2FC, "hh2fc", all, all, wide, M::M_HH2FC, "psi-series kernel k_c; composition FC o HH2^-1"},
        {OperatorId::HH2FS, "hh2fs", all, all, wide, M::M_HH2FS, "psi-series kernel k_s; composition FS o HH2^-1"},
        {OperatorId::HH2FCFS, "hh2fcfs", all, all, wide, M::M_HH2FCFS, "log-Hilbert kernel; composition FCFS^-1 o HH2^-1"},
    };
}

const std::vector<OperatorInfo>& registry() {
    static const std::vector<OperatorInfo> r = build_registry();
    return r;
}

std::string lower(std::string s) {
    for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return s;
}

void check_route(OperatorId op, Direction dir, Route route) {
    if (!has_route(op, dir, route)) {
        throw CapabilityError("route " + route_name(route) + " is not available for " + info(op).name +
                              (dir == Direction::inverse ? " inverse" : ""));
    }
}

void check_x(double x) {
    if (!(x > 0) || !std::isfinite(x)) throw DomainError("transform abscissa must be positive and finite");
}

mellin::MellinSpectrum mapped_spectrum(OperatorId op, Direction dir, const RealFunction& f, const mellin::TauGrid& grid) {
    const auto spec = mellin::mellin_forward(f, grid);
    const auto id = info(op).multiplier;
    return dir == Direction::forward ? mellin::apply_multiplier(id, spec) : mellin::divide_multiplier(id, spec);
}

// exponential hint reaching to the last abscissa where |x F(x)| is visible, else 1/x decay
DecayHint detect_decay(const RealFunction& F) {
    double peak = 0.0;
    std::vector<double> mags;
    for (int i = -40; i <= 120; ++i) {
        const double x = std::exp(0.25 * i);
        const double m = std::abs(x * F(x));
        mags.push_back(m);
        peak = std::max(peak, m);
    }
    if (peak == 0.0) return DecayHint::exponential(1.0);
    int last = static_cast<int>(mags.size()) - 1;
    while (last > 0 && mags[last] < 1e-13 * peak) --last;
    if (last + 1 < static_cast<int>(mags.size())) {
        return DecayHint::exponential(1.0, std::max(1.0, std::exp(0.25 * (last + 1 - 40))));
    }
    return DecayHint::algebraic(1.0);
}

}  // namespace

const std::vector<OperatorId>& all_operators() {
    static const std::vector<OperatorId> ops{OperatorId::FC,     OperatorId::FS,    OperatorId::HH,    OperatorId::FCFS,
                                             OperatorId::HH2,    OperatorId::HHFC,  OperatorId::HHFS,  OperatorId::HHFCFS,
                                             OperatorId::HH2FC,  OperatorId::HH2FS, OperatorId::HH2FCFS};
    return ops;
}

const std::vector<OperatorId>& composite_operators() {
    static const std::vector<OperatorId> ops{OperatorId::HH2,   OperatorId::HHFC,  OperatorId::HHFS,   OperatorId::HHFCFS,
                                             OperatorId::HH2FC, OperatorId::HH2FS, OperatorId::HH2FCFS};
    return ops;
}

const OperatorInfo& info(OperatorId op) { return registry().at(static_cast<std::size_t>(op)); }

OperatorId operator_from_name(const std::string& name) {
    const auto key = lower(name);
    for (const auto& i : registry()) {
        if (i.name == key) return i.id;
    }
    throw NotFoundError("unknown operator: " + name);
}

Route route_from_name(const std::string& name) {
    const auto key = lower(name);
    if (key == "direct") return Route::direct;
    if (key == "kernel") return Route::kernel;
    if (key == "spectral") return Route::spectral;
    throw NotFoundError("unknown route: " + name);
}

std::string route_name(Route r) {
    switch (r) {
        case Route::direct: return "direct";
        case Route::kernel: return "kernel";
        case Route::spectral: return "spectral";
    }
    return "?";
}

bool has_route(OperatorId op, Direction dir, Route r) {
    const auto& routes = dir == Direction::forward ? info(op).forward_routes : info(op).inverse_routes;
    return std::find(routes.begin(), routes.end(), r) != routes.end();
}

quad::QuadratureConfig default_config() {
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-10;
    cfg.rel_tol = 1e-8;
    return cfg;
}

std::vector<double> apply(OperatorId op, Direction dir, const RealFunction& f, Route route, const std::vector<double>& xs,
                          const quad::QuadratureConfig& cfg) {
    check_route(op, dir, route);
    for (double x : xs) check_x(x);
    std::vector<double> out;
    out.reserve(xs.size());
    if (f.identically_zero) {
        out.assign(xs.size(), 0.0);
        return out;
    }
    if (route == Route::spectral) {
        const auto spec = mapped_spectrum(op, dir, f, {});
        for (double x : xs) out.push_back(mellin::mellin_inverse(spec, x));
        return out;
    }
    const Source s = source_of(f);
    for (double x : xs) {
        if (route == Route::kernel) {
            out.push_back(dir == Direction::forward ? forward_kernel(op, s, x, cfg) : inverse_kernel(op, s, x, cfg));
        } else {
            out.push_back(dir == Direction::forward ? forward_direct(op, s, x, cfg) : inverse_direct(op, s, x, cfg));
        }
    }
    return out;
}

double forward(OperatorId op, const RealFunction& f, Route route, double x, const quad::QuadratureConfig& cfg) {
    return apply(op, Direction::forward, f, route, {x}, cfg).front();
}

double inverse(OperatorId op, const RealFunction& g, Route route, double x, const quad::QuadratureConfig& cfg) {
    return apply(op, Direction::inverse, g, route, {x}, cfg).front();
}

double kernel_eval(OperatorId op, Direction dir, double x, double t) {
    if (!(x > 0) || !(t >= 0)) throw DomainError("kernel_eval requires x > 0, t >= 0");
    const double u = x * t;
    auto pole = [&](double d) {
        if (d == 0.0) throw DomainError("kernel of " + info(op).name + " is singular on the diagonal; use integrate_pv");
        return d;
    };
    auto need_t = [&] {
        if (!(t > 0)) throw DomainError("kernel of " + info(op).name + " requires t > 0");
    };
    if (dir == Direction::forward) {
        switch (op) {
            case OperatorId::FC: return c_norm * std::cos(u);
            case OperatorId::FS: return c_norm * std::sin(u);
            case OperatorId::HH: return c_norm * (std::cos(u) + std::sin(u));
            case OperatorId::FCFS: return two_over_pi * t / pole(t * t - x * x);
            case OperatorId::HH2: return two_over_pi / (x + t);
            case OperatorId::HHFC: return two_over_pi * x / pole(x * x - t * t);
            case OperatorId::HHFS: return two_over_pi * t / pole(t * t - x * x);
            case OperatorId::HHFCFS:
                return c_norm * (std::sin(u) - std::cos(u) + specfun::lommel_composition_kernel(u));
            case OperatorId::HH2FC: return 2.0 * c_norm * std::cos(u) + c_norm * specfun::lommel_derivative_kernel(u);
            case OperatorId::HH2FS: return 2.0 * c_norm * std::sin(u) + c_norm * specfun::lommel_composition_kernel(u);
            case OperatorId::HH2FCFS:
                need_t();
                return 4.0 / (M_PI * M_PI) * kernels::log_hilbert_kernel(x, t) + 4.0 / M_PI * t / pole(t * t - x * x);
        }
    } else {
        switch (op) {
            case OperatorId::FC: return c_norm * std::cos(u);
            case OperatorId::FS: return c_norm * std::sin(u);
            case OperatorId::HH:
                return c_norm * (0.5 * (std::sin(u) + std::cos(u)) + specfun::fresnel_kernel_remainder(u));
            case OperatorId::FCFS: return two_over_pi * x / pole(x * x - t * t);
            case OperatorId::HH2: need_t(); return -kernels::log_ratio_kernel(x, t) / (M_PI * M_PI);
            case OperatorId::HHFC: return std::sqrt(u) / pole(t * t - x * x) / M_PI;
            case OperatorId::HHFS: return std::sqrt(u) / pole(x * x - t * t) / M_PI;
            case OperatorId::HHFCFS:
                return c_norm * (0.5 * (std::sin(u) - std::cos(u)) - specfun::fresnel_kernel_remainder(u));
            case OperatorId::HH2FC: return kernels::psi_kernel(u, Trig::cos);
            case OperatorId::HH2FS: return kernels::psi_kernel(u, Trig::sin);
            case OperatorId::HH2FCFS:
                need_t();
                return kernels::log_ratio_kernel(x, t) / (M_PI * M_PI) + std::sqrt(u) / pole(x * x - t * t) / M_PI;
        }
    }
    return 0.0;
}

RealFunction image(OperatorId op, const RealFunction& f, Direction dir, const mellin::TauGrid& grid) {
    const std::string label = info(op).name + (dir == Direction::inverse ? "^-1" : "") + "(" + f.label + ")";
    if (f.identically_zero) {
        RealFunction z = zero_function();
        z.label = label;
        return z;
    }
    auto spec = std::make_shared<mellin::MellinSpectrum>(mapped_spectrum(op, dir, f, grid));
    RealFunction F = mellin::function_from_spectrum(spec, label);
    F.decay = detect_decay(F);
    F.resolution = f.resolution;
    return F;
}

double norm_ratio(OperatorId op, const RealFunction& f) {
    if (f.identically_zero) return std::numeric_limits<double>::quiet_NaN();
    const double den = l2_norm(f);
    if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return mellin::parseval_norm(mapped_spectrum(op, Direction::forward, f, {})) / den;
}

std::string RouteReport::csv() const {
    std::ostringstream out;
    out << "x,route_direct,route_kernel,route_spectral,max_dev\n";
    char buf[64];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf;
    };
    for (std::size_t i = 0; i < x.size(); ++i) {
        put(x[i]);
        for (Route r : {Route::direct, Route::kernel, Route::spectral}) {
            out << ',';
            const auto it = std::find(routes.begin(), routes.end(), r);
            if (it == routes.end()) out << "nan";
            else put(values[it - routes.begin()][i]);
        }
        out << ',';
        put(row_deviation[i]);
        out << '\n';
    }
    return out.str();
}

RouteReport route_report(OperatorId op, Direction dir, const RealFunction& f, const std::vector<double>& xs,
                         const quad::QuadratureConfig& cfg) {
    RouteReport rep{op, dir, xs, {}, {}, {}, 0.0};
    for (Route r : {Route::direct, Route::kernel, Route::spectral}) {
        if (!has_route(op, dir, r)) continue;
        rep.routes.push_back(r);
        rep.values.push_back(apply(op, dir, f, r, xs, cfg));
    }
    rep.row_deviation.assign(xs.size(), 0.0);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (const auto& v : rep.values) {
            lo = std::min(lo, v[i]);
            hi = std::max(hi, v[i]);
        }
        rep.row_deviation[i] = rep.values.empty() ? 0.0 : hi - lo;
        rep.max_deviation = std::max(rep.max_deviation, rep.row_deviation[i]);
    }
    return rep;
}

}  // namespace hartley::transforms
