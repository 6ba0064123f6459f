#include "hartley/equations.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "hartley/errors.hpp"
#include "hartley/kernels.hpp"

namespace hartley::equations {

namespace {

using transforms::OperatorId;
using transforms::Route;
using M = mellin::MultiplierId;

std::vector<EquationInfo> build_registry() {
    const std::string none = "none";
    const std::string band = "|1 - lambda| != 1 (1e-6 exclusion band), lambda != 0";
    return {
        {EquationId::EQ_3_1, "eq_3_1", std::nullopt, Symmetry::none, false, false, none},
        {EquationId::EQ_3_2, "eq_3_2", std::nullopt, Symmetry::none, false, false, none},
        {EquationId::EQ_HILB_C, "eq_hilb_c", std::nullopt, Symmetry::none, false, false, none},
        {EquationId::EQ_HILB_S, "eq_hilb_s", std::nullopt, Symmetry::none, false, false, none},
        {EquationId::EQ_3_3, "eq_3_3", M::D_3_7, Symmetry::even, true, false, none},
        {EquationId::EQ_3_4, "eq_3_4", M::D_3_8, Symmetry::even, true, false, none},
        {EquationId::EQ_3_5, "eq_3_5", M::D_3_7, Symmetry::even, true, false, none},
        {EquationId::EQ_3_6, "eq_3_6", M::D_3_8, Symmetry::even, true, false, none},
        {EquationId::EQ_3_10, "eq_3_10", M::D_3_11, Symmetry::odd, true, true, band},
        {EquationId::EQ_3_13, "eq_3_13", M::D_3_14, Symmetry::odd, true, true, band},
        {EquationId::EQ_3_18, "eq_3_18", M::D_3_19, Symmetry::even, true, true, "|lambda| < 2"},
        {EquationId::EQ_3_21, "eq_3_21", M::D_3_23, Symmetry::even, true, true, "|lambda| < 2"},
        {EquationId::EQ_3_22, "eq_3_22", M::D_3_25, Symmetry::even, true, true, "|lambda| < 2"},
        {EquationId::EQ_3_27, "eq_3_27", M::D_3_28, Symmetry::even, true, true, "|lambda| < sqrt(2 pi)"},
    };
}

const std::vector<EquationInfo>& registry() {
    static const std::vector<EquationInfo> r = build_registry();
    return r;
}

std::string lower(std::string s) {
    for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return s;
}

double need_lambda(EquationId eq, std::optional<double> lambda) {
    if (!lambda) throw ConfigError(info(eq).name + " needs lambda");
    return *lambda;
}

double reflected(const RealFunction& f, double x) { return f(1.0 / x) / x; }

double stieltjes_integral(const RealFunction& m, double x, const quad::QuadratureConfig& cfg) {
    auto g = [&](double t) { return m(t) / (x + t); };
    double v = quad::integrate_finite(g, 0.0, x, cfg).value;
    quad::DecayHint h = m.decay.times_power(1.0);
    h.scale = std::max(h.scale, x);
    return v + quad::integrate_tail(g, x, h, cfg).value;
}

double log_difference_integral(const RealFunction& m, double x, const quad::QuadratureConfig& cfg) {
    auto g = [&](double t) {
        const double v = m(t);
        return v == 0.0 ? 0.0 : kernels::log_difference_kernel(x, t) * v;
    };
    double v = quad::integrate_finite(g, 0.0, x, cfg).value;
    quad::DecayHint h = m.decay.times_power(0.9);
    h.scale = std::max(h.scale, x);
    return v + quad::integrate_tail(g, x, h, cfg).value;
}

}  // namespace

const std::vector<EquationId>& all_equations() {
    static const std::vector<EquationId> ids = [] {
        std::vector<EquationId> v;
        for (const auto& i : registry()) v.push_back(i.id);
        return v;
    }();
    return ids;
}

const EquationInfo& info(EquationId eq) { return registry().at(static_cast<std::size_t>(eq)); }

EquationId equation_from_name(const std::string& name) {
    const auto key = lower(name);
    if (key == "stieltjes2k") return EquationId::EQ_3_1;
    if (key == "hilbert2k-c") return EquationId::EQ_HILB_C;
    if (key == "hilbert2k-s") return EquationId::EQ_HILB_S;
    for (const auto& i : registry()) {
        if (i.name == key) return i.id;
    }
    throw NotFoundError("unknown equation: " + name);
}

MuEquationId mu_from_name(const std::string& name) {
    const auto key = lower(name);
    if (key == "mu_3_12") return MuEquationId::MU_3_12;
    if (key == "mu_3_24") return MuEquationId::MU_3_24;
    if (key == "mu_3_29") return MuEquationId::MU_3_29;
    throw NotFoundError("unknown mu-equation: " + name);
}

std::string mu_name(MuEquationId mu) {
    switch (mu) {
        case MuEquationId::MU_3_12: return "mu_3_12";
        case MuEquationId::MU_3_24: return "mu_3_24";
        case MuEquationId::MU_3_29: return "mu_3_29";
    }
    return "?";
}

double apply_stieltjes_second_kind(const RealFunction& f, double x, const quad::QuadratureConfig& cfg) {
    if (f.identically_zero) return 0.0;
    return 0.5 * transforms::forward(OperatorId::HH2, f, Route::kernel, x, cfg);
}

double solve_stieltjes_second_kind(const RealFunction& g, double x, const quad::QuadratureConfig& cfg) {
    if (g.identically_zero) return 0.0;
    return 2.0 * transforms::inverse(OperatorId::HH2, g, Route::kernel, x, cfg);
}

double apply_hilbert_second_kind(const RealFunction& f, HilbertVariant v, double x, const quad::QuadratureConfig& cfg) {
    if (f.identically_zero) return 0.0;
    return transforms::forward(v == HilbertVariant::c ? OperatorId::HHFC : OperatorId::HHFS, f, Route::kernel, x, cfg);
}

double solve_hilbert_second_kind(const RealFunction& g, HilbertVariant v, double x, const quad::QuadratureConfig& cfg) {
    if (g.identically_zero) return 0.0;
    return transforms::inverse(v == HilbertVariant::c ? OperatorId::HHFC : OperatorId::HHFS, g, Route::kernel, x, cfg);
}

double hilbert_solution_kernel(HilbertVariant v, double x, double t) {
    return transforms::kernel_eval(v == HilbertVariant::c ? OperatorId::HHFC : OperatorId::HHFS,
                                   transforms::Direction::inverse, x, t);
}

RealFunction equation_image(EquationId eq, const RealFunction& f) {
    RealFunction out;
    switch (eq) {
        case EquationId::EQ_3_1:
            if (f.references.stieltjes) {
                out = f;
                auto fe = f.evaluator;
                auto st = f.references.stieltjes;
                out.evaluator = [fe, st](double x) { return fe(x) + st(x) / M_PI; };
                out.decay = quad::DecayHint::algebraic(1.0);
                out.references = {};
                out.backing_spectrum = nullptr;
                if (f.has_known_mellin()) {
                    auto fm = f.known_mellin;
                    out.known_mellin = [fm](double tau) { return fm(tau) * (1.0 + 1.0 / std::cosh(M_PI * tau)); };
                }
            } else {
                out = scaled(transforms::image(OperatorId::HH2, f), 0.5);
            }
            break;
        case EquationId::EQ_3_2: out = scaled(transforms::image(OperatorId::HH2, f, transforms::Direction::inverse), 2.0); break;
        case EquationId::EQ_HILB_C: out = transforms::image(OperatorId::HHFC, f); break;
        case EquationId::EQ_HILB_S: out = transforms::image(OperatorId::HHFS, f); break;
        default: throw CapabilityError(info(eq).name + " is homogeneous; it has no image");
    }
    out.label = f.label + "-image";
    return out;
}

mellin::MellinSpectrum symmetrize(const mellin::MellinSpectrum& phi, Symmetry s) {
    if (s == Symmetry::none) return phi;
    mellin::MellinSpectrum out = phi;
    const double sign = s == Symmetry::even ? 1.0 : -1.0;
    for (int k = -phi.half_count; k <= phi.half_count; ++k) out.at(k) = 0.5 * (phi.at(k) + sign * phi.at(-k));
    return out;
}

double symmetry_defect(const mellin::MellinSpectrum& phi, Symmetry s) {
    if (s == Symmetry::none) return 0.0;
    const double p = phi.peak();
    if (p == 0.0) return 0.0;
    const double sign = s == Symmetry::even ? 1.0 : -1.0;
    double worst = 0.0;
    for (int k = 0; k <= phi.half_count; ++k) worst = std::max(worst, std::abs(phi.at(-k) - sign * phi.at(k)));
    return worst / p;
}

RealFunction build_solution_from_phi(EquationId eq, const mellin::MellinSpectrum& phi, std::optional<double> lambda) {
    const auto& e = info(eq);
    if (!e.denominator) throw CapabilityError(e.name + " has no spectral solution representation");
    std::optional<mellin::cplx> lam;
    if (e.needs_lambda) lam = mellin::cplx(need_lambda(eq, lambda), 0.0);
    mellin::check_admissible(*e.denominator, lam);
    const std::string label = "solution(" + e.name + ")";

    const double p = phi.peak();
    if (p == 0.0) {
        RealFunction z = zero_function();
        z.label = label;
        return z;
    }
    const auto sym = symmetrize(phi, e.symmetry);
    if (sym.peak() < 1e-8 * p) throw DomainError("phi has no component with the symmetry " + e.name + " requires");
    auto fstar = std::make_shared<mellin::MellinSpectrum>(mellin::divide_multiplier(*e.denominator, sym, lam));
    return mellin::function_from_spectrum(fstar, label, quad::DecayHint::algebraic(1.0));
}

mellin::MellinSpectrum recover_phi(EquationId eq, const RealFunction& f, std::optional<double> lambda) {
    const auto& e = info(eq);
    if (!e.denominator) throw CapabilityError(e.name + " has no spectral solution representation");
    std::optional<mellin::cplx> lam;
    if (e.needs_lambda) lam = mellin::cplx(need_lambda(eq, lambda), 0.0);
    return mellin::apply_multiplier(*e.denominator, mellin::mellin_forward(f), lam);
}

std::vector<double> residual_values(EquationId eq, const RealFunction& f, std::optional<double> lambda,
                                    const std::vector<double>& xs, const RealFunction* rhs,
                                    const quad::QuadratureConfig& cfg) {
    const auto& e = info(eq);
    if (e.needs_lambda) need_lambda(eq, lambda);
    const double lam = lambda.value_or(0.0);
    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs) {
        if (!(x > 0)) throw DomainError("residual abscissae must be positive");
        auto g = [&](double t) { return rhs && !rhs->identically_zero ? (*rhs)(t) : 0.0; };
        if (f.identically_zero) {
            out.push_back(e.homogeneous ? 0.0 : 0.0 - g(x));
            continue;
        }
        auto fwd = [&](OperatorId op) { return transforms::forward(op, f, Route::kernel, x, cfg); };
        double r = 0.0;
        switch (eq) {
            case EquationId::EQ_3_1: r = apply_stieltjes_second_kind(f, x, cfg) - g(x); break;
            case EquationId::EQ_3_2: r = solve_stieltjes_second_kind(f, x, cfg) - g(x); break;
            case EquationId::EQ_HILB_C: r = apply_hilbert_second_kind(f, HilbertVariant::c, x, cfg) - g(x); break;
            case EquationId::EQ_HILB_S: r = apply_hilbert_second_kind(f, HilbertVariant::s, x, cfg) - g(x); break;
            case EquationId::EQ_3_3: r = reflected(f, x) - fwd(OperatorId::FCFS); break;
            case EquationId::EQ_3_4:
                r = reflected(f, x) - transforms::inverse(OperatorId::FCFS, f, Route::kernel, x, cfg);
                break;
            case EquationId::EQ_3_5: {
                auto h = [&](double t) { return 2.0 / M_PI * t * f(t) / (x * t + 1.0); };
                r = f(x) - quad::integrate_pv(h, 1.0 / x, cfg, f.decay).value;
                break;
            }
            case EquationId::EQ_3_6: {
                auto h = [&](double t) { return -2.0 / M_PI * f(t) / (x * (x * t + 1.0)); };
                r = f(x) - quad::integrate_pv(h, 1.0 / x, cfg, f.decay.times_power(1.0)).value;
                break;
            }
            case EquationId::EQ_3_10: r = fwd(OperatorId::HHFC) - lam * reflected(f, x); break;
            case EquationId::EQ_3_13: r = fwd(OperatorId::HHFS) - lam * reflected(f, x); break;
            case EquationId::EQ_3_18: r = lam * f(x) + fwd(OperatorId::HHFCFS); break;
            case EquationId::EQ_3_21: r = fwd(OperatorId::HH2FC) - lam * f(x); break;
            case EquationId::EQ_3_22: r = fwd(OperatorId::HH2FS) - lam * f(x); break;
            case EquationId::EQ_3_27:
                r = std::sqrt(0.5 * M_PI) * fwd(OperatorId::HH2FCFS) - lam * reflected(f, x);
                break;
        }
        out.push_back(r);
    }
    return out;
}

double residual(EquationId eq, const RealFunction& f, std::optional<double> lambda, const std::vector<double>& xs,
                const RealFunction* rhs, const quad::QuadratureConfig& cfg) {
    double worst = 0.0;
    for (double v : residual_values(eq, f, lambda, xs, rhs, cfg)) worst = std::max(worst, std::abs(v));
    return worst;
}

std::vector<double> mu_values(MuEquationId mu, const RealFunction& m, double lambda, const std::vector<double>& xs,
                              const quad::QuadratureConfig& cfg) {
    std::vector<double> out;
    out.reserve(xs.size());
    const double l2 = lambda * lambda;
    for (double x : xs) {
        if (!(x > 0)) throw DomainError("mu abscissae must be positive");
        if (m.identically_zero) {
            out.push_back(0.0);
            continue;
        }
        const double v = m(x);
        const double st = stieltjes_integral(m, x, cfg);
        switch (mu) {
            case MuEquationId::MU_3_12: out.push_back((2.0 - l2) * v + 2.0 / M_PI * st); break;
            case MuEquationId::MU_3_24:
                out.push_back((4.0 - l2) * v + 8.0 / M_PI * st + 4.0 / (M_PI * M_PI) * log_difference_integral(m, x, cfg));
                break;
            case MuEquationId::MU_3_29:
                out.push_back((2.0 * M_PI - l2) * v + 4.0 * st + 2.0 / M_PI * log_difference_integral(m, x, cfg));
                break;
        }
    }
    return out;
}

double mu_residual(MuEquationId mu, const RealFunction& m, double lambda, const std::vector<double>& xs,
                   const quad::QuadratureConfig& cfg) {
    double worst = 0.0;
    for (double v : mu_values(mu, m, lambda, xs, cfg)) worst = std::max(worst, std::abs(v));
    return worst;
}

double mu_symbol(MuEquationId mu, double lambda, double tau) {
    const double h = 1.0 / std::cosh(M_PI * tau);
    const double l2 = lambda * lambda;
    switch (mu) {
        case MuEquationId::MU_3_12: return 2.0 - l2 + 2.0 * h;
        case MuEquationId::MU_3_24: return 4.0 + 8.0 * h + 4.0 * h * h - l2;
        case MuEquationId::MU_3_29: return 2.0 * M_PI * (1.0 + h * h + 2.0 * h) - l2;
    }
    return 0.0;
}

double mu_threshold(MuEquationId mu) {
    switch (mu) {
        case MuEquationId::MU_3_12: return std::sqrt(2.0);
        case MuEquationId::MU_3_24: return 2.0;
        case MuEquationId::MU_3_29: return std::sqrt(2.0 * M_PI);
    }
    return 0.0;
}

double triviality_margin(MuEquationId mu, double lambda) {
    const double t = mu_threshold(mu);
    double margin = t * t - lambda * lambda;  // tau -> inf
    for (int k = 0; k <= 4000; ++k) margin = std::min(margin, mu_symbol(mu, lambda, 0.01 * k));
    return margin;
}

std::vector<mellin::MellinSpectrum> even_profiles(const mellin::TauGrid& grid) {
    auto sech = [](double tau) { return 1.0 / std::cosh(0.5 * M_PI * tau); };
    return {
        mellin::sample_spectrum([=](double tau) { return mellin::cplx(sech(tau), 0.0); }, grid),
        mellin::sample_spectrum([=](double tau) { return mellin::cplx(sech(tau) * std::exp(-0.25 * tau * tau), 0.0); }, grid),
        mellin::sample_spectrum([=](double tau) { return mellin::cplx(sech(tau) / (1.0 + tau * tau), 0.0); }, grid),
    };
}

std::string format_residual_csv(const std::vector<double>& xs, const std::vector<double>& values) {
    if (xs.size() != values.size()) throw ConfigError("residual csv: length mismatch");
    std::ostringstream out;
    out << "x,residual\n";
    char buf[64];
    for (std::size_t i = 0; i < xs.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", xs[i], values[i]);
        out << buf;
    }
    return out.str();
}

}  // namespace hartley::equations
