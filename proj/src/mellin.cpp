#include "hartley/mellin.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "hartley/errors.hpp"
#include "hartley/specfun.hpp"

namespace hartley::mellin {

namespace {

const double sqrt_2_over_pi = std::sqrt(2.0 / M_PI);

constexpr double scan_limit = 80.0;
constexpr double scan_step = 0.25;
constexpr double negligible = 1e-13;
constexpr double rejected_tail = 1e-8;

constexpr double table_half_width = 32.0;
constexpr double table_step = 0.005;

double weighted_sum(const MellinSpectrum& spec, double v) {
    // (step/2pi) sum_k w_k F_k e^{-i tau_k v}, symmetric spectrum assumed
    const int n = spec.half_count;
    const cplx z = std::polar(1.0, -spec.step * v);
    cplx e = z;
    double acc = spec.at(0).real();
    for (int k = 1; k <= n; ++k) {
        const double w = (k == n) ? 1.0 : 2.0;
        acc += w * (spec.at(k) * e).real();
        e *= z;
    }
    return acc * spec.step / (2.0 * M_PI);
}

struct SpectralTable {
    std::shared_ptr<const MellinSpectrum> spec;
    std::vector<double> w;  // x^{1/2} f(x) at v = -V + i dv

    double eval(double x) const {
        if (!(x > 0)) return 0.0;
        const double v = std::log(x);
        const double p = (v + table_half_width) / table_step;
        const double base = std::floor(p) - 2.0;
        if (base < 0.0 || base + 5.0 >= static_cast<double>(w.size())) return weighted_sum(*spec, v) / std::sqrt(x);
        const int i0 = static_cast<int>(base);
        const double t = p - base;  // in [2, 3)
        double acc = 0.0;
        for (int i = 0; i < 6; ++i) {
            double l = 1.0;
            for (int j = 0; j < 6; ++j) {
                if (j != i) l *= (t - j) / (i - j);
            }
            acc += l * w[i0 + i];
        }
        return acc / std::sqrt(x);
    }
};

}  // namespace

double MellinSpectrum::peak() const {
    double p = 0.0;
    for (const auto& v : values) p = std::max(p, std::abs(v));
    return p;
}

double MellinSpectrum::asymmetry() const {
    const double p = peak();
    if (p == 0.0) return 0.0;
    double worst = 0.0;
    for (int k = 0; k <= half_count; ++k) worst = std::max(worst, std::abs(at(-k) - std::conj(at(k))));
    return worst / p;
}

MellinSpectrum zero_spectrum(const TauGrid& grid) {
    MellinSpectrum s;
    s.step = grid.step;
    s.half_count = grid.half_count();
    s.values.assign(s.size(), cplx(0.0, 0.0));
    return s;
}

MellinSpectrum sample_spectrum(const SpectrumEvaluator& f, const TauGrid& grid) {
    MellinSpectrum s = zero_spectrum(grid);
    for (int k = 0; k <= s.half_count; ++k) {
        s.at(k) = f(s.tau(k));
        s.at(-k) = k == 0 ? cplx(s.at(0).real(), 0.0) : std::conj(s.at(k));
    }
    return s;
}

MellinSpectrum mellin_forward(const RealFunction& f, const TauGrid& grid) {
    TauGrid g = grid;
    g.extent = std::max(grid.extent, f.resolution.tau_extent);
    if (!(g.step > 0) || !(g.extent >= g.step)) throw ConfigError("tau grid needs positive step and extent");
    MellinSpectrum out = zero_spectrum(g);
    if (f.identically_zero) return out;
    if (const auto& b = f.backing_spectrum; b && std::abs(b->step - g.step) < 1e-15) {
        const int n = std::min(out.half_count, b->half_count);
        for (int k = -n; k <= n; ++k) out.at(k) = b->at(k);
        return out;
    }

    auto w = [&](double u) {
        const double x = std::exp(u);
        return f(x) * std::exp(0.5 * u);
    };

    // coarse scan for the support of w(u) = f(e^u) e^{u/2}
    const int m = static_cast<int>(scan_limit / scan_step);
    std::vector<double> coarse(2 * m + 1);
    double peak = 0.0;
    for (int i = -m; i <= m; ++i) {
        const double v = std::abs(w(i * scan_step));
        if (!std::isfinite(v)) throw DomainError("mellin_forward: non-finite function value at x = e^" + std::to_string(i * scan_step));
        coarse[i + m] = v;
        peak = std::max(peak, v);
    }
    if (peak == 0.0) return out;
    const double edge = std::max(coarse.front(), coarse.back());
    if (edge > rejected_tail * peak) {
        throw DomainError("mellin_forward: insufficient decay, tail mass ratio " + std::to_string(edge / peak) +
                          " at |ln x| = " + std::to_string(scan_limit));
    }
    int lo = 0, hi = 2 * m;
    while (lo < 2 * m && coarse[lo] < negligible * peak) ++lo;
    while (hi > 0 && coarse[hi] < negligible * peak) --hi;
    const double u_lo = std::max(-scan_limit, (lo - m) * scan_step - 1.0);
    const double u_hi = std::min(scan_limit, (hi - m) * scan_step + 1.0);

    const double du = std::min(0.01, 0.4 / g.extent);
    const int nu = static_cast<int>(std::ceil((u_hi - u_lo) / du));
    const int n = out.half_count;
    std::vector<cplx> acc(n + 1, cplx(0.0, 0.0));
    for (int j = 0; j <= nu; ++j) {
        const double u = u_lo + j * du;
        double wj = w(u);
        if (j == 0 || j == nu) wj *= 0.5;
        if (wj == 0.0) continue;
        const cplx z = std::polar(1.0, g.step * u);
        cplx e(wj, 0.0);
        for (int k = 0; k <= n; ++k) {
            acc[k] += e;
            e *= z;
        }
    }
    for (int k = 0; k <= n; ++k) {
        const cplx v = acc[k] * du;
        out.at(k) = v;
        out.at(-k) = std::conj(v);
    }
    out.at(0) = cplx(out.at(0).real(), 0.0);
    return out;
}

double mellin_inverse(const MellinSpectrum& spec, double x) {
    if (!(x > 0)) throw DomainError("mellin_inverse requires x > 0");
    const double p = spec.peak();
    if (p == 0.0) return 0.0;
    if (spec.asymmetry() > 1e-9) throw DomainError("mellin_inverse: spectrum is not conjugate-symmetric");
    const double v = std::log(x);
    const int n = spec.half_count;
    const cplx z = std::polar(1.0, -spec.step * v);
    cplx e = z;
    cplx acc = spec.at(0);
    for (int k = 1; k <= n; ++k) {
        const double w = (k == n) ? 0.5 : 1.0;
        acc += w * (spec.at(k) * e + spec.at(-k) * std::conj(e));
        e *= z;
    }
    const double scale = spec.step / (2.0 * M_PI);
    if (std::abs(acc.imag()) * scale > 1e-9 * std::max(1.0, std::abs(acc.real()) * scale)) {
        throw DomainError("mellin_inverse: imaginary residue above 1e-9");
    }
    return acc.real() * scale / std::sqrt(x);
}

double parseval_norm(const MellinSpectrum& spec) {
    const int n = spec.half_count;
    double sum = 0.0;
    for (int k = -n; k <= n; ++k) {
        const double w = (k == -n || k == n) ? 0.5 : 1.0;
        sum += w * std::norm(spec.at(k));
    }
    return std::sqrt(sum * spec.step / (2.0 * M_PI));
}

ReflectionKind reflection_kind(MultiplierId id) {
    switch (id) {
        case MultiplierId::M_FC:
        case MultiplierId::M_FS:
        case MultiplierId::M_HH:
        case MultiplierId::M_HHFCFS:
        case MultiplierId::M_HH2FC:
        case MultiplierId::M_HH2FS:
            return ReflectionKind::reflected;
        default:
            return ReflectionKind::plain;
    }
}

std::string multiplier_name(MultiplierId id) {
    switch (id) {
        case MultiplierId::M_FC: return "M_FC";
        case MultiplierId::M_FS: return "M_FS";
        case MultiplierId::M_HH: return "M_HH";
        case MultiplierId::M_FCFS: return "M_FCFS";
        case MultiplierId::M_HH2: return "M_HH2";
        case MultiplierId::M_HHFC: return "M_HHFC";
        case MultiplierId::M_HHFS: return "M_HHFS";
        case MultiplierId::M_HHFCFS: return "M_HHFCFS";
        case MultiplierId::M_HH2FC: return "M_HH2FC";
        case MultiplierId::M_HH2FS: return "M_HH2FS";
        case MultiplierId::M_HH2FCFS: return "M_HH2FCFS";
        case MultiplierId::D_3_7: return "D_3_7";
        case MultiplierId::D_3_8: return "D_3_8";
        case MultiplierId::D_3_11: return "D_3_11";
        case MultiplierId::D_3_14: return "D_3_14";
        case MultiplierId::D_3_19: return "D_3_19";
        case MultiplierId::D_3_23: return "D_3_23";
        case MultiplierId::D_3_25: return "D_3_25";
        case MultiplierId::D_3_28: return "D_3_28";
    }
    return "?";
}

void check_admissible(MultiplierId id, std::optional<cplx> lambda) {
    switch (id) {
        case MultiplierId::D_3_11:
        case MultiplierId::D_3_14:
            if (!lambda) throw DomainError(multiplier_name(id) + " needs lambda");
            if (std::abs(std::abs(1.0 - *lambda) - 1.0) < 1e-6) {
                throw DomainError(multiplier_name(id) + ": |1 - lambda| = 1 is inadmissible");
            }
            return;
        case MultiplierId::D_3_19:
        case MultiplierId::D_3_23:
        case MultiplierId::D_3_25:
            if (!lambda) throw DomainError(multiplier_name(id) + " needs lambda");
            if (!(std::abs(*lambda) < 2.0)) throw DomainError(multiplier_name(id) + ": requires |lambda| < 2");
            return;
        case MultiplierId::D_3_28:
            if (!lambda) throw DomainError(multiplier_name(id) + " needs lambda");
            if (!(std::abs(*lambda) < std::sqrt(2.0 * M_PI))) {
                throw DomainError(multiplier_name(id) + ": requires |lambda| < sqrt(2 pi)");
            }
            return;
        default:
            return;
    }
}

cplx multiplier_eval(MultiplierId id, std::optional<cplx> lambda, double tau) {
    check_admissible(id, lambda);
    const cplx s(0.5, tau);
    const cplx theta = 0.5 * M_PI * s;
    const cplx cos_t = std::cos(theta);
    const cplx sin_t = std::sin(theta);
    // sin(pi s) on the critical line
    const double sin_ps = std::cosh(M_PI * tau);
    auto gamma_s = [&] { return specfun::gamma_critical(tau); };
    auto gamma_1ms = [&] { return std::conj(specfun::gamma_critical(tau)); };
    const cplx lam = lambda.value_or(cplx(0.0, 0.0));

    switch (id) {
        case MultiplierId::M_FC: return sqrt_2_over_pi * gamma_s() * cos_t;
        case MultiplierId::M_FS: return sqrt_2_over_pi * gamma_s() * sin_t;
        case MultiplierId::M_HH: return sqrt_2_over_pi * gamma_s() * (cos_t + sin_t);
        case MultiplierId::M_FCFS: return cos_t / sin_t;
        case MultiplierId::M_HH2: return 2.0 * (1.0 + sin_ps) / sin_ps;
        case MultiplierId::M_HHFC: return 1.0 + sin_t / cos_t;
        case MultiplierId::M_HHFS: return 1.0 + cos_t / sin_t;
        case MultiplierId::M_HHFCFS: return sqrt_2_over_pi * gamma_s() * sin_t * (1.0 + sin_t / cos_t);
        case MultiplierId::M_HH2FC: return sqrt_2_over_pi * gamma_s() * (1.0 + sin_ps) / sin_t;
        case MultiplierId::M_HH2FS: return sqrt_2_over_pi * gamma_s() * (1.0 + sin_ps) / cos_t;
        case MultiplierId::M_HH2FCFS: return (1.0 + sin_ps) / (sin_t * sin_t);
        case MultiplierId::D_3_7: return cos_t;
        case MultiplierId::D_3_8: return sin_t;
        case MultiplierId::D_3_11: return sin_t / cos_t + 1.0 - lam;
        case MultiplierId::D_3_14: return cos_t / sin_t + 1.0 - lam;
        case MultiplierId::D_3_19: return sqrt_2_over_pi * gamma_1ms() * cos_t * (1.0 + cos_t / sin_t) - lam;
        case MultiplierId::D_3_23: return sqrt_2_over_pi * (1.0 + sin_ps) * gamma_1ms() / cos_t + lam;
        case MultiplierId::D_3_25: return sqrt_2_over_pi * (1.0 + sin_ps) * gamma_1ms() / sin_t + lam;
        case MultiplierId::D_3_28: return std::sqrt(0.5 * M_PI) * (1.0 + sin_ps) / (sin_t * sin_t) + lam;
    }
    return {};
}

MellinSpectrum apply_multiplier(MultiplierId id, const MellinSpectrum& spec, std::optional<cplx> lambda) {
    check_admissible(id, lambda);
    MellinSpectrum out = spec;
    const bool refl = reflection_kind(id) == ReflectionKind::reflected;
    for (int k = -spec.half_count; k <= spec.half_count; ++k) {
        const cplx src = refl ? spec.at(-k) : spec.at(k);
        out.at(k) = multiplier_eval(id, lambda, spec.tau(k)) * src;
    }
    return out;
}

MellinSpectrum divide_multiplier(MultiplierId id, const MellinSpectrum& spec, std::optional<cplx> lambda) {
    check_admissible(id, lambda);
    MellinSpectrum out = spec;
    const bool refl = reflection_kind(id) == ReflectionKind::reflected;
    for (int k = -spec.half_count; k <= spec.half_count; ++k) {
        if (refl) {
            out.at(k) = spec.at(-k) / multiplier_eval(id, lambda, spec.tau(-k));
        } else {
            out.at(k) = spec.at(k) / multiplier_eval(id, lambda, spec.tau(k));
        }
    }
    return out;
}

std::string format_spectrum_csv(const MellinSpectrum& spec) {
    std::ostringstream out;
    out << "tau,re,im\n";
    char buf[96];
    for (int k = -spec.half_count; k <= spec.half_count; ++k) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", spec.tau(k), spec.at(k).real(), spec.at(k).imag());
        out << buf;
    }
    return out.str();
}

RealFunction function_from_spectrum(std::shared_ptr<const MellinSpectrum> spec, std::string label,
                                    quad::DecayHint decay) {
    if (!spec) throw ConfigError("function_from_spectrum: null spectrum");
    if (spec->asymmetry() > 1e-9) throw DomainError("function_from_spectrum: spectrum is not conjugate-symmetric");
    RealFunction f;
    f.label = std::move(label);
    f.decay = decay;
    f.backing_spectrum = spec;
    if (spec->peak() == 0.0) {
        RealFunction z = zero_function();
        z.label = f.label;
        z.backing_spectrum = spec;
        return z;
    }

    auto table = std::make_shared<SpectralTable>();
    table->spec = spec;
    const int count = static_cast<int>(std::lround(2.0 * table_half_width / table_step)) + 1;
    table->w.resize(count);
    for (int i = 0; i < count; ++i) table->w[i] = weighted_sum(*spec, -table_half_width + i * table_step);

    f.evaluator = [table](double x) { return table->eval(x); };
    f.known_mellin = [spec](double tau) {
        const double p = tau / spec->step;
        const double k0 = std::floor(p);
        const int k = static_cast<int>(k0);
        if (k < -spec->half_count || k + 1 > spec->half_count) return cplx(0.0, 0.0);
        const double t = p - k0;
        return (1.0 - t) * spec->at(k) + t * spec->at(k + 1);
    };
    f.resolution.tau_extent = spec->extent();
    return f;
}

}  // namespace hartley::mellin
