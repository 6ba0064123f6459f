#include "hartley/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "hartley/errors.hpp"

namespace hartley::quad {

namespace {

constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double eps = std::numeric_limits<double>::epsilon();

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const Integrand& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double resk = fc * wgk[7];
    double resg = fc * wg[3];
    double resabs = std::abs(resk);
    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xgk[j];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += wgk[j] * (f1 + f2);
        resabs += wgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) resg += wg[j / 2] * (f1 + f2);
    }
    const double mean = resk * 0.5;
    double resasc = wgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) resasc += wgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));

    const double value = resk * h;
    resabs *= std::abs(h);
    resasc *= std::abs(h);
    double err = std::abs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    err = std::max(err, 50.0 * eps * resabs);
    if (!std::isfinite(value)) throw ConvergenceError("non-finite integrand value", value, err);
    return {a, b, value, err};
}

double tolerance(const QuadratureConfig& cfg, double value) {
    return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
}

// envelope amplitude so that |f(t)| <= A * profile(t) for t >= s
double envelope_amplitude(const Integrand& f, double s, const DecayHint& hint) {
    double amp = 0.0;
    for (double r : {1.0, 1.25, 1.5, 2.0}) {
        const double t = s * r;
        double a = std::abs(f(t));
        switch (hint.kind) {
            case DecayHint::Kind::exponential: a *= std::exp(hint.rate * (t - s)); break;
            case DecayHint::Kind::gaussian: a *= std::exp(hint.rate * (t * t - s * s)); break;
            case DecayHint::Kind::algebraic: a *= std::pow(r, hint.rate); break;
        }
        amp = std::max(amp, a);
    }
    return amp;
}

double truncation_point(double amp, double s, const DecayHint& hint, double bound) {
    if (amp <= 0.0) return s;
    const double r = hint.rate;
    switch (hint.kind) {
        case DecayHint::Kind::exponential: {
            const double q = amp / (r * bound);
            return q <= 1.0 ? s : s + std::log(q) / r;
        }
        case DecayHint::Kind::gaussian: {
            const double q = amp / (2.0 * r * s * bound);
            return q <= 1.0 ? s : std::sqrt(s * s + std::log(q) / r);
        }
        case DecayHint::Kind::algebraic: {
            const double q = amp * s / ((r - 1.0) * bound);
            if (q <= 1.0) return s;
            const double lt = std::log(s) + std::log(q) / (r - 1.0);
            return std::exp(std::min(lt, 700.0));
        }
    }
    return s;
}

}  // namespace

void QuadratureConfig::validate() const {
    if (!(abs_tol > 0) || !(rel_tol > 0)) throw ConfigError("tolerances must be positive");
    if (!(pv_window > 0 && pv_window < 1)) throw ConfigError("pv_window must lie in (0,1)");
    if (max_subdivisions < 1) throw ConfigError("max_subdivisions must be >= 1");
    if (!(truncation_tail_bound > 0)) throw ConfigError("truncation_tail_bound must be positive");
    if (oscillatory_lead_cells < 1 || oscillatory_accel_terms < 2) throw ConfigError("bad oscillatory partition");
}

QuadratureConfig QuadratureConfig::scaled(double factor) const {
    QuadratureConfig c = *this;
    c.abs_tol *= factor;
    c.rel_tol *= factor;
    c.truncation_tail_bound *= factor;
    return c;
}

DecayHint DecayHint::times_power(double p) const {
    DecayHint h = *this;
    if (kind == Kind::algebraic) h.rate += p;
    return h;
}

IntegralResult integrate_finite(const Integrand& f, double a, double b, const QuadratureConfig& cfg) {
    cfg.validate();
    if (!(a <= b)) throw DomainError("integrate_finite requires a <= b");
    if (a == b) return {};

    std::priority_queue<Segment> heap;
    Segment first = gk15(f, a, b);
    long evals = 15;
    double total = first.value;
    double total_err = first.error;
    heap.push(first);
    int segments = 1;
    std::vector<Segment> frozen;

    while (total_err > tolerance(cfg, total)) {
        if (heap.empty()) break;
        if (segments >= cfg.max_subdivisions) {
            throw ConvergenceError("subdivision budget exhausted", total, total_err);
        }
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b) || (worst.b - worst.a) < 1e-15 * (std::abs(worst.a) + std::abs(worst.b))) {
            frozen.push_back(worst);
            continue;
        }
        Segment l = gk15(f, worst.a, mid);
        Segment r = gk15(f, mid, worst.b);
        evals += 30;
        total += l.value + r.value - worst.value;
        total_err += l.error + r.error - worst.error;
        heap.push(l);
        heap.push(r);
        ++segments;
    }
    // resum to shed accumulated update drift
    double v = 0.0, e = 0.0;
    for (const auto& s : frozen) { v += s.value; e += s.error; }
    while (!heap.empty()) {
        v += heap.top().value;
        e += heap.top().error;
        heap.pop();
    }
    return {v, e, evals};
}

IntegralResult integrate_tail(const Integrand& f, double a, const DecayHint& hint, const QuadratureConfig& cfg) {
    cfg.validate();
    if (a < 0) throw DomainError("integrate_tail requires a >= 0");
    if (hint.kind == DecayHint::Kind::algebraic && !(hint.rate > 1.0)) {
        throw ConfigError("algebraic decay with power <= 1 is not integrable");
    }
    if (!(hint.rate > 0) || !(hint.scale > 0)) throw ConfigError("decay hint needs positive rate and scale");

    const double s = std::max(hint.scale, a);
    IntegralResult out;
    if (a < s) out += integrate_finite(f, a, s, cfg);

    const double amp = envelope_amplitude(f, s, hint);
    out.evaluations += 4;
    const double T = truncation_point(amp, s, hint, cfg.truncation_tail_bound);
    if (T > s) {
        if (hint.kind == DecayHint::Kind::algebraic) {
            auto g = [&](double v) {
                const double t = s * std::exp(v);
                return f(t) * t;
            };
            out += integrate_finite(g, 0.0, std::log(T / s), cfg);
        } else {
            out += integrate_finite(f, s, T, cfg);
        }
    }
    out.error_estimate += cfg.truncation_tail_bound;
    return out;
}

IntegralResult integrate_semiinf(const Integrand& f, const DecayHint& hint, const QuadratureConfig& cfg) {
    return integrate_tail(f, 0.0, hint, cfg);
}

IntegralResult integrate_pv(const Integrand& g, double x0, const QuadratureConfig& cfg, const DecayHint& hint) {
    cfg.validate();
    if (!(x0 > 0)) throw DomainError("integrate_pv requires x0 > 0");
    const double lo = x0 * (1.0 - cfg.pv_window);
    const double hi = x0 * (1.0 + cfg.pv_window);
    if (!(lo > 0)) throw ConfigError("PV window collides with the origin");

    const double g0 = g(x0);
    auto direct = [&](double t) { return g(t) / (t - x0); };
    auto removed = [&](double t) { return (g(t) - g0) / (t - x0); };

    IntegralResult out = integrate_finite(direct, 0.0, lo, cfg);
    out += integrate_finite(removed, lo, x0, cfg);
    out += integrate_finite(removed, x0, hi, cfg);
    DecayHint th = hint.times_power(1.0);
    th.scale = std::max(th.scale, hi);
    out += integrate_tail(direct, hi, th, cfg);
    out.evaluations += 1;
    return out;
}

IntegralResult integrate_oscillatory_phase(const Integrand& f, double omega, double phase, const DecayHint& hint,
                                           const QuadratureConfig& cfg) {
    cfg.validate();
    if (!(omega > 0)) throw DomainError("integrate_oscillatory requires omega > 0");
    if (!(hint.rate > 0) || !(hint.scale > 0)) throw ConfigError("decay hint needs positive rate and scale");

    // sin(w t + phase) = (-1)^n sin(w t + phase - n pi)
    const double turns = std::floor(phase / M_PI);
    if (turns != 0.0) {
        const double sign = std::fmod(std::abs(turns), 2.0) == 1.0 ? -1.0 : 1.0;
        IntegralResult r = integrate_oscillatory_phase(f, omega, phase - turns * M_PI, hint, cfg);
        r.value *= sign;
        return r;
    }

    auto integrand = [&](double t) { return f(t) * std::sin(omega * t + phase); };
    auto zero = [&](long k) { return (static_cast<double>(k) * M_PI - phase) / omega; };

    double T = std::numeric_limits<double>::infinity();
    if (hint.kind != DecayHint::Kind::algebraic) {
        T = truncation_point(envelope_amplitude(f, hint.scale, hint), hint.scale, hint, cfg.truncation_tail_bound);
    }

    IntegralResult out;
    out.evaluations += 4;
    long k = 1;
    double left = 0.0;
    double right = zero(k);
    if (right <= 0.0) right = zero(++k);

    // a cell spanning decades is split geometrically from the decay scale, and clipped at T
    auto cell = [&](double a, double b) {
        b = std::min(b, T);
        IntegralResult r;
        if (!(b > a)) return r;
        double p = std::max(a, hint.scale);
        if (b <= 16.0 * p) return integrate_finite(integrand, a, b, cfg);
        if (p > a) r += integrate_finite(integrand, a, p, cfg);
        while (16.0 * p < b) {
            r += integrate_finite(integrand, p, 16.0 * p, cfg);
            p *= 16.0;
        }
        r += integrate_finite(integrand, p, b, cfg);
        return r;
    };

    // at high frequency the accelerated cells see a locally polynomial amplitude
    const double accel_span = cfg.oscillatory_accel_terms * M_PI / omega;
    const double feature = hint.feature > 0.0 ? hint.feature : hint.scale;

    // lead cells: plain summation
    while (true) {
        out += cell(left, right);
        left = right;
        right = zero(++k);
        if (left >= T) {
            out.error_estimate += cfg.truncation_tail_bound;
            return out;
        }
        if (k > cfg.oscillatory_lead_cells && (left >= hint.scale || accel_span <= 0.05 * feature)) break;
    }

    // accelerated tail
    const int m = cfg.oscillatory_accel_terms;
    std::vector<double> partial;
    partial.reserve(m);
    double running = 0.0;
    for (int i = 0; i < m; ++i) {
        IntegralResult c = cell(left, right);
        running += c.value;
        out.error_estimate += c.error_estimate;
        out.evaluations += c.evaluations;
        partial.push_back(running);
        left = right;
        right = zero(++k);
        if (left >= T) {
            out.value += running;
            out.error_estimate += cfg.truncation_tail_bound;
            return out;
        }
    }
    auto average = [](std::vector<double> p) {
        while (p.size() > 1) {
            for (std::size_t i = 0; i + 1 < p.size(); ++i) p[i] = 0.5 * (p[i] + p[i + 1]);
            p.pop_back();
        }
        return p[0];
    };
    const double full = average(partial);
    const double shorter = average(std::vector<double>(partial.begin(), partial.end() - 1));
    out.value += full;
    out.error_estimate += std::abs(full - shorter);
    return out;
}

IntegralResult integrate_oscillatory(const Integrand& f, double omega, Trig kind, const DecayHint& hint,
                                     const QuadratureConfig& cfg) {
    return integrate_oscillatory_phase(f, omega, kind == Trig::sin ? 0.0 : 0.5 * M_PI, hint, cfg);
}

}  // namespace hartley::quad
