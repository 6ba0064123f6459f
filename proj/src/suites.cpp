#include "hartley/suites.hpp"

#include <chrono>
#include <cmath>
#include <functional>

#include "json.hpp"

#include "hartley/equations.hpp"
#include "hartley/errors.hpp"
#include "hartley/specfun.hpp"
#include "hartley/transforms.hpp"

namespace hartley::suites {

namespace {

using nlohmann::json;
using transforms::Direction;
using transforms::OperatorId;
using transforms::Route;

const std::vector<double> probe_x{0.25, 0.5, 1.0, 2.0, 4.0};

// Parseval integrals for e^{-t}: (1/2)(4 + 16/pi + 2) and (1/2)(2 + 4/pi) over ||f||^2 = 1/2
const double hh2_exp_ratio = std::sqrt(6.0 + 16.0 / M_PI);
const double hhfc_exp_ratio = std::sqrt(2.0 + 4.0 / M_PI);

class Recorder {
public:
    explicit Recorder(std::string suite) : suite_(std::move(suite)) {}

    void below(const std::string& name, double value, double threshold) {
        add(name, value, threshold, std::isfinite(value) && value < threshold);
    }
    void at_least(const std::string& name, double value, double threshold) {
        add(name, value, threshold, std::isfinite(value) && value >= threshold);
    }
    void at_most(const std::string& name, double value, double threshold) {
        add(name, value, threshold, std::isfinite(value) && value <= threshold);
    }

    // runs body; a numerical exception fails the named check
    void guarded(const std::string& name, double threshold, const std::function<void()>& body) {
        try {
            body();
        } catch (const std::exception&) {
            add(name, std::nan(""), threshold, false);
        }
    }

    std::vector<Check> take() { return std::move(checks_); }

private:
    void add(const std::string& name, double value, double threshold, bool pass) {
        checks_.push_back({suite_ + "/" + name, value, threshold, pass});
    }

    std::string suite_;
    std::vector<Check> checks_;
};

double relative_grid_error(const GridSpec& grid, const std::vector<double>& got, const RealFunction& f) {
    GridFunction diff{grid, {}, nullptr};
    const auto xs = grid.nodes();
    for (std::size_t i = 0; i < xs.size(); ++i) diff.values.push_back(got[i] - f(xs[i]));
    return l2_norm(diff) / l2_norm(f);
}

void parseval_suite(Recorder& r, const RunConfig& cfg) {
    for (const auto& name : catalog_names()) {
        r.guarded(name, 1e-6, [&] {
            const auto f = catalog(name);
            r.below(name, std::abs(l2_norm(f) - mellin::parseval_norm(mellin::mellin_forward(f, cfg.tau))), 1e-6);
        });
    }
}

void routes_suite(Recorder& r, const RunConfig& cfg) {
    for (const char* fn : {"exp", "gauss"}) {
        const auto f = catalog(fn);
        for (auto op : transforms::composite_operators()) {
            const std::string name = transforms::info(op).name + "/" + fn;
            r.guarded(name, 1e-4, [&] {
                r.below(name, transforms::route_report(op, Direction::forward, f, probe_x, cfg.quadrature).max_deviation, 1e-4);
            });
        }
    }
}

void reciprocity_suite(Recorder& r, const RunConfig& cfg) {
    const auto xs = cfg.grid.nodes();
    for (const char* fn : {"exp", "gauss", "bump"}) {
        const auto f = catalog(fn);
        for (auto op : transforms::all_operators()) {
            const std::string name = transforms::info(op).name + "/" + fn;
            r.guarded(name, 1e-3, [&] {
                const auto g = transforms::image(op, f, Direction::forward, cfg.tau);
                const auto back = transforms::apply(op, Direction::inverse, g, Route::kernel, xs, cfg.quadrature);
                r.below(name, relative_grid_error(cfg.grid, back, f), 1e-3);
            });
        }
    }
}

void norms_suite(Recorder& r, const RunConfig&) {
    const OperatorId bounded[] = {OperatorId::HH2,  OperatorId::HH2FC, OperatorId::HH2FS, OperatorId::HH2FCFS,
                                  OperatorId::HHFC, OperatorId::HHFS,  OperatorId::HHFCFS};
    for (const auto& fn : catalog_names()) {
        const auto f = catalog(fn);
        for (auto op : bounded) {
            const auto& b = *transforms::info(op).bounds;
            const std::string name = transforms::info(op).name + "/" + fn;
            r.guarded(name, b.upper, [&] {
                const double q = transforms::norm_ratio(op, f);
                r.at_least(name + "/lower", q, b.lower);
                r.at_most(name + "/upper", q, b.upper);
            });
        }
    }
    const auto e = catalog("exp");
    r.guarded("hh2/exp/sharp", 1e-3, [&] {
        r.below("hh2/exp/sharp", std::abs(transforms::norm_ratio(OperatorId::HH2, e) - hh2_exp_ratio), 1e-3);
    });
    r.guarded("hhfc/exp/sharp", 1e-3, [&] {
        r.below("hhfc/exp/sharp", std::abs(transforms::norm_ratio(OperatorId::HHFC, e) - hhfc_exp_ratio), 1e-3);
    });
}

void isometry_suite(Recorder& r, const RunConfig&) {
    for (const auto& fn : catalog_names()) {
        const auto f = catalog(fn);
        for (auto op : {OperatorId::FC, OperatorId::FS, OperatorId::FCFS}) {
            const std::string name = transforms::info(op).name + "/" + fn;
            r.guarded(name, 1e-4, [&] { r.below(name, std::abs(transforms::norm_ratio(op, f) - 1.0), 1e-4); });
        }
    }
}

void equations_suite(Recorder& r, const RunConfig& cfg) {
    using namespace equations;
    const auto xs = cfg.grid.nodes();
    for (const char* fn : {"exp", "gauss"}) {
        const std::string name = std::string("stieltjes_roundtrip/") + fn;
        r.guarded(name, 1e-3, [&] {
            const auto f = catalog(fn);
            const auto g = equation_image(EquationId::EQ_3_1, f);
            std::vector<double> sol;
            for (double x : xs) sol.push_back(solve_stieltjes_second_kind(g, x, cfg.quadrature));
            r.below(name, relative_grid_error(cfg.grid, sol, f), 1e-3);
        });
    }

    const std::vector<double> residual_x{0.5, 1.0, 2.0};
    const auto profiles = even_profiles(cfg.tau);
    for (auto eq : {EquationId::EQ_3_5, EquationId::EQ_3_6}) {
        for (std::size_t i = 0; i < profiles.size(); ++i) {
            const std::string name = info(eq).name + "/profile" + std::to_string(i);
            r.guarded(name, 1e-3, [&] {
                const auto f = build_solution_from_phi(eq, profiles[i]);
                r.below(name, residual(eq, f, {}, residual_x, nullptr, cfg.quadrature), 1e-3);
            });
        }
    }

    for (auto v : {HilbertVariant::c, HilbertVariant::s}) {
        const auto eq = v == HilbertVariant::c ? EquationId::EQ_HILB_C : EquationId::EQ_HILB_S;
        const std::string name = std::string("hilbert_plugback/") + (v == HilbertVariant::c ? "c" : "s");
        r.guarded(name, 1e-3, [&] {
            const auto g = equation_image(eq, catalog("exp"));
            RealFunction sol;
            sol.label = "solution";
            sol.decay = quad::DecayHint::algebraic(1.0);
            const auto qc = cfg.quadrature;
            sol.evaluator = [g, v, qc](double t) { return solve_hilbert_second_kind(g, v, t, qc); };
            r.below(name, residual(eq, sol, {}, residual_x, &g, cfg.quadrature), 1e-3);
        });
    }
}

void margins_suite(Recorder& r, const RunConfig&) {
    using namespace equations;
    struct Scan {
        MuEquationId mu;
        double half_width;
    };
    for (const auto& s : {Scan{MuEquationId::MU_3_12, 2.0}, Scan{MuEquationId::MU_3_24, 2.5}, Scan{MuEquationId::MU_3_29, 3.0}}) {
        const double t = mu_threshold(s.mu);
        int mismatches = 0;
        for (int i = 0; i < 50; ++i) {
            const double l = -s.half_width + 2.0 * s.half_width * i / 49.0;
            if ((triviality_margin(s.mu, l) > 0.0) != (std::abs(l) < t)) ++mismatches;
        }
        const auto name = mu_name(s.mu);
        r.at_most(name + "/scan_mismatches", mismatches, 0.0);
        r.below(name + "/boundary_zero", std::max(std::abs(triviality_margin(s.mu, t)), std::abs(triviality_margin(s.mu, -t))),
                1e-10);
    }
    r.below("mu_3_12/lambda0", std::abs(triviality_margin(MuEquationId::MU_3_12, 0.0) - 2.0), 1e-12);
}

void specfun_suite(Recorder& r, const RunConfig&) {
    r.below("k0_1", std::abs(specfun::bessel_k0(1.0) - 0.421024438240708333), 1e-6);
    r.below("lommel_0", std::abs(specfun::lommel_kernel(0.0) - M_PI / 2.0), 1e-6);
    r.below("gamma_half", std::abs(specfun::gamma_critical(0.0) - std::complex<double>(std::sqrt(M_PI), 0.0)), 1e-6);
    r.below("digamma_neg_half", std::abs(specfun::digamma_neg_half(0) - 0.0364899739785765206), 1e-6);
    r.below("digamma_half", std::abs(specfun::digamma_half() + 1.96351002602142348), 1e-6);
    const auto zero = specfun::fresnel_pair(0.0);
    r.below("fresnel_origin", std::max(std::abs(zero.S), std::abs(zero.C)), 1e-6);
    const auto far = specfun::fresnel_pair(1e14);
    r.below("fresnel_limit", std::max(std::abs(far.S - 0.5), std::abs(far.C - 0.5)), 1e-6);
}

using SuiteBody = void (*)(Recorder&, const RunConfig&);

struct Entry {
    std::string name;
    SuiteBody body;
    double budget;
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> e = {
        {"parseval", parseval_suite, 10.0},   {"routes", routes_suite, 120.0},   {"reciprocity", reciprocity_suite, 300.0},
        {"norms", norms_suite, 30.0},         {"isometry", isometry_suite, 20.0}, {"equations", equations_suite, 120.0},
        {"margins", margins_suite, 5.0},      {"specfun", specfun_suite, 5.0},
    };
    return e;
}

SuiteReport run_one(const Entry& e, const RunConfig& cfg) {
    Recorder rec(e.name);
    const auto t0 = std::chrono::steady_clock::now();
    e.body(rec, cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rec.below("runtime_s", secs, e.budget);
    SuiteReport out;
    out.suite = e.name;
    out.checks = rec.take();
    out.seconds = secs;
    out.config_echo = cfg.echo_json();
    return out;
}

}  // namespace

RunConfig::RunConfig() : quadrature(transforms::default_config()), grid(default_grid()) {}

std::string RunConfig::echo_json() const {
    json j;
    j["quadrature"] = {{"abs_tol", quadrature.abs_tol},
                       {"rel_tol", quadrature.rel_tol},
                       {"max_subdivisions", quadrature.max_subdivisions},
                       {"pv_window", quadrature.pv_window}};
    j["grid"] = {{"ratio", grid.ratio}, {"half_span", grid.half_span}};
    j["tau"] = {{"step", tau.step}, {"extent", tau.extent}};
    return j.dump();
}

bool SuiteReport::passed() const {
    for (const auto& c : checks) {
        if (!c.pass) return false;
    }
    return true;
}

std::string SuiteReport::json() const {
    nlohmann::json j;
    j["suite"] = suite;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json cj = {{"name", c.name}, {"threshold", c.threshold}, {"pass", c.pass}};
        cj["value"] = std::isfinite(c.value) ? nlohmann::json(c.value) : nlohmann::json(nullptr);
        j["checks"].push_back(cj);
    }
    j["config_echo"] = config_echo.empty() ? nlohmann::json::object() : nlohmann::json::parse(config_echo);
    j["seconds"] = seconds;
    j["pass"] = passed();
    return j.dump(2);
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& e : entries()) v.push_back(e.name);
        return v;
    }();
    return names;
}

bool is_suite(const std::string& name) {
    if (name == "all") return true;
    for (const auto& e : entries()) {
        if (e.name == name) return true;
    }
    return false;
}

double runtime_budget(const std::string& name) {
    double total = 0.0;
    for (const auto& e : entries()) {
        if (e.name == name) return e.budget;
        total += e.budget;
    }
    if (name == "all") return total;
    throw NotFoundError("unknown suite: " + name);
}

SuiteReport run_suite(const std::string& name, const RunConfig& cfg) {
    if (name == "all") {
        SuiteReport all;
        all.suite = "all";
        all.config_echo = cfg.echo_json();
        for (const auto& e : entries()) {
            auto part = run_one(e, cfg);
            all.seconds += part.seconds;
            all.checks.insert(all.checks.end(), part.checks.begin(), part.checks.end());
        }
        return all;
    }
    for (const auto& e : entries()) {
        if (e.name == name) return run_one(e, cfg);
    }
    throw NotFoundError("unknown suite: " + name);
}

}  // namespace hartley::suites
