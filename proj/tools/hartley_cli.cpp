#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hartley/equations.hpp"
#include "hartley/errors.hpp"
#include "hartley/funcspace.hpp"
#include "hartley/suites.hpp"
#include "hartley/transforms.hpp"

using namespace hartley;

namespace {

constexpr int exit_verify_failed = 1;
constexpr int exit_usage = 2;
constexpr int exit_numeric = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// start:stop:count, geometric
std::vector<double> parse_range(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw UsageError("x-range must be start:stop:count, got " + spec);
    double a, b;
    long n;
    try {
        a = std::stod(parts[0]);
        b = std::stod(parts[1]);
        n = std::stol(parts[2]);
    } catch (const std::exception&) {
        throw UsageError("x-range must be start:stop:count, got " + spec);
    }
    if (!(a > 0) || !(b > 0) || n < 1) throw UsageError("x-range needs positive endpoints and count >= 1");
    if (n == 1) return {a};
    std::vector<double> xs;
    const double la = std::log(a), lb = std::log(b);
    for (long i = 0; i < n; ++i) xs.push_back(i == n - 1 ? b : (i == 0 ? a : std::exp(la + (lb - la) * i / (n - 1))));
    return xs;
}

RealFunction function_by_name(const std::string& name) {
    if (name == "zero") return zero_function();
    for (const auto& n : catalog_names()) {
        if (n == name) return catalog(name);
    }
    throw NotFoundError("unknown function: " + name);
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string output_dir(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("HARTLEY_OUTPUT_DIR")) return env;
    return {};
}

// stdout always; a copy under the output directory when one is set
void emit(const std::string& text, const std::string& dir, const std::string& file) {
    std::cout << text;
    std::cout.flush();
    if (dir.empty()) return;
    std::filesystem::create_directories(dir);
    std::ofstream out(std::filesystem::path(dir) / file);
    if (!out) throw UsageError("cannot write to " + dir);
    out << text;
}

struct Options {
    std::string out_dir;
    double abs_tol = 0.0;
    double rel_tol = 0.0;
    double tau_step = 0.0;
    double tau_extent = 0.0;
};

suites::RunConfig run_config(const Options& o) {
    suites::RunConfig cfg;
    if (o.abs_tol > 0) cfg.quadrature.abs_tol = o.abs_tol;
    if (o.rel_tol > 0) cfg.quadrature.rel_tol = o.rel_tol;
    if (o.tau_step > 0) cfg.tau.step = o.tau_step;
    if (o.tau_extent > 0) cfg.tau.extent = o.tau_extent;
    cfg.quadrature.validate();
    return cfg;
}

int cmd_transform(const Options& o, const std::string& op_name, const std::string& fn, const std::string& route_name,
                  bool inverse, const std::string& range) {
    const auto op = transforms::operator_from_name(op_name);
    const auto route = transforms::route_from_name(route_name);
    const auto f = function_by_name(fn);
    const auto xs = parse_range(range);
    const auto cfg = run_config(o);
    const auto dir = inverse ? transforms::Direction::inverse : transforms::Direction::forward;
    if (!transforms::has_route(op, dir, route)) {
        throw CapabilityError(op_name + " has no " + route_name + " route in this direction");
    }
    const auto values = transforms::apply(op, dir, f, route, xs, cfg.quadrature);
    std::string csv = "x,value\n";
    for (std::size_t i = 0; i < xs.size(); ++i) csv += num(xs[i]) + "," + num(values[i]) + "\n";
    emit(csv, output_dir(o.out_dir),
         "transform_" + op_name + (inverse ? "_inverse_" : "_") + fn + "_" + route_name + ".csv");
    return 0;
}

int cmd_verify(const Options& o, const std::string& suite, const std::string& format) {
    if (!suites::is_suite(suite)) throw NotFoundError("unknown suite: " + suite);
    if (format != "json" && format != "text") throw UsageError("format must be json or text");
    const auto rep = suites::run_suite(suite, run_config(o));
    std::string text;
    if (format == "json") {
        text = rep.json() + "\n";
    } else {
        for (const auto& c : rep.checks) {
            text += std::string(c.pass ? "pass " : "FAIL ") + c.name + " value " + num(c.value) + " threshold " +
                    num(c.threshold) + "\n";
        }
    }
    emit(text, output_dir(o.out_dir), "verify_" + suite + (format == "json" ? ".json" : ".txt"));
    return rep.passed() ? 0 : exit_verify_failed;
}

int cmd_solve(const Options& o, const std::string& eq_name, const std::string& g_name, const std::string& range) {
    using namespace equations;
    const auto eq = equation_from_name(eq_name);
    if (eq != EquationId::EQ_3_1 && eq != EquationId::EQ_HILB_C && eq != EquationId::EQ_HILB_S) {
        throw CapabilityError(eq_name + " is not solved by this command; use stieltjes2k, hilbert2k-c or hilbert2k-s");
    }
    const auto xs = parse_range(range);
    const auto cfg = run_config(o).quadrature;

    RealFunction g;
    const std::string suffix = "-image";
    if (g_name.size() > suffix.size() && g_name.compare(g_name.size() - suffix.size(), suffix.size(), suffix) == 0) {
        g = equation_image(eq, function_by_name(g_name.substr(0, g_name.size() - suffix.size())));
    } else {
        g = function_by_name(g_name);
    }

    RealFunction sol;
    sol.label = "solution";
    // solutions of these equations decay algebraically whatever g does
    sol.decay = quad::DecayHint::algebraic(1.0);
    sol.identically_zero = g.identically_zero;
    if (eq == EquationId::EQ_3_1) {
        sol.evaluator = [g, cfg](double x) { return solve_stieltjes_second_kind(g, x, cfg); };
    } else {
        const auto v = eq == EquationId::EQ_HILB_C ? HilbertVariant::c : HilbertVariant::s;
        sol.evaluator = [g, v, cfg](double x) { return solve_hilbert_second_kind(g, v, x, cfg); };
    }
    const auto res = residual_values(eq, sol, {}, xs, &g, cfg);
    std::string csv = "x,f,residual\n";
    for (std::size_t i = 0; i < xs.size(); ++i) csv += num(xs[i]) + "," + num(sol(xs[i])) + "," + num(res[i]) + "\n";
    emit(csv, output_dir(o.out_dir), "solve_" + eq_name + "_" + g_name + ".csv");
    return 0;
}

int cmd_list() {
    std::cout << "operators:";
    for (auto op : transforms::all_operators()) std::cout << ' ' << transforms::info(op).name;
    std::cout << "\nroutes: direct kernel spectral\nfunctions: zero";
    for (const auto& n : catalog_names()) std::cout << ' ' << n;
    std::cout << "\nequations: stieltjes2k hilbert2k-c hilbert2k-s\nsuites: all";
    for (const auto& s : suites::suite_names()) std::cout << ' ' << s;
    std::cout << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"half-Hartley transform toolkit"};
    app.require_subcommand(1);
    Options opts;
    app.add_option("--output-dir", opts.out_dir, "also write reports here (default: $HARTLEY_OUTPUT_DIR)");
    app.add_option("--abs-tol", opts.abs_tol, "quadrature absolute tolerance");
    app.add_option("--rel-tol", opts.rel_tol, "quadrature relative tolerance");
    app.add_option("--tau-step", opts.tau_step, "Mellin tau step");
    app.add_option("--tau-extent", opts.tau_extent, "Mellin tau extent");

    std::string op, fn, route = "kernel", range = "0.25:4:16", suite, format = "json", eq, g;
    bool inverse = false;

    auto* transform = app.add_subcommand("transform", "apply an operator, x,value CSV");
    transform->add_option("--op", op, "operator")->required();
    transform->add_option("--fn", fn, "catalog function or zero")->required();
    transform->add_option("--route", route, "direct, kernel or spectral");
    transform->add_option("--x", range, "start:stop:count, geometric");
    transform->add_flag("--inverse", inverse, "apply the inverse operator");

    auto* verify = app.add_subcommand("verify", "run a verification suite, JSON report");
    verify->add_option("suite", suite, "suite name or all")->required();
    verify->add_option("--format", format, "json or text");

    auto* solve = app.add_subcommand("solve", "solve a second-kind equation, x,f,residual CSV");
    solve->add_option("--eq", eq, "stieltjes2k, hilbert2k-c or hilbert2k-s")->required();
    solve->add_option("--g", g, "right side: catalog function, zero or <name>-image")->required();
    solve->add_option("--x", range, "start:stop:count, geometric");

    auto* list = app.add_subcommand("list", "print registry names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    try {
        if (transform->parsed()) return cmd_transform(opts, op, fn, route, inverse, range);
        if (verify->parsed()) return cmd_verify(opts, suite, format);
        if (solve->parsed()) return cmd_solve(opts, eq, g, range);
        if (list->parsed()) return cmd_list();
    } catch (const NotFoundError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const CapabilityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return exit_numeric;
    }
    return exit_usage;
}
