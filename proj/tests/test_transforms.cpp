#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "hartley/errors.hpp"
#include "hartley/funcspace.hpp"
#include "hartley/kernels.hpp"
#include "hartley/transforms.hpp"

using namespace hartley;
using namespace hartley::transforms;

namespace {

const double c = std::sqrt(2.0 / M_PI);
const std::vector<double> probe_x{0.25, 0.5, 1.0, 2.0, 4.0};

// e^{x} E1(x) and e^{-x} Ei(x); libstdc++ expint degrades for large |x|, so
// large arguments use the asymptotic series cut at its smallest term
double ee1(double x) {
    if (x < 40.0) return std::exp(x) * -std::expint(-x);
    double term = 1.0 / x, sum = 0.0;
    for (int k = 1; k < x && std::abs(term) > 1e-18 * sum; ++k) sum += term, term *= -k / x;
    return sum;
}
double eei(double x) {
    if (x < 40.0) return std::exp(-x) * std::expint(x);
    double term = 1.0 / x, sum = 0.0;
    for (int k = 1; k < x && term > 1e-18 * sum; ++k) sum += term, term *= k / x;
    return sum;
}

// closed forms for f = e^{-t}
double fc_exp(double x) { return c / (1.0 + x * x); }
double fs_exp(double x) { return c * x / (1.0 + x * x); }
double hh_exp(double x) { return c * (1.0 + x) / (1.0 + x * x); }
double hh2_exp(double x) { return 2.0 * std::exp(-x) + 2.0 / M_PI * ee1(x); }
double fcfs_exp(double x) { return (-eei(x) + ee1(x)) / M_PI; }
double hhfc_exp(double x) { return std::exp(-x) + (eei(x) + ee1(x)) / M_PI; }
double hhfs_exp(double x) { return std::exp(-x) + (-eei(x) + ee1(x)) / M_PI; }

RealFunction closed(const std::string& label, double (*fn)(double), quad::DecayHint decay) {
    RealFunction f;
    f.label = label;
    f.evaluator = fn;
    f.decay = decay;
    return f;
}

double max_dev(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace

TEST_CASE("operator registry") {
    CHECK(all_operators().size() == 11);
    CHECK(composite_operators().size() == 7);
    for (auto op : all_operators()) {
        CHECK(operator_from_name(info(op).name) == op);
        CHECK(has_route(op, Direction::forward, Route::kernel));
        CHECK(has_route(op, Direction::forward, Route::spectral));
        REQUIRE(info(op).bounds.has_value());
        CHECK(info(op).bounds->lower <= info(op).bounds->upper);
    }
    CHECK_THROWS_AS(operator_from_name("bogus"), NotFoundError);
    CHECK_THROWS_AS(route_from_name("fast"), NotFoundError);
    CHECK(route_from_name(route_name(Route::spectral)) == Route::spectral);
    CHECK_FALSE(has_route(OperatorId::HH, Direction::inverse, Route::direct));
    CHECK_FALSE(has_route(OperatorId::HH2, Direction::inverse, Route::direct));
    CHECK_THROWS_AS(inverse(OperatorId::HH, catalog("exp"), Route::direct, 1.0), CapabilityError);
}

TEST_CASE("forward values on exp") {
    const auto f = catalog("exp");
    for (auto r : {Route::direct, Route::kernel, Route::spectral}) {
        CAPTURE(route_name(r));
        CHECK(forward(OperatorId::FC, f, r, 1.0) == doctest::Approx(0.3989422804014327).epsilon(1e-9));
    }
    CHECK(forward(OperatorId::HH, f, Route::direct, 1.0) == doctest::Approx(c).epsilon(1e-10));
    CHECK(forward(OperatorId::HH2, f, Route::kernel, 1.0) == doctest::Approx(1.11540540439708401).epsilon(1e-10));

    struct Case {
        OperatorId op;
        double (*oracle)(double);
    };
    const Case cases[] = {{OperatorId::FC, fc_exp},     {OperatorId::FS, fs_exp},     {OperatorId::HH, hh_exp},
                          {OperatorId::FCFS, fcfs_exp}, {OperatorId::HH2, hh2_exp},   {OperatorId::HHFC, hhfc_exp},
                          {OperatorId::HHFS, hhfs_exp}};
    for (const auto& cs : cases) {
        for (double x : probe_x) {
            CAPTURE(info(cs.op).name);
            CAPTURE(x);
            CHECK(forward(cs.op, f, Route::kernel, x) == doctest::Approx(cs.oracle(x)).epsilon(1e-8));
        }
    }
}

TEST_CASE("zero input") {
    const auto z = zero_function();
    for (auto op : all_operators()) {
        for (auto r : {Route::direct, Route::kernel, Route::spectral}) {
            if (has_route(op, Direction::forward, r)) CHECK(forward(op, z, r, 1.3) == 0.0);
            if (has_route(op, Direction::inverse, r)) CHECK(inverse(op, z, r, 1.3) == 0.0);
        }
    }
    CHECK(std::isnan(norm_ratio(OperatorId::HH2, z)));
}

TEST_CASE("inverse roundtrips") {
    const auto hh = closed("hh-exp", hh_exp, quad::DecayHint::algebraic(1.0));
    CHECK(inverse(OperatorId::HH, hh, Route::kernel, 0.5) == doctest::Approx(std::exp(-0.5)).epsilon(1e-6));
    const auto hh2 = closed("hh2-exp", hh2_exp, quad::DecayHint::algebraic(1.0));
    CHECK(inverse(OperatorId::HH2, hh2, Route::kernel, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-6));
    const auto fcfs = closed("fcfs-exp", fcfs_exp, quad::DecayHint::algebraic(1.0));
    for (auto r : {Route::direct, Route::kernel, Route::spectral}) {
        CAPTURE(route_name(r));
        CHECK(inverse(OperatorId::FCFS, fcfs, r, 2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-5));
    }
}

TEST_CASE("kernel values") {
    CHECK(-M_PI * M_PI * kernel_eval(OperatorId::HH2, Direction::inverse, 2.0, 2.0) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(-M_PI * M_PI * kernel_eval(OperatorId::HH2, Direction::inverse, 2.0, 2.0 * (1 + 1e-9)) ==
          doctest::Approx(0.25).epsilon(1e-8));
    CHECK(kernel_eval(OperatorId::HH, Direction::forward, 1.0, 0.0) == doctest::Approx(c));
    CHECK(kernel_eval(OperatorId::HH, Direction::inverse, 1.0, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(kernel_eval(OperatorId::HH, Direction::forward, 2.0, 0.7) == doctest::Approx(c * (std::cos(1.4) + std::sin(1.4))));
    CHECK_THROWS_AS(kernel_eval(OperatorId::FCFS, Direction::forward, 1.0, 1.0), DomainError);
    CHECK(kernel_eval(OperatorId::HHFC, Direction::inverse, 1.0, 2.0) ==
          doctest::Approx(-kernel_eval(OperatorId::HHFC, Direction::inverse, 2.0, 1.0)));
}

TEST_CASE("three-route agreement") {
    for (const char* name : {"exp", "gauss"}) {
        const auto f = catalog(name);
        for (auto op : composite_operators()) {
            CAPTURE(name);
            CAPTURE(info(op).name);
            const auto rep = route_report(op, Direction::forward, f, probe_x);
            CHECK(rep.routes.size() == 3);
            CHECK(rep.max_deviation < 1e-6);
        }
    }
}

TEST_CASE("route report csv") {
    const auto rep = route_report(OperatorId::HH, Direction::inverse, catalog("exp"), {1.0});
    const auto csv = rep.csv();
    CHECK(csv.rfind("x,route_direct,route_kernel,route_spectral,max_dev\n", 0) == 0);
    CHECK(csv.find(",nan,") != std::string::npos);
}

TEST_CASE("norm ratios") {
    CHECK(norm_ratio(OperatorId::HH2, catalog("exp")) == doctest::Approx(3.33060928043813790).epsilon(1e-6));
    CHECK(norm_ratio(OperatorId::HHFC, catalog("exp")) == doctest::Approx(1.80920964642994392).epsilon(1e-6));
    for (const auto& name : catalog_names()) {
        const auto f = catalog(name);
        CAPTURE(name);
        for (auto op : {OperatorId::FC, OperatorId::FS, OperatorId::FCFS}) CHECK(std::abs(norm_ratio(op, f) - 1.0) < 1e-4);
        const double r = norm_ratio(OperatorId::HH2, f);
        CHECK(r >= 2.0 - 1e-6);
        CHECK(r <= 4.0 + 1e-6);
        for (auto op : composite_operators()) {
            const double q = norm_ratio(op, f);
            CHECK(q >= info(op).bounds->lower - 1e-6);
            CHECK(q <= info(op).bounds->upper + 1e-6);
        }
    }
}

TEST_CASE("inverse routes agree") {
    const auto f = catalog("exp");
    for (auto op : {OperatorId::HH2FC, OperatorId::HH2FS, OperatorId::HHFCFS, OperatorId::HHFC, OperatorId::HHFS}) {
        CAPTURE(info(op).name);
        const auto g = image(op, f);
        const auto k = apply(op, Direction::inverse, g, Route::kernel, probe_x);
        const auto d = apply(op, Direction::inverse, g, Route::direct, probe_x);
        CHECK(max_dev(k, d) < 1e-6);
        for (std::size_t i = 0; i < probe_x.size(); ++i) CHECK(k[i] == doctest::Approx(std::exp(-probe_x[i])).epsilon(1e-6));
    }
}

TEST_CASE("linearity over random combinations") {
    std::mt19937 rng(20260);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    std::uniform_real_distribution<double> lx(std::log(0.2), std::log(5.0));
    const auto names = catalog_names();
    for (int trial = 0; trial < 6; ++trial) {
        const auto f = catalog(names[rng() % 3]);
        const auto g = catalog(names[rng() % 3]);
        const double a = coef(rng), b = coef(rng), x = std::exp(lx(rng));
        const auto op = composite_operators()[rng() % composite_operators().size()];
        CAPTURE(info(op).name);
        const auto h = linear_combination(a, f, b, g);
        const double lhs = forward(op, h, Route::kernel, x);
        const double rhs = a * forward(op, f, Route::kernel, x) + b * forward(op, g, Route::kernel, x);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-7).scale(1.0));
    }
}

TEST_CASE("psi kernels") {
    using quad::Trig;
    CHECK(kernels::psi_series_kernel(0.0, Trig::cos) == 0.0);
    CHECK_THROWS_AS(kernels::psi_series_kernel(30.5, Trig::cos), RangeNotice);
    for (double u : {2.0, 9.0, 20.0, 29.9}) {
        for (auto kind : {Trig::cos, Trig::sin}) {
            const double trig = kind == Trig::cos ? std::cos(u) : std::sin(u);
            const double integral = c * (0.5 * trig - kernels::log_sqrt_transform(u, kind) / (M_PI * M_PI));
            CAPTURE(u);
            CHECK(kernels::psi_series_kernel(u, kind) == doctest::Approx(integral).epsilon(1e-10).scale(1.0));
        }
    }
    CHECK(kernels::psi_kernel(35.0, Trig::sin) ==
          doctest::Approx(0.5 * c * std::sin(35.0) + kernels::psi_kernel_remainder(35.0, Trig::sin)));
}

TEST_CASE("log kernels") {
    CHECK(kernels::log_ratio_kernel(3.0, 3.0) == doctest::Approx(1.0 / 6.0));
    CHECK(kernels::log_difference_kernel(3.0, 3.0) == doctest::Approx(1.0 / 3.0));
    CHECK(kernels::log_hilbert_kernel(3.0, 3.0) == doctest::Approx(1.0 / 6.0));
    const double x = 1.5, t = 0.4;
    CHECK(kernels::log_ratio_kernel(x, t) == doctest::Approx(std::sqrt(x * t) * std::log(x / t) / (x * x - t * t)));
    CHECK(kernels::log_difference_kernel(x, t) == doctest::Approx(std::log(x / t) / (x - t)));
    CHECK(kernels::log_hilbert_kernel(x, t) == doctest::Approx(t * std::log(x / t) / (x * x - t * t)));
    CHECK_THROWS_AS(kernels::log_ratio_kernel(0.0, 1.0), DomainError);
}
