#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "hartley/errors.hpp"
#include "hartley/equations.hpp"
#include "hartley/funcspace.hpp"
#include "hartley/transforms.hpp"

using namespace hartley;
using namespace hartley::equations;

namespace {

const std::vector<double> probe_x{0.5, 1.0, 2.0};

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

double stieltjes_image_exp(double x) { return std::exp(-x) + ee1(x) / M_PI; }
double hilbert_c_exp(double x) { return std::exp(-x) + (eei(x) + ee1(x)) / M_PI; }
double hilbert_s_exp(double x) { return std::exp(-x) + (-eei(x) + ee1(x)) / M_PI; }

// int_0^inf log(x/t)/(x-t) e^{-t} dt by Simpson in u = log t
double log_difference_exp(double x) {
    const double a = -40.0, b = std::log(60.0);
    const int n = 40000;
    const double h = (b - a) / n;
    auto g = [x](double u) {
        const double t = std::exp(u);
        const double k = std::abs(t - x) < 1e-12 * x ? 1.0 / x : std::log(x / t) / (x - t);
        return k * std::exp(-t) * t;
    };
    double s = g(a) + g(b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * g(a + i * h);
    return s * h / 3.0;
}

RealFunction closed(const std::string& label, double (*fn)(double)) {
    RealFunction f;
    f.label = label;
    f.evaluator = fn;
    f.decay = quad::DecayHint::algebraic(1.0);
    return f;
}

mellin::MellinSpectrum odd_profile(mellin::MellinSpectrum phi) {
    for (int k = -phi.half_count; k <= phi.half_count; ++k) phi.at(k) *= mellin::cplx(0.0, phi.tau(k));
    return phi;
}

}  // namespace

TEST_CASE("equation registry") {
    CHECK(all_equations().size() == 14);
    for (auto eq : all_equations()) CHECK(equation_from_name(info(eq).name) == eq);
    CHECK(equation_from_name("stieltjes2k") == EquationId::EQ_3_1);
    CHECK(equation_from_name("hilbert2k-c") == EquationId::EQ_HILB_C);
    CHECK(equation_from_name("HILBERT2K-S") == EquationId::EQ_HILB_S);
    CHECK_THROWS_AS(equation_from_name("eq_9_9"), NotFoundError);
    CHECK(info(EquationId::EQ_3_10).symmetry == Symmetry::odd);
    CHECK(info(EquationId::EQ_3_13).symmetry == Symmetry::odd);
    for (auto eq : {EquationId::EQ_3_5, EquationId::EQ_3_6, EquationId::EQ_3_18, EquationId::EQ_3_21, EquationId::EQ_3_22,
                    EquationId::EQ_3_27})
        CHECK(info(eq).symmetry == Symmetry::even);
    CHECK(info(EquationId::EQ_3_5).denominator == mellin::MultiplierId::D_3_7);
    CHECK(info(EquationId::EQ_3_6).denominator == mellin::MultiplierId::D_3_8);
    CHECK_FALSE(info(EquationId::EQ_3_1).denominator.has_value());
    for (auto mu : {MuEquationId::MU_3_12, MuEquationId::MU_3_24, MuEquationId::MU_3_29}) CHECK(mu_from_name(mu_name(mu)) == mu);
    CHECK_THROWS_AS(mu_from_name("mu"), NotFoundError);
}

TEST_CASE("stieltjes equation of the second kind") {
    const auto f = catalog("exp");
    CHECK(apply_stieltjes_second_kind(f, 1.0) == doctest::Approx(0.557702702198542005).epsilon(1e-10));
    CHECK(apply_stieltjes_second_kind(zero_function(), 1.0) == 0.0);
    CHECK(solve_stieltjes_second_kind(zero_function(), 1.0) == 0.0);

    const auto g = closed("exp-image", stieltjes_image_exp);
    const auto img = equation_image(EquationId::EQ_3_1, f);
    for (double x : probe_x) {
        CAPTURE(x);
        CHECK(apply_stieltjes_second_kind(f, x) == doctest::Approx(stieltjes_image_exp(x)).epsilon(1e-10));
        CHECK(img(x) == doctest::Approx(stieltjes_image_exp(x)).epsilon(1e-12));
        CHECK(solve_stieltjes_second_kind(g, x) == doctest::Approx(std::exp(-x)).epsilon(1e-8));
    }
    CHECK(residual(EquationId::EQ_3_1, f, {}, probe_x, &g) < 1e-9);
    CHECK(residual(EquationId::EQ_3_2, g, {}, probe_x, &f) < 1e-9);

    const auto g2 = catalog("gauss");
    const auto sum = linear_combination(1.0, g, 1.0, g2);
    const double lhs = solve_stieltjes_second_kind(sum, 1.0);
    const double rhs = solve_stieltjes_second_kind(g, 1.0) + solve_stieltjes_second_kind(g2, 1.0);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
}

TEST_CASE("stieltjes image without a closed reference") {
    const auto f = catalog("gauss");
    const auto img = equation_image(EquationId::EQ_3_1, f);
    for (double x : probe_x) CHECK(img(x) == doctest::Approx(apply_stieltjes_second_kind(f, x)).epsilon(1e-7));
    const auto back = equation_image(EquationId::EQ_3_2, img);
    for (double x : probe_x) CHECK(back(x) == doctest::Approx(f(x)).epsilon(1e-6).scale(1.0));
    CHECK_THROWS_AS(equation_image(EquationId::EQ_3_5, f), CapabilityError);
}

TEST_CASE("hilbert equations of the second kind") {
    const auto f = catalog("exp");
    struct Case {
        HilbertVariant v;
        EquationId eq;
        double (*oracle)(double);
    };
    for (const auto& cs : {Case{HilbertVariant::c, EquationId::EQ_HILB_C, hilbert_c_exp},
                           Case{HilbertVariant::s, EquationId::EQ_HILB_S, hilbert_s_exp}}) {
        const auto g = closed("exp-image", cs.oracle);
        for (double x : probe_x) {
            CAPTURE(x);
            CHECK(apply_hilbert_second_kind(f, cs.v, x) == doctest::Approx(cs.oracle(x)).epsilon(1e-10));
            CHECK(solve_hilbert_second_kind(g, cs.v, x) == doctest::Approx(std::exp(-x)).epsilon(1e-8));
        }
        CHECK(residual(cs.eq, f, {}, {1.0}, &g) < 1e-9);
        const auto img = equation_image(cs.eq, f);
        CHECK(img(1.0) == doctest::Approx(cs.oracle(1.0)).epsilon(1e-8));
        CHECK(solve_hilbert_second_kind(zero_function(), cs.v, 1.0) == 0.0);
    }
    CHECK(hilbert_solution_kernel(HilbertVariant::c, 1.0, 2.0) ==
          doctest::Approx(-hilbert_solution_kernel(HilbertVariant::c, 2.0, 1.0)));
    CHECK(hilbert_solution_kernel(HilbertVariant::c, 1.0, 2.0) == doctest::Approx(std::sqrt(2.0) / (3.0 * M_PI)));
    CHECK(hilbert_solution_kernel(HilbertVariant::s, 1.0, 2.0) ==
          doctest::Approx(-hilbert_solution_kernel(HilbertVariant::c, 1.0, 2.0)));
}

TEST_CASE("solutions built from even phi") {
    const auto profiles = even_profiles();
    REQUIRE(profiles.size() == 3);
    for (const auto& p : profiles) {
        CHECK(symmetry_defect(p, Symmetry::even) == 0.0);
        CHECK(p.asymmetry() == 0.0);
    }
    for (auto eq : {EquationId::EQ_3_3, EquationId::EQ_3_4, EquationId::EQ_3_5, EquationId::EQ_3_6}) {
        for (std::size_t i = 0; i < profiles.size(); ++i) {
            CAPTURE(info(eq).name);
            CAPTURE(i);
            const auto f = build_solution_from_phi(eq, profiles[i]);
            CHECK(std::abs(f(1.0)) > 1e-3);
            CHECK(residual(eq, f, {}, probe_x) < 1e-9);
        }
    }
    CHECK(build_solution_from_phi(EquationId::EQ_3_5, mellin::zero_spectrum()).identically_zero);
}

TEST_CASE("symmetry projection") {
    std::mt19937 rng(7);
    std::normal_distribution<double> n01;
    mellin::MellinSpectrum phi = mellin::zero_spectrum(mellin::TauGrid{0.5, 10.0});
    for (auto& v : phi.values) v = {n01(rng), n01(rng)};
    const auto even = symmetrize(phi, Symmetry::even);
    const auto odd = symmetrize(phi, Symmetry::odd);
    for (int k = -phi.half_count; k <= phi.half_count; ++k) {
        CHECK(even.at(k) == 0.5 * (phi.at(k) + phi.at(-k)));
        CHECK(even.at(k) == even.at(-k));
        CHECK(odd.at(k) == -odd.at(-k));
        CHECK(std::abs(even.at(k) + odd.at(k) - phi.at(k)) < 1e-15);
    }
    CHECK(symmetry_defect(even, Symmetry::even) == 0.0);
    CHECK(symmetry_defect(odd, Symmetry::odd) == 0.0);
    CHECK(symmetry_defect(phi, Symmetry::even) > 0.1);
    CHECK(symmetrize(phi, Symmetry::none).values == phi.values);
}

TEST_CASE("phi round trip through the denominator") {
    const auto base = even_profiles()[1];
    const double lam = 0.7;
    for (auto eq : all_equations()) {
        const auto& e = info(eq);
        if (!e.denominator) continue;
        CAPTURE(e.name);
        const auto phi = e.symmetry == Symmetry::odd ? odd_profile(base) : base;
        std::optional<double> l;
        if (e.needs_lambda) l = lam;
        const auto f = build_solution_from_phi(eq, phi, l);
        const auto back = recover_phi(eq, f, l);
        CHECK(symmetry_defect(back, e.symmetry) < 1e-8);
    }
}

TEST_CASE("phi rejection") {
    const auto even = even_profiles()[0];
    const auto odd = odd_profile(even);
    CHECK_THROWS_AS(build_solution_from_phi(EquationId::EQ_3_5, odd), DomainError);
    CHECK_THROWS_AS(build_solution_from_phi(EquationId::EQ_3_10, even, 0.5), DomainError);
    CHECK_THROWS_AS(build_solution_from_phi(EquationId::EQ_3_10, odd), ConfigError);
    CHECK_THROWS_AS(build_solution_from_phi(EquationId::EQ_3_10, odd, 2.0), DomainError);
    CHECK_THROWS_AS(build_solution_from_phi(EquationId::EQ_3_18, even, 2.5), DomainError);
    CHECK_THROWS_AS(build_solution_from_phi(EquationId::EQ_3_27, even, 2.6), DomainError);
    CHECK_NOTHROW(build_solution_from_phi(EquationId::EQ_3_27, even, 2.4));
    CHECK_THROWS_AS(build_solution_from_phi(EquationId::EQ_3_1, even), CapabilityError);
}

TEST_CASE("residuals of homogeneous equations") {
    const auto z = zero_function();
    for (auto eq : all_equations()) {
        std::optional<double> l;
        if (info(eq).needs_lambda) l = 1.0;
        CHECK(residual(eq, z, l, probe_x) == 0.0);
    }
    CHECK_THROWS_AS(residual(EquationId::EQ_3_18, catalog("exp"), {}, probe_x), ConfigError);
    CHECK_THROWS_AS(residual(EquationId::EQ_3_5, catalog("exp"), {}, {0.0}), DomainError);

    const auto f = build_solution_from_phi(EquationId::EQ_3_18, even_profiles()[0], 1.0);
    const auto f2 = scaled(f, 2.0);
    const auto r1 = residual_values(EquationId::EQ_3_18, f, 1.0, probe_x);
    const auto r2 = residual_values(EquationId::EQ_3_18, f2, 1.0, probe_x);
    for (std::size_t i = 0; i < r1.size(); ++i) CHECK(r2[i] == doctest::Approx(2.0 * r1[i]).epsilon(1e-8).scale(1e-12));

    const auto e = catalog("exp");
    const auto v = residual_values(EquationId::EQ_3_21, e, 0.5, {1.0});
    const double hh2fc = transforms::forward(transforms::OperatorId::HH2FC, e, transforms::Route::kernel, 1.0);
    CHECK(v[0] == doctest::Approx(hh2fc - 0.5 * std::exp(-1.0)));
}

TEST_CASE("mu equations") {
    const auto e = catalog("exp");
    CHECK(mu_residual(MuEquationId::MU_3_12, zero_function(), 1.0, probe_x) == 0.0);
    CHECK(mu_values(MuEquationId::MU_3_12, e, 0.0, {1.0})[0] == doctest::Approx(1.11540540439708401).epsilon(1e-10));

    const auto grid = default_grid().nodes();
    std::vector<double> xs;
    for (std::size_t i = 0; i < grid.size(); i += 8) xs.push_back(grid[i]);
    double worst = 0.0;
    for (double x : xs) {
        worst = std::max(worst, std::abs(transforms::forward(transforms::OperatorId::HH2, e, transforms::Route::kernel, x)));
    }
    CHECK(mu_residual(MuEquationId::MU_3_12, e, 0.0, xs) == doctest::Approx(worst).epsilon(1e-6));

    std::mt19937 rng(11);
    std::uniform_real_distribution<double> lam(-std::sqrt(2.0), std::sqrt(2.0));
    for (int i = 0; i < 8; ++i) CHECK(mu_values(MuEquationId::MU_3_12, e, lam(rng), {1.0})[0] > 0.0);

    for (double x : {0.5, 1.0, 3.0}) {
        CAPTURE(x);
        const double st = ee1(x);
        const double ld = log_difference_exp(x);
        const double m = std::exp(-x);
        const double l = 0.8;
        CHECK(mu_values(MuEquationId::MU_3_24, e, l, {x})[0] ==
              doctest::Approx((4.0 - l * l) * m + 8.0 / M_PI * st + 4.0 / (M_PI * M_PI) * ld).epsilon(1e-9));
        CHECK(mu_values(MuEquationId::MU_3_29, e, l, {x})[0] ==
              doctest::Approx((2.0 * M_PI - l * l) * m + 4.0 * st + 2.0 / M_PI * ld).epsilon(1e-9));
    }
}

TEST_CASE("triviality margins") {
    CHECK(triviality_margin(MuEquationId::MU_3_12, 0.0) == doctest::Approx(2.0));
    CHECK(std::abs(triviality_margin(MuEquationId::MU_3_12, std::sqrt(2.0))) < 1e-10);
    CHECK(triviality_margin(MuEquationId::MU_3_24, 1.9) == doctest::Approx(0.39));
    CHECK(std::abs(triviality_margin(MuEquationId::MU_3_24, 2.0)) < 1e-10);
    CHECK(std::abs(triviality_margin(MuEquationId::MU_3_29, std::sqrt(2.0 * M_PI))) < 1e-10);

    for (auto mu : {MuEquationId::MU_3_12, MuEquationId::MU_3_24, MuEquationId::MU_3_29}) {
        const double t = mu_threshold(mu);
        double prev = triviality_margin(mu, 0.0);
        for (int i = 1; i <= 50; ++i) {
            const double l = 1.5 * t * i / 50.0;
            const double m = triviality_margin(mu, l);
            CHECK(m < prev);
            CHECK(triviality_margin(mu, -l) == m);
            CHECK((m > 0.0) == (l < t));
            prev = m;
        }
        for (double tau : {0.0, 0.3, 2.0, 39.0}) CHECK(mu_symbol(mu, 0.5, tau) >= triviality_margin(mu, 0.5));
    }
}

TEST_CASE("residual csv") {
    const auto csv = format_residual_csv({0.5, 1.0}, {1e-3, -2.5});
    CHECK(csv == "x,residual\n0.5,0.001\n1,-2.5\n");
    CHECK_THROWS_AS(format_residual_csv({1.0}, {}), ConfigError);
}
