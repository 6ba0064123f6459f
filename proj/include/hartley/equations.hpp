#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hartley/funcspace.hpp"
#include "hartley/mellin.hpp"
#include "hartley/quadrature.hpp"
#include "hartley/transforms.hpp"

namespace hartley::equations {

enum class EquationId {
    EQ_3_1,
    EQ_3_2,
    EQ_HILB_C,
    EQ_HILB_S,
    EQ_3_3,
    EQ_3_4,
    EQ_3_5,
    EQ_3_6,
    EQ_3_10,
    EQ_3_13,
    EQ_3_18,
    EQ_3_21,
    EQ_3_22,
    EQ_3_27,
};

enum class MuEquationId { MU_3_12, MU_3_24, MU_3_29 };

enum class Symmetry { none, even, odd };

struct EquationInfo {
    EquationId id;
    std::string name;
    std::optional<mellin::MultiplierId> denominator;
    Symmetry symmetry;
    bool homogeneous;
    bool needs_lambda;
    std::string lambda_domain;
};

const std::vector<EquationId>& all_equations();
const EquationInfo& info(EquationId eq);
// accepts the enum spelling (eq_3_5) and the aliases stieltjes2k, hilbert2k-c, hilbert2k-s
EquationId equation_from_name(const std::string& name);
MuEquationId mu_from_name(const std::string& name);
std::string mu_name(MuEquationId mu);

// f + (1/pi) int f/(x+t)
double apply_stieltjes_second_kind(const RealFunction& f, double x, const quad::QuadratureConfig& cfg = transforms::default_config());
// g - (2/pi^2) int sqrt(xt) log(x/t)/(x^2-t^2) g
double solve_stieltjes_second_kind(const RealFunction& g, double x, const quad::QuadratureConfig& cfg = transforms::default_config());

enum class HilbertVariant { c, s };

// variant c: f + (2/pi) PV int x f/(x^2-t^2); variant s: f + (2/pi) PV int t f/(t^2-x^2)
double apply_hilbert_second_kind(const RealFunction& f, HilbertVariant v, double x,
                                 const quad::QuadratureConfig& cfg = transforms::default_config());
// g/2 + (1/pi) PV int sqrt(xt)/(t^2-x^2) g for c, with x^2-t^2 for s
double solve_hilbert_second_kind(const RealFunction& g, HilbertVariant v, double x,
                                 const quad::QuadratureConfig& cfg = transforms::default_config());
double hilbert_solution_kernel(HilbertVariant v, double x, double t);

// Right-hand side produced by f under an inhomogeneous equation, as a spectrum-backed function.
// EQ_3_1 uses the closed Stieltjes reference when f carries one.
RealFunction equation_image(EquationId eq, const RealFunction& f);

// Projection onto the even or odd part in tau.
mellin::MellinSpectrum symmetrize(const mellin::MellinSpectrum& phi, Symmetry s);

// f = inverse Mellin of phi / D. Rejects inadmissible lambda and phi with no component of the required symmetry.
RealFunction build_solution_from_phi(EquationId eq, const mellin::MellinSpectrum& phi, std::optional<double> lambda = {});

// phi = f* D on the tau grid of f's spectrum
mellin::MellinSpectrum recover_phi(EquationId eq, const RealFunction& f, std::optional<double> lambda = {});

// max |phi(-tau) -/+ phi(tau)| relative to the peak
double symmetry_defect(const mellin::MellinSpectrum& phi, Symmetry s);

// LHS - RHS at each x. Inhomogeneous equations take their right side from rhs.
std::vector<double> residual_values(EquationId eq, const RealFunction& f, std::optional<double> lambda,
                                    const std::vector<double>& xs, const RealFunction* rhs = nullptr,
                                    const quad::QuadratureConfig& cfg = transforms::default_config());
double residual(EquationId eq, const RealFunction& f, std::optional<double> lambda, const std::vector<double>& xs,
                const RealFunction* rhs = nullptr, const quad::QuadratureConfig& cfg = transforms::default_config());

// left side of the mu-equation at each x
std::vector<double> mu_values(MuEquationId mu, const RealFunction& m, double lambda, const std::vector<double>& xs,
                              const quad::QuadratureConfig& cfg = transforms::default_config());
double mu_residual(MuEquationId mu, const RealFunction& m, double lambda, const std::vector<double>& xs,
                   const quad::QuadratureConfig& cfg = transforms::default_config());

// scalar symbol on the critical line, oriented positive when only the trivial solution exists
double mu_symbol(MuEquationId mu, double lambda, double tau);
// |lambda| below which the margin is positive: sqrt 2, 2, sqrt(2 pi)
double mu_threshold(MuEquationId mu);
// signed infimum over tau in [0, 40] and the tau -> inf limit
double triviality_margin(MuEquationId mu, double lambda);

// sech(pi tau/2) times 1, exp(-tau^2/4), 1/(1+tau^2)
std::vector<mellin::MellinSpectrum> even_profiles(const mellin::TauGrid& grid = {});

std::string format_residual_csv(const std::vector<double>& xs, const std::vector<double>& values);

}  // namespace hartley::equations
