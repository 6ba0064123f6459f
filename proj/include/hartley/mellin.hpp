#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hartley/funcspace.hpp"

namespace hartley::mellin {

using cplx = std::complex<double>;

struct TauGrid {
    double step = 0.02;
    double extent = 40.0;

    int half_count() const { return static_cast<int>(std::lround(extent / step)); }
};

// Samples of f*(1/2 + i tau) at tau_k = k * step, k = -n..n.
struct MellinSpectrum {
    double step = 0.02;
    int half_count = 0;
    std::vector<cplx> values;  // values[k + half_count]

    int size() const { return 2 * half_count + 1; }
    double tau(int k) const { return k * step; }
    double extent() const { return half_count * step; }
    const cplx& at(int k) const { return values[k + half_count]; }
    cplx& at(int k) { return values[k + half_count]; }

    // max |values(-tau) - conj values(tau)| relative to the peak
    double asymmetry() const;
    double peak() const;
};

MellinSpectrum zero_spectrum(const TauGrid& grid = {});

// Samples a closed-form spectrum.
MellinSpectrum sample_spectrum(const SpectrumEvaluator& f, const TauGrid& grid = {});

// Numerical forward transform by trapezoid in u = ln t. The tau extent is widened
// to the function's resolution hint when that asks for more.
MellinSpectrum mellin_forward(const RealFunction& f, const TauGrid& grid = {});

// (1/2pi) int values(tau) x^{-1/2 - i tau} dtau by trapezoid.
double mellin_inverse(const MellinSpectrum& spec, double x);

double parseval_norm(const MellinSpectrum& spec);

enum class MultiplierId {
    M_FC,
    M_FS,
    M_HH,
    M_FCFS,
    M_HH2,
    M_HHFC,
    M_HHFS,
    M_HHFCFS,
    M_HH2FC,
    M_HH2FS,
    M_HH2FCFS,
    D_3_7,
    D_3_8,
    D_3_11,
    D_3_14,
    D_3_19,
    D_3_23,
    D_3_25,
    D_3_28,
};

enum class ReflectionKind { plain, reflected };

ReflectionKind reflection_kind(MultiplierId id);
std::string multiplier_name(MultiplierId id);

// Symbol at s = 1/2 + i tau. Denominators D_* need lambda.
cplx multiplier_eval(MultiplierId id, std::optional<cplx> lambda, double tau);

// Throws DomainError when lambda is inadmissible for id.
void check_admissible(MultiplierId id, std::optional<cplx> lambda);

// Spectrum of the image: plain m(s) f*(s), reflected m(s) f*(1-s).
MellinSpectrum apply_multiplier(MultiplierId id, const MellinSpectrum& spec, std::optional<cplx> lambda = {});

// Spectrum of the preimage under the same operator.
MellinSpectrum divide_multiplier(MultiplierId id, const MellinSpectrum& spec, std::optional<cplx> lambda = {});

std::string format_spectrum_csv(const MellinSpectrum& spec);

// RealFunction backed by a spectrum. Values come from a table of
// x^{1/2} f(x) on a uniform ln x grid with local interpolation, and from the
// direct trapezoid sum outside the table.
RealFunction function_from_spectrum(std::shared_ptr<const MellinSpectrum> spec, std::string label,
                                    quad::DecayHint decay = quad::DecayHint::algebraic(1.0));

}  // namespace hartley::mellin
