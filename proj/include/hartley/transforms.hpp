#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hartley/funcspace.hpp"
#include "hartley/mellin.hpp"
#include "hartley/quadrature.hpp"

namespace hartley::transforms {

enum class OperatorId { FC, FS, HH, FCFS, HH2, HHFC, HHFS, HHFCFS, HH2FC, HH2FS, HH2FCFS };
enum class Route { direct, kernel, spectral };
enum class Direction { forward, inverse };

struct NormBounds {
    double lower;
    double upper;
};

struct OperatorInfo {
    OperatorId id;
    std::string name;
    std::vector<Route> forward_routes;
    std::vector<Route> inverse_routes;
    std::optional<NormBounds> bounds;
    mellin::MultiplierId multiplier;
    std::string inverse_descriptor;
};

const std::vector<OperatorId>& all_operators();
// the seven operators built from compositions
const std::vector<OperatorId>& composite_operators();
const OperatorInfo& info(OperatorId op);

// case-insensitive; throws NotFoundError
OperatorId operator_from_name(const std::string& name);
Route route_from_name(const std::string& name);
std::string route_name(Route r);
bool has_route(OperatorId op, Direction dir, Route r);

quad::QuadratureConfig default_config();

// Local terms such as 2f(x) in HH^2 are applied by forward/inverse, not by the kernel.
double forward(OperatorId op, const RealFunction& f, Route route, double x, const quad::QuadratureConfig& cfg = default_config());
double inverse(OperatorId op, const RealFunction& g, Route route, double x, const quad::QuadratureConfig& cfg = default_config());

// Batch evaluation; the spectral route transforms f once.
std::vector<double> apply(OperatorId op, Direction dir, const RealFunction& f, Route route, const std::vector<double>& xs,
                          const quad::QuadratureConfig& cfg = default_config());

// Full integral kernel at (x, t) including constants, without local terms.
// Throws DomainError on the diagonal of a Hilbert-type kernel.
double kernel_eval(OperatorId op, Direction dir, double x, double t);

// Image of f as a spectrum-backed function.
RealFunction image(OperatorId op, const RealFunction& f, Direction dir = Direction::forward, const mellin::TauGrid& grid = {});

// ||op f|| / ||f||, numerator by Parseval on the multiplied spectrum; NaN for the zero function.
double norm_ratio(OperatorId op, const RealFunction& f);

struct RouteReport {
    OperatorId op;
    Direction dir;
    std::vector<double> x;
    std::vector<Route> routes;
    std::vector<std::vector<double>> values;  // values[route index][x index]
    std::vector<double> row_deviation;
    double max_deviation = 0.0;

    std::string csv() const;
};

RouteReport route_report(OperatorId op, Direction dir, const RealFunction& f, const std::vector<double>& xs,
                         const quad::QuadratureConfig& cfg = default_config());

}  // namespace hartley::transforms
