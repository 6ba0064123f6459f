#pragma once

#include <string>
#include <vector>

#include "hartley/funcspace.hpp"
#include "hartley/mellin.hpp"
#include "hartley/quadrature.hpp"

namespace hartley::suites {

// Defaults are the acceptance configuration.
struct RunConfig {
    quad::QuadratureConfig quadrature;
    GridSpec grid;
    mellin::TauGrid tau;

    RunConfig();
    std::string echo_json() const;
};

struct Check {
    std::string name;
    double value;
    double threshold;
    bool pass;
};

struct SuiteReport {
    std::string suite;
    std::vector<Check> checks;
    double seconds = 0.0;
    std::string config_echo;  // JSON object text

    bool passed() const;
    std::string json() const;
};

// parseval, routes, reciprocity, norms, isometry, equations, margins, specfun
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

// "all" runs every suite and merges the checks. Unknown names throw NotFoundError.
SuiteReport run_suite(const std::string& name, const RunConfig& cfg = {});

// runtime budget in seconds, pinned per suite
double runtime_budget(const std::string& name);

}  // namespace hartley::suites
