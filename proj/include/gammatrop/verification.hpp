#pragma once

#include "gammatrop/quadrature.hpp"

#include <string>
#include <variant>
#include <vector>

namespace gammatrop {

using CheckValue = std::variant<double, std::string>;

struct CheckResult {
    std::string id;
    CheckValue expected;
    CheckValue observed;
    double tolerance = 0.0;
    bool pass = false;
    bool converged = true;  // false if some quadrature behind the check did not converge
    double runtime = 0.0;   // seconds
};

struct VerificationReport {
    std::string suite;
    std::vector<CheckResult> checks;  // ordered by id
    int threads = 1;
    double runtime = 0.0;

    bool pass() const;
    bool converged() const;
};

/// zeta, local2d, elliptic, k3, fano, combinatorics, cohomology, all.
const std::vector<std::string>& suite_names();

/// DomainError for an unknown suite. `workers` fans out independent samples.
VerificationReport run_verify(const std::string& suite, const QuadratureConfig& cfg, int workers = 1);

}  // namespace gammatrop
