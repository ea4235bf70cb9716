#pragma once

#include "interval_lab/kg.hpp"
#include "interval_lab/kg_kernel.hpp"

#include <string>
#include <vector>

namespace interval_lab {

struct DesignTolerances {
    double objective_change = 1e-7;   // outer stop: |f_k - f_{k-1}|
    double constraint_violation = 1e-6;
    double inner_gradient = 1e-9;
    int max_outer = 40;
    int max_inner = 400;
    double initial_penalty = 1e3;
    double max_penalty = 1e12;
};

struct DesignConfig {
    int m = 4;
    double rho = -0.70710678118654752;
    double alpha = 0.05;
    double xi_tilde = 1.0 / 1.2;
    double d = 12.0;
    std::vector<double> knots{0, 2, 4, 6, 8, 10, 12};
    GammaGrid constraint_grid = GammaGrid::uniform(16.0, 0.25);
    // Post-hoc verification grid; at least 10x denser than the constraint grid.
    GammaGrid verification_grid = GammaGrid::uniform(20.0, 0.025);
    KgKernel::Resolution resolution{};
    DesignTolerances tolerances{};

    void validate() const;
};

/// xi~ (e(0; s) - 1) + (1 - xi~) int_{-inf}^{inf} (e(gamma; s) - 1) d gamma.
double objective(const SplinePair& sp, const DesignConfig& cfg);

struct DesignIteration {
    int outer = 0;
    int inner_iterations = 0;
    double penalty = 0.0;
    double objective = 0.0;
    double max_violation = 0.0;
};

struct DesignResult {
    SplinePair spline;
    double objective = 0.0;
    double min_coverage_constraint_grid = 0.0;
    double min_coverage_verification_grid = 0.0;
    double gamma_at_min_coverage = 0.0;
    bool converged = false;
    bool feasible = false;
    std::vector<DesignIteration> trace;
};

/// Chooses b (interior knots) and s (all knots but d) to minimize the
/// objective subject to coverage >= 1 - alpha on the constraint grid.
/// Augmented-Lagrangian penalty outer loop, BFGS inner loop, starting from
/// b = 0, s = t(m).
DesignResult design(const DesignConfig& cfg);

} // namespace interval_lab
