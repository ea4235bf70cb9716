#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace interval_lab {

class DesignError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Linear model Y = X beta + eps with parameter of interest a*^T beta and
/// uncertain prior information c*^T beta - t* = 0.
struct RegressionProblem {
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
    Eigen::VectorXd a_star;
    Eigen::VectorXd c_star;
    double t_star = 0.0;
};

/// Reduced data. theta_hat and tau_hat are in the scaled units where
/// Var(theta_hat) = Var(tau_hat) = sigma^2.
struct SufficientStats {
    double theta_hat = 0.0;
    double tau_hat = 0.0;
    double sigma_hat = 1.0;
    int m = 1;
    double rho = 0.0;

    double r() const { return tau_hat / sigma_hat; }
    void validate() const;
};

struct ScaledContrasts {
    Eigen::VectorXd a;
    Eigen::VectorXd c;
    double t = 0.0;
    double v11 = 1.0;  // (a*)^T (X^T X)^{-1} a*
    double v22 = 1.0;  // (c*)^T (X^T X)^{-1} c*
};

/// Sufficient statistics together with the factors mapping scaled intervals
/// back to theta* = sqrt(v11) * theta.
struct ReducedProblem {
    SufficientStats stats;
    ScaledContrasts contrasts;
    Eigen::VectorXd beta_hat;

    double theta_star_factor() const { return std::sqrt(contrasts.v11); }
};

ScaledContrasts scale_problem(const RegressionProblem& prob);
ReducedProblem reduce(const RegressionProblem& prob);

/// 2x2 factorial with two replicates; cells ordered (A,B) = (lo,lo), (hi,lo),
/// (lo,hi), (hi,hi), replicate 1 then replicate 2. theta = 2(beta_1 - beta_12)
/// is the simple effect of A at low B, and the prior information is beta_12 = 0.
RegressionProblem factorial_2x2(const std::array<double, 8>& responses);

} // namespace interval_lab
