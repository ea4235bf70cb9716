#include "interval_lab/regression.hpp"

#include <cmath>
#include <limits>

namespace interval_lab {

namespace {

constexpr double kRhoMargin = 1e-10;

void validate_shape(const RegressionProblem& prob) {
    const auto n = prob.X.rows();
    const auto p = prob.X.cols();
    if (p < 2) throw DesignError("design matrix needs at least 2 columns");
    if (n <= p) throw DesignError("need more observations than coefficients (n > p)");
    if (prob.y.size() != n) throw DesignError("response length does not match design rows");
    if (prob.a_star.size() != p || prob.c_star.size() != p) {
        throw DesignError("contrast vectors must have one entry per design column");
    }
    if (prob.a_star.isZero(0.0)) throw DesignError("a* must be nonzero");
}

// Cholesky-free quadratic forms through the R factor: u^T (X^T X)^{-1} v.
struct GramInverse {
    Eigen::MatrixXd R;
    Eigen::VectorXi perm;

    Eigen::VectorXd solve_rt(const Eigen::VectorXd& v) const {
        Eigen::VectorXd pv(v.size());
        for (Eigen::Index i = 0; i < v.size(); ++i) pv(i) = v(perm(i));
        return R.transpose().triangularView<Eigen::Lower>().solve(pv);
    }
    double form(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
        return solve_rt(u).dot(solve_rt(v));
    }
};

GramInverse factor(const Eigen::MatrixXd& X) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    qr.setThreshold(1e3 * std::numeric_limits<double>::epsilon() * X.cols());
    if (qr.rank() < X.cols()) {
        throw DesignError("design matrix columns are linearly dependent (X^T X singular)");
    }
    const auto p = X.cols();
    GramInverse g;
    g.R = qr.matrixR().topLeftCorner(p, p).triangularView<Eigen::Upper>();
    g.perm = qr.colsPermutation().indices();
    return g;
}

} // namespace

void SufficientStats::validate() const {
    if (!(sigma_hat > 0.0) || !std::isfinite(sigma_hat)) {
        throw DesignError("sigma_hat must be positive");
    }
    if (m < 1) throw DesignError("residual degrees of freedom m must be >= 1");
    if (!(std::abs(rho) < 1.0 - kRhoMargin)) {
        throw DesignError("|rho| must be < 1 (a and c linearly independent)");
    }
    if (!std::isfinite(theta_hat) || !std::isfinite(tau_hat)) {
        throw DesignError("theta_hat and tau_hat must be finite");
    }
}

ScaledContrasts scale_problem(const RegressionProblem& prob) {
    validate_shape(prob);
    const GramInverse g = factor(prob.X);
    ScaledContrasts out;
    out.v11 = g.form(prob.a_star, prob.a_star);
    out.v22 = g.form(prob.c_star, prob.c_star);
    if (!(out.v11 > 0.0) || !(out.v22 > 0.0)) {
        throw DesignError("contrast variance is not positive; design is ill-conditioned");
    }
    out.a = prob.a_star / std::sqrt(out.v11);
    out.c = prob.c_star / std::sqrt(out.v22);
    out.t = prob.t_star / std::sqrt(out.v22);
    return out;
}

ReducedProblem reduce(const RegressionProblem& prob) {
    ReducedProblem out;
    out.contrasts = scale_problem(prob);
    const GramInverse g = factor(prob.X);

    const auto n = prob.X.rows();
    const auto p = prob.X.cols();
    out.beta_hat = prob.X.householderQr().solve(prob.y);
    const Eigen::VectorXd resid = prob.y - prob.X * out.beta_hat;
    const double rss = resid.squaredNorm();
    const double scale = std::max(prob.y.squaredNorm(), std::numeric_limits<double>::min());
    if (rss <= 1e-24 * scale) {
        throw DesignError("zero residual sum of squares: response lies in the column span of X");
    }

    SufficientStats& s = out.stats;
    s.m = static_cast<int>(n - p);
    s.sigma_hat = std::sqrt(rss / static_cast<double>(n - p));
    s.theta_hat = out.contrasts.a.dot(out.beta_hat);
    s.tau_hat = out.contrasts.c.dot(out.beta_hat) - out.contrasts.t;
    s.rho = g.form(out.contrasts.a, out.contrasts.c);
    if (!(std::abs(s.rho) < 1.0 - kRhoMargin)) {
        throw DesignError("a and c are collinear after scaling (|rho| >= 1)");
    }
    return out;
}

RegressionProblem factorial_2x2(const std::array<double, 8>& responses) {
    RegressionProblem prob;
    prob.X.resize(8, 4);
    prob.y.resize(8);
    constexpr std::array<std::array<double, 2>, 4> cells{{{-1, -1}, {1, -1}, {-1, 1}, {1, 1}}};
    for (int i = 0; i < 8; ++i) {
        const auto& [x1, x2] = cells[static_cast<std::size_t>(i % 4)];
        prob.X.row(i) << 1.0, x1, x2, x1 * x2;
        prob.y(i) = responses[static_cast<std::size_t>(i)];
    }
    prob.a_star = Eigen::Vector4d(0.0, 2.0, 0.0, -2.0);
    prob.c_star = Eigen::Vector4d(0.0, 0.0, 0.0, 1.0);
    prob.t_star = 0.0;
    return prob;
}

} // namespace interval_lab
