#include <doctest.h>

#include "interval_lab/regression.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>

using namespace interval_lab;

namespace {

RegressionProblem random_problem(std::mt19937_64& gen, int n, int p) {
    std::normal_distribution<double> z;
    RegressionProblem prob;
    prob.X.resize(n, p);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < p; ++k) prob.X(i, k) = z(gen);
    }
    prob.y.resize(n);
    for (int i = 0; i < n; ++i) prob.y(i) = z(gen);
    prob.a_star = Eigen::VectorXd::Zero(p);
    prob.c_star = Eigen::VectorXd::Zero(p);
    prob.a_star(0) = 1.5;
    prob.a_star(1) = -0.5;
    prob.c_star(1) = 2.0;
    prob.c_star(p - 1) = 1.0;
    prob.t_star = 0.3;
    return prob;
}

} // namespace

TEST_CASE("factorial design is orthogonal with X'X = 8 I") {
    const auto prob = factorial_2x2({1, 2, 3, 4, 5, 6, 7, 8});
    const Eigen::MatrixXd xtx = prob.X.transpose() * prob.X;
    CHECK((xtx - 8.0 * Eigen::MatrixXd::Identity(4, 4)).norm() == 0.0);
}

TEST_CASE("factorial example reduces to m = 4 and rho = -1/sqrt(2)") {
    std::mt19937_64 gen(3);
    std::normal_distribution<double> z(10.0, 3.0);
    for (int rep = 0; rep < 20; ++rep) {
        std::array<double, 8> y{};
        for (double& v : y) v = z(gen);
        const auto red = reduce(factorial_2x2(y));
        CHECK(red.stats.m == 4);
        CHECK(std::abs(red.stats.rho + 1.0 / std::sqrt(2.0)) < 1e-14);
    }
}

TEST_CASE("zero interaction contrast gives tau_hat = 0") {
    // Cell means mu + A + B with no interaction, plus symmetric noise.
    const std::array<double, 8> y{1.0, 3.0, 2.0, 4.0, 1.5, 3.5, 2.5, 4.5};
    const auto red = reduce(factorial_2x2(y));
    CHECK(std::abs(red.stats.tau_hat) < 1e-14);
}

TEST_CASE("scaled contrasts against explicit matrix arithmetic") {
    const auto prob = factorial_2x2({0.1, 1.9, 3.2, 4.4, 5.0, 5.7, 7.1, 8.3});
    const auto sc = scale_problem(prob);
    const Eigen::MatrixXd inv = (prob.X.transpose() * prob.X).inverse();
    // a* = (0, 2, 0, -2): v11 = a*' inv a* = 8 / 8 = 1, so a = a*.
    CHECK(std::abs(sc.v11 - 1.0) < 1e-15);
    CHECK((sc.a - prob.a_star).norm() < 1e-15);
    CHECK(std::abs(sc.a.dot(inv * sc.a) - 1.0) < 1e-14);
    CHECK(std::abs(sc.c.dot(inv * sc.c) - 1.0) < 1e-14);
    CHECK(std::abs(prob.c_star.dot(inv * prob.c_star) * 8.0 - 1.0) < 1e-14);
}

TEST_CASE("scaling gives unit variance ratios on random problems") {
    std::mt19937_64 gen(5);
    for (int rep = 0; rep < 10; ++rep) {
        const auto prob = random_problem(gen, 30, 5);
        const auto sc = scale_problem(prob);
        const Eigen::MatrixXd inv = (prob.X.transpose() * prob.X).inverse();
        CHECK(std::abs(sc.a.dot(inv * sc.a) - 1.0) < 1e-12);
        CHECK(std::abs(sc.c.dot(inv * sc.c) - 1.0) < 1e-12);
        const double rho = sc.a.dot(inv * sc.c);
        CHECK(std::abs(rho - reduce(prob).stats.rho) < 1e-12);
        // Pre-scaled input is left unchanged.
        RegressionProblem again = prob;
        again.a_star = sc.a;
        again.c_star = sc.c;
        again.t_star = sc.t;
        const auto twice = scale_problem(again);
        CHECK((twice.a - sc.a).norm() < 1e-12);
        CHECK((twice.c - sc.c).norm() < 1e-12);
    }
}

TEST_CASE("beta_hat matches the normal equations") {
    std::mt19937_64 gen(9);
    const auto prob = random_problem(gen, 40, 6);
    const auto red = reduce(prob);
    const Eigen::VectorXd ne = (prob.X.transpose() * prob.X).ldlt().solve(prob.X.transpose() * prob.y);
    CHECK((red.beta_hat - ne).norm() < 1e-9);
    const double rss = (prob.y - prob.X * ne).squaredNorm();
    CHECK(red.stats.m == 34);
    CHECK(std::abs(red.stats.sigma_hat - std::sqrt(rss / 34.0)) < 1e-12);
    const auto sc = scale_problem(prob);
    CHECK(std::abs(red.stats.theta_hat - sc.a.dot(ne)) < 1e-10);
    CHECK(std::abs(red.stats.tau_hat - (sc.c.dot(ne) - sc.t)) < 1e-10);
}

TEST_CASE("degenerate inputs are rejected") {
    std::mt19937_64 gen(1);
    auto prob = random_problem(gen, 12, 3);
    SUBCASE("exact fit") {
        prob.y = prob.X * Eigen::Vector3d(1.0, -2.0, 0.5);
        CHECK_THROWS_AS(reduce(prob), DesignError);
    }
    SUBCASE("rank deficient X") {
        prob.X.col(2) = prob.X.col(0) + prob.X.col(1);
        CHECK_THROWS_AS(reduce(prob), DesignError);
    }
    SUBCASE("n <= p") {
        prob.X = prob.X.topRows(3).eval();
        prob.y = prob.y.head(3).eval();
        CHECK_THROWS_AS(reduce(prob), DesignError);
    }
    SUBCASE("a and c collinear") {
        prob.c_star = 2.0 * prob.a_star;
        CHECK_THROWS_AS(reduce(prob), DesignError);
    }
    SUBCASE("a zero") {
        prob.a_star.setZero();
        CHECK_THROWS_AS(reduce(prob), DesignError);
    }
    SUBCASE("dimension mismatch") {
        prob.a_star = Eigen::VectorXd::Ones(4);
        CHECK_THROWS_AS(reduce(prob), DesignError);
    }
}
