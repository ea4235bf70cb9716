#include <doctest.h>

#include "interval_lab/posterior.hpp"
#include "oracles.hpp"
#include "interval_lab/special_functions.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

using namespace interval_lab;
using boost::math::quadrature::gauss_kronrod;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Unnormalized likelihood of (theta, tau, sigma^2) given the sufficient statistics.
double likelihood(double theta, double tau, double s2, const SufficientStats& st) {
    const double u = theta - st.theta_hat, v = tau - st.tau_hat;
    const double q = (u * u - 2.0 * st.rho * u * v + v * v) / (1.0 - st.rho * st.rho);
    return std::pow(s2, -(st.m + 2) / 2.0) *
           std::exp(-(st.m * st.sigma_hat * st.sigma_hat + q) / (2.0 * s2));
}

// Component masses: spike_power / slab_power are the exponents of sigma in
// the prior for the spike and slab parts (measure d tau d sigma^2).
std::pair<double, double> component_masses(const SufficientStats& st, double spike_power,
                                           double slab_power) {
    const double sr = std::sqrt(1.0 - st.rho * st.rho);
    // Integrate over u = log sigma^2 (d sigma^2 = e^u du).
    auto spike = [&](double u) {
        const double s2 = std::exp(u);
        const double theta_mass = gauss_kronrod<double, 31>::integrate(
            [&](double th) { return likelihood(th, 0.0, s2, st); }, -kInf, kInf, 15, 1e-13);
        return theta_mass * std::pow(s2, -spike_power / 2.0) * s2;
    };
    auto slab = [&](double u) {
        const double s2 = std::exp(u);
        // Gaussian mass over (theta, tau), done in closed form for the slab only.
        const double joint = likelihood(st.theta_hat, st.tau_hat, s2, st) * 2.0 *
                             std::numbers::pi * s2 * sr;
        return joint * std::pow(s2, -slab_power / 2.0) * s2;
    };
    const double centre = std::log(st.sigma_hat * st.sigma_hat);
    const double m1 = gauss_kronrod<double, 31>::integrate(spike, centre - 40, centre + 40, 15, 1e-12);
    const double m2 = gauss_kronrod<double, 31>::integrate(slab, centre - 40, centre + 40, 15, 1e-12);
    return {m1, m2};
}

double oracle_weight(const SufficientStats& st, double xi, double spike_power, double slab_power) {
    const auto [m1, m2] = component_masses(st, spike_power, slab_power);
    return xi * m1 / (xi * m1 + (1.0 - xi) * m2);
}

SufficientStats fig1_stats() { return {0.0, 0.3, 0.1, 100, 0.98}; }

int local_maxima(const PosteriorMixture& mix, double lo, double hi, int n) {
    int count = 0;
    double prev = mix.pdf(lo), cur = mix.pdf(lo + (hi - lo) / n);
    for (int i = 2; i <= n; ++i) {
        const double next = mix.pdf(lo + (hi - lo) * i / n);
        if (cur > prev && cur > next) ++count;
        prev = cur;
        cur = next;
    }
    return count;
}

} // namespace

TEST_CASE("slab-spike weight at the extremes") {
    CHECK(weight_slab_spike(1.0, 0.7, 0.0, 4) == 0.0);
    CHECK(weight_slab_spike(1.0, 0.7, 1.0, 4) == 1.0);
    CHECK(weight_scaled(0.7, 1.0, 4, 1.0) == 1.0);
    CHECK(weight_scaled(0.7, 0.0, 4, 1.0) == 0.0);
}

TEST_CASE("slab-spike weight matches the component-mass quadrature oracle") {
    const double xi = 1.0 / 1.2;
    SUBCASE("sigma_hat = 1, r = 0") {
        const SufficientStats st{0.0, 0.0, 1.0, 4, -1.0 / std::sqrt(2.0)};
        const double oracle = oracle_weight(st, xi, 2.0, 2.0);
        CHECK(std::abs(weight_slab_spike(1.0, 0.0, xi, 4) - oracle) < 1e-9);
    }
    SUBCASE("other data points") {
        for (auto [sh, r, m] : {std::tuple{1.0, 2.0, 4}, {10.0, 2.0, 4}, {0.3, -1.5, 7}, {2.0, 0.5, 1}}) {
            const SufficientStats st{0.4, r * sh, sh, m, 0.3};
            const double oracle = oracle_weight(st, xi, 2.0, 2.0);
            CHECK(std::abs(weight_slab_spike(sh, r, xi, m) - oracle) < 1e-9);
        }
    }
}

TEST_CASE("scaled-family weight matches the oracle and ignores sigma_hat") {
    const double xi = 1.0 / 1.2;
    const SufficientStats st{0.0, 0.0, 1.0, 4, -1.0 / std::sqrt(2.0)};
    CHECK(std::abs(weight_scaled(0.0, xi, 4, 1.0) - oracle_weight(st, xi, 1.0, 2.0)) < 1e-9);
    for (double g : {0.5, 1.0, 2.0, 3.5}) {
        for (double sh : {0.2, 1.0, 10.0}) {
            const SufficientStats s{0.0, 1.3 * sh, sh, 4, 0.5};
            CHECK(std::abs(weight_scaled(1.3, xi, 4, g) - oracle_weight(s, xi, g, g + 1.0)) < 1e-9);
        }
    }
}

TEST_CASE("pure components at xi in {0, 1}") {
    const SufficientStats st{1.0, 0.8, 2.0, 6, 0.4};
    const double mu1 = st.theta_hat - st.rho * st.tau_hat;
    const double s_hat2 = st.sigma_hat * st.sigma_hat;
    const double q = (st.m * s_hat2 + st.tau_hat * st.tau_hat) * (1.0 - st.rho * st.rho);
    SUBCASE("family 1, xi = 1") {
        const auto mix = build_posterior(st, {PriorFamily::SlabSpikeSigma2, 1.0, 1.0});
        CHECK(mix.weight_spike == 1.0);
        CHECK(mix.spike.location == mu1);
        CHECK(mix.spike.dof == st.m + 1);
        CHECK(mix.spike.scale == doctest::Approx(std::sqrt(q / (st.m + 1))).epsilon(1e-15));
    }
    SUBCASE("family 1, xi = 0") {
        const auto mix = build_posterior(st, {PriorFamily::SlabSpikeSigma2, 0.0, 1.0});
        CHECK(mix.weight_spike == 0.0);
        for (double th : {-3.0, 0.0, 1.0, 4.2}) {
            CHECK(mix.pdf(th) == doctest::Approx(t_pdf((th - 1.0) / 2.0, 6) / 2.0).epsilon(1e-14));
        }
    }
    SUBCASE("family 2, g = 1, xi = 1") {
        const auto mix = build_posterior(st, {PriorFamily::SlabSpikeScaled, 1.0, 1.0});
        CHECK(mix.weight_spike == 1.0);
        CHECK(mix.spike.dof == st.m);
        CHECK(mix.spike.scale == doctest::Approx(std::sqrt(q / st.m)).epsilon(1e-15));
        CHECK(mix.slab.scale == doctest::Approx(st.sigma_hat).epsilon(1e-15));
    }
    SUBCASE("family 2, g = 3") {
        const auto mix = build_posterior(st, {PriorFamily::SlabSpikeScaled, 0.5, 3.0});
        CHECK(mix.spike.dof == st.m + 2);
        CHECK(mix.slab.dof == st.m + 2);
        CHECK(mix.slab.scale == doctest::Approx(std::sqrt(st.m * s_hat2 / (st.m + 2))).epsilon(1e-15));
    }
    CHECK_THROWS_AS(build_posterior(st, {PriorFamily::SlabSpikeSigma2, 1.5, 1.0}), std::domain_error);
    CHECK_THROWS_AS(build_posterior(st, {PriorFamily::SlabSpikeScaled, 0.5, -6.0}), std::domain_error);
}

TEST_CASE("posterior density integrates to one") {
    std::mt19937_64 gen(21);
    std::uniform_real_distribution<double> xi(0.0, 1.0), r(-6.0, 6.0), rho(-0.95, 0.95);
    for (int rep = 0; rep < 20; ++rep) {
        const SufficientStats st{0.5, r(gen) * 1.7, 1.7, 1 + rep % 9, rho(gen)};
        const PriorFamily fam = rep % 2 ? PriorFamily::SlabSpikeScaled : PriorFamily::SlabSpikeSigma2;
        const auto mix = build_posterior(st, {fam, xi(gen), 1.0});
        const double lo = std::min(mix.spike.location, mix.slab.location) - 10.0 * st.sigma_hat;
        const double hi = std::max(mix.spike.location, mix.slab.location) + 10.0 * st.sigma_hat;
        const double mass = whole_line_integral([&](double th) { return mix.pdf(th); }, lo, hi);
        CHECK(std::abs(mass - 1.0) < 1e-8);
    }
}

TEST_CASE("figure-1 posterior is bimodal") {
    const auto mix = build_posterior(fig1_stats(), {PriorFamily::SlabSpikeSigma2, 0.8, 1.0});
    CHECK(local_maxima(mix, -1.0, 1.0, 20000) == 2);
}

TEST_CASE("posterior cdf limits and derivative") {
    const auto mix = build_posterior(fig1_stats(), {PriorFamily::SlabSpikeSigma2, 0.8, 1.0});
    CHECK(mix.cdf(-1e6) < 1e-12);
    CHECK(mix.cdf(1e6) > 1.0 - 1e-12);
    for (double th : {-0.6, -0.3, -0.29, -0.1, 0.0, 0.05, 0.25, 0.5}) {
        const double h = 1e-6;
        const double fd = (mix.cdf(th + h) - mix.cdf(th - h)) / (2 * h);
        CHECK(std::abs(fd - mix.pdf(th)) < 1e-6 * std::max(1.0, mix.pdf(th)));
        const double fd2 = (mix.pdf(th + h) - mix.pdf(th - h)) / (2 * h);
        CHECK(std::abs(fd2 - mix.pdf_derivative(th)) < 1e-4 * std::max(1.0, std::abs(fd2)));
    }
    const SufficientStats st{2.0, 1.0, 0.5, 5, 0.2};
    const auto slab_only = build_posterior(st, {PriorFamily::SlabSpikeSigma2, 0.0, 1.0});
    CHECK(slab_only.cdf(2.0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("standardized cdf agrees with the theta-scale cdf") {
    const SufficientStats st{3.0, -2.0, 4.0, 4, -0.7};
    const auto mix = build_posterior(st, {PriorFamily::SlabSpikeSigma2, 0.7, 1.0});
    for (double w : {-5.0, -1.0, 0.0, 0.7, 3.0}) {
        CHECK(std::abs(standardized_cdf(mix, w) - mix.cdf(st.theta_hat + st.sigma_hat * w)) < 1e-14);
    }
}
