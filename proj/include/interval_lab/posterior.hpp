#pragma once

#include "interval_lab/regression.hpp"

namespace interval_lab {

/// Slab-and-spike prior families for (theta, tau, sigma^2).
///
/// SlabSpikeSigma2: (xi delta(tau) + (1 - xi)) sigma^-2.
/// SlabSpikeScaled: xi delta(tau) sigma^-g + (1 - xi) sigma^-(g+1), which
/// arises from a slab-and-spike prior on gamma = tau / sigma.
enum class PriorFamily { SlabSpikeSigma2, SlabSpikeScaled };

struct PriorSpec {
    PriorFamily family = PriorFamily::SlabSpikeSigma2;
    double xi = 0.5;
    double g = 1.0;

    void validate(int m) const;
};

/// Location-scale t component mu + scale * T_dof.
struct TComponent {
    double location = 0.0;
    double scale = 1.0;
    double dof = 1.0;

    double pdf(double x) const;
    double cdf(double x) const;
    double pdf_derivative(double x) const;
};

/// Marginal posterior of theta: weight_spike * spike + (1 - weight_spike) * slab.
/// The spike component is centred at mu1 = theta_hat - rho * tau_hat, the slab
/// component at theta_hat.
struct PosteriorMixture {
    double weight_spike = 0.0;
    TComponent spike;
    TComponent slab;
    // Standardization used by the quantile solvers: w = (theta - centre) / unit.
    double centre = 0.0;
    double unit = 1.0;

    double pdf(double theta) const;
    double cdf(double theta) const;
    double pdf_derivative(double theta) const;
};

/// lambda(sigma_hat, r) for the SlabSpikeSigma2 family, r = tau_hat / sigma_hat.
double weight_slab_spike(double sigma_hat, double r, double xi, int m);

/// lambda~(r, g) for the SlabSpikeScaled family; free of sigma_hat.
double weight_scaled(double r, double xi, int m, double g);

PosteriorMixture build_posterior(const SufficientStats& stats, const PriorSpec& prior);

double posterior_pdf(const PosteriorMixture& mix, double theta);
double posterior_cdf(const PosteriorMixture& mix, double theta);

/// Posterior CDF at the standardized coordinate w = (theta - theta_hat) / sigma_hat.
double standardized_cdf(const PosteriorMixture& mix, double w);

} // namespace interval_lab
