#include "interval_lab/posterior.hpp"

#include "interval_lab/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace interval_lab {

void PriorSpec::validate(int m) const {
    if (!(xi >= 0.0 && xi <= 1.0)) throw std::domain_error("prior: xi must lie in [0, 1]");
    if (family == PriorFamily::SlabSpikeScaled && !(m + g > 0.0)) {
        throw std::domain_error("prior: scaled family requires m + g > 0");
    }
    // m + g - 1 is the dof of both components; it must be positive too.
    if (family == PriorFamily::SlabSpikeScaled && !(m + g - 1.0 > 0.0)) {
        throw std::domain_error("prior: scaled family requires m + g - 1 > 0");
    }
}

double TComponent::pdf(double x) const { return t_pdf((x - location) / scale, dof) / scale; }

double TComponent::cdf(double x) const { return t_cdf((x - location) / scale, dof); }

double TComponent::pdf_derivative(double x) const {
    return t_pdf_derivative((x - location) / scale, dof) / (scale * scale);
}

double PosteriorMixture::pdf(double theta) const {
    double v = 0.0;
    if (weight_spike > 0.0) v += weight_spike * spike.pdf(theta);
    if (weight_spike < 1.0) v += (1.0 - weight_spike) * slab.pdf(theta);
    return v;
}

double PosteriorMixture::cdf(double theta) const {
    double v = 0.0;
    if (weight_spike > 0.0) v += weight_spike * spike.cdf(theta);
    if (weight_spike < 1.0) v += (1.0 - weight_spike) * slab.cdf(theta);
    return v;
}

double PosteriorMixture::pdf_derivative(double theta) const {
    double v = 0.0;
    if (weight_spike > 0.0) v += weight_spike * spike.pdf_derivative(theta);
    if (weight_spike < 1.0) v += (1.0 - weight_spike) * slab.pdf_derivative(theta);
    return v;
}

double weight_slab_spike(double sigma_hat, double r, double xi, int m) {
    if (!(xi >= 0.0 && xi <= 1.0)) throw std::domain_error("weight: xi must lie in [0, 1]");
    if (!(sigma_hat > 0.0)) throw std::domain_error("weight: sigma_hat must be positive");
    if (m < 1) throw std::domain_error("weight: m must be >= 1");
    if (xi == 0.0) return 0.0;
    if (xi == 1.0) return 1.0;
    const double md = m;
    // log of k * sigma_hat * (m + r^2)^((m+1)/2), kept in logs for large m.
    const double log_k = std::log1p(-xi) - std::log(xi) + 0.5 * std::log(std::numbers::pi) +
                         std::lgamma(0.5 * md) - 0.5 * md * std::log(md) -
                         std::lgamma(0.5 * (md + 1.0));
    const double log_term = log_k + std::log(sigma_hat) + 0.5 * (md + 1.0) * std::log(md + r * r);
    // 1 / (1 + e^x) evaluated stably.
    return log_term > 0.0 ? std::exp(-log_term) / (1.0 + std::exp(-log_term))
                          : 1.0 / (1.0 + std::exp(log_term));
}

double weight_scaled(double r, double xi, int m, double g) {
    if (!(xi >= 0.0 && xi <= 1.0)) throw std::domain_error("weight: xi must lie in [0, 1]");
    if (!(m + g > 0.0)) throw std::domain_error("weight: requires m + g > 0");
    if (xi == 0.0) return 0.0;
    if (xi == 1.0) return 1.0;
    const double md = m;
    const double e = 0.5 * (md + g - 1.0);
    const double log_term = 0.5 * std::log(2.0 * std::numbers::pi) + std::log1p(-xi) -
                            std::log(xi) - e * std::log(md) + e * std::log(md + r * r);
    return log_term > 0.0 ? std::exp(-log_term) / (1.0 + std::exp(-log_term))
                          : 1.0 / (1.0 + std::exp(log_term));
}

PosteriorMixture build_posterior(const SufficientStats& stats, const PriorSpec& prior) {
    stats.validate();
    prior.validate(stats.m);
    const double md = stats.m;
    const double s2 = stats.sigma_hat * stats.sigma_hat;
    const double ss = md * s2 + stats.tau_hat * stats.tau_hat;
    const double one_minus_rho2 = 1.0 - stats.rho * stats.rho;

    PosteriorMixture mix;
    mix.centre = stats.theta_hat;
    mix.unit = stats.sigma_hat;
    mix.spike.location = stats.theta_hat - stats.rho * stats.tau_hat;
    mix.slab.location = stats.theta_hat;

    if (prior.family == PriorFamily::SlabSpikeSigma2) {
        // sigma_1^2(2) = (m s^2 + tau^2)(1 - rho^2)/(m + 1); slab is f_m(theta_hat, s^2).
        mix.spike.dof = md + 1.0;
        mix.spike.scale = std::sqrt(ss * one_minus_rho2 / (md + 1.0));
        mix.slab.dof = md;
        mix.slab.scale = stats.sigma_hat;
        mix.weight_spike = weight_slab_spike(stats.sigma_hat, stats.r(), prior.xi, stats.m);
    } else {
        const double q = md + prior.g - 1.0;
        mix.spike.dof = q;
        mix.spike.scale = std::sqrt(ss * one_minus_rho2 / q);
        mix.slab.dof = q;
        mix.slab.scale = std::sqrt(md / q) * stats.sigma_hat;
        mix.weight_spike = weight_scaled(stats.r(), prior.xi, stats.m, prior.g);
    }
    return mix;
}

double posterior_pdf(const PosteriorMixture& mix, double theta) { return mix.pdf(theta); }

double posterior_cdf(const PosteriorMixture& mix, double theta) { return mix.cdf(theta); }

double standardized_cdf(const PosteriorMixture& mix, double w) {
    // Evaluated directly in w so that the result depends on the data only
    // through the standardized component parameters.
    const double spike_loc = (mix.spike.location - mix.centre) / mix.unit;
    const double spike_scale = mix.spike.scale / mix.unit;
    const double slab_loc = (mix.slab.location - mix.centre) / mix.unit;
    const double slab_scale = mix.slab.scale / mix.unit;
    double v = 0.0;
    if (mix.weight_spike > 0.0) {
        v += mix.weight_spike * t_cdf((w - spike_loc) / spike_scale, mix.spike.dof);
    }
    if (mix.weight_spike < 1.0) {
        v += (1.0 - mix.weight_spike) * t_cdf((w - slab_loc) / slab_scale, mix.slab.dof);
    }
    return v;
}

} // namespace interval_lab
