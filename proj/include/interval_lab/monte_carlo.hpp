#pragma once

#include "interval_lab/credible.hpp"
#include "interval_lab/regression.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <string>

namespace interval_lab {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). A stream
/// is identified by (seed, stream id); draws are a pure function of the
/// counter, so partitions of the replications are reproducible.
class Philox4x32 {
public:
    static constexpr const char* algorithm = "philox4x32-10";

    Philox4x32(std::uint64_t seed, std::uint64_t stream);

    std::array<std::uint32_t, 4> block(std::uint64_t counter) const;

    /// Uniform on (0, 1), 53-bit resolution.
    double uniform();
    double normal();
    /// Gamma(shape, 1) by Marsaglia-Tsang.
    double gamma(double shape);
    double chi_square(double dof) { return 2.0 * gamma(0.5 * dof); }

private:
    std::uint32_t next32();

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int buffered_ = 0;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

struct SimConfig {
    std::int64_t n_rep = 1000000;
    std::uint64_t seed = 1;
    double gamma = 0.0;
    int m = 4;
    double rho = 0.0;
    int streams = 16;

    void validate() const;
};

using IntervalProcedure = std::function<RealInterval(const SufficientStats&)>;

struct SimResult {
    double coverage = 0.0;
    double coverage_se = 0.0;
    double sel = 0.0;  // mean length / (2 t(m) E[sigma_hat])
    double sel_se = 0.0;
    std::int64_t n_rep = 0;
    std::uint64_t seed = 0;
    std::string rng = Philox4x32::algorithm;
};

/// Draws (theta_hat, tau_hat) ~ N((0, gamma), [1 rho; rho 1]) and
/// sigma_hat^2 ~ chi^2_m / m (theta = 0, sigma = 1), applies proc, and
/// records coverage of 0 and scaled length. alpha fixes t(m) in the
/// length normalization.
SimResult simulate(const IntervalProcedure& proc, const SimConfig& cfg, double alpha);

} // namespace interval_lab
