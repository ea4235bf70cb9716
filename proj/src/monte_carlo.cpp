#include "interval_lab/monte_carlo.hpp"

#include "interval_lab/kg.hpp"
#include "interval_lab/parallel.hpp"
#include "interval_lab/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace interval_lab {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

} // namespace

Philox4x32::Philox4x32(std::uint64_t seed, std::uint64_t stream)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      stream_(stream) {}

std::array<std::uint32_t, 4> Philox4x32::block(std::uint64_t counter) const {
    std::array<std::uint32_t, 4> ctr{static_cast<std::uint32_t>(counter),
                                     static_cast<std::uint32_t>(counter >> 32),
                                     static_cast<std::uint32_t>(stream_),
                                     static_cast<std::uint32_t>(stream_ >> 32)};
    std::array<std::uint32_t, 2> key = key_;
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, ctr[0], hi0, lo0);
        mulhilo(kMul1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

std::uint32_t Philox4x32::next32() {
    if (buffered_ == 0) {
        buffer_ = block(counter_++);
        buffered_ = 4;
    }
    return buffer_[static_cast<std::size_t>(4 - buffered_--)];
}

double Philox4x32::uniform() {
    const std::uint64_t hi = next32() >> 5;  // 27 bits
    const std::uint64_t lo = next32() >> 6;  // 26 bits
    return (static_cast<double>((hi << 26) | lo) + 0.5) * 0x1.0p-53;
}

double Philox4x32::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_normal_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

double Philox4x32::gamma(double shape) {
    if (!(shape > 0.0)) throw std::domain_error("gamma: shape must be positive");
    if (shape < 1.0) {
        // Boost the shape and rescale: G(a) = G(a + 1) U^(1/a).
        const double u = uniform();
        return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

void SimConfig::validate() const {
    if (n_rep < 1) throw std::invalid_argument("simulate: n_rep must be >= 1");
    if (m < 1) throw std::invalid_argument("simulate: m must be >= 1");
    if (!(std::abs(rho) < 1.0)) throw std::invalid_argument("simulate: |rho| must be < 1");
    if (streams < 1) throw std::invalid_argument("simulate: need at least one stream");
}

SimResult simulate(const IntervalProcedure& proc, const SimConfig& cfg, double alpha) {
    cfg.validate();
    const double norm = 2.0 * two_sided_t(alpha, cfg.m) * chi_scaled_mean(cfg.m);
    const double sr = std::sqrt(1.0 - cfg.rho * cfg.rho);

    struct Partial {
        double hits = 0.0;
        double len = 0.0;
        double len2 = 0.0;
        std::int64_t count = 0;
    };
    const auto streams = static_cast<std::size_t>(cfg.streams);
    std::vector<Partial> parts(streams);
    parallel_for(streams, [&](std::size_t k) {
        const std::int64_t begin = cfg.n_rep * static_cast<std::int64_t>(k) / cfg.streams;
        const std::int64_t end = cfg.n_rep * static_cast<std::int64_t>(k + 1) / cfg.streams;
        Philox4x32 rng(cfg.seed, k);
        Partial p;
        for (std::int64_t i = begin; i < end; ++i) {
            const double z1 = rng.normal();
            const double z2 = rng.normal();
            SufficientStats st;
            st.m = cfg.m;
            st.rho = cfg.rho;
            st.tau_hat = cfg.gamma + z1;
            st.theta_hat = cfg.rho * z1 + sr * z2;
            st.sigma_hat = std::sqrt(rng.chi_square(cfg.m) / cfg.m);
            const RealInterval iv = proc(st);
            const double l = iv.length() / norm;
            p.hits += iv.contains(0.0) ? 1.0 : 0.0;
            p.len += l;
            p.len2 += l * l;
            ++p.count;
        }
        parts[k] = p;
    });

    Partial total;
    for (const Partial& p : parts) {
        total.hits += p.hits;
        total.len += p.len;
        total.len2 += p.len2;
        total.count += p.count;
    }
    const double n = static_cast<double>(total.count);
    SimResult out;
    out.n_rep = total.count;
    out.seed = cfg.seed;
    out.coverage = total.hits / n;
    out.coverage_se = std::sqrt(out.coverage * (1.0 - out.coverage) / n);
    out.sel = total.len / n;
    const double var = std::max(0.0, total.len2 / n - out.sel * out.sel) * n / std::max(1.0, n - 1.0);
    out.sel_se = std::sqrt(var / n);
    return out;
}

} // namespace interval_lab
