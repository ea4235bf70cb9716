#include "interval_lab/kg_kernel.hpp"

#include "interval_lab/special_functions.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace interval_lab {

namespace {

// Gauss-Legendre nodes/weights on [-1, 1] for the supported orders.
void legendre_rule(int order, std::vector<double>& nodes, std::vector<double>& weights) {
    auto fill = [&]<int N>() {
        using rule = boost::math::quadrature::gauss<double, N>;
        nodes.clear();
        weights.clear();
        const auto& a = rule::abscissa();
        const auto& w = rule::weights();
        // Boost stores the nonnegative half; index 0 is the centre for odd N.
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0.0) {
                nodes.push_back(0.0);
                weights.push_back(w[i]);
            } else {
                nodes.push_back(a[i]);
                weights.push_back(w[i]);
                nodes.push_back(-a[i]);
                weights.push_back(w[i]);
            }
        }
    };
    switch (order) {
    case 6: fill.template operator()<6>(); break;
    case 8: fill.template operator()<8>(); break;
    case 10: fill.template operator()<10>(); break;
    case 12: fill.template operator()<12>(); break;
    case 16: fill.template operator()<16>(); break;
    case 20: fill.template operator()<20>(); break;
    default: throw std::invalid_argument("KgKernel: unsupported Gauss-Legendre order");
    }
}

// Kernel entries below this contribute nothing at double precision.
constexpr double kNegligible = 1e-18;

double phi(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

} // namespace

KgKernel::KgKernel(double d, std::vector<double> knots, int m, double alpha, double rho,
                   std::vector<double> gammas)
    : KgKernel(d, std::move(knots), m, alpha, rho, std::move(gammas), Resolution{}) {}

KgKernel::KgKernel(double d, std::vector<double> knots, int m, double alpha, double rho,
                   std::vector<double> gammas, Resolution res)
    : d_(d), knots_(std::move(knots)), m_(m), alpha_(alpha), rho_(rho),
      t_m_(two_sided_t(alpha, m)), gammas_(std::move(gammas)) {
    if (knots_.size() < 2 || knots_.front() != 0.0 || knots_.back() != d_) {
        throw std::invalid_argument("KgKernel: knots must run from 0 to d");
    }
    std::vector<double> gl_x, gl_w;

    legendre_rule(res.x_order, gl_x, gl_w);
    for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
        const double width = (knots_[i + 1] - knots_[i]) / res.x_subpanels;
        for (int p = 0; p < res.x_subpanels; ++p) {
            const double a = knots_[i] + width * p;
            for (std::size_t k = 0; k < gl_x.size(); ++k) {
                x_nodes_.push_back(a + 0.5 * width * (gl_x[k] + 1.0));
                x_weights_.push_back(0.5 * width * gl_w[k]);
            }
        }
    }
    const std::size_t nk = knots_.size();
    const NaturalCubicSpline probe(knots_, std::vector<double>(nk, 0.0));
    cardinal_.reserve(x_nodes_.size() * nk);
    for (double x : x_nodes_) {
        const auto cw = probe.cardinal_weights(x);
        cardinal_.insert(cardinal_.end(), cw.begin(), cw.end());
    }

    legendre_rule(res.w_order, gl_x, gl_w);
    const auto [w_lo, w_hi] = chi_scaled_support(m_);
    const double w_width = (w_hi - w_lo) / res.w_panels;
    for (int p = 0; p < res.w_panels; ++p) {
        const double a = w_lo + w_width * p;
        for (std::size_t k = 0; k < gl_x.size(); ++k) {
            const double w = a + 0.5 * w_width * (gl_x[k] + 1.0);
            w_nodes_.push_back(w);
            w_weights_.push_back(0.5 * w_width * gl_w[k] * chi_scaled_pdf(w, m_) * w);
        }
    }

    const std::size_t nx = x_nodes_.size();
    const std::size_t nw = w_nodes_.size();
    const std::size_t ng = gammas_.size();
    kernel_.resize(ng * nw * nx * 2);
    active_begin_.assign(ng * nw + 1, 0);
    standard_part_.assign(ng, 0.0);
    sel_matrix_.assign(ng * nk, 0.0);
    const double sr = std::sqrt(1.0 - rho_ * rho_);
    const double sel_scale = 1.0 / (t_m_ * chi_scaled_mean(m_));

    for (std::size_t g = 0; g < ng; ++g) {
        const double gamma = gammas_[g];
        double std_sum = 0.0;
        std::vector<double> sel_x(nx, 0.0);
        for (std::size_t j = 0; j < nw; ++j) {
            const double w = w_nodes_[j];
            for (std::size_t k = 0; k < nx; ++k) {
                const double x = x_nodes_[k];
                const double base = w_weights_[j] * x_weights_[k];
                const double kp = base * phi(w * x - gamma);
                const double km = base * phi(-w * x - gamma);
                double* slot = &kernel_[((g * nw + j) * nx + k) * 2];
                slot[0] = kp;
                slot[1] = km;
                if (kp + km > kNegligible) active_.push_back(static_cast<std::uint32_t>(k));
                const double sp = rho_ * (w * x - gamma);
                const double sm = rho_ * (-w * x - gamma);
                std_sum += kp * (normal_cdf((w * t_m_ - sp) / sr) - normal_cdf((-w * t_m_ - sp) / sr));
                std_sum += km * (normal_cdf((w * t_m_ - sm) / sr) - normal_cdf((-w * t_m_ - sm) / sr));
                // e - 1 picks up one more factor of w: E[W s(H/W)] with dh = w dx.
                sel_x[k] += w * (kp + km);
            }
            active_begin_[g * nw + j + 1] = active_.size();
        }
        standard_part_[g] = std_sum;
        for (std::size_t k = 0; k < nx; ++k) {
            for (std::size_t q = 0; q < nk; ++q) {
                sel_matrix_[g * nk + q] += sel_scale * sel_x[k] * cardinal_[k * nk + q];
            }
        }
    }

    int_weights_.assign(nk, 0.0);
    for (std::size_t k = 0; k < nx; ++k) {
        for (std::size_t q = 0; q < nk; ++q) {
            int_weights_[q] += 2.0 * x_weights_[k] * cardinal_[k * nk + q] * sel_scale;
        }
    }
}

std::vector<double> KgKernel::coverage(std::span<const double> b_values,
                                       std::span<const double> s_values,
                                       std::vector<double>* grad_b,
                                       std::vector<double>* grad_s) const {
    const std::size_t nk = knots_.size();
    if (b_values.size() != nk || s_values.size() != nk) {
        throw std::invalid_argument("KgKernel: value vectors must match the knots");
    }
    const std::size_t nx = x_nodes_.size();
    const std::size_t nw = w_nodes_.size();
    const std::size_t ng = gammas_.size();
    std::vector<double> bx(nx, 0.0), sx(nx, 0.0);
    for (std::size_t k = 0; k < nx; ++k) {
        for (std::size_t q = 0; q < nk; ++q) {
            bx[k] += cardinal_[k * nk + q] * b_values[q];
            sx[k] += cardinal_[k * nk + q] * s_values[q];
        }
    }
    const bool want_grad = grad_b != nullptr && grad_s != nullptr;
    if (want_grad) {
        grad_b->assign(ng * nk, 0.0);
        grad_s->assign(ng * nk, 0.0);
    }
    const double sr = std::sqrt(1.0 - rho_ * rho_);
    std::vector<double> gb_x(nx), gs_x(nx);
    std::vector<double> out(ng);
    for (std::size_t g = 0; g < ng; ++g) {
        const double gamma = gammas_[g];
        double sum = 0.0;
        std::fill(gb_x.begin(), gb_x.end(), 0.0);
        std::fill(gs_x.begin(), gs_x.end(), 0.0);
        for (std::size_t j = 0; j < nw; ++j) {
            const double w = w_nodes_[j];
            const double* row = &kernel_[(g * nw + j) * nx * 2];
            const std::size_t lo = active_begin_[g * nw + j], hi = active_begin_[g * nw + j + 1];
            for (std::size_t a = lo; a < hi; ++a) {
                const std::size_t k = active_[a];
                const double x = x_nodes_[k];
                const double kp = row[2 * k];
                const double km = row[2 * k + 1];
                const double wb = w * bx[k];
                const double ws = w * sx[k];
                const double sp = rho_ * (w * x - gamma);
                const double sm = rho_ * (-w * x - gamma);
                const double ap = (wb + ws - sp) / sr, bp = (wb - ws - sp) / sr;
                const double am = (-wb + ws - sm) / sr, bm = (-wb - ws - sm) / sr;
                sum += kp * (normal_cdf(ap) - normal_cdf(bp)) +
                       km * (normal_cdf(am) - normal_cdf(bm));
                if (want_grad) {
                    const double pa = phi(ap), pb = phi(bp), qa = phi(am), qb = phi(bm);
                    const double f = w / sr;
                    gb_x[k] += f * (kp * (pa - pb) - km * (qa - qb));
                    gs_x[k] += f * (kp * (pa + pb) + km * (qa + qb));
                }
            }
        }
        out[g] = (1.0 - alpha_) + sum - standard_part_[g];
        if (want_grad) {
            for (std::size_t k = 0; k < nx; ++k) {
                for (std::size_t q = 0; q < nk; ++q) {
                    (*grad_b)[g * nk + q] += gb_x[k] * cardinal_[k * nk + q];
                    (*grad_s)[g * nk + q] += gs_x[k] * cardinal_[k * nk + q];
                }
            }
        }
    }
    return out;
}

std::vector<double> KgKernel::coverage(const SplinePair& sp) const {
    return coverage(sp.b_values(), sp.s_values());
}

std::vector<double> KgKernel::scaled_expected_length(std::span<const double> s_values) const {
    const std::size_t nk = knots_.size();
    std::vector<double> out(gammas_.size(), 1.0);
    for (std::size_t g = 0; g < gammas_.size(); ++g) {
        for (std::size_t q = 0; q < nk; ++q) {
            out[g] += sel_matrix_[g * nk + q] * (s_values[q] - t_m_);
        }
    }
    return out;
}

std::vector<double> KgKernel::scaled_expected_length(const SplinePair& sp) const {
    return scaled_expected_length(sp.s_values());
}

double KgKernel::integrated_excess_length(std::span<const double> s_values) const {
    double sum = 0.0;
    for (std::size_t q = 0; q < knots_.size(); ++q) sum += int_weights_[q] * (s_values[q] - t_m_);
    return sum;
}

} // namespace interval_lab
