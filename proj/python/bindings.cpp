#include <pybind11/pybind11.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/stl.h>

#include "interval_lab/credible.hpp"
#include "interval_lab/design.hpp"
#include "interval_lab/figures.hpp"
#include "interval_lab/io.hpp"
#include "interval_lab/kg.hpp"
#include "interval_lab/monte_carlo.hpp"
#include "interval_lab/posterior.hpp"
#include "interval_lab/regression.hpp"
#include "interval_lab/special_functions.hpp"
#include "interval_lab/version.hpp"

namespace py = pybind11;
using namespace interval_lab;

namespace {

// Elementwise f over a float array of any shape.
template <class F>
py::array_t<double> map_array(py::array_t<double, py::array::c_style | py::array::forcecast> x, F f) {
    py::array_t<double> out(x.request().shape);
    const double* in = x.data();
    double* dst = out.mutable_data();
    for (py::ssize_t i = 0; i < x.size(); ++i) dst[i] = f(in[i]);
    return out;
}

} // namespace

PYBIND11_MODULE(_interval_lab, m) {
    m.doc() = "Credible intervals under slab-and-spike priors and prior-informed spline confidence intervals";
    m.attr("__version__") = kVersion;

    py::register_exception<DesignError>(m, "DesignError", PyExc_ValueError);
    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);

    m.def("t_pdf", &t_pdf, py::arg("x"), py::arg("dof"));
    m.def("t_cdf", &t_cdf, py::arg("x"), py::arg("dof"));
    m.def("t_quantile", &t_quantile, py::arg("p"), py::arg("dof"));
    m.def("two_sided_t", &two_sided_t, py::arg("alpha"), py::arg("dof"));

    py::class_<SufficientStats>(m, "SufficientStats")
        .def(py::init([](double theta_hat, double tau_hat, double sigma_hat, int dof, double rho) {
                 SufficientStats s{theta_hat, tau_hat, sigma_hat, dof, rho};
                 s.validate();
                 return s;
             }),
             py::arg("theta_hat"), py::arg("tau_hat"), py::arg("sigma_hat"), py::arg("m"),
             py::arg("rho"))
        .def_readonly("theta_hat", &SufficientStats::theta_hat)
        .def_readonly("tau_hat", &SufficientStats::tau_hat)
        .def_readonly("sigma_hat", &SufficientStats::sigma_hat)
        .def_readonly("m", &SufficientStats::m)
        .def_readonly("rho", &SufficientStats::rho)
        .def_property_readonly("r", &SufficientStats::r)
        .def("__repr__", [](const SufficientStats& s) {
            return "SufficientStats(theta_hat=" + format_12(s.theta_hat) +
                   ", tau_hat=" + format_12(s.tau_hat) + ", sigma_hat=" + format_12(s.sigma_hat) +
                   ", m=" + std::to_string(s.m) + ", rho=" + format_12(s.rho) + ")";
        });

    m.def(
        "reduce",
        [](const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const Eigen::VectorXd& a,
           const Eigen::VectorXd& c, double t) {
            return reduce(RegressionProblem{X, y, a, c, t}).stats;
        },
        py::arg("X"), py::arg("y"), py::arg("a"), py::arg("c"), py::arg("t") = 0.0,
        "Sufficient statistics of theta = a'beta and tau = c'beta - t.");
    m.def(
        "factorial_2x2",
        [](const std::array<double, 8>& y) { return reduce(factorial_2x2(y)).stats; },
        py::arg("y"));

    py::enum_<PriorFamily>(m, "PriorFamily")
        .value("SlabSpikeSigma2", PriorFamily::SlabSpikeSigma2)
        .value("SlabSpikeScaled", PriorFamily::SlabSpikeScaled);

    py::class_<PriorSpec>(m, "PriorSpec")
        .def(py::init([](PriorFamily family, double xi, double g) { return PriorSpec{family, xi, g}; }),
             py::arg("family"), py::arg("xi"), py::arg("g") = 1.0)
        .def_readonly("family", &PriorSpec::family)
        .def_readonly("xi", &PriorSpec::xi)
        .def_readonly("g", &PriorSpec::g);

    py::class_<TComponent>(m, "TComponent")
        .def_readonly("location", &TComponent::location)
        .def_readonly("scale", &TComponent::scale)
        .def_readonly("dof", &TComponent::dof);

    py::class_<PosteriorMixture>(m, "PosteriorMixture")
        .def_readonly("weight_spike", &PosteriorMixture::weight_spike)
        .def_readonly("spike", &PosteriorMixture::spike)
        .def_readonly("slab", &PosteriorMixture::slab)
        .def("pdf", [](const PosteriorMixture& mix, py::array_t<double> x) {
            return map_array(x, [&](double t) { return mix.pdf(t); });
        })
        .def("cdf", [](const PosteriorMixture& mix, py::array_t<double> x) {
            return map_array(x, [&](double t) { return mix.cdf(t); });
        });

    m.def("build_posterior", &build_posterior, py::arg("stats"), py::arg("prior"));

    py::class_<RealInterval>(m, "RealInterval")
        .def(py::init<double, double>(), py::arg("lower"), py::arg("upper"))
        .def_readonly("lower", &RealInterval::lower)
        .def_readonly("upper", &RealInterval::upper)
        .def_property_readonly("length", &RealInterval::length)
        .def("__repr__", [](const RealInterval& iv) {
            return "RealInterval(" + format_12(iv.lower) + ", " + format_12(iv.upper) + ")";
        });

    py::class_<ScaledSummary>(m, "ScaledSummary")
        .def_readonly("scaled_offset", &ScaledSummary::scaled_offset)
        .def_readonly("scaled_half_length", &ScaledSummary::scaled_half_length);

    m.def("equi_tailed", &equi_tailed, py::arg("posterior"), py::arg("alpha") = 0.05);
    m.def(
        "shortest", [](const PosteriorMixture& mix, double alpha) { return shortest(mix, alpha).interval; },
        py::arg("posterior"), py::arg("alpha") = 0.05);
    m.def(
        "hpd", [](const PosteriorMixture& mix, double alpha) { return hpd_set(mix, alpha).intervals; },
        py::arg("posterior"), py::arg("alpha") = 0.05);
    m.def("scaled_summary", &scaled_summary, py::arg("interval"), py::arg("stats"));

    py::class_<SplinePair>(m, "SplinePair")
        .def(py::init<double, std::vector<double>, std::vector<double>, std::vector<double>, int,
                      double, double>(),
             py::arg("d"), py::arg("knots"), py::arg("b"), py::arg("s"), py::arg("m"),
             py::arg("alpha"), py::arg("rho"))
        .def_static("standard", &SplinePair::standard, py::arg("d"), py::arg("knots"),
                    py::arg("m"), py::arg("alpha"), py::arg("rho"))
        .def_static("from_json", &spline_pair_from_json)
        .def("to_json", &spline_pair_to_json)
        .def("b", [](const SplinePair& sp, py::array_t<double> x) {
            return map_array(x, [&](double t) { return sp.b(t); });
        })
        .def("s", [](const SplinePair& sp, py::array_t<double> x) {
            return map_array(x, [&](double t) { return sp.s(t); });
        })
        .def_property_readonly("d", &SplinePair::d)
        .def_property_readonly("m", &SplinePair::m)
        .def_property_readonly("alpha", &SplinePair::alpha)
        .def_property_readonly("rho", &SplinePair::rho)
        .def_property_readonly("knots", &SplinePair::knots)
        .def_property_readonly("b_values", &SplinePair::b_values)
        .def_property_readonly("s_values", &SplinePair::s_values);

    m.def("kg_interval", &kg_interval, py::arg("stats"), py::arg("spline"));
    m.def("coverage_probability", &coverage_probability, py::arg("gamma"), py::arg("spline"));
    m.def("scaled_expected_length", &scaled_expected_length, py::arg("gamma"), py::arg("spline"));

    py::class_<DesignConfig>(m, "DesignConfig")
        .def(py::init<>())
        .def_static("from_json", &parse_design_config)
        .def_readwrite("m", &DesignConfig::m)
        .def_readwrite("rho", &DesignConfig::rho)
        .def_readwrite("alpha", &DesignConfig::alpha)
        .def_readwrite("xi_tilde", &DesignConfig::xi_tilde)
        .def_readwrite("d", &DesignConfig::d)
        .def_readwrite("knots", &DesignConfig::knots);

    py::class_<DesignResult>(m, "DesignResult")
        .def_readonly("spline", &DesignResult::spline)
        .def_readonly("objective", &DesignResult::objective)
        .def_readonly("min_coverage", &DesignResult::min_coverage_verification_grid)
        .def_readonly("converged", &DesignResult::converged)
        .def_readonly("feasible", &DesignResult::feasible);

    m.def("objective", &objective, py::arg("spline"), py::arg("config"));
    m.def("design", &design, py::arg("config"), py::call_guard<py::gil_scoped_release>());

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init([](std::int64_t n_rep, std::uint64_t seed, double gamma, int dof, double rho,
                         int streams) { return SimConfig{n_rep, seed, gamma, dof, rho, streams}; }),
             py::arg("n_rep"), py::arg("seed"), py::arg("gamma"), py::arg("m"), py::arg("rho"),
             py::arg("streams") = 16);

    py::class_<SimResult>(m, "SimResult")
        .def_readonly("coverage", &SimResult::coverage)
        .def_readonly("coverage_se", &SimResult::coverage_se)
        .def_readonly("sel", &SimResult::sel)
        .def_readonly("sel_se", &SimResult::sel_se)
        .def_readonly("n_rep", &SimResult::n_rep)
        .def_readonly("seed", &SimResult::seed)
        .def_readonly("rng", &SimResult::rng);

    m.def(
        "simulate_kg",
        [](const SplinePair& sp, const SimConfig& cfg) {
            return simulate([&sp](const SufficientStats& st) { return kg_interval(st, sp); }, cfg,
                            sp.alpha());
        },
        py::arg("spline"), py::arg("config"), py::call_guard<py::gil_scoped_release>());

    m.def(
        "figure_table",
        [](const std::string& id, std::optional<SplinePair> sp) {
            FigureOptions opts;
            opts.spline = std::move(sp);
            const Table t = figure_table(id, opts);
            return py::make_tuple(t.columns, t.rows);
        },
        py::arg("id"), py::arg("spline") = py::none());
}
