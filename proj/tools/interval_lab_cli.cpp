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

#include <CLI11.hpp>
#include <json.hpp>

#include <Eigen/Core>
#include <boost/version.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>

using namespace interval_lab;
using nlohmann::json;

namespace {

struct DataOptions {
    std::string problem;
    std::vector<double> factorial;
    std::optional<double> theta_hat, tau_hat, sigma_hat, rho;
    std::optional<int> m;

    void add(CLI::App* app) {
        auto* p = app->add_option("--problem", problem, "JSON problem file {X, y, a, c, t}");
        auto* f = app->add_option("--factorial2x2", factorial, "Responses y1,...,y8 of the 2x2 example")
                      ->delimiter(',')
                      ->expected(8);
        p->excludes(f);
        app->add_option("--theta-hat", theta_hat, "Sufficient statistic theta_hat");
        app->add_option("--tau-hat", tau_hat, "Sufficient statistic tau_hat");
        app->add_option("--sigma-hat", sigma_hat, "Sufficient statistic sigma_hat");
        app->add_option("--m", m, "Residual degrees of freedom");
        app->add_option("--rho", rho, "Correlation of theta_hat and tau_hat");
    }

    SufficientStats resolve() const {
        if (!problem.empty()) return reduce(parse_problem(read_text_file(problem))).stats;
        if (!factorial.empty()) {
            std::array<double, 8> y{};
            std::copy(factorial.begin(), factorial.end(), y.begin());
            return reduce(factorial_2x2(y)).stats;
        }
        if (!(theta_hat && tau_hat && sigma_hat && m && rho)) {
            throw CLI::ValidationError(
                "data", "give --problem, --factorial2x2, or all of --theta-hat --tau-hat "
                        "--sigma-hat --m --rho");
        }
        SufficientStats st{*theta_hat, *tau_hat, *sigma_hat, *m, *rho};
        st.validate();
        return st;
    }
};

struct PriorOptions {
    std::string family = "s3";
    double xi = 0.5;
    double g = 1.0;

    void add(CLI::App* app) {
        app->add_option("--family", family,
                        "s3: (xi delta(tau) + 1 - xi) sigma^-2; s4: xi delta(tau) sigma^-g + "
                        "(1 - xi) sigma^-(g+1)")
            ->check(CLI::IsMember({"s3", "s4"}))
            ->capture_default_str();
        app->add_option("--xi", xi, "Prior mass on tau = 0")->required();
        app->add_option("--g", g, "Exponent g of the s4 family")->capture_default_str();
    }

    PriorSpec spec() const {
        return {family == "s3" ? PriorFamily::SlabSpikeSigma2 : PriorFamily::SlabSpikeScaled, xi,
                g};
    }
};

std::string g_command_line;

double r12(double x) { return std::stod(format_12(x)); }

std::string provenance(const std::string& seed = "none") {
    std::ostringstream os;
    os << "# interval_lab " << kVersion << "; boost " << BOOST_VERSION / 100000 << "."
       << BOOST_VERSION / 100 % 1000 << "." << BOOST_VERSION % 100 << "; eigen "
       << EIGEN_WORLD_VERSION << "." << EIGEN_MAJOR_VERSION << "." << EIGEN_MINOR_VERSION
       << "; seed " << seed << "; command: " << g_command_line << "\n";
    return os.str();
}

std::string to_csv(const Table& t, const std::string& seed = "none") {
    std::string out = provenance(seed);
    for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
    out += "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_12(row[i]);
        out += "\n";
    }
    return out;
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text << std::flush;
        if (!std::cout) throw std::runtime_error("write to stdout failed");
    } else {
        write_text_file(path, text);
    }
}

json interval_json(const RealInterval& iv, const SufficientStats& st) {
    const ScaledSummary s = scaled_summary(iv, st);
    return {{"lower", r12(iv.lower)},
            {"upper", r12(iv.upper)},
            {"scaled_offset", r12(s.scaled_offset)},
            {"scaled_half_length", r12(s.scaled_half_length)}};
}

json stats_json(const SufficientStats& st) {
    return {{"theta_hat", r12(st.theta_hat)}, {"tau_hat", r12(st.tau_hat)},
            {"sigma_hat", r12(st.sigma_hat)}, {"m", st.m},
            {"rho", r12(st.rho)}};
}

} // namespace

int main(int argc, char** argv) {
    for (int i = 0; i < argc; ++i) g_command_line += (i ? " " : "") + std::string(argv[i]);

    CLI::App app{"Credible intervals under slab-and-spike priors and prior-informed spline confidence "
                 "intervals"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    std::string output;

    // posterior
    auto* posterior = app.add_subcommand("posterior", "Marginal posterior density of theta as CSV");
    DataOptions post_data;
    PriorOptions post_prior;
    int points = 2001;
    post_data.add(posterior);
    post_prior.add(posterior);
    posterior->add_option("--points", points, "Number of grid points")
        ->check(CLI::Range(2, 10000000))
        ->capture_default_str();
    posterior->add_option("-o,--output", output, "Output path (default stdout)");

    // credible
    auto* credible = app.add_subcommand("credible", "Bayesian credible interval as JSON");
    DataOptions cred_data;
    PriorOptions cred_prior;
    double alpha = 0.05;
    std::string kind = "equi";
    cred_data.add(credible);
    cred_prior.add(credible);
    credible->add_option("--alpha", alpha, "Posterior mass outside the set")->capture_default_str();
    credible->add_option("--kind", kind, "equi | shortest | hpd")
        ->check(CLI::IsMember({"equi", "shortest", "hpd"}))
        ->capture_default_str();
    credible->add_option("-o,--output", output, "Output path (default stdout)");

    // design
    auto* design_cmd = app.add_subcommand("design", "Optimize the spline pair (b, s)");
    std::string config_path;
    design_cmd->add_option("--config", config_path, "DesignConfig JSON (defaults if omitted)")
        ->check(CLI::ExistingFile);
    design_cmd->add_option("-o,--output", output, "SplinePair JSON path (default stdout)");

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "Coverage and scaled expected length over gamma");
    std::string spline_path;
    double gamma_max = 20.0, gamma_step = 0.05;
    evaluate->add_option("--spline", spline_path, "SplinePair JSON")->required()->check(CLI::ExistingFile);
    evaluate->add_option("--gamma-max", gamma_max)->capture_default_str();
    evaluate->add_option("--gamma-step", gamma_step)->capture_default_str();
    evaluate->add_option("-o,--output", output, "CSV path (default stdout)");

    // apply
    auto* apply = app.add_subcommand("apply", "Spline confidence interval J(b, s) for given data");
    DataOptions apply_data;
    apply_data.add(apply);
    apply->add_option("--spline", spline_path, "SplinePair JSON")->required()->check(CLI::ExistingFile);
    apply->add_option("-o,--output", output, "Output path (default stdout)");

    // simulate
    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo coverage and scaled length");
    std::string procedure = "standard";
    SimConfig sim;
    PriorOptions sim_prior;
    sim_prior.xi = 0.5;
    simulate_cmd->add_option("--procedure", procedure, "standard | kg | equi | shortest")
        ->check(CLI::IsMember({"standard", "kg", "equi", "shortest"}))
        ->capture_default_str();
    simulate_cmd->add_option("--spline", spline_path, "SplinePair JSON (procedure kg)");
    simulate_cmd->add_option("--gamma", sim.gamma)->capture_default_str();
    simulate_cmd->add_option("--n-rep", sim.n_rep)->capture_default_str();
    simulate_cmd->add_option("--seed", sim.seed)->capture_default_str();
    simulate_cmd->add_option("--m", sim.m)->capture_default_str();
    simulate_cmd->add_option("--rho", sim.rho)->capture_default_str();
    simulate_cmd->add_option("--streams", sim.streams)->capture_default_str();
    simulate_cmd->add_option("--alpha", alpha)->capture_default_str();
    simulate_cmd->add_option("--family", sim_prior.family)->check(CLI::IsMember({"s3", "s4"}));
    simulate_cmd->add_option("--xi", sim_prior.xi, "Prior mass (equi / shortest)");
    simulate_cmd->add_option("--g", sim_prior.g);
    simulate_cmd->add_option("-o,--output", output, "Output path (default stdout)");

    // figure
    auto* figure = app.add_subcommand("figure", "CSV data behind a figure");
    std::string figure_id;
    FigureOptions fig;
    std::vector<double> sigma_hats;
    double step = 0.0;
    figure->add_option("id", figure_id, "fig1 ... fig7")
        ->required()
        ->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7"}));
    figure->add_option("--spline", spline_path, "SplinePair JSON (fig6, fig7)");
    figure->add_option("--step", step, "Grid step override");
    figure->add_option("--sigma-hats", sigma_hats, "sigma_hat values (fig2-fig5)")->delimiter(',');
    figure->add_option("-o,--output", output, "CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (posterior->parsed()) {
            const SufficientStats st = post_data.resolve();
            const PosteriorMixture mix = build_posterior(st, post_prior.spec());
            emit(output, to_csv(density_table(mix, points)));
        } else if (credible->parsed()) {
            const SufficientStats st = cred_data.resolve();
            const PosteriorMixture mix = build_posterior(st, cred_prior.spec());
            json out{{"kind", kind}, {"alpha", alpha}, {"stats", stats_json(st)},
                     {"lambda", r12(mix.weight_spike)}};
            std::vector<RealInterval> ivs;
            if (kind == "equi") {
                ivs.push_back(equi_tailed(mix, alpha));
            } else if (kind == "shortest") {
                const ShortestResult sr = shortest(mix, alpha);
                ivs.push_back(sr.interval);
                out["eta"] = r12(sr.eta);
                out["boundary_limit"] = sr.boundary_limit;
            } else {
                const HpdResult h = hpd(mix, alpha);
                ivs = h.set.intervals;
                out["density_level"] = r12(h.level);
                out["mass"] = r12(h.mass);
            }
            json arr = json::array();
            double total = 0.0;
            for (const auto& iv : ivs) {
                arr.push_back(interval_json(iv, st));
                total += iv.length();
            }
            out["intervals"] = arr;
            const RealInterval hull{ivs.front().lower, ivs.back().upper};
            const ScaledSummary s = scaled_summary(hull, st);
            out["scaled_offset"] = r12(s.scaled_offset);
            out["scaled_half_length"] = r12(total / (2.0 * st.sigma_hat));
            out["total_length"] = r12(total);
            emit(output, out.dump(2) + "\n");
        } else if (design_cmd->parsed()) {
            const DesignConfig cfg =
                config_path.empty() ? DesignConfig{} : parse_design_config(read_text_file(config_path));
            const DesignResult res = design(cfg);
            std::fprintf(stderr,
                         "objective %.10g  min coverage %.8f (grid) %.8f (dense, gamma %.3f)  "
                         "converged %s\n",
                         res.objective, res.min_coverage_constraint_grid,
                         res.min_coverage_verification_grid, res.gamma_at_min_coverage,
                         res.converged ? "yes" : "no");
            if (!res.feasible) {
                std::fprintf(stderr, "design infeasible; last iterate:\n%s",
                             spline_pair_to_json(res.spline).c_str());
                return 3;
            }
            emit(output, spline_pair_to_json(res.spline));
        } else if (evaluate->parsed()) {
            const SplinePair sp = spline_pair_from_json(read_text_file(spline_path));
            const auto grid = GammaGrid::uniform(gamma_max, gamma_step);
            Table t{{"gamma", "coverage", "e", "e2"}, {}};
            for (double g : grid.points) {
                const double e = scaled_expected_length(g, sp);
                t.rows.push_back({g, coverage_probability(g, sp), e, e * e});
            }
            emit(output, to_csv(t));
        } else if (apply->parsed()) {
            const SplinePair sp = spline_pair_from_json(read_text_file(spline_path));
            const SufficientStats st = apply_data.resolve();
            const RealInterval iv = kg_interval(st, sp);
            json out = interval_json(iv, st);
            out["r"] = r12(st.r());
            out["stats"] = stats_json(st);
            emit(output, out.dump(2) + "\n");
        } else if (simulate_cmd->parsed()) {
            IntervalProcedure proc;
            std::optional<SplinePair> sp;
            const double t_m = two_sided_t(alpha, sim.m);
            if (procedure == "standard") {
                proc = [t_m](const SufficientStats& st) {
                    return RealInterval{st.theta_hat - t_m * st.sigma_hat,
                                        st.theta_hat + t_m * st.sigma_hat};
                };
            } else if (procedure == "kg") {
                if (spline_path.empty()) throw std::invalid_argument("procedure kg needs --spline");
                sp = spline_pair_from_json(read_text_file(spline_path));
                if (sp->m() != sim.m || sp->rho() != sim.rho || sp->alpha() != alpha) {
                    throw std::invalid_argument(
                        "spline pair (m, rho, alpha) does not match the simulation flags");
                }
                proc = [&sp](const SufficientStats& st) { return kg_interval(st, *sp); };
            } else {
                const PriorSpec prior = sim_prior.spec();
                prior.validate(sim.m);
                const bool use_shortest = procedure == "shortest";
                proc = [prior, alpha, use_shortest](const SufficientStats& st) {
                    const PosteriorMixture mix = build_posterior(st, prior);
                    return use_shortest ? shortest(mix, alpha).interval : equi_tailed(mix, alpha);
                };
            }
            const SimResult r = simulate(proc, sim, alpha);
            json out{{"procedure_id", procedure},
                     {"rng", r.rng},
                     {"seed", r.seed},
                     {"n_rep", r.n_rep},
                     {"streams", sim.streams},
                     {"gamma", sim.gamma},
                     {"m", sim.m},
                     {"rho", sim.rho},
                     {"alpha", alpha},
                     {"coverage", {{"estimate", r12(r.coverage)}, {"se", r12(r.coverage_se)}}},
                     {"sel", {{"estimate", r12(r.sel)}, {"se", r12(r.sel_se)}}}};
            emit(output, out.dump(2) + "\n");
        } else if (figure->parsed()) {
            if (!sigma_hats.empty()) fig.sigma_hats = sigma_hats;
            if (step > 0.0) fig.r_step = fig.gamma_step = step;
            if (!spline_path.empty()) fig.spline = spline_pair_from_json(read_text_file(spline_path));
            emit(output, to_csv(figure_table(figure_id, fig)));
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
