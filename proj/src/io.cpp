#include "interval_lab/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace interval_lab {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("malformed JSON: ") + e.what());
    }
}

template <class T>
T field(const json& j, const char* key) {
    if (!j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw FormatError(std::string("bad field '") + key + "': " + e.what());
    }
}

Eigen::VectorXd to_vector(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

GammaGrid parse_grid(const json& j, const char* key) {
    const json& g = j.at(key);
    return GammaGrid::uniform(field<double>(g, "max"), field<double>(g, "step"));
}

} // namespace

RegressionProblem parse_problem(const std::string& json_text) {
    const json j = parse_json(json_text);
    const auto rows = field<std::vector<std::vector<double>>>(j, "X");
    if (rows.empty() || rows.front().empty()) throw FormatError("X must be a non-empty matrix");
    const std::size_t p = rows.front().size();
    RegressionProblem prob;
    prob.X.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(p));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != p) throw FormatError("X rows have unequal length");
        for (std::size_t k = 0; k < p; ++k) {
            prob.X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k];
        }
    }
    prob.y = to_vector(field<std::vector<double>>(j, "y"));
    prob.a_star = to_vector(field<std::vector<double>>(j, "a"));
    prob.c_star = to_vector(field<std::vector<double>>(j, "c"));
    prob.t_star = j.contains("t") ? field<double>(j, "t") : 0.0;
    return prob;
}

std::string format_exact(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_12(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string spline_pair_to_json(const SplinePair& sp) {
    auto list = [](const std::vector<double>& v) {
        std::string out = "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ", ";
            out += format_exact(v[i]);
        }
        return out + "]";
    };
    std::ostringstream os;
    os << "{\n"
       << "  \"d\": " << format_exact(sp.d()) << ",\n"
       << "  \"knots\": " << list(sp.knots()) << ",\n"
       << "  \"b\": " << list(sp.b_values()) << ",\n"
       << "  \"s\": " << list(sp.s_values()) << ",\n"
       << "  \"m\": " << sp.m() << ",\n"
       << "  \"alpha\": " << format_exact(sp.alpha()) << ",\n"
       << "  \"rho\": " << format_exact(sp.rho()) << "\n"
       << "}\n";
    return os.str();
}

SplinePair spline_pair_from_json(const std::string& json_text) {
    const json j = parse_json(json_text);
    try {
        return SplinePair(field<double>(j, "d"), field<std::vector<double>>(j, "knots"),
                          field<std::vector<double>>(j, "b"), field<std::vector<double>>(j, "s"),
                          field<int>(j, "m"), field<double>(j, "alpha"), field<double>(j, "rho"));
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("invalid spline pair: ") + e.what());
    }
}

DesignConfig parse_design_config(const std::string& json_text) {
    const json j = parse_json(json_text);
    DesignConfig cfg;
    if (j.contains("m")) cfg.m = field<int>(j, "m");
    if (j.contains("rho")) cfg.rho = field<double>(j, "rho");
    if (j.contains("alpha")) cfg.alpha = field<double>(j, "alpha");
    if (j.contains("xi_tilde")) cfg.xi_tilde = field<double>(j, "xi_tilde");
    if (j.contains("d")) cfg.d = field<double>(j, "d");
    if (j.contains("knots")) cfg.knots = field<std::vector<double>>(j, "knots");
    if (j.contains("constraint_grid")) cfg.constraint_grid = parse_grid(j, "constraint_grid");
    if (j.contains("verification_grid")) cfg.verification_grid = parse_grid(j, "verification_grid");
    if (j.contains("tolerances")) {
        const json& t = j.at("tolerances");
        DesignTolerances& tol = cfg.tolerances;
        if (t.contains("objective_change")) tol.objective_change = field<double>(t, "objective_change");
        if (t.contains("constraint_violation")) {
            tol.constraint_violation = field<double>(t, "constraint_violation");
        }
        if (t.contains("max_outer")) tol.max_outer = field<int>(t, "max_outer");
        if (t.contains("max_inner")) tol.max_inner = field<int>(t, "max_inner");
    }
    return cfg;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

} // namespace interval_lab
