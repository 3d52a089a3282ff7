#include "npstrain/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "npstrain/errors.hpp"

namespace npstrain {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
    if (!obj.is_object()) throw ConfigError("'" + where + "' must be an object");
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key())) {
            throw ConfigError("unknown key '" + item.key() + "' in '" + where + "'");
        }
    }
}

template <class T>
void read(const json& obj, const std::string& key, T& out, const std::string& where) {
    if (!obj.contains(key)) return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("'" + where + "." + key + "' has the wrong type");
    }
}

void read_double(const json& obj, const std::string& key, double& out, const std::string& where) {
    if (!obj.contains(key)) return;
    if (!obj.at(key).is_number()) throw ConfigError("'" + where + "." + key + "' must be a number");
    out = obj.at(key).get<double>();
}

cplx read_complex(const json& value, const std::string& where) {
    if (value.is_number()) return {value.get<double>(), 0.0};
    if (value.is_array() && value.size() == 2 && value[0].is_number() && value[1].is_number()) {
        return {value[0].get<double>(), value[1].get<double>()};
    }
    throw ConfigError("'" + where + "' must be a number or a [real, imag] pair");
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

GeometryConfig parse_geometry(const json& g, const std::string& where, GeometryConfig out) {
    check_keys(g, where, {"shape", "radius", "semi_axis_1", "semi_axis_2", "fourier_coefficients", "period", "node_count"});
    read(g, "shape", out.shape, where);
    read_double(g, "radius", out.radius, where);
    read_double(g, "semi_axis_1", out.semi_axis_1, where);
    read_double(g, "semi_axis_2", out.semi_axis_2, where);
    read_double(g, "period", out.period, where);
    read(g, "node_count", out.node_count, where);
    if (g.contains("fourier_coefficients")) {
        out.fourier.clear();
        const json& list = g.at("fourier_coefficients");
        if (!list.is_array()) throw ConfigError("'" + where + ".fourier_coefficients' must be a list");
        for (const auto& term : list) {
            if (!term.is_array() || term.size() != 3 || !term[0].is_number_integer() || !term[1].is_number() ||
                !term[2].is_number()) {
                throw ConfigError("'" + where + ".fourier_coefficients' entries must be [k, real, imag]");
            }
            out.fourier.push_back({term[0].get<int>(), {term[1].get<double>(), term[2].get<double>()}});
        }
    }
    if (out.shape != "disk" && out.shape != "ellipse" && out.shape != "fourier") {
        throw ConfigError("'" + where + ".shape' must be disk, ellipse or fourier, got '" + out.shape + "'");
    }
    if (out.shape == "fourier" && out.fourier.empty()) {
        throw ConfigError("'" + where + "' with shape fourier needs fourier_coefficients");
    }
    if (!(out.period > 0.0)) throw ConfigError("'" + where + ".period' must be positive");
    if (out.node_count < kMinNodeCount || out.node_count % 2 != 0) {
        throw ConfigError("'" + where + ".node_count' must be even and at least " + std::to_string(kMinNodeCount));
    }
    return out;
}

json geometry_json(const GeometryConfig& g) {
    json j;
    j["shape"] = g.shape;
    j["radius"] = g.radius;
    j["semi_axis_1"] = g.semi_axis_1;
    j["semi_axis_2"] = g.semi_axis_2;
    json terms = json::array();
    for (const auto& t : g.fourier) terms.push_back(json::array({t.k, t.coefficient.real(), t.coefficient.imag()}));
    j["fourier_coefficients"] = terms;
    j["period"] = g.period;
    j["node_count"] = g.node_count;
    return j;
}

} // namespace

CellGeometry GeometryConfig::make_cell(double period_ratio) const {
    if (shape == "disk") return make_disk_cell(radius, period_ratio, node_count);
    if (shape == "ellipse") return make_ellipse_cell(semi_axis_1, semi_axis_2, period_ratio, node_count);
    return make_smooth_cell(fourier, period_ratio, node_count);
}

std::string RunConfig::to_json() const {
    json j;
    j["geometry"] = geometry_json(geometry);
    json mat;
    mat["mu0_H_per_m"] = material.mu0;
    mat["mu_m_relative"] = material.mu_m / material.mu0;
    mat["eps0_F_per_m"] = material.eps0;
    mat["eps_m_relative"] = material.eps_m / material.eps0;
    mat["eps_c_relative"] = complex_json(material.eps_c);
    mat["plasma_frequency_is_angular"] = plasma_frequency_is_angular;
    mat["plasma_frequency_per_s"] =
        plasma_frequency_is_angular ? material.plasma_frequency : material.plasma_frequency / (2.0 * std::numbers::pi);
    mat["collision_time_s"] = std::isinf(material.collision_time) ? json(nullptr) : json(material.collision_time);
    j["material"] = mat;
    json sw;
    sw["min_wavelength_nm"] = window.min_wavelength * 1e9;
    sw["max_wavelength_nm"] = window.max_wavelength * 1e9;
    sw["samples"] = window.samples;
    sw["periods"] = periods;
    j["sweep"] = sw;
    json cap;
    cap["radius_m"] = capsule.r;
    cap["particle_count"] = capsule.N;
    cap["particle_size_m"] = capsule.delta_phys;
    cap["beta_override_m"] = beta_override ? complex_json(*beta_override) : json(nullptr);
    j["capsule"] = cap;
    j["calibration_file"] = calibration_file;
    json val;
    val["shape_etas"] = validate.shape_etas;
    val["broken_quadrature"] = validate.broken_quadrature;
    val["shape_cell"] = geometry_json(validate.shape_cell);
    j["validate"] = val;
    j["output_dir"] = output_dir;
    return j.dump(2);
}

std::vector<std::string> RunConfig::header_lines() const {
    std::vector<std::string> lines{"resolved config:"};
    std::istringstream is(to_json());
    std::string line;
    while (std::getline(is, line)) lines.push_back(line);
    return lines;
}

RunConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    check_keys(root, "config", {"geometry", "material", "sweep", "capsule", "calibration_file", "validate", "output_dir"});
    RunConfig cfg;
    if (root.contains("geometry")) cfg.geometry = parse_geometry(root.at("geometry"), "geometry", cfg.geometry);

    if (root.contains("material")) {
        const json& m = root.at("material");
        check_keys(m, "material", {"mu0_H_per_m", "mu_m_relative", "eps0_F_per_m", "eps_m_relative", "eps_c_relative",
                                   "plasma_frequency_per_s", "plasma_frequency_is_angular", "collision_time_s"});
        double mu_rel = cfg.material.mu_m / cfg.material.mu0;
        double eps_rel = cfg.material.eps_m / cfg.material.eps0;
        read_double(m, "mu0_H_per_m", cfg.material.mu0, "material");
        read_double(m, "mu_m_relative", mu_rel, "material");
        read_double(m, "eps0_F_per_m", cfg.material.eps0, "material");
        read_double(m, "eps_m_relative", eps_rel, "material");
        if (m.contains("eps_c_relative")) cfg.material.eps_c = read_complex(m.at("eps_c_relative"), "material.eps_c_relative");
        read(m, "plasma_frequency_is_angular", cfg.plasma_frequency_is_angular, "material");
        double wp = cfg.material.plasma_frequency;
        read_double(m, "plasma_frequency_per_s", wp, "material");
        cfg.material.plasma_frequency = cfg.plasma_frequency_is_angular ? wp : 2.0 * std::numbers::pi * wp;
        if (m.contains("collision_time_s")) {
            if (m.at("collision_time_s").is_null()) {
                cfg.material.collision_time = std::numeric_limits<double>::infinity();
            } else {
                read_double(m, "collision_time_s", cfg.material.collision_time, "material");
            }
        }
        cfg.material.mu_m = mu_rel * cfg.material.mu0;
        cfg.material.eps_m = eps_rel * cfg.material.eps0;
    }
    try {
        cfg.material.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("material: ") + e.what());
    }

    if (root.contains("sweep")) {
        const json& s = root.at("sweep");
        check_keys(s, "sweep", {"min_wavelength_nm", "max_wavelength_nm", "samples", "periods"});
        double lo = cfg.window.min_wavelength * 1e9;
        double hi = cfg.window.max_wavelength * 1e9;
        read_double(s, "min_wavelength_nm", lo, "sweep");
        read_double(s, "max_wavelength_nm", hi, "sweep");
        read(s, "samples", cfg.window.samples, "sweep");
        read(s, "periods", cfg.periods, "sweep");
        cfg.window.min_wavelength = lo / 1e9;
        cfg.window.max_wavelength = hi / 1e9;
    }
    try {
        cfg.window.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("sweep: ") + e.what());
    }
    if (cfg.periods.empty()) throw ConfigError("sweep.periods must not be empty");
    for (double p : cfg.periods) {
        if (!(p > 0.0)) throw ConfigError("sweep.periods must be positive");
    }

    if (root.contains("capsule")) {
        const json& c = root.at("capsule");
        check_keys(c, "capsule", {"radius_m", "particle_count", "particle_size_m", "beta_override_m"});
        if (!c.contains("radius_m") || c.at("radius_m").is_null()) throw ConfigError("capsule.radius_m is missing");
        read_double(c, "radius_m", cfg.capsule.r, "capsule");
        read(c, "particle_count", cfg.capsule.N, "capsule");
        read_double(c, "particle_size_m", cfg.capsule.delta_phys, "capsule");
        if (c.contains("beta_override_m") && !c.at("beta_override_m").is_null()) {
            cfg.beta_override = read_complex(c.at("beta_override_m"), "capsule.beta_override_m");
        }
    }
    try {
        cfg.capsule.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("capsule: ") + e.what());
    }

    read(root, "calibration_file", cfg.calibration_file, "config");
    read(root, "output_dir", cfg.output_dir, "config");

    if (root.contains("validate")) {
        const json& v = root.at("validate");
        check_keys(v, "validate", {"shape_etas", "broken_quadrature", "shape_cell"});
        read(v, "shape_etas", cfg.validate.shape_etas, "validate");
        read(v, "broken_quadrature", cfg.validate.broken_quadrature, "validate");
        if (v.contains("shape_cell")) {
            cfg.validate.shape_cell = parse_geometry(v.at("shape_cell"), "validate.shape_cell", cfg.validate.shape_cell);
        }
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw ConfigError("'" + item + "' is not a number");
        }
        if (item.find_first_not_of(" \t", used) != std::string::npos) throw ConfigError("'" + item + "' is not a number");
        out.push_back(v);
    }
    if (out.empty()) throw ConfigError("empty number list");
    return out;
}

} // namespace npstrain
