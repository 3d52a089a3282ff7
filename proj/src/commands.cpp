#include "npstrain/commands.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "npstrain/capsule_scattering.hpp"
#include "npstrain/checks.hpp"
#include "npstrain/csv.hpp"
#include "npstrain/errors.hpp"
#include "npstrain/resonance_sweep.hpp"
#include "npstrain/shape_deriv.hpp"
#include "npstrain/spectral.hpp"
#include "npstrain/strain.hpp"

namespace npstrain {

namespace fs = std::filesystem;

namespace {

fs::path output_path(const RunConfig& cfg, const std::string& name) {
    const fs::path dir(cfg.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + cfg.output_dir + "': " + ec.message());
    return dir / name;
}

template <class Writer>
std::string write_file(const RunConfig& cfg, const std::string& name, Writer&& writer) {
    const fs::path path = output_path(cfg, name);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    writer(out);
    return path.string();
}

std::vector<std::string> header(const RunConfig& cfg, const std::string& command) {
    std::vector<std::string> lines{"npstrain " + command};
    const auto cfg_lines = cfg.header_lines();
    lines.insert(lines.end(), cfg_lines.begin(), cfg_lines.end());
    return lines;
}

std::string period_tag(double period) { return fmt::format("{:.6g}", period); }

} // namespace

CommandResult cmd_eigs(const RunConfig& cfg) {
    const CellGeometry cell = cfg.geometry.make_cell();
    const SpectralDecomposition spec = eigendecompose(cell);
    auto lines = header(cfg, "eigs");
    lines.push_back("node_count=" + std::to_string(cell.size()) + " period_ratio=" + csv::number(cell.period_ratio()));
    CommandResult result;
    result.files.push_back(write_file(cfg, "eigenvalues.csv", [&](std::ostream& os) { write_eigenvalue_csv(os, spec, lines); }));
    const int j = spec.dominant_mode();
    result.report = fmt::format("lambda_0 = {:.15g}\ndominant nu2 mode {}: lambda = {:.15g}, moment = {:.15g}\n",
                                spec.eigenvalues[0], j, spec.eigenvalues[j], spec.moments_nu2[j]);
    return result;
}

CommandResult cmd_sweep(const RunConfig& cfg) {
    std::vector<ResonanceCurve> curves;
    const CalibrationTable table = peak_vs_period([&](double p) { return cfg.geometry.make_cell(p); }, cfg.periods,
                                                  cfg.material, cfg.window, &curves);
    CommandResult result;
    const auto lines = header(cfg, "sweep");
    std::ostringstream report;
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const std::string name = "sweep_period_" + period_tag(cfg.periods[i]) + ".csv";
        result.files.push_back(write_file(cfg, name, [&](std::ostream& os) { write_curve_csv(os, curves[i], lines); }));
        const auto& row = table.rows[i];
        if (row.found) {
            report << fmt::format("period {:<8g} peak {:.6f} nm  |alpha2+| {:.6g}  mode {}\n", row.period,
                                  row.peak_wavelength * 1e9, row.peak_magnitude, row.mode_index);
        } else {
            report << fmt::format("period {:<8g} no peak in window\n", row.period);
        }
    }
    result.files.push_back(
        write_file(cfg, "calibration.csv", [&](std::ostream& os) { write_calibration_csv(os, table, lines); }));
    const int dir = table.direction();
    report << "monotone: " << (table.monotone() ? "yes" : "no") << ", shift with increasing period: "
           << (dir > 0 ? "red" : dir < 0 ? "blue" : "none") << '\n';
    result.report = report.str();
    return result;
}

CommandResult cmd_scatter(const RunConfig& cfg) {
    const CellGeometry cell = cfg.geometry.make_cell();
    const SpectralDecomposition spec = eigendecompose(cell);
    const std::vector<double> grid = cfg.window.grid();
    const cplx* override_beta = cfg.beta_override ? &*cfg.beta_override : nullptr;
    const ExtinctionCurve ext =
        extinction_spectrum(cfg.capsule.r, cfg.material, spec, cfg.capsule.delta_phys, grid, override_beta);
    const ResonanceCurve alpha = sweep(spec, cfg.material, cfg.window, false);

    auto lines = header(cfg, "scatter");
    std::ostringstream report;
    for (const Peak& p : find_peaks(ext.wavelengths, ext.extinction)) {
        lines.push_back("extinction peak wavelength_m=" + csv::number(ext.wavelengths[p.grid_index]));
        report << fmt::format("extinction peak at {:.3f} nm\n", ext.wavelengths[p.grid_index] * 1e9);
    }
    for (const Peak& p : alpha.peaks) {
        lines.push_back("alpha2 peak wavelength_m=" + csv::number(alpha.wavelengths[p.grid_index]));
        report << fmt::format("|alpha2+| peak at {:.3f} nm\n", alpha.wavelengths[p.grid_index] * 1e9);
    }
    CommandResult result;
    result.files.push_back(write_file(cfg, "extinction.csv", [&](std::ostream& os) { write_extinction_csv(os, ext, lines); }));
    result.report = report.str();
    return result;
}

CommandResult cmd_invert(const RunConfig& cfg, double peak_wavelength_nm) {
    const std::string path =
        cfg.calibration_file.empty() ? (fs::path(cfg.output_dir) / "calibration.csv").string() : cfg.calibration_file;
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open calibration file '" + path + "' (run the sweep command first)");
    const CalibrationTable table = read_calibration_csv(in);
    const CapsuleState s = invert_peak_to_deformation(peak_wavelength_nm * 1e-9, table, cfg.capsule);

    auto lines = header(cfg, "invert");
    lines.push_back("calibration file: " + path);
    lines.push_back("peak_wavelength_m=" + csv::number(peak_wavelength_nm * 1e-9));
    CommandResult result;
    result.files.push_back(write_file(cfg, "inversion.csv", [&](std::ostream& os) {
        csv::write_comments(os, lines);
        csv::write_row(os, {"r_m", "N", "d_m", "P_m", "L1_m", "L2_m", "D", "theta_rad", "period_ratio"});
        csv::write_row(os, {csv::number(s.r), std::to_string(s.N), csv::number(s.d), csv::number(s.P),
                            csv::number(s.L1), csv::number(s.L2), csv::number(s.D), csv::number(s.theta),
                            csv::number(s.period_ratio)});
    }));
    result.report = fmt::format("r      = {:.10g} m\nN      = {}\nd      = {:.10g} m\nP      = {:.10g} m\n"
                                "L1     = {:.10g} m\nL2     = {:.10g} m\nD      = {:.10g}\ntheta  = {}\n"
                                "period = {:.10g}\n",
                                s.r, s.N, s.d, s.P, s.L1, s.L2, s.D, s.theta, s.period_ratio);
    return result;
}

CommandResult cmd_validate(const RunConfig& cfg) {
    const CellGeometry cell = cfg.geometry.make_cell();
    const SingularQuadrature rule =
        cfg.validate.broken_quadrature ? SingularQuadrature::plain_trapezoid : SingularQuadrature::kernel_split;
    std::vector<CheckResult> checks = operator_checks(cell, rule);

    if (cfg.geometry.shape == "disk" || cfg.geometry.shape == "ellipse") {
        try {
            const SpectralDecomposition spec =
                eigendecompose(cell, assemble_single_layer(cell, rule), assemble_np_adjoint(cell));
            const double a1 = std::abs(alpha_infinity(spec, cplx(0.0, 0.05)).alpha1_plus);
            checks.push_back({"alpha1_symmetric_shape", a1, 1e-8, a1 < 1e-8, "|alpha1+| at lambda = 0.05i"});
        } catch (const Error& e) {
            checks.push_back({"alpha1_symmetric_shape", 1.0, 1e-8, false, e.what()});
        }
    }

    std::string shape_text;
    try {
        const CellGeometry shape_cell = cfg.validate.shape_cell.make_cell();
        const SpectralDecomposition spec = eigendecompose(shape_cell);
        const ShapeDerivativeReport rep =
            validate_shape_derivative(shape_cell, spec.dominant_mode(), cfg.validate.shape_etas);
        shape_text = rep.describe();
        const bool ok = rep.sign_consistent && (rep.ladder.size() < 2 || rep.error_exponent >= 0.9);
        checks.push_back({"shape_derivative", rep.error_exponent, 0.9, ok,
                          "sign reading " + to_string(rep.selected) + ", error exponent >= 0.9"});
    } catch (const Error& e) {
        checks.push_back({"shape_derivative", 0.0, 0.9, false, e.what()});
        shape_text = e.what();
    }

    CommandResult result;
    std::ostringstream report;
    for (const auto& c : checks) {
        report << fmt::format("{:<4} {:<44} value {:<12.4e} threshold {:<10.3g} {}\n", c.pass ? "PASS" : "FAIL",
                              c.name, c.value, c.threshold, c.detail);
        result.ok = result.ok && c.pass;
    }
    report << "shape derivative:\n" << shape_text << '\n';
    result.report = report.str();
    auto lines = header(cfg, "validate");
    result.files.push_back(write_file(cfg, "validate.csv", [&](std::ostream& os) {
        std::vector<std::string> all = lines;
        std::istringstream sd(shape_text);
        std::string line;
        while (std::getline(sd, line)) all.push_back(line);
        csv::write_comments(os, all);
        csv::write_row(os, {"check", "value", "threshold", "pass"});
        for (const auto& c : checks) {
            csv::write_row(os, {c.name, csv::number(c.value), csv::number(c.threshold), c.pass ? "true" : "false"});
        }
    }));
    return result;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return 2;
    if (dynamic_cast<const DomainError*>(&e)) return 3;
    if (dynamic_cast<const NumericalError*>(&e)) return 4;
    return 1;
}

} // namespace npstrain
