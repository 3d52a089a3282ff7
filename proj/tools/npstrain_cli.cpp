// Command-line front end: eigs | sweep | scatter | invert | validate.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "npstrain/commands.hpp"
#include "npstrain/config.hpp"
#include "npstrain/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Plasmonic metasurface strain sensor: periodic NP spectra, resonance sweeps, capsule scattering"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string out_dir;
    std::string periods;
    std::optional<double> peak_nm;
    bool break_quadrature = false;
    app.add_option("--config", config_path, "JSON config file (defaults apply to missing keys)");
    app.add_option("--out", out_dir, "output directory (overrides output_dir)");
    app.add_option("--periods", periods, "comma-separated period ratios d/delta (overrides sweep.periods)");
    app.add_option("--peak-wavelength-nm", peak_nm, "measured absorption peak for invert");
    app.add_flag("--break-quadrature", break_quadrature, "validate with the plain trapezoid single layer (negative control)");

    auto* eigs = app.add_subcommand("eigs", "NP eigenvalues and nu2 moments -> eigenvalues.csv");
    auto* sweep = app.add_subcommand("sweep", "|alpha2+| vs wavelength per period -> sweep_period_*.csv, calibration.csv");
    auto* scatter = app.add_subcommand("scatter", "capsule extinction spectrum -> extinction.csv");
    auto* invert = app.add_subcommand("invert", "peak wavelength -> capsule deformation -> inversion.csv");
    auto* validate = app.add_subcommand("validate", "operator, spectral and shape-derivative invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        npstrain::RunConfig cfg = config_path.empty() ? npstrain::parse_config("{}") : npstrain::load_config(config_path);
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        if (!periods.empty()) cfg.periods = npstrain::parse_number_list(periods);
        if (break_quadrature) cfg.validate.broken_quadrature = true;

        npstrain::CommandResult result;
        if (eigs->parsed()) {
            result = npstrain::cmd_eigs(cfg);
        } else if (sweep->parsed()) {
            result = npstrain::cmd_sweep(cfg);
        } else if (scatter->parsed()) {
            result = npstrain::cmd_scatter(cfg);
        } else if (invert->parsed()) {
            if (!peak_nm) throw npstrain::ConfigError("invert needs --peak-wavelength-nm");
            result = npstrain::cmd_invert(cfg, *peak_nm);
        } else if (validate->parsed()) {
            result = npstrain::cmd_validate(cfg);
        }
        std::cout << result.report;
        for (const auto& f : result.files) std::cout << "wrote " << f << '\n';
        if (!result.ok) {
            std::cerr << "error: one or more checks failed\n";
            return 4;
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return npstrain::exit_code_for(e);
    }
}
