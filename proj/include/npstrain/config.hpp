#pragma once

#include <optional>
#include <string>
#include <vector>

#include "npstrain/capsule_scattering.hpp"
#include "npstrain/dispersion.hpp"
#include "npstrain/geometry.hpp"
#include "npstrain/resonance_sweep.hpp"
#include "npstrain/shape_deriv.hpp"
#include "npstrain/strain.hpp"

namespace npstrain {

struct GeometryConfig {
    std::string shape = "disk"; // disk | ellipse | fourier
    double radius = 0.45;
    double semi_axis_1 = 0.3;
    double semi_axis_2 = 0.2;
    std::vector<FourierTerm> fourier;
    double period = 1.0;
    int node_count = 256;

    [[nodiscard]] CellGeometry make_cell(double period_ratio) const;
    [[nodiscard]] CellGeometry make_cell() const { return make_cell(period); }
};

struct ValidateConfig {
    std::vector<double> shape_etas{1e-2, 1e-3, 1e-4};
    /// Cell for the shape-derivative check (a simple mode is required).
    GeometryConfig shape_cell{"ellipse", 0.45, 0.3, 0.2, {}, 1.0, 256};
    /// Negative control: plain trapezoid for the single layer.
    bool broken_quadrature = false;
};

/// Fully resolved run configuration. All lengths in the ξ-cell are
/// dimensionless; physical quantities are SI unless a key says otherwise.
struct RunConfig {
    GeometryConfig geometry;
    MaterialParams material;
    bool plasma_frequency_is_angular = true;
    SweepWindow window;
    std::vector<double> periods{1.0, 1.25, 1.5, 1.75, 2.0};
    CapsuleSpec capsule;
    std::optional<cplx> beta_override;
    std::string calibration_file; // empty: <output_dir>/calibration.csv
    ValidateConfig validate;
    std::string output_dir = "out";

    /// Canonical JSON text of every resolved field, keys sorted.
    [[nodiscard]] std::string to_json() const;
    /// to_json() split into lines, for CSV header blocks.
    [[nodiscard]] std::vector<std::string> header_lines() const;
};

/// Parses JSON text. Missing keys keep their defaults; unknown keys,
/// wrong types and invalid values throw ConfigError.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Comma-separated list of numbers, as accepted by --periods.
std::vector<double> parse_number_list(const std::string& text);

} // namespace npstrain
