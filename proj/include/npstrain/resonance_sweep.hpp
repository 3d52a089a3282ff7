#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "npstrain/dispersion.hpp"
#include "npstrain/geometry.hpp"
#include "npstrain/spectral.hpp"

namespace npstrain {

struct SweepWindow {
    double min_wavelength = 400e-9; // m
    double max_wavelength = 2000e-9;
    int samples = 400;

    /// Throws DomainError for an empty window or fewer than 16 samples.
    void validate() const;
    [[nodiscard]] double step() const { return (max_wavelength - min_wavelength) / (samples - 1); }
    [[nodiscard]] std::vector<double> grid() const;
};

struct Peak {
    double wavelength = 0.0; // m, refined
    double magnitude = 0.0;  // refined
    int grid_index = -1;     // sample at the local maximum
    /// Mode whose closed-form resonance lies nearest; -1 when not annotated.
    int mode_index = -1;
    /// 2πc / resonance_frequency(λ_mode), NaN for an overdamped mode.
    double predicted_wavelength = 0.0;
};

struct ResonanceCurve {
    std::vector<double> wavelengths; // m, increasing
    std::vector<double> magnitudes;  // |α^{(2),+}_∞|
    double period_ratio = 0.0;
    std::string cell_descriptor;
    std::string material_descriptor;
    std::vector<Peak> peaks;
};

/// |α^{(2),+}_∞| at one vacuum-medium wavelength.
double alpha2_magnitude(const SpectralDecomposition& spec, const MaterialParams& m, double wavelength_m);

/// Samples the window (OpenMP over wavelengths), locates and refines peaks.
/// With `polish`, each parabolic estimate is improved by a Brent search on
/// the continuous magnitude between the neighbouring samples.
ResonanceCurve sweep(const SpectralDecomposition& spec, const MaterialParams& m, const SweepWindow& window,
                     bool polish = true);

namespace reference {
ResonanceCurve sweep(const SpectralDecomposition& spec, const MaterialParams& m, const SweepWindow& window,
                     bool polish = true);
}

/// Interior strict local maxima refined by a three-point parabola through
/// the log-magnitudes. Uniform spacing is assumed. Peaks are not annotated.
std::vector<Peak> find_peaks(const std::vector<double>& wavelengths, const std::vector<double>& magnitudes);

/// Fills mode_index / predicted_wavelength with the nearest closed-form
/// resonance among modes that couple to ν₂.
void annotate_peaks(std::vector<Peak>& peaks, const SpectralDecomposition& spec, const MaterialParams& m);

/// Largest refined magnitude, ties toward longer wavelength. Null if none.
const Peak* dominant_peak(const ResonanceCurve& curve);

struct CalibrationRow {
    double period = 0.0;
    bool found = false;
    double peak_wavelength = 0.0;
    double peak_magnitude = 0.0;
    int mode_index = -1;
    double predicted_wavelength = 0.0;
};

struct CalibrationTable {
    std::vector<CalibrationRow> rows;
    /// Every row has a peak and peak wavelength is strictly monotone in period.
    [[nodiscard]] bool monotone() const;
    /// +1 if peaks move to longer wavelengths with period, −1 if shorter, 0 otherwise.
    [[nodiscard]] int direction() const;
};

using CellFactory = std::function<CellGeometry(double period)>;

/// Full pipeline per period: cell → operators → spectrum → sweep → dominant peak.
CalibrationTable peak_vs_period(const CellFactory& make_cell, const std::vector<double>& periods,
                                const MaterialParams& m, const SweepWindow& window,
                                std::vector<ResonanceCurve>* curves = nullptr);
CalibrationTable peak_vs_period(double radius, const std::vector<double>& periods, const MaterialParams& m,
                                const SweepWindow& window, int node_count = 256,
                                std::vector<ResonanceCurve>* curves = nullptr);

void write_curve_csv(std::ostream& os, const ResonanceCurve& curve, const std::vector<std::string>& header);
void write_calibration_csv(std::ostream& os, const CalibrationTable& table, const std::vector<std::string>& header);
/// Reads the columns written by write_calibration_csv.
CalibrationTable read_calibration_csv(std::istream& is);

} // namespace npstrain
