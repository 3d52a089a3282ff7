#include "npstrain/resonance_sweep.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include <boost/math/tools/minima.hpp>

#include "npstrain/csv.hpp"
#include "npstrain/errors.hpp"
#include "npstrain/layer_ops.hpp"

namespace npstrain {

namespace {

// Modes whose ν₂-weight is below this fraction of the largest do not show up
// in |α^{(2),+}_∞| and are skipped when annotating peaks.
constexpr double kCouplingFloor = 1e-8;

double polish_peak(const SpectralDecomposition& spec, const MaterialParams& m, double lo, double hi) {
    const auto negative = [&](double lam) { return -alpha2_magnitude(spec, m, lam); };
    const auto best = boost::math::tools::brent_find_minima(negative, lo, hi, std::numeric_limits<double>::digits / 2 + 8);
    return best.first;
}

ResonanceCurve finish_curve(const SpectralDecomposition& spec, const MaterialParams& m, std::vector<double> grid,
                            std::vector<double> mags, bool polish) {
    ResonanceCurve curve;
    curve.wavelengths = std::move(grid);
    curve.magnitudes = std::move(mags);
    curve.period_ratio = spec.period_ratio;
    curve.material_descriptor = m.describe();
    curve.peaks = find_peaks(curve.wavelengths, curve.magnitudes);
    if (polish) {
        for (Peak& p : curve.peaks) {
            const int i = p.grid_index;
            const double x = polish_peak(spec, m, curve.wavelengths[i - 1], curve.wavelengths[i + 1]);
            const double y = alpha2_magnitude(spec, m, x);
            if (y >= p.magnitude || y >= curve.magnitudes[i]) {
                p.wavelength = x;
                p.magnitude = y;
            }
        }
    }
    annotate_peaks(curve.peaks, spec, m);
    return curve;
}

} // namespace

void SweepWindow::validate() const {
    if (!(min_wavelength > 0.0) || !(max_wavelength > min_wavelength) || !std::isfinite(max_wavelength)) {
        std::ostringstream os;
        os << "empty or invalid wavelength window [" << min_wavelength << ", " << max_wavelength << "]";
        throw DomainError(os.str());
    }
    if (samples < 16) {
        throw DomainError("a sweep needs at least 16 samples");
    }
}

std::vector<double> SweepWindow::grid() const {
    validate();
    std::vector<double> out(samples);
    const double h = step();
    for (int i = 0; i < samples; ++i) out[i] = min_wavelength + i * h;
    out.back() = max_wavelength;
    return out;
}

double alpha2_magnitude(const SpectralDecomposition& spec, const MaterialParams& m, double wavelength_m) {
    const double omega = frequency_from_wavelength(wavelength_m, m);
    return std::abs(alpha_infinity(spec, contrast(omega, m)).alpha2_plus);
}

ResonanceCurve sweep(const SpectralDecomposition& spec, const MaterialParams& m, const SweepWindow& window,
                     bool polish) {
    m.validate();
    std::vector<double> grid = window.grid();
    std::vector<double> mags(grid.size());
    const int n = static_cast<int>(grid.size());
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) mags[i] = alpha2_magnitude(spec, m, grid[i]);
    return finish_curve(spec, m, std::move(grid), std::move(mags), polish);
}

namespace reference {
ResonanceCurve sweep(const SpectralDecomposition& spec, const MaterialParams& m, const SweepWindow& window,
                     bool polish) {
    m.validate();
    std::vector<double> grid = window.grid();
    std::vector<double> mags;
    mags.reserve(grid.size());
    for (double lam : grid) mags.push_back(alpha2_magnitude(spec, m, lam));
    return finish_curve(spec, m, std::move(grid), std::move(mags), polish);
}
} // namespace reference

std::vector<Peak> find_peaks(const std::vector<double>& wavelengths, const std::vector<double>& magnitudes) {
    if (wavelengths.size() != magnitudes.size()) {
        throw DomainError("wavelength and magnitude arrays differ in length");
    }
    std::vector<Peak> peaks;
    const std::size_t n = magnitudes.size();
    if (n < 3) return peaks;
    const double h = (wavelengths.back() - wavelengths.front()) / static_cast<double>(n - 1);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double ym = magnitudes[i - 1];
        const double y0 = magnitudes[i];
        const double yp = magnitudes[i + 1];
        if (!(y0 > ym && y0 > yp)) continue;
        Peak p;
        p.grid_index = static_cast<int>(i);
        p.wavelength = wavelengths[i];
        p.magnitude = y0;
        if (ym > 0.0 && yp > 0.0) {
            const double lm = std::log(ym);
            const double l0 = std::log(y0);
            const double lp = std::log(yp);
            const double curvature = lm - 2.0 * l0 + lp;
            if (curvature < 0.0) {
                const double offset = 0.5 * (lm - lp) / curvature;
                p.wavelength = wavelengths[i] + offset * h;
                p.magnitude = std::exp(l0 - 0.25 * (lm - lp) * offset);
            }
        }
        peaks.push_back(p);
    }
    return peaks;
}

void annotate_peaks(std::vector<Peak>& peaks, const SpectralDecomposition& spec, const MaterialParams& m) {
    double max_weight = 0.0;
    for (int j = 1; j < spec.size(); ++j) max_weight = std::max(max_weight, spec.moments_nu2[j] * spec.moments_nu2[j]);
    for (Peak& p : peaks) {
        const double omega = frequency_from_wavelength(p.wavelength, m);
        double best = std::numeric_limits<double>::infinity();
        p.mode_index = -1;
        p.predicted_wavelength = std::numeric_limits<double>::quiet_NaN();
        for (int j = 1; j < spec.size(); ++j) {
            if (spec.moments_nu2[j] * spec.moments_nu2[j] < kCouplingFloor * max_weight) continue;
            double omega_j = 0.0;
            try {
                omega_j = resonance_frequency(spec.eigenvalues[j], m);
            } catch (const DomainError&) {
                continue;
            }
            if (std::abs(omega_j - omega) < best) {
                best = std::abs(omega_j - omega);
                p.mode_index = j;
                p.predicted_wavelength = wavelength(omega_j, m);
            }
        }
    }
}

const Peak* dominant_peak(const ResonanceCurve& curve) {
    const Peak* best = nullptr;
    for (const Peak& p : curve.peaks) {
        if (!best || p.magnitude > best->magnitude ||
            (p.magnitude == best->magnitude && p.wavelength > best->wavelength)) {
            best = &p;
        }
    }
    return best;
}

bool CalibrationTable::monotone() const {
    if (rows.empty()) return false;
    for (const auto& r : rows) {
        if (!r.found) return false;
    }
    return direction() != 0;
}

int CalibrationTable::direction() const {
    if (rows.size() < 2) return 0;
    std::vector<const CalibrationRow*> sorted;
    for (const auto& r : rows) {
        if (!r.found) return 0;
        sorted.push_back(&r);
    }
    std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->period < b->period; });
    bool up = true;
    bool down = true;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (!(sorted[i]->period > sorted[i - 1]->period)) return 0;
        up = up && sorted[i]->peak_wavelength > sorted[i - 1]->peak_wavelength;
        down = down && sorted[i]->peak_wavelength < sorted[i - 1]->peak_wavelength;
    }
    return up ? 1 : (down ? -1 : 0);
}

CalibrationTable peak_vs_period(const CellFactory& make_cell, const std::vector<double>& periods,
                                const MaterialParams& m, const SweepWindow& window,
                                std::vector<ResonanceCurve>* curves) {
    window.validate();
    CalibrationTable table;
    for (double period : periods) {
        const CellGeometry cell = make_cell(period);
        const SpectralDecomposition spec = eigendecompose(cell);
        ResonanceCurve curve = sweep(spec, m, window);
        curve.cell_descriptor = cell.descriptor();
        CalibrationRow row;
        row.period = period;
        if (const Peak* p = dominant_peak(curve)) {
            row.found = true;
            row.peak_wavelength = p->wavelength;
            row.peak_magnitude = p->magnitude;
            row.mode_index = p->mode_index;
            row.predicted_wavelength = p->predicted_wavelength;
        }
        table.rows.push_back(row);
        if (curves) curves->push_back(std::move(curve));
    }
    return table;
}

CalibrationTable peak_vs_period(double radius, const std::vector<double>& periods, const MaterialParams& m,
                                const SweepWindow& window, int node_count, std::vector<ResonanceCurve>* curves) {
    return peak_vs_period([&](double period) { return make_disk_cell(radius, period, node_count); }, periods, m,
                          window, curves);
}

void write_curve_csv(std::ostream& os, const ResonanceCurve& curve, const std::vector<std::string>& header) {
    std::vector<std::string> lines = header;
    lines.push_back("period_ratio=" + csv::number(curve.period_ratio));
    if (!curve.cell_descriptor.empty()) lines.push_back("cell: " + curve.cell_descriptor);
    lines.push_back("material: " + curve.material_descriptor);
    for (const Peak& p : curve.peaks) {
        lines.push_back("peak wavelength_m=" + csv::number(p.wavelength) + " magnitude=" + csv::number(p.magnitude) +
                        " mode=" + std::to_string(p.mode_index) +
                        " predicted_wavelength_m=" + csv::number(p.predicted_wavelength));
    }
    csv::write_comments(os, lines);
    csv::write_row(os, {"wavelength_m", "magnitude"});
    for (std::size_t i = 0; i < curve.wavelengths.size(); ++i) {
        csv::write_row(os, {csv::number(curve.wavelengths[i]), csv::number(curve.magnitudes[i])});
    }
}

void write_calibration_csv(std::ostream& os, const CalibrationTable& table, const std::vector<std::string>& header) {
    std::vector<std::string> lines = header;
    lines.push_back(std::string("monotone=") + (table.monotone() ? "true" : "false"));
    const int dir = table.direction();
    lines.push_back(std::string("shift_with_increasing_period=") +
                    (dir > 0 ? "red (longer wavelength)" : dir < 0 ? "blue (shorter wavelength)" : "none"));
    csv::write_comments(os, lines);
    csv::write_row(os, {"period", "peak_wavelength_m", "peak_magnitude", "mode_index"});
    const std::string nan = "nan";
    for (const auto& r : table.rows) {
        csv::write_row(os, {csv::number(r.period), r.found ? csv::number(r.peak_wavelength) : nan,
                            r.found ? csv::number(r.peak_magnitude) : nan, std::to_string(r.mode_index)});
    }
}

CalibrationTable read_calibration_csv(std::istream& is) {
    const csv::Table raw = csv::read(is);
    if (raw.columns.empty()) throw ConfigError("calibration CSV is empty");
    const int c_period = raw.column("period");
    const int c_peak = raw.column("peak_wavelength_m");
    const int c_mag = raw.column("peak_magnitude");
    const int c_mode = raw.column("mode_index");
    CalibrationTable table;
    for (const auto& fields : raw.rows) {
        if (static_cast<int>(fields.size()) != static_cast<int>(raw.columns.size())) {
            throw ConfigError("calibration CSV row has the wrong number of fields");
        }
        CalibrationRow r;
        try {
            r.period = std::stod(fields[c_period]);
            r.peak_wavelength = std::stod(fields[c_peak]);
            r.peak_magnitude = std::stod(fields[c_mag]);
            r.mode_index = std::stoi(fields[c_mode]);
        } catch (const std::exception&) {
            throw ConfigError("calibration CSV has a non-numeric field");
        }
        r.found = std::isfinite(r.peak_wavelength);
        table.rows.push_back(r);
    }
    return table;
}

} // namespace npstrain
