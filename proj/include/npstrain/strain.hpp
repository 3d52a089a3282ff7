#pragma once

#include <string>
#include <utility>
#include <vector>

#include "npstrain/resonance_sweep.hpp"

namespace npstrain {

/// Elliptically deformed capsule carrying N equally spaced particles.
/// Lengths in metres; area is conserved (L1·L2 = r²) and θ stays 0.
struct CapsuleState {
    double r = 0.0;
    int N = 0;
    double L1 = 0.0;
    double L2 = 0.0;
    double theta = 0.0;
    double D = 0.0;
    double P = 0.0;
    double d = 0.0;
    /// d / δ, the period ratio of the particle grating.
    double period_ratio = 0.0;

    [[nodiscard]] std::string describe() const;
};

/// Capsule geometry and particle size for the inversion.
struct CapsuleSpec {
    double r = 5e-6;          // m
    int N = 786;
    double delta_phys = 40e-9; // m

    void validate() const;
    /// Period ratio of the undeformed capsule, 2πr/(Nδ).
    [[nodiscard]] double rest_period_ratio() const;
};

/// (L1 − L2)/(L1 + L2); requires L1 ≥ L2 > 0.
double deformation_index(double L1, double L2);
/// π√2 √(L1² + L2²).
double perimeter(double L1, double L2);
/// perimeter(L1, r²/L1) / (2πr); requires L1 ≥ r.
double stretch_ratio(double r, double L1);

/// Area-conserving axes (L1 ≥ r ≥ L2) with the given approximate perimeter.
/// Throws DomainError when P_target < 2πr.
std::pair<double, double> axes_from_perimeter(double r, double P_target);

/// Forward map: state of a capsule whose long axis is L1.
CapsuleState state_from_axis(const CapsuleSpec& capsule, double L1);
/// Forward map from the grating period ratio d/δ.
CapsuleState state_from_period(const CapsuleSpec& capsule, double period_ratio);

/// Peak wavelength → period ratio by monotone cubic interpolation of the
/// calibration table in the variable 1/Λ² (∝ ω²), linear interpolation for
/// fewer than four rows. Throws DomainError for an invalid table or a peak
/// outside the calibrated wavelengths.
double period_from_peak(double peak_wavelength, const CalibrationTable& calibration);

/// `count` calibration periods from lo to hi, spaced quadratically so they
/// crowd toward lo, where the peak moves fastest and D is most sensitive.
std::vector<double> graded_periods(double lo, double hi, int count);

CapsuleState invert_peak_to_deformation(double peak_wavelength, const CalibrationTable& calibration,
                                        const CapsuleSpec& capsule);

} // namespace npstrain
