#pragma once

#include <array>
#include <string>
#include <vector>

#include "npstrain/geometry.hpp"
#include "npstrain/spectral.hpp"

namespace npstrain {

/// Signs attached to the two η-linear terms of the eigenvalue expansion
///   λ_j(B_η) ≈ λ_j + η [ s_v (λ_j − 1/2)(λ_j + 1/2) ∫φ_j² + s_t ∫|∂_T S[φ_j]|² ].
enum class SignReading {
    statement,   // s_v = −1, s_t = +1
    proof,       // s_v = +1, s_t = −1
    mixed,       // s_v = −1, s_t = −1
    both_plus,   // s_v = +1, s_t = +1
};

inline constexpr std::array<SignReading, 4> kAllReadings{SignReading::statement, SignReading::proof,
                                                         SignReading::mixed, SignReading::both_plus};
/// Reading confirmed by finite differences; used when none is requested.
inline constexpr SignReading kDefaultReading = SignReading::mixed;

std::string to_string(SignReading reading);

struct ShapeDerivativeTerms {
    int mode = 0;
    double eigenvalue = 0.0;
    double gap = 0.0;         // distance to the nearest other eigenvalue
    double volume_term = 0.0; // (λ−1/2)(λ+1/2) ∫ φ² dσ
    double tangential_term = 0.0; // ∫ |∂_T S[φ]|² dσ

    [[nodiscard]] double slope(SignReading reading = kDefaultReading) const;
    /// λ_j + η·slope.
    [[nodiscard]] double first_order(double eta, SignReading reading = kDefaultReading) const;
};

/// Minimum eigenvalue gap for a mode to count as simple.
inline constexpr double kSimplicityGap = 1e-9;

/// Throws DomainError naming the gap when λ_j is not simple.
ShapeDerivativeTerms shape_derivative(const CellGeometry& cell, const SpectralDecomposition& spec, int mode);

struct ShapeLadderRow {
    double eta = 0.0;
    double slope_forward = 0.0;  // (λ(η) − λ)/η
    double slope_backward = 0.0; // (λ − λ(−η))/η
    double slope_central = 0.0;
    double overlap_forward = 0.0;
    double overlap_backward = 0.0;
    double error = 0.0; // |slope_forward − prediction| under the selected reading
};

struct ShapeDerivativeReport {
    ShapeDerivativeTerms terms;
    std::array<double, 4> predictions{}; // indexed like kAllReadings
    std::vector<ShapeLadderRow> ladder;
    SignReading selected = kDefaultReading;
    /// Selected reading agrees with the smallest-η central slope to 1e-3 relative.
    bool sign_consistent = false;
    /// Least-squares exponent p in error ∝ η^p over the ladder.
    double error_exponent = 0.0;

    [[nodiscard]] double prediction() const;
    [[nodiscard]] std::string describe() const;
};

/// Recomputes the spectrum on perturb_normal(cell, ±η) for each η, tracks
/// the mode by eigendensity overlap (NumericalError below 0.9) and selects
/// the sign reading that matches the finite differences.
ShapeDerivativeReport validate_shape_derivative(const CellGeometry& cell, int mode, const std::vector<double>& etas);

} // namespace npstrain
