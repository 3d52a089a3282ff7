#pragma once

#include <string>

#include "npstrain/geometry.hpp"

namespace npstrain {

namespace constants {
inline constexpr double speed_of_light = 299792458.0;       // m/s
inline constexpr double vacuum_permeability = 1.25663706212e-6; // N/A²
inline constexpr double vacuum_permittivity = 8.8541878128e-12; // F/m
} // namespace constants

/// SI material data. The particle permeability follows the Drude law
/// μ_c(ω) = μ₀(1 − ω_p²/(ω² + iω/T)) under the e^{−iωt} convention.
struct MaterialParams {
    double mu0 = constants::vacuum_permeability;
    double mu_m = constants::vacuum_permeability;
    double eps0 = constants::vacuum_permittivity;
    double eps_m = 1.77 * 1.77 * constants::vacuum_permittivity;
    /// Particle permittivity. Stored for reports only; the quasi-static
    /// cell problem never reads it.
    cplx eps_c{1.0, 0.0};
    /// Angular plasma frequency ω_p (rad/s).
    double plasma_frequency = 2e15;
    /// Collision time T (s); +inf switches damping off.
    double collision_time = 1e-14;

    /// Throws DomainError unless ω_p, T, ε_m, μ_m are positive.
    void validate() const;
    [[nodiscard]] std::string describe() const;
};

/// 1/√(ε_m μ_m).
double background_speed(const MaterialParams& m);
/// k_m = ω √(ε_m μ_m).
double background_wavenumber(double omega, const MaterialParams& m);

cplx drude_mu(double omega, const MaterialParams& m);

/// λ(ω) = (μ_m + μ_c)/(2(μ_m − μ_c)). Throws DomainError when μ_c = μ_m.
cplx contrast(double omega, const MaterialParams& m);
/// (ω² + iω/T)/ω_p² − 1/2, the μ_m = μ₀ specialisation.
cplx contrast_simple(double omega, const MaterialParams& m);

/// Re ω solving λ_j = λ(ω): (Re ω)² = (λ_j + 1/2) ω_p² − 1/(4T²).
/// Throws DomainError for an overdamped mode.
double resonance_frequency(double lambda_j, const MaterialParams& m);

/// Λ = 2πc/ω with c the background speed.
double wavelength(double omega, const MaterialParams& m);
double frequency_from_wavelength(double wavelength_m, const MaterialParams& m);

} // namespace npstrain
