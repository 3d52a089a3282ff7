#include "npstrain/dispersion.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "npstrain/errors.hpp"

namespace npstrain {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_positive_frequency(double omega) {
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        std::ostringstream os;
        os << "frequency must be positive and finite, got " << omega;
        throw DomainError(os.str());
    }
}

// ω_p²/(ω² + iω/T)
cplx drude_ratio(double omega, const MaterialParams& m) {
    const double wp2 = m.plasma_frequency * m.plasma_frequency;
    return wp2 / cplx(omega * omega, omega / m.collision_time);
}

} // namespace

void MaterialParams::validate() const {
    const auto positive = [](double v) { return v > 0.0 && !std::isnan(v); };
    if (!positive(plasma_frequency) || !std::isfinite(plasma_frequency)) {
        throw DomainError("plasma frequency must be positive");
    }
    if (!positive(collision_time)) throw DomainError("collision time must be positive");
    if (!positive(eps_m) || !positive(mu_m) || !positive(mu0) || !positive(eps0)) {
        throw DomainError("background permittivity and permeability must be positive");
    }
}

std::string MaterialParams::describe() const {
    std::ostringstream os;
    os.precision(17);
    os << "mu0=" << mu0 << " mu_m=" << mu_m << " eps0=" << eps0 << " eps_m=" << eps_m << " eps_c=(" << eps_c.real()
       << "," << eps_c.imag() << ") omega_p=" << plasma_frequency << " T=" << collision_time;
    return os.str();
}

double background_speed(const MaterialParams& m) { return 1.0 / std::sqrt(m.eps_m * m.mu_m); }

double background_wavenumber(double omega, const MaterialParams& m) { return omega * std::sqrt(m.eps_m * m.mu_m); }

cplx drude_mu(double omega, const MaterialParams& m) {
    require_positive_frequency(omega);
    return m.mu0 * (1.0 - drude_ratio(omega, m));
}

cplx contrast(double omega, const MaterialParams& m) {
    require_positive_frequency(omega);
    const cplx p = drude_ratio(omega, m);
    // μ_m − μ_c written as (μ_m − μ₀) + μ₀p so μ_m = μ₀ loses nothing to cancellation.
    const cplx diff = (m.mu_m - m.mu0) + m.mu0 * p;
    if (std::abs(diff) <= 16.0 * kEps * (m.mu_m + m.mu0 * std::abs(p))) {
        throw DomainError("particle and background permeabilities coincide: infinite contrast");
    }
    const cplx sum = (m.mu_m + m.mu0) - m.mu0 * p;
    return sum / (2.0 * diff);
}

cplx contrast_simple(double omega, const MaterialParams& m) {
    require_positive_frequency(omega);
    const double wp2 = m.plasma_frequency * m.plasma_frequency;
    return cplx(omega * omega, omega / m.collision_time) / wp2 - 0.5;
}

double resonance_frequency(double lambda_j, const MaterialParams& m) {
    const double wp2 = m.plasma_frequency * m.plasma_frequency;
    const double damping = 1.0 / (4.0 * m.collision_time * m.collision_time);
    const double square = (lambda_j + 0.5) * wp2 - damping;
    if (!(square > 0.0)) {
        std::ostringstream os;
        os << "mode with eigenvalue " << lambda_j << " is overdamped: no real resonance frequency";
        throw DomainError(os.str());
    }
    return std::sqrt(square);
}

double wavelength(double omega, const MaterialParams& m) {
    require_positive_frequency(omega);
    return 2.0 * std::numbers::pi * background_speed(m) / omega;
}

double frequency_from_wavelength(double wavelength_m, const MaterialParams& m) {
    if (!(wavelength_m > 0.0) || !std::isfinite(wavelength_m)) {
        throw DomainError("wavelength must be positive and finite");
    }
    return 2.0 * std::numbers::pi * background_speed(m) / wavelength_m;
}

} // namespace npstrain
