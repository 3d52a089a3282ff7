#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "npstrain/dispersion.hpp"
#include "npstrain/geometry.hpp"
#include "npstrain/spectral.hpp"

namespace npstrain {

/// u^i(x) = exp(i k κ·x).
struct IncidentWave {
    Vec2 direction{1.0, 0.0};
    double wavenumber = 1.0; // 1/m

    [[nodiscard]] cplx operator()(const Vec2& x) const;
};

/// Cylindrical-mode solution of the thin-layer transmission problem on a
/// circle of radius r centred at the origin:
///
///   Δu + k²u = 0 off ∂Ω,  ∂u/∂ν|₊ = ∂u/∂ν|₋,  u|₊ − u|₋ = −β ∂u/∂ν,
///
/// with outgoing scattered waves (H⁽¹⁾, e^{−iωt}). Interior u = Σ a_n J_n e^{inθ},
/// exterior u = u^i + Σ b_n H_n e^{inθ}.
class ModalScatteringSolution {
public:
    [[nodiscard]] double radius() const { return radius_; }
    [[nodiscard]] cplx beta() const { return beta_; }
    [[nodiscard]] const IncidentWave& wave() const { return wave_; }
    [[nodiscard]] int mode_count() const { return modes_; }

    /// Coefficients for |n| ≤ mode_count().
    [[nodiscard]] cplx incident(int n) const { return incident_.at(n + modes_); }
    [[nodiscard]] cplx interior(int n) const { return incident(n) + correction_.at(n + modes_); }
    /// a_n − c_n, kept separately so β = 0 gives exact transparency.
    [[nodiscard]] cplx interior_correction(int n) const { return correction_.at(n + modes_); }
    [[nodiscard]] cplx scattered(int n) const { return scattered_.at(n + modes_); }
    /// b_n / c_n; independent of the incidence direction.
    [[nodiscard]] cplx transfer(int n) const { return transfer_.at(n + modes_); }

    /// u_app at x (interior series for |x| ≤ r).
    [[nodiscard]] cplx field(const Vec2& x) const;

    /// σ_ext = −(4/k) Re Σ t_n (optical theorem) and σ_sca = (4/k) Σ |t_n|².
    [[nodiscard]] double extinction() const;
    [[nodiscard]] double scattering() const;

    /// Largest relative residual of the two interface conditions, mode by mode.
    [[nodiscard]] double mode_residual() const;
    /// Same conditions checked on the truncated series at `angles` points of ∂Ω.
    [[nodiscard]] double boundary_residual(int angles = 64) const;

private:
    friend ModalScatteringSolution solve_modal(double, const IncidentWave&, cplx, int);
    double radius_ = 0.0;
    cplx beta_{};
    IncidentWave wave_;
    int modes_ = 0;
    std::vector<cplx> incident_;
    std::vector<cplx> correction_;
    std::vector<cplx> scattered_;
    std::vector<cplx> transfer_;
};

/// Truncation kr + 4(kr)^{1/3} + 10, rounded up.
int default_mode_count(double kr);

/// Throws DomainError if kr ≤ 0 or mode_count < kr + 8, NumericalError if
/// any 2×2 mode system is singular (the failing orders are listed).
ModalScatteringSolution solve_modal(double radius, const IncidentWave& wave, cplx beta, int mode_count);
ModalScatteringSolution solve_modal(double radius, const IncidentWave& wave, cplx beta);

cplx field(const ModalScatteringSolution& solution, const Vec2& x);

/// Jump coefficient of the homogenized particle layer, β = −2δ α^{(2),+}_∞.
cplx effective_beta(cplx alpha2_plus, double delta_phys);

struct ExtinctionCurve {
    std::vector<double> wavelengths; // m
    std::vector<double> extinction;  // m (2-D cross sections)
    std::vector<double> scattering;
    std::vector<cplx> beta;
};

/// One modal solve per wavelength (OpenMP), β from alpha_infinity at that
/// wavelength. With `beta_override` every wavelength uses that β instead.
ExtinctionCurve extinction_spectrum(double radius, const MaterialParams& m, const SpectralDecomposition& spec,
                                    double delta_phys, const std::vector<double>& wavelengths,
                                    const cplx* beta_override = nullptr);

void write_extinction_csv(std::ostream& os, const ExtinctionCurve& curve, const std::vector<std::string>& header);

} // namespace npstrain
