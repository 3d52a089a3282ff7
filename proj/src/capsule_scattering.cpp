#include "npstrain/capsule_scattering.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <ostream>
#include <sstream>

#include "npstrain/csv.hpp"
#include "npstrain/errors.hpp"

namespace npstrain {

namespace {

constexpr cplx kI{0.0, 1.0};

struct ModeValues {
    double j;  // J_n(x)
    double dj; // J_n'(x)
    cplx h;    // H_n(x)
    cplx dh;
};

double sign_for(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

double bessel_j(int n, double x) {
    if (n < 0) return sign_for(n) * std::cyl_bessel_j(static_cast<double>(-n), x);
    return std::cyl_bessel_j(static_cast<double>(n), x);
}

double bessel_y(int n, double x) {
    if (n < 0) return sign_for(n) * std::cyl_neumann(static_cast<double>(-n), x);
    return std::cyl_neumann(static_cast<double>(n), x);
}

ModeValues mode_values(int n, double x) {
    ModeValues v{};
    v.j = bessel_j(n, x);
    v.dj = 0.5 * (bessel_j(n - 1, x) - bessel_j(n + 1, x));
    v.h = {v.j, bessel_y(n, x)};
    v.dh = cplx(v.dj, 0.5 * (bessel_y(n - 1, x) - bessel_y(n + 1, x)));
    return v;
}

cplx ipow(int n) {
    switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
    }
}

} // namespace

cplx IncidentWave::operator()(const Vec2& x) const { return std::exp(kI * (wavenumber * direction.dot(x))); }

int default_mode_count(double kr) { return static_cast<int>(std::ceil(kr + 4.0 * std::cbrt(kr) + 10.0)); }

ModalScatteringSolution solve_modal(double radius, const IncidentWave& wave, cplx beta, int mode_count) {
    const double k = wave.wavenumber;
    const double kr = k * radius;
    if (!(radius > 0.0) || !(k > 0.0) || !std::isfinite(kr)) {
        throw DomainError("modal solve needs a positive radius and wavenumber");
    }
    if (std::abs(wave.direction.norm() - 1.0) > 1e-12) {
        throw DomainError("incidence direction must be a unit vector");
    }
    if (mode_count < kr + 8.0) {
        std::ostringstream os;
        os << "mode count " << mode_count << " is below k r + 8 = " << kr + 8.0;
        throw DomainError(os.str());
    }
    ModalScatteringSolution s;
    s.radius_ = radius;
    s.beta_ = beta;
    s.wave_ = wave;
    s.modes_ = mode_count;
    const int total = 2 * mode_count + 1;
    s.incident_.resize(total);
    s.correction_.resize(total);
    s.scattered_.resize(total);
    s.transfer_.resize(total);

    const double theta_inc = std::atan2(wave.direction.y(), wave.direction.x());
    const cplx kb = k * beta;
    std::vector<int> failed;
    for (int n = -mode_count; n <= mode_count; ++n) {
        const ModeValues v = mode_values(n, kr);
        const cplx c = ipow(n) * std::exp(-kI * (n * theta_inc));
        const cplx det = v.dj * v.h - v.dh * (v.j - kb * v.dj);
        if (det == 0.0 || !std::isfinite(std::abs(det))) {
            failed.push_back(n);
            continue;
        }
        const cplx t = -kb * v.dj * v.dj / det;
        const int idx = n + mode_count;
        s.incident_[idx] = c;
        s.transfer_[idx] = t;
        s.scattered_[idx] = c * t;
        s.correction_[idx] = -c * kb * v.dj * v.dh / det;
    }
    if (!failed.empty()) {
        std::ostringstream os;
        os << "singular mode system for orders";
        for (int n : failed) os << ' ' << n;
        throw NumericalError(os.str());
    }
    return s;
}

ModalScatteringSolution solve_modal(double radius, const IncidentWave& wave, cplx beta) {
    return solve_modal(radius, wave, beta, default_mode_count(wave.wavenumber * radius));
}

cplx ModalScatteringSolution::field(const Vec2& x) const {
    const double rho = x.norm();
    const double theta = std::atan2(x.y(), x.x());
    const double kr = wave_.wavenumber * rho;
    cplx sum = 0.0;
    const bool inside = rho <= radius_;
    for (int n = -modes_; n <= modes_; ++n) {
        const cplx phase = std::exp(kI * (n * theta));
        if (inside) {
            if (correction_[n + modes_] == 0.0) continue;
            sum += correction_[n + modes_] * bessel_j(n, kr) * phase;
        } else {
            if (scattered_[n + modes_] == 0.0) continue;
            sum += scattered_[n + modes_] * cplx(bessel_j(n, kr), bessel_y(n, kr)) * phase;
        }
    }
    return wave_(x) + sum;
}

double ModalScatteringSolution::extinction() const {
    double sum = 0.0;
    for (const cplx& t : transfer_) sum += t.real();
    return -4.0 / wave_.wavenumber * sum + 0.0; // no signed zero for a transparent layer
}

double ModalScatteringSolution::scattering() const {
    double sum = 0.0;
    for (const cplx& t : transfer_) sum += std::norm(t);
    return 4.0 / wave_.wavenumber * sum;
}

double ModalScatteringSolution::mode_residual() const {
    const double kr = wave_.wavenumber * radius_;
    const cplx kb = wave_.wavenumber * beta_;
    double worst = 0.0;
    for (int n = -modes_; n <= modes_; ++n) {
        const ModeValues v = mode_values(n, kr);
        const int idx = n + modes_;
        const cplx c = incident_[idx];
        const cplx a = c + correction_[idx];
        const cplx b = scattered_[idx];
        const cplx d_out = c * v.dj + b * v.dh;
        const cplx d_in = a * v.dj;
        const cplx jump = (c * v.j + b * v.h) - a * v.j + kb * d_in;
        const double scale = std::abs(c) * (std::abs(v.j) + std::abs(v.dj)) + std::abs(b) * std::abs(v.h) +
                             std::abs(kb) * std::abs(d_in) + std::abs(a) * std::abs(v.j);
        if (scale == 0.0) continue;
        worst = std::max({worst, std::abs(d_out - d_in) / scale, std::abs(jump) / scale});
    }
    return worst;
}

double ModalScatteringSolution::boundary_residual(int angles) const {
    const double kr = wave_.wavenumber * radius_;
    const cplx kb = wave_.wavenumber * beta_;
    std::vector<ModeValues> values;
    for (int n = -modes_; n <= modes_; ++n) values.push_back(mode_values(n, kr));
    double worst = 0.0;
    for (int q = 0; q < angles; ++q) {
        const double theta = 2.0 * std::numbers::pi * q / angles;
        cplx u_out = 0.0, u_in = 0.0, d_out = 0.0, d_in = 0.0;
        double scale = 0.0;
        for (int n = -modes_; n <= modes_; ++n) {
            const int idx = n + modes_;
            const ModeValues& v = values[idx];
            const cplx phase = std::exp(kI * (n * theta));
            const cplx a = incident_[idx] + correction_[idx];
            u_out += (incident_[idx] * v.j + scattered_[idx] * v.h) * phase;
            d_out += (incident_[idx] * v.dj + scattered_[idx] * v.dh) * phase;
            u_in += a * v.j * phase;
            d_in += a * v.dj * phase;
            scale += std::abs(incident_[idx]) * (std::abs(v.j) + std::abs(v.dj)) +
                     std::abs(scattered_[idx]) * (std::abs(v.h) + std::abs(v.dh));
        }
        const cplx jump = u_out - u_in + kb * d_in;
        worst = std::max({worst, std::abs(d_out - d_in) / scale, std::abs(jump) / scale});
    }
    return worst;
}

cplx field(const ModalScatteringSolution& solution, const Vec2& x) { return solution.field(x); }

cplx effective_beta(cplx alpha2_plus, double delta_phys) { return -2.0 * delta_phys * alpha2_plus; }

ExtinctionCurve extinction_spectrum(double radius, const MaterialParams& m, const SpectralDecomposition& spec,
                                    double delta_phys, const std::vector<double>& wavelengths,
                                    const cplx* beta_override) {
    m.validate();
    if (!(delta_phys > 0.0)) throw DomainError("particle size delta must be positive");
    const int n = static_cast<int>(wavelengths.size());
    ExtinctionCurve curve;
    curve.wavelengths = wavelengths;
    curve.extinction.assign(n, 0.0);
    curve.scattering.assign(n, 0.0);
    curve.beta.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        if (!(wavelengths[i] > 0.0)) throw DomainError("wavelengths must be positive");
    }
    std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        try {
            const double omega = frequency_from_wavelength(wavelengths[i], m);
            const cplx beta = beta_override
                                  ? *beta_override
                                  : effective_beta(alpha_infinity(spec, contrast(omega, m)).alpha2_plus, delta_phys);
            const IncidentWave wave{Vec2(1.0, 0.0), background_wavenumber(omega, m)};
            const ModalScatteringSolution s = solve_modal(radius, wave, beta);
            curve.beta[i] = beta;
            curve.extinction[i] = s.extinction();
            curve.scattering[i] = s.scattering();
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return curve;
}

void write_extinction_csv(std::ostream& os, const ExtinctionCurve& curve, const std::vector<std::string>& header) {
    csv::write_comments(os, header);
    csv::write_row(os, {"wavelength_m", "extinction", "scattering"});
    for (std::size_t i = 0; i < curve.wavelengths.size(); ++i) {
        csv::write_row(os, {csv::number(curve.wavelengths[i]), csv::number(curve.extinction[i]),
                            csv::number(curve.scattering[i])});
    }
}

} // namespace npstrain
