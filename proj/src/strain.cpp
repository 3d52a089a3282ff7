#include "npstrain/strain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include <boost/math/special_functions/fpclassify.hpp> // pchip.hpp in Boost 1.74 calls isnan unqualified
#include <boost/math/interpolators/pchip.hpp>

#include "npstrain/errors.hpp"

namespace npstrain {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kEps = std::numeric_limits<double>::epsilon();
} // namespace

std::string CapsuleState::describe() const {
    std::ostringstream os;
    os.precision(10);
    os << "r=" << r << " N=" << N << " d=" << d << " P=" << P << " L1=" << L1 << " L2=" << L2 << " D=" << D
       << " theta=" << theta << " period_ratio=" << period_ratio;
    return os.str();
}

void CapsuleSpec::validate() const {
    if (!(r > 0.0) || !(delta_phys > 0.0) || N < 1) {
        throw DomainError("capsule radius, particle size and particle count must be positive");
    }
}

double CapsuleSpec::rest_period_ratio() const { return 2.0 * kPi * r / (N * delta_phys); }

double deformation_index(double L1, double L2) {
    if (!(L2 > 0.0) || !(L1 >= L2)) {
        std::ostringstream os;
        os << "deformation index needs L1 >= L2 > 0, got L1=" << L1 << " L2=" << L2;
        throw DomainError(os.str());
    }
    return (L1 - L2) / (L1 + L2);
}

double perimeter(double L1, double L2) {
    if (!(L1 > 0.0) || !(L2 > 0.0)) throw DomainError("ellipse axes must be positive");
    return kPi * kSqrt2 * std::hypot(L1, L2);
}

double stretch_ratio(double r, double L1) {
    if (!(r > 0.0)) throw DomainError("capsule radius must be positive");
    if (!(L1 >= r)) throw DomainError("stretch ratio needs L1 >= r");
    return perimeter(L1, r * r / L1) / (2.0 * kPi * r);
}

std::pair<double, double> axes_from_perimeter(double r, double P_target) {
    if (!(r > 0.0)) throw DomainError("capsule radius must be positive");
    // L1² + L2² = C and L1² L2² = r⁴, so t = L1² solves t² − C t + r⁴ = 0.
    const double s = P_target / (kPi * kSqrt2); // √C
    const double C = s * s;
    const double r2 = r * r;
    // C − 2r² factored to keep the small-deformation end accurate.
    double excess = (s - kSqrt2 * r) * (s + kSqrt2 * r);
    const double roundoff = 8.0 * kEps * C;
    if (excess < 0.0) {
        if (excess < -roundoff) {
            std::ostringstream os;
            os << "perimeter " << P_target << " is below the undeformed value 2πr = " << 2.0 * kPi * r;
            throw DomainError(os.str());
        }
        excess = 0.0;
    } else if (excess <= roundoff) {
        excess = 0.0;
    }
    const double disc = excess * (C + 2.0 * r2);
    const double t = 0.5 * (C + std::sqrt(disc));
    const double L1 = std::sqrt(t);
    return {L1, r2 / L1};
}

CapsuleState state_from_axis(const CapsuleSpec& capsule, double L1) {
    capsule.validate();
    CapsuleState s;
    s.r = capsule.r;
    s.N = capsule.N;
    s.L1 = L1;
    s.L2 = capsule.r * capsule.r / L1;
    s.D = deformation_index(s.L1, s.L2);
    s.P = perimeter(s.L1, s.L2);
    s.d = s.P / s.N;
    s.period_ratio = s.d / capsule.delta_phys;
    return s;
}

CapsuleState state_from_period(const CapsuleSpec& capsule, double period_ratio) {
    capsule.validate();
    const double d = period_ratio * capsule.delta_phys;
    const double P = capsule.N * d;
    const auto [L1, L2] = axes_from_perimeter(capsule.r, P);
    CapsuleState s;
    s.r = capsule.r;
    s.N = capsule.N;
    s.L1 = L1;
    s.L2 = L2;
    s.D = deformation_index(L1, L2);
    s.P = P;
    s.d = d;
    s.period_ratio = period_ratio;
    return s;
}

double period_from_peak(double peak_wavelength, const CalibrationTable& calibration) {
    if (calibration.rows.size() < 2 || !calibration.monotone()) {
        throw DomainError("calibration table is invalid: it needs at least two rows, every row with a peak, and "
                          "peak wavelength strictly monotone in period");
    }
    std::vector<std::pair<double, double>> knots;
    for (const auto& row : calibration.rows) knots.emplace_back(row.peak_wavelength, row.period);
    std::sort(knots.begin(), knots.end());
    const double lo = knots.front().first;
    const double hi = knots.back().first;
    // 1/Λ² is affine in the resonant eigenvalue, which varies more gently
    // with period than Λ does.
    const auto abscissa = [](double lam) { return 1.0 / (lam * lam); };
    if (!(peak_wavelength >= lo && peak_wavelength <= hi)) {
        std::ostringstream os;
        os.precision(10);
        os << "peak wavelength " << peak_wavelength << " m is outside the calibrated range [" << lo << ", " << hi
           << "] m";
        throw DomainError(os.str());
    }
    std::vector<double> x, y;
    for (auto it = knots.rbegin(); it != knots.rend(); ++it) {
        x.push_back(abscissa(it->first));
        y.push_back(it->second);
    }
    const double xq = std::clamp(abscissa(peak_wavelength), x.front(), x.back());
    if (x.size() < 4) {
        const auto it = std::upper_bound(x.begin(), x.end() - 1, xq);
        const std::size_t i = std::max<std::size_t>(1, static_cast<std::size_t>(it - x.begin())) - 1;
        const double t = (xq - x[i]) / (x[i + 1] - x[i]);
        return (1.0 - t) * y[i] + t * y[i + 1];
    }
    const boost::math::interpolators::pchip<std::vector<double>> interp(std::move(x), std::move(y));
    return interp(xq);
}

std::vector<double> graded_periods(double lo, double hi, int count) {
    if (!(lo > 0.0) || !(hi > lo) || count < 2) {
        throw DomainError("graded_periods needs 0 < lo < hi and at least two periods");
    }
    std::vector<double> periods(count);
    for (int k = 0; k < count; ++k) {
        const double u = static_cast<double>(k) / (count - 1);
        periods[k] = lo + (hi - lo) * u * u;
    }
    periods.back() = hi;
    return periods;
}

CapsuleState invert_peak_to_deformation(double peak_wavelength, const CalibrationTable& calibration,
                                        const CapsuleSpec& capsule) {
    capsule.validate();
    return state_from_period(capsule, period_from_peak(peak_wavelength, calibration));
}

} // namespace npstrain
