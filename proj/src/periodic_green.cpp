#include "npstrain/periodic_green.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "npstrain/errors.hpp"

namespace npstrain {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;
// Below this |a| the direct hyperbolic form is exact enough and cancellation-free.
constexpr double kDirectLimit = 1.0;
} // namespace

PeriodicKernel::PeriodicKernel(double period_ratio) : period_(period_ratio) {
    if (!(period_ > 0.0) || !std::isfinite(period_)) {
        throw DomainError("periodic kernel needs a positive period ratio");
    }
}

bool PeriodicKernel::on_lattice(const Vec2& diff) const {
    const double tol = 4.0 * std::numeric_limits<double>::epsilon() * period_;
    return std::abs(diff.y()) <= tol && std::abs(std::remainder(diff.x(), period_)) <= tol;
}

double PeriodicKernel::log_q(double a, double b) const {
    const double sb = std::sin(b);
    if (std::abs(a) < kDirectLimit) {
        const double sa = std::sinh(a);
        return std::log(sa * sa + sb * sb);
    }
    // sinh²a + sin²b = (e^{2|a|}/4) [ (1-u)² + 4u sin²b ],  u = e^{-2|a|}
    const double u = std::exp(-2.0 * std::abs(a));
    const double one_minus_u = -std::expm1(-2.0 * std::abs(a));
    return 2.0 * std::abs(a) - 2.0 * kLn2 + std::log(one_minus_u * one_minus_u + 4.0 * u * sb * sb);
}

double PeriodicKernel::green(const Vec2& diff) const {
    if (on_lattice(diff)) {
        std::ostringstream os;
        os << "periodic Green's function evaluated on the lattice at (" << diff.x() << ", " << diff.y() << ")";
        throw SingularityError(os.str());
    }
    const double a = kPi * diff.y() / period_;
    const double b = kPi * diff.x() / period_;
    return log_q(a, b) / (4.0 * kPi);
}

Vec2 PeriodicKernel::grad_green(const Vec2& diff) const {
    if (on_lattice(diff)) {
        std::ostringstream os;
        os << "gradient of the periodic Green's function evaluated on the lattice at (" << diff.x() << ", "
           << diff.y() << ")";
        throw SingularityError(os.str());
    }
    const double a = kPi * diff.y() / period_;
    const double b = kPi * diff.x() / period_;
    const double scale = 1.0 / (2.0 * period_);
    if (std::abs(a) < kDirectLimit) {
        // cosh 2a − cos 2b = 2 sinh²a + 2 sin²b, written without cancellation.
        const double sa = std::sinh(a);
        const double sb = std::sin(b);
        const double den = 2.0 * (sa * sa + sb * sb);
        return {scale * std::sin(2.0 * b) / den, scale * std::sinh(2.0 * a) / den};
    }
    const double u = std::exp(-2.0 * std::abs(a));
    const double one_minus_u = -std::expm1(-2.0 * std::abs(a));
    const double sb = std::sin(b);
    const double den = one_minus_u * one_minus_u + 4.0 * u * sb * sb;
    const double sign = a > 0.0 ? 1.0 : -1.0;
    return {scale * 2.0 * u * std::sin(2.0 * b) / den, sign * scale * (1.0 - u * u) / den};
}

double PeriodicKernel::far_field(double t) const {
    return std::abs(t) / (2.0 * period_) - kLn2 / (2.0 * kPi);
}

double PeriodicKernel::remainder_at_origin() const { return std::log(kPi / period_) / (2.0 * kPi); }

double PeriodicKernel::smooth_remainder(const Vec2& diff) const {
    const double a = kPi * diff.y() / period_;
    const double b = kPi * diff.x() / period_;
    const double r2 = a * a + b * b;
    if (r2 == 0.0) {
        return remainder_at_origin();
    }
    if (std::abs(a) < kDirectLimit) {
        // ln(Q / (a²+b²)) is O(r²) near the origin; both terms keep full relative precision.
        const double sa = std::sinh(a);
        const double sb = std::sin(b);
        return std::log((sa * sa + sb * sb) / r2) / (4.0 * kPi) + remainder_at_origin();
    }
    return log_q(a, b) / (4.0 * kPi) - std::log(diff.norm()) / (2.0 * kPi);
}

double green(const PeriodicKernel& kernel, const Vec2& xi, const Vec2& zeta) { return kernel.green(xi - zeta); }

Vec2 grad_green(const PeriodicKernel& kernel, const Vec2& xi, const Vec2& zeta) {
    return kernel.grad_green(xi - zeta);
}

double far_field(const PeriodicKernel& kernel, double separation) { return kernel.far_field(separation); }

} // namespace npstrain
