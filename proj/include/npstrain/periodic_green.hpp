#pragma once

#include "npstrain/geometry.hpp"

namespace npstrain {

/// Laplace Green's function summed over the lattice {(nL, 0)}:
///
///   G♯(ξ) = (1/4π) ln[ sinh²(πξ₂/L) + sin²(πξ₁/L) ].
///
/// Away from the particle row it is evaluated through e^{-2π|ξ₂|/L} so the
/// hyperbolic terms never overflow. All members are pure.
class PeriodicKernel {
public:
    explicit PeriodicKernel(double period_ratio);

    [[nodiscard]] double period_ratio() const { return period_; }

    /// G♯ at the separation ξ − ζ. Throws SingularityError on lattice points.
    [[nodiscard]] double green(const Vec2& diff) const;
    /// ∇G♯ with respect to the first argument.
    [[nodiscard]] Vec2 grad_green(const Vec2& diff) const;
    /// ±t/(2L) − ln2/(2π) with the sign of t = ξ₂ − ζ₂.
    [[nodiscard]] double far_field(double t) const;

    /// R(ξ) = G♯(ξ) − (1/2π) ln|ξ|, smooth in the cell; R(0) = (1/2π) ln(π/L).
    [[nodiscard]] double smooth_remainder(const Vec2& diff) const;
    [[nodiscard]] double remainder_at_origin() const;

    /// True when diff lies on the singular lattice (to rounding).
    [[nodiscard]] bool on_lattice(const Vec2& diff) const;

private:
    /// ln[ sinh²a + sin²b ] with a = πξ₂/L, b = πξ₁/L.
    [[nodiscard]] double log_q(double a, double b) const;

    double period_;
};

double green(const PeriodicKernel& kernel, const Vec2& xi, const Vec2& zeta);
Vec2 grad_green(const PeriodicKernel& kernel, const Vec2& xi, const Vec2& zeta);
double far_field(const PeriodicKernel& kernel, double separation);

} // namespace npstrain
