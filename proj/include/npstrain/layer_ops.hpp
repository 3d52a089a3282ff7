#pragma once

#include <string>

#include <Eigen/Dense>

#include "npstrain/geometry.hpp"
#include "npstrain/periodic_green.hpp"

namespace npstrain {

enum class OperatorKind { single_layer, np_adjoint, np, double_layer };

std::string to_string(OperatorKind kind);

/// Dense Nyström matrix acting on nodal densities. Densities are values per
/// unit arclength; integrals against them use `weights`.
struct BoundaryOperator {
    OperatorKind kind;
    Eigen::MatrixXd matrix;
    Eigen::VectorXd weights;
    double period_ratio;

    [[nodiscard]] int size() const { return static_cast<int>(matrix.rows()); }
    [[nodiscard]] Eigen::VectorXd apply(const Eigen::VectorXd& density) const { return matrix * density; }
};

/// How the logarithmic singularity of the single layer is integrated.
enum class SingularQuadrature {
    /// Log part by the trigonometric log-weight rule, smooth remainder by trapezoid.
    kernel_split,
    /// Trapezoid with the diagonal dropped. Only first-order accurate; kept as
    /// a negative control for the validation suite.
    plain_trapezoid,
};

// The assemblers below split rows across OpenMP threads.

BoundaryOperator assemble_single_layer(const CellGeometry& cell,
                                       SingularQuadrature rule = SingularQuadrature::kernel_split);
/// K*[φ](x) = ∫ ∂G♯(x,y)/∂ν(x) φ(y) dσ(y); the diagonal is the curvature limit κ/(4π).
BoundaryOperator assemble_np_adjoint(const CellGeometry& cell);
/// K as the adjoint of K* in the weighted pairing, W⁻¹ K*ᵀ W.
BoundaryOperator assemble_np(const BoundaryOperator& np_adjoint);
/// D[φ](x) = p.v. ∫ ∂G♯(x,y)/∂ν(y) φ(y) dσ(y), assembled by its own quadrature.
BoundaryOperator assemble_double_layer(const CellGeometry& cell);

/// Spectral norm of W^{1/2}(K S − S K*)W^{-1/2}.
double calderon_residual(const BoundaryOperator& single_layer, const BoundaryOperator& np_adjoint);

/// Serial implementations kept as the reference the parallel kernels are
/// tested and benchmarked against. The log-weight rule is evaluated entry by
/// entry here instead of from a precomputed table.
namespace reference {
BoundaryOperator assemble_single_layer(const CellGeometry& cell,
                                       SingularQuadrature rule = SingularQuadrature::kernel_split);
BoundaryOperator assemble_np_adjoint(const CellGeometry& cell);
BoundaryOperator assemble_double_layer(const CellGeometry& cell);
} // namespace reference

/// Weight of the trigonometric product rule for ∫ ln(4 sin²((s−t)/2)) f(t) dt
/// between nodes separated by `offset` grid steps on an n-point grid.
double log_quadrature_weight(int offset, int node_count);

/// Layer potentials evaluated away from ∂B by trapezoidal quadrature on a
/// grid `upsample` times finer than the cell (densities are trigonometrically
/// interpolated). Points closer to ∂B or its periodic copies than one fine
/// node spacing are rejected with DomainError.
class OffSurfaceEvaluator {
public:
    explicit OffSurfaceEvaluator(const CellGeometry& cell, int upsample = 1);

    [[nodiscard]] double single_layer(const Eigen::VectorXd& density, const Vec2& xi) const;
    [[nodiscard]] cplx single_layer(const Eigen::VectorXcd& density, const Vec2& xi) const;
    [[nodiscard]] Vec2 single_layer_gradient(const Eigen::VectorXd& density, const Vec2& xi) const;
    [[nodiscard]] double double_layer(const Eigen::VectorXd& density, const Vec2& xi) const;

    /// Distance from xi to the discretized boundary, periodic copies included.
    [[nodiscard]] double distance_to_boundary(const Vec2& xi) const;
    /// Largest arclength gap between fine nodes.
    [[nodiscard]] double spacing() const { return spacing_; }
    [[nodiscard]] int upsample() const { return upsample_; }

private:
    void check_point(const Vec2& xi) const;
    [[nodiscard]] Eigen::VectorXd fine_weighted(const Eigen::VectorXd& density) const;

    CellGeometry fine_;
    PeriodicKernel kernel_;
    int upsample_;
    double spacing_;
};

double evaluate_single_layer_off_surface(const CellGeometry& cell, const Eigen::VectorXd& density, const Vec2& xi);

} // namespace npstrain
