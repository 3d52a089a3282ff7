#pragma once

#include <string>
#include <vector>

#include "npstrain/geometry.hpp"
#include "npstrain/layer_ops.hpp"
#include "npstrain/spectral.hpp"

namespace npstrain {

/// One line of the invariant suite.
struct CheckResult {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::string detail;
};

/// One-sided limits of ∂S[φ]/∂ν at node i, from the exact off-surface
/// gradient sampled at x_i ± k·h·ν (k = 1…samples) and extrapolated to h → 0.
struct NormalDerivativeTraces {
    double outside = 0.0;
    double inside = 0.0;
};
NormalDerivativeTraces single_layer_normal_traces(const OffSurfaceEvaluator& evaluator, const CellGeometry& cell,
                                                  const Eigen::VectorXd& density, int node, double h,
                                                  int samples = 8);

/// Largest deviation of the measured traces from (±1/2 + K*)φ over the nodes
/// whose normal is within 25° of vertical (far from the periodic neighbours).
double trace_jump_residual(const CellGeometry& cell, const BoundaryOperator& np_adjoint,
                           const Eigen::VectorXd& density);

/// Largest |(1/2 − λ_j)∫ζ₂φ_j − ⟨φ_j, ν₂⟩| over modes 1…count.
double moment_identity_residual(const SpectralDecomposition& spec, int count);

/// Smooth zero-mean test density: normal derivative of a point source at
/// `source` outside ∂B, with its mean removed.
Eigen::VectorXd point_source_density(const CellGeometry& cell, const Vec2& source);

/// Operator, spectral and far-field invariants of one cell.
std::vector<CheckResult> operator_checks(const CellGeometry& cell, SingularQuadrature rule);

} // namespace npstrain
