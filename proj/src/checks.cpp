#include "npstrain/checks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "npstrain/errors.hpp"

namespace npstrain {

namespace {

double binomial(int m, int k) {
    double out = 1.0;
    for (int i = 1; i <= k; ++i) out = out * (m - k + i) / i;
    return out;
}

CheckResult below(std::string name, double value, double threshold, std::string detail = {}) {
    const bool ok = std::isfinite(value) && value < threshold;
    return {std::move(name), value, threshold, ok, std::move(detail)};
}

double top_of(const CellGeometry& cell) {
    double top = -1e300;
    for (const Vec2& x : cell.nodes()) top = std::max(top, x.y());
    return top;
}

} // namespace

NormalDerivativeTraces single_layer_normal_traces(const OffSurfaceEvaluator& evaluator, const CellGeometry& cell,
                                                  const Eigen::VectorXd& density, int node, double h, int samples) {
    const Vec2 x = cell.nodes()[node];
    const Vec2 nu = cell.normals()[node];
    NormalDerivativeTraces out;
    // Polynomial extrapolation to s = 0 from s_k = k h: weights (−1)^{k+1} C(m, k).
    for (int k = 1; k <= samples; ++k) {
        const double weight = ((k % 2) ? 1.0 : -1.0) * binomial(samples, k);
        const double s = k * h;
        out.outside += weight * evaluator.single_layer_gradient(density, x + s * nu).dot(nu);
        out.inside += weight * evaluator.single_layer_gradient(density, x - s * nu).dot(nu);
    }
    return out;
}

double trace_jump_residual(const CellGeometry& cell, const BoundaryOperator& np_adjoint,
                           const Eigen::VectorXd& density) {
    const OffSurfaceEvaluator evaluator(cell, 16);
    const double h = 6.0 * evaluator.spacing();
    const Eigen::VectorXd k_phi = np_adjoint.apply(density);
    const double cos25 = std::cos(25.0 * std::numbers::pi / 180.0);
    double worst = 0.0;
    double scale = density.cwiseAbs().maxCoeff();
    for (int i = 0; i < cell.size(); ++i) {
        if (std::abs(cell.normals()[i].y()) < cos25) continue;
        const NormalDerivativeTraces t = single_layer_normal_traces(evaluator, cell, density, i, h);
        worst = std::max(worst, std::abs(t.outside - (0.5 * density[i] + k_phi[i])));
        worst = std::max(worst, std::abs(t.inside - (-0.5 * density[i] + k_phi[i])));
    }
    return worst / std::max(scale, 1e-300);
}

double moment_identity_residual(const SpectralDecomposition& spec, int count) {
    double worst = 0.0;
    for (int j = 1; j <= count && j < spec.size(); ++j) {
        const double lhs = (0.5 - spec.eigenvalues[j]) * spec.dual_moments_zeta2[j];
        worst = std::max(worst, std::abs(lhs - spec.moments_nu2[j]));
    }
    return worst;
}

Eigen::VectorXd point_source_density(const CellGeometry& cell, const Vec2& source) {
    Eigen::VectorXd out(cell.size());
    for (int i = 0; i < cell.size(); ++i) {
        const Vec2 d = cell.nodes()[i] - source;
        out[i] = d.dot(cell.normals()[i]) / d.squaredNorm();
    }
    const double mean = cell.weights().dot(out) / cell.weights().sum();
    return out.array() - mean;
}

std::vector<CheckResult> operator_checks(const CellGeometry& cell, SingularQuadrature rule) {
    std::vector<CheckResult> out;
    const int n = cell.size();
    const BoundaryOperator single = assemble_single_layer(cell, rule);
    const BoundaryOperator kstar = assemble_np_adjoint(cell);
    const BoundaryOperator k = assemble_np(kstar);
    const BoundaryOperator dbl = assemble_double_layer(cell);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);

    out.push_back(below("calderon_residual", calderon_residual(single, kstar), 1e-8));
    out.push_back(below("np_of_one_minus_half", (k.apply(ones).array() - 0.5).abs().maxCoeff(), 1e-8));
    out.push_back(below("double_layer_on_surface_of_one_minus_half", (dbl.apply(ones).array() - 0.5).abs().maxCoeff(), 1e-8));

    const double top = top_of(cell);
    const OffSurfaceEvaluator evaluator(cell, 4);
    const double inside = std::abs(evaluator.double_layer(ones, Vec2(0.0, 0.0)) - 1.0);
    const double outside = std::abs(evaluator.double_layer(ones, Vec2(0.0, top + 0.5)));
    out.push_back(below("double_layer_off_surface_of_one", std::max(inside, outside), 1e-6,
                        "inside value 1, outside value 0"));

    const Eigen::VectorXd density = point_source_density(cell, Vec2(0.0, top + 0.35));
    out.push_back(below("trace_jump_residual", trace_jump_residual(cell, kstar, density), 1e-6,
                        "(+-1/2 + K*) phi against extrapolated off-surface normal derivatives"));

    const PeriodicKernel kernel(cell.period_ratio());
    const double far = std::abs(kernel.green(Vec2(0.0, 8.0)) - kernel.far_field(8.0));
    const double far_bound = 2.0 * std::exp(-2.0 * std::numbers::pi * 8.0 / cell.period_ratio()) + 1e-14;
    out.push_back(below("green_far_field_gap_at_8", far, far_bound, "bound 2 exp(-16 pi / L)"));

    try {
        const SpectralDecomposition spec = eigendecompose(cell, single, kstar);
        double lo = 1.0, hi = -1.0;
        for (int j = 1; j < spec.size(); ++j) {
            lo = std::min(lo, spec.eigenvalues[j]);
            hi = std::max(hi, spec.eigenvalues[j]);
        }
        std::ostringstream range;
        range.precision(10);
        range << "nontrivial eigenvalues in [" << lo << ", " << hi << "]";
        const double excess = std::max({0.0, -0.5 - lo, hi - 0.5});
        out.push_back({"spectrum_containment", excess, 1e-6, lo > -0.5 - 1e-6 && hi <= 0.5 + 1e-6, range.str()});
        out.push_back(below("lambda0_minus_half", std::abs(spec.eigenvalues[0] - 0.5), 1e-8));
        out.push_back(below("orthonormality_residual", spec.orthonormality_residual(), 1e-8));
        double mean = 0.0;
        for (int j = 1; j < spec.size(); ++j) mean = std::max(mean, std::abs(spec.weights.dot(spec.eigendensities.col(j))));
        out.push_back(below("zero_mean_residual", mean, 1e-8));
        out.push_back(below("moment_identity_residual", moment_identity_residual(spec, 10), 1e-6, "first 10 modes"));
        const BoundaryLayerLimits lim = alpha_infinity(spec, cplx(0.0, 0.05));
        out.push_back(below("alpha2_plus_plus_minus", std::abs(lim.alpha2_plus + lim.alpha2_minus), 1e-15,
                            "alpha2+ = -alpha2- at lambda = 0.05i"));
    } catch (const Error& e) {
        out.push_back({"spectral_decomposition", 1.0, 0.0, false, e.what()});
    }
    return out;
}

} // namespace npstrain
