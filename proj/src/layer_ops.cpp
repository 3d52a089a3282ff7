#include "npstrain/layer_ops.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "npstrain/errors.hpp"
#include "npstrain/trig.hpp"

namespace npstrain {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<double> log_weight_table(int n) {
    std::vector<double> table(n);
    for (int d = 0; d < n; ++d) table[d] = log_quadrature_weight(d, n);
    return table;
}

// Smooth part H of the single-layer kernel after removing (1/4π) ln(4 sin²(τ/2)).
double split_smooth_part(const PeriodicKernel& kernel, const CellGeometry& cell, int i, int j) {
    if (i == j) {
        return std::log(cell.speeds()[i]) / kTwoPi + kernel.remainder_at_origin();
    }
    const Vec2 diff = cell.nodes()[i] - cell.nodes()[j];
    const double half_tau = 0.5 * (cell.parameters()[i] - cell.parameters()[j]);
    const double s = std::sin(half_tau);
    return kernel.smooth_remainder(diff) + std::log(diff.squaredNorm() / (4.0 * s * s)) / (4.0 * kPi);
}

double single_layer_entry(const PeriodicKernel& kernel, const CellGeometry& cell, SingularQuadrature rule,
                          int i, int j, double log_weight) {
    const int n = cell.size();
    if (rule == SingularQuadrature::plain_trapezoid) {
        return i == j ? 0.0 : kernel.green(cell.nodes()[i] - cell.nodes()[j]) * cell.weights()[j];
    }
    const double smooth = split_smooth_part(kernel, cell, i, j);
    return (log_weight / (4.0 * kPi) + kTwoPi / n * smooth) * cell.speeds()[j];
}

double np_adjoint_entry(const PeriodicKernel& kernel, const CellGeometry& cell, int i, int j) {
    if (i == j) {
        return cell.curvatures()[i] * cell.weights()[i] / (4.0 * kPi);
    }
    const Vec2 g = kernel.grad_green(cell.nodes()[i] - cell.nodes()[j]);
    return cell.normals()[i].dot(g) * cell.weights()[j];
}

double double_layer_entry(const PeriodicKernel& kernel, const CellGeometry& cell, int i, int j) {
    if (i == j) {
        return cell.curvatures()[i] * cell.weights()[i] / (4.0 * kPi);
    }
    const Vec2 g = kernel.grad_green(cell.nodes()[i] - cell.nodes()[j]);
    return -cell.normals()[j].dot(g) * cell.weights()[j];
}

BoundaryOperator empty_operator(OperatorKind kind, const CellGeometry& cell) {
    return {kind, Eigen::MatrixXd(cell.size(), cell.size()), cell.weights(), cell.period_ratio()};
}

} // namespace

std::string to_string(OperatorKind kind) {
    switch (kind) {
    case OperatorKind::single_layer: return "single_layer";
    case OperatorKind::np_adjoint: return "np_adjoint";
    case OperatorKind::np: return "np";
    case OperatorKind::double_layer: return "double_layer";
    }
    return "unknown";
}

double log_quadrature_weight(int offset, int node_count) {
    const int m = node_count / 2;
    const double tau = kPi * offset / m;
    double sum = 0.0;
    for (int k = 1; k < m; ++k) sum += std::cos(k * tau) / k;
    const double nyquist = (offset % 2 == 0) ? 1.0 : -1.0;
    return -(kTwoPi / m) * sum - kPi / (static_cast<double>(m) * m) * nyquist;
}

BoundaryOperator assemble_single_layer(const CellGeometry& cell, SingularQuadrature rule) {
    const PeriodicKernel kernel(cell.period_ratio());
    const int n = cell.size();
    const std::vector<double> table = log_weight_table(n);
    BoundaryOperator op = empty_operator(OperatorKind::single_layer, cell);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            op.matrix(i, j) = single_layer_entry(kernel, cell, rule, i, j, table[(i - j + n) % n]);
        }
    }
    return op;
}

BoundaryOperator assemble_np_adjoint(const CellGeometry& cell) {
    const PeriodicKernel kernel(cell.period_ratio());
    const int n = cell.size();
    BoundaryOperator op = empty_operator(OperatorKind::np_adjoint, cell);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            op.matrix(i, j) = np_adjoint_entry(kernel, cell, i, j);
        }
    }
    return op;
}

BoundaryOperator assemble_np(const BoundaryOperator& np_adjoint) {
    if (np_adjoint.kind != OperatorKind::np_adjoint) {
        throw DomainError("assemble_np expects the NP adjoint operator");
    }
    const Eigen::VectorXd& w = np_adjoint.weights;
    BoundaryOperator op{OperatorKind::np, w.cwiseInverse().asDiagonal() * np_adjoint.matrix.transpose() * w.asDiagonal(),
                        w, np_adjoint.period_ratio};
    return op;
}

BoundaryOperator assemble_double_layer(const CellGeometry& cell) {
    const PeriodicKernel kernel(cell.period_ratio());
    const int n = cell.size();
    BoundaryOperator op = empty_operator(OperatorKind::double_layer, cell);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            op.matrix(i, j) = double_layer_entry(kernel, cell, i, j);
        }
    }
    return op;
}

double calderon_residual(const BoundaryOperator& single_layer, const BoundaryOperator& np_adjoint) {
    const BoundaryOperator np = assemble_np(np_adjoint);
    const Eigen::MatrixXd diff = np.matrix * single_layer.matrix - single_layer.matrix * np_adjoint.matrix;
    const Eigen::VectorXd sqrt_w = single_layer.weights.cwiseSqrt();
    const Eigen::MatrixXd scaled = sqrt_w.asDiagonal() * diff * sqrt_w.cwiseInverse().asDiagonal();
    Eigen::BDCSVD<Eigen::MatrixXd> svd(scaled);
    return svd.singularValues()(0);
}

namespace reference {

BoundaryOperator assemble_single_layer(const CellGeometry& cell, SingularQuadrature rule) {
    const PeriodicKernel kernel(cell.period_ratio());
    const int n = cell.size();
    BoundaryOperator op = empty_operator(OperatorKind::single_layer, cell);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double w = rule == SingularQuadrature::kernel_split ? log_quadrature_weight((i - j + n) % n, n) : 0.0;
            op.matrix(i, j) = single_layer_entry(kernel, cell, rule, i, j, w);
        }
    }
    return op;
}

BoundaryOperator assemble_np_adjoint(const CellGeometry& cell) {
    const PeriodicKernel kernel(cell.period_ratio());
    const int n = cell.size();
    BoundaryOperator op = empty_operator(OperatorKind::np_adjoint, cell);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            op.matrix(i, j) = np_adjoint_entry(kernel, cell, i, j);
        }
    }
    return op;
}

BoundaryOperator assemble_double_layer(const CellGeometry& cell) {
    const PeriodicKernel kernel(cell.period_ratio());
    const int n = cell.size();
    BoundaryOperator op = empty_operator(OperatorKind::double_layer, cell);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            op.matrix(i, j) = double_layer_entry(kernel, cell, i, j);
        }
    }
    return op;
}

} // namespace reference

// ---------------------------------------------------------------------------

OffSurfaceEvaluator::OffSurfaceEvaluator(const CellGeometry& cell, int upsample)
    : fine_(cell.resampled(cell.size() * upsample)), kernel_(cell.period_ratio()), upsample_(upsample) {
    if (upsample < 1) {
        throw DomainError("upsample factor must be at least 1");
    }
    spacing_ = 0.0;
    const int m = fine_.size();
    for (int i = 0; i < m; ++i) {
        spacing_ = std::max(spacing_, (fine_.nodes()[(i + 1) % m] - fine_.nodes()[i]).norm());
    }
}

double OffSurfaceEvaluator::distance_to_boundary(const Vec2& xi) const {
    const double period = fine_.period_ratio();
    const double folded = xi.x() - period * std::round(xi.x() / period);
    double best = std::numeric_limits<double>::infinity();
    for (const Vec2& node : fine_.nodes()) {
        for (int shift = -1; shift <= 1; ++shift) {
            const Vec2 d(folded - node.x() - shift * period, xi.y() - node.y());
            best = std::min(best, d.norm());
        }
    }
    return best;
}

void OffSurfaceEvaluator::check_point(const Vec2& xi) const {
    const double dist = distance_to_boundary(xi);
    if (dist < spacing_) {
        std::ostringstream os;
        os << "evaluation point (" << xi.x() << ", " << xi.y() << ") is " << dist
           << " from the boundary, closer than the quadrature spacing " << spacing_;
        throw DomainError(os.str());
    }
}

Eigen::VectorXd OffSurfaceEvaluator::fine_weighted(const Eigen::VectorXd& density) const {
    return trig::resample(density, fine_.size()).cwiseProduct(fine_.weights());
}

double OffSurfaceEvaluator::single_layer(const Eigen::VectorXd& density, const Vec2& xi) const {
    check_point(xi);
    const Eigen::VectorXd q = fine_weighted(density);
    double sum = 0.0;
    for (int j = 0; j < fine_.size(); ++j) sum += kernel_.green(xi - fine_.nodes()[j]) * q[j];
    return sum;
}

cplx OffSurfaceEvaluator::single_layer(const Eigen::VectorXcd& density, const Vec2& xi) const {
    return {single_layer(Eigen::VectorXd(density.real()), xi), single_layer(Eigen::VectorXd(density.imag()), xi)};
}

Vec2 OffSurfaceEvaluator::single_layer_gradient(const Eigen::VectorXd& density, const Vec2& xi) const {
    check_point(xi);
    const Eigen::VectorXd q = fine_weighted(density);
    Vec2 sum = Vec2::Zero();
    for (int j = 0; j < fine_.size(); ++j) sum += kernel_.grad_green(xi - fine_.nodes()[j]) * q[j];
    return sum;
}

double OffSurfaceEvaluator::double_layer(const Eigen::VectorXd& density, const Vec2& xi) const {
    check_point(xi);
    const Eigen::VectorXd q = fine_weighted(density);
    double sum = 0.0;
    for (int j = 0; j < fine_.size(); ++j) {
        sum -= fine_.normals()[j].dot(kernel_.grad_green(xi - fine_.nodes()[j])) * q[j];
    }
    return sum;
}

double evaluate_single_layer_off_surface(const CellGeometry& cell, const Eigen::VectorXd& density, const Vec2& xi) {
    return OffSurfaceEvaluator(cell).single_layer(density, xi);
}

} // namespace npstrain
