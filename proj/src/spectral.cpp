#include "npstrain/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "npstrain/csv.hpp"
#include "npstrain/errors.hpp"

namespace npstrain {

namespace {

// Flip so the largest-magnitude entry is positive; makes output reproducible.
void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
    Eigen::Index k = 0;
    v.cwiseAbs().maxCoeff(&k);
    if (v[k] < 0.0) v = -v;
}

Eigen::VectorXd equilibrium_density(const Eigen::MatrixXd& kstar, const Eigen::VectorXd& w) {
    const Eigen::Index n = w.size();
    Eigen::MatrixXd bordered = Eigen::MatrixXd::Zero(n + 1, n + 1);
    bordered.topLeftCorner(n, n) = kstar - 0.5 * Eigen::MatrixXd::Identity(n, n);
    bordered.topRightCorner(n, 1).setOnes();
    bordered.bottomLeftCorner(1, n) = w.transpose();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
    rhs[n] = 1.0;
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(bordered);
    return lu.solve(rhs).head(n);
}

bool is_pole(cplx lambda, double lambda_j) {
    if (lambda.imag() != 0.0) return false;
    return std::abs(lambda.real() - lambda_j) <= 64.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(lambda_j));
}

} // namespace

double SpectralDecomposition::orthonormality_residual() const {
    const Eigen::Index m = eigendensities.cols() - 1;
    const auto phi = eigendensities.rightCols(m);
    const Eigen::MatrixXd overlap = phi.transpose() * gram * phi;
    return (overlap - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();
}

int SpectralDecomposition::dominant_mode() const {
    int best = 1;
    for (int j = 1; j < size(); ++j) {
        if (moments_nu2[j] * moments_nu2[j] > moments_nu2[best] * moments_nu2[best]) best = j;
    }
    return best;
}

SpectralDecomposition eigendecompose(const CellGeometry& cell, const BoundaryOperator& single_layer,
                                     const BoundaryOperator& np_adjoint) {
    if (single_layer.kind != OperatorKind::single_layer || np_adjoint.kind != OperatorKind::np_adjoint) {
        throw DomainError("eigendecompose expects the single layer and the NP adjoint operators");
    }
    const int n = cell.size();
    if (single_layer.size() != n || np_adjoint.size() != n) {
        throw DomainError("operators and cell have different node counts");
    }
    const Eigen::VectorXd& w = cell.weights();

    Eigen::MatrixXd gram = -(w.asDiagonal() * single_layer.matrix);
    gram = 0.5 * (gram + gram.transpose()).eval();
    Eigen::MatrixXd coupled = gram * np_adjoint.matrix;
    coupled = 0.5 * (coupled + coupled.transpose()).eval();

    // Orthonormal basis of the zero-mean sector {φ : wᵀφ = 0}.
    const Eigen::MatrixXd w_col = w;
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(w_col);
    const Eigen::MatrixXd q_full = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd q = q_full.rightCols(n - 1);

    const Eigen::MatrixXd gram_q = q.transpose() * gram * q;
    const Eigen::MatrixXd coupled_q = q.transpose() * coupled * q;
    const Eigen::LLT<Eigen::MatrixXd> llt(gram_q);
    if (llt.info() != Eigen::Success) {
        throw NumericalError("−S is not positive definite on zero-mean densities; the boundary is under-resolved "
                             "or the quadrature is broken");
    }
    const Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(coupled_q, gram_q);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("generalized symmetric eigensolve failed");
    }

    SpectralDecomposition spec;
    spec.eigenvalues.resize(n);
    spec.eigendensities.resize(n, n);

    Eigen::VectorXd phi0 = equilibrium_density(np_adjoint.matrix, w);
    const Eigen::VectorXd w_phi0 = w.cwiseProduct(phi0);
    spec.eigenvalues[0] = w_phi0.dot(np_adjoint.matrix * phi0) / w_phi0.dot(phi0);
    spec.eigendensities.col(0) = phi0;

    // Ascending from the solver; stored descending.
    for (int k = 0; k < n - 1; ++k) {
        const int src = n - 2 - k;
        spec.eigenvalues[k + 1] = solver.eigenvalues()[src];
        Eigen::VectorXd phi = q * solver.eigenvectors().col(src);
        fix_sign(phi);
        spec.eigendensities.col(k + 1) = phi;
    }

    const Eigen::VectorXd nu1 = cell.normal_component(0);
    const Eigen::VectorXd nu2 = cell.normal_component(1);
    spec.moments_nu1 = spec.eigendensities.transpose() * (gram * nu1);
    spec.moments_nu2 = spec.eigendensities.transpose() * (gram * nu2);
    spec.moments_nu1[0] = 0.0;
    spec.moments_nu2[0] = 0.0;
    spec.dual_moments_zeta2 = spec.eigendensities.transpose() * w.cwiseProduct(cell.coordinate(1));
    spec.gram = std::move(gram);
    spec.weights = w;
    spec.period_ratio = cell.period_ratio();
    return spec;
}

SpectralDecomposition eigendecompose(const CellGeometry& cell) {
    return eigendecompose(cell, assemble_single_layer(cell), assemble_np_adjoint(cell));
}

BoundaryLayerLimits alpha_infinity(const SpectralDecomposition& spec, cplx lambda) {
    cplx sum1 = 0.0;
    cplx sum2 = 0.0;
    for (int j = 1; j < spec.size(); ++j) {
        const double lj = spec.eigenvalues[j];
        if (is_pole(lambda, lj)) {
            std::ostringstream os;
            os << "contrast " << lambda.real() << " coincides with eigenvalue " << j << " (" << lj << ")";
            throw PoleError(os.str(), j);
        }
        const cplx denom = (lambda - lj) * (0.5 - lj);
        sum1 += spec.moments_nu1[j] * spec.moments_nu2[j] / denom;
        sum2 += spec.moments_nu2[j] * spec.moments_nu2[j] / denom;
    }
    const double prefactor = -1.0 / (2.0 * spec.period_ratio);
    BoundaryLayerLimits limits{};
    limits.alpha1_plus = prefactor * sum1;
    limits.alpha1_minus = -limits.alpha1_plus;
    limits.alpha2_plus = prefactor * sum2;
    limits.alpha2_minus = -limits.alpha2_plus;
    return limits;
}

Eigen::VectorXcd resolvent_density(const BoundaryOperator& np_adjoint, cplx lambda, const Eigen::VectorXcd& rhs) {
    const int n = np_adjoint.size();
    Eigen::MatrixXcd system = -np_adjoint.matrix.cast<cplx>();
    system.diagonal().array() += lambda;
    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(system);
    if (!(lu.rcond() > 1e3 * std::numeric_limits<double>::epsilon())) {
        const Eigen::EigenSolver<Eigen::MatrixXd> es(np_adjoint.matrix, false);
        std::vector<double> ev(n);
        for (int i = 0; i < n; ++i) ev[i] = es.eigenvalues()[i].real();
        std::sort(ev.begin(), ev.end(), std::greater<>());
        int nearest = 0;
        for (int i = 1; i < n; ++i) {
            if (std::abs(ev[i] - lambda.real()) < std::abs(ev[nearest] - lambda.real())) nearest = i;
        }
        std::ostringstream os;
        os << "resolvent system is singular (rcond " << lu.rcond() << "); nearest eigenvalue " << ev[nearest]
           << " at index " << nearest;
        throw PoleError(os.str(), nearest);
    }
    return lu.solve(rhs);
}

Eigen::VectorXcd resolvent_density_spectral(const SpectralDecomposition& spec, cplx lambda,
                                            const Eigen::VectorXd& rhs) {
    const Eigen::VectorXd moments = spec.eigendensities.transpose() * (spec.gram * rhs);
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(rhs.size());
    for (int j = 1; j < spec.size(); ++j) {
        out += (moments[j] / (lambda - spec.eigenvalues[j])) * spec.eigendensities.col(j).cast<cplx>();
    }
    return out;
}

AlphaField::AlphaField(const CellGeometry& cell, const BoundaryOperator& np_adjoint, cplx lambda, int component,
                       int upsample)
    : evaluator_(cell, upsample), zeta2_(cell.coordinate(1)), weights_(cell.weights()), period_(cell.period_ratio()) {
    if (component != 1 && component != 2) {
        throw DomainError("corrector component must be 1 or 2");
    }
    density_ = resolvent_density(np_adjoint, lambda, cell.normal_component(component - 1).cast<cplx>());
}

cplx AlphaField::value(const Vec2& xi) const { return evaluator_.single_layer(density_, xi); }

Eigen::Vector2cd AlphaField::gradient(const Vec2& xi) const {
    const Vec2 re = evaluator_.single_layer_gradient(Eigen::VectorXd(density_.real()), xi);
    const Vec2 im = evaluator_.single_layer_gradient(Eigen::VectorXd(density_.imag()), xi);
    return {cplx(re.x(), im.x()), cplx(re.y(), im.y())};
}

cplx AlphaField::limit_plus() const {
    cplx sum = 0.0;
    for (Eigen::Index i = 0; i < density_.size(); ++i) sum += weights_[i] * zeta2_[i] * density_[i];
    return -sum / (2.0 * period_);
}

cplx alpha_field(const CellGeometry& cell, const BoundaryOperator& np_adjoint, cplx lambda, int component,
                 const Vec2& xi) {
    return AlphaField(cell, np_adjoint, lambda, component).value(xi);
}

void write_eigenvalue_csv(std::ostream& os, const SpectralDecomposition& spec,
                          const std::vector<std::string>& header) {
    csv::write_comments(os, header);
    csv::write_row(os, {"j", "lambda_j", "moment_nu2_j"});
    for (int j = 0; j < spec.size(); ++j) {
        csv::write_row(os, {std::to_string(j), csv::number(spec.eigenvalues[j]), csv::number(spec.moments_nu2[j])});
    }
}

} // namespace npstrain
