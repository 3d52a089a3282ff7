#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "npstrain/geometry.hpp"
#include "npstrain/layer_ops.hpp"

namespace npstrain {

/// Eigenpairs of the discrete periodic NP operator K*.
///
/// Column 0 is the equilibrium density (λ₀ = 1/2, normalized to unit total
/// mass). Columns 1… span the zero-mean sector, are orthonormal in the
/// pairing ⟨u, v⟩ = uᵀ·gram·v with gram = −W S, and are sorted by decreasing
/// eigenvalue. Each column's largest-magnitude entry is positive.
struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigendensities;
    /// ⟨φ_j, ν_l⟩ in the gram pairing; entry 0 is zero by definition.
    Eigen::VectorXd moments_nu1;
    Eigen::VectorXd moments_nu2;
    /// ∫ ζ₂ φ_j dσ, the plain dual pairing with the vertical coordinate.
    Eigen::VectorXd dual_moments_zeta2;
    Eigen::MatrixXd gram;
    Eigen::VectorXd weights;
    double period_ratio = 0.0;

    [[nodiscard]] int size() const { return static_cast<int>(eigenvalues.size()); }
    /// max |⟨φ_i, φ_j⟩ − δ_ij| over the zero-mean modes.
    [[nodiscard]] double orthonormality_residual() const;
    /// Index j ≥ 1 with the largest ⟨φ_j, ν₂⟩².
    [[nodiscard]] int dominant_mode() const;
};

struct BoundaryLayerLimits {
    cplx alpha1_plus;
    cplx alpha1_minus;
    cplx alpha2_plus;
    cplx alpha2_minus;
};

/// Throws NumericalError if the gram matrix is not positive definite on the
/// zero-mean sector.
SpectralDecomposition eigendecompose(const CellGeometry& cell, const BoundaryOperator& single_layer,
                                     const BoundaryOperator& np_adjoint);
SpectralDecomposition eigendecompose(const CellGeometry& cell);

/// Far-field constants of the corrector fields from the spectral sums
///   α^{(2),+} = −(1/2L) Σ_{j≥1} ⟨φ_j,ν₂⟩² / ((λ−λ_j)(1/2−λ_j)),
/// and the ν₁/ν₂ cross sum for α^{(1),+}. The minus limits are the negatives.
/// A real λ on an eigenvalue throws PoleError naming the mode.
BoundaryLayerLimits alpha_infinity(const SpectralDecomposition& spec, cplx lambda);

/// (λI − K*)⁻¹ rhs by a dense LU solve. Throws PoleError (nearest mode of
/// K*) when the system is numerically singular.
Eigen::VectorXcd resolvent_density(const BoundaryOperator& np_adjoint, cplx lambda, const Eigen::VectorXcd& rhs);

/// Σ_j ⟨φ_j, rhs⟩ φ_j / (λ − λ_j) over the zero-mean modes; the cross-check
/// for resolvent_density on zero-mean data.
Eigen::VectorXcd resolvent_density_spectral(const SpectralDecomposition& spec, cplx lambda,
                                            const Eigen::VectorXd& rhs);

/// The corrector α^{(l)} = S(λI − K*)⁻¹[ν_l] evaluated anywhere off ∂B.
class AlphaField {
public:
    AlphaField(const CellGeometry& cell, const BoundaryOperator& np_adjoint, cplx lambda, int component,
               int upsample = 4);

    [[nodiscard]] cplx value(const Vec2& xi) const;
    /// Complex gradient (∂₁α, ∂₂α).
    [[nodiscard]] Eigen::Vector2cd gradient(const Vec2& xi) const;
    [[nodiscard]] const Eigen::VectorXcd& density() const { return density_; }
    /// Limits as ξ₂ → ±∞ read off the density: ∓(1/2L) ∫ ζ₂ Ψ dσ.
    [[nodiscard]] cplx limit_plus() const;
    [[nodiscard]] cplx limit_minus() const { return -limit_plus(); }
    [[nodiscard]] const OffSurfaceEvaluator& evaluator() const { return evaluator_; }

private:
    OffSurfaceEvaluator evaluator_;
    Eigen::VectorXcd density_;
    Eigen::VectorXd zeta2_;
    Eigen::VectorXd weights_;
    double period_;
};

cplx alpha_field(const CellGeometry& cell, const BoundaryOperator& np_adjoint, cplx lambda, int component,
                 const Vec2& xi);

/// CSV with columns j, lambda_j, moment_nu2_j. Lines of `header` are written
/// first as '#' comments.
void write_eigenvalue_csv(std::ostream& os, const SpectralDecomposition& spec,
                          const std::vector<std::string>& header);

} // namespace npstrain
