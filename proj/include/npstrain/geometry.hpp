#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace npstrain {

using Vec2 = Eigen::Vector2d;
using cplx = std::complex<double>;

/// Position and first two parameter derivatives of a closed curve, written
/// as complex numbers z = ξ₁ + iξ₂.
struct CurveJet {
    cplx z;
    cplx dz;
    cplx d2z;
};

/// Smooth 2π-periodic map t ↦ z(t) describing a particle boundary.
class Contour {
public:
    virtual ~Contour() = default;
    [[nodiscard]] virtual CurveJet jet(double t) const = 0;
    /// Needed to offset the contour along its normal (derivative of curvature).
    [[nodiscard]] virtual cplx third_derivative(double t) const = 0;
    [[nodiscard]] virtual std::string describe() const = 0;
};

struct FourierTerm {
    int k;
    cplx coefficient;
};

/// z(t) = Σ c_k e^{ikt}; derivatives are exact.
class FourierContour final : public Contour {
public:
    explicit FourierContour(std::vector<FourierTerm> terms);
    [[nodiscard]] CurveJet jet(double t) const override;
    [[nodiscard]] cplx third_derivative(double t) const override;
    [[nodiscard]] std::string describe() const override;
    [[nodiscard]] const std::vector<FourierTerm>& terms() const { return terms_; }

private:
    std::vector<FourierTerm> terms_;
};

/// Traverses another contour backwards, t ↦ base(−t).
class ReversedContour final : public Contour {
public:
    explicit ReversedContour(std::shared_ptr<const Contour> base);
    [[nodiscard]] CurveJet jet(double t) const override;
    [[nodiscard]] cplx third_derivative(double t) const override;
    [[nodiscard]] std::string describe() const override;

private:
    std::shared_ptr<const Contour> base_;
};

/// The curve {x + η ν(x)} for a counterclockwise base contour with outward
/// normal ν. Only one level of offsetting is supported.
class NormalOffsetContour final : public Contour {
public:
    NormalOffsetContour(std::shared_ptr<const Contour> base, double eta);
    [[nodiscard]] CurveJet jet(double t) const override;
    [[nodiscard]] cplx third_derivative(double t) const override;
    [[nodiscard]] std::string describe() const override;
    [[nodiscard]] double eta() const { return eta_; }

private:
    std::shared_ptr<const Contour> base_;
    double eta_;
};

/// Signed curvature of a jet, positive for counterclockwise convex curves.
double curvature(const CurveJet& jet);

/// Discretized particle boundary inside one period cell of width
/// `period_ratio`, sampled uniformly in the curve parameter.
///
/// Nodes are counterclockwise, normals point out of the particle, and
/// weights are the trapezoidal arclength measure (2π/n)|z'(t_i)|.
/// Immutable once constructed.
class CellGeometry {
public:
    /// Validates admissibility and normalizes orientation; throws GeometryError.
    CellGeometry(std::shared_ptr<const Contour> contour, double period_ratio, int node_count);

    [[nodiscard]] int size() const { return static_cast<int>(nodes_.size()); }
    [[nodiscard]] double period_ratio() const { return period_ratio_; }
    [[nodiscard]] const std::vector<Vec2>& nodes() const { return nodes_; }
    [[nodiscard]] const std::vector<Vec2>& normals() const { return normals_; }
    [[nodiscard]] const std::vector<Vec2>& tangents() const { return tangents_; }
    [[nodiscard]] const Eigen::VectorXd& curvatures() const { return curvatures_; }
    [[nodiscard]] const Eigen::VectorXd& weights() const { return weights_; }
    /// |z'(t_i)|, the arclength speed of the parametrization.
    [[nodiscard]] const Eigen::VectorXd& speeds() const { return speeds_; }
    [[nodiscard]] const Eigen::VectorXd& parameters() const { return params_; }
    [[nodiscard]] const std::shared_ptr<const Contour>& parametrization() const { return contour_; }

    [[nodiscard]] Eigen::VectorXd normal_component(int l) const;
    [[nodiscard]] Eigen::VectorXd coordinate(int l) const;
    [[nodiscard]] double perimeter() const { return weights_.sum(); }
    [[nodiscard]] std::string descriptor() const;

    /// Same curve at another resolution, skipping the O(n²) admissibility
    /// checks already performed on this cell.
    [[nodiscard]] CellGeometry resampled(int node_count) const;

private:
    struct Unchecked {};
    CellGeometry(Unchecked, std::shared_ptr<const Contour> contour, double period_ratio, int node_count);
    void sample(int node_count);
    void validate() const;

    std::shared_ptr<const Contour> contour_;
    double period_ratio_;
    Eigen::VectorXd params_;
    std::vector<Vec2> nodes_;
    std::vector<Vec2> normals_;
    std::vector<Vec2> tangents_;
    Eigen::VectorXd curvatures_;
    Eigen::VectorXd weights_;
    Eigen::VectorXd speeds_;
};

inline constexpr int kMinNodeCount = 16;

CellGeometry make_disk_cell(double radius, double period, int node_count);
CellGeometry make_ellipse_cell(double semi_axis_1, double semi_axis_2, double period, int node_count);
CellGeometry make_smooth_cell(std::vector<FourierTerm> terms, double period, int node_count);

/// Discretization of B_η = {x + ην(x)} on the same parameter grid.
CellGeometry perturb_normal(const CellGeometry& cell, double eta);

} // namespace npstrain
