#include "npstrain/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "npstrain/errors.hpp"

namespace npstrain {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

bool segments_cross(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2) {
    const double d1 = cross(p2 - p1, q1 - p1);
    const double d2 = cross(p2 - p1, q2 - p1);
    const double d3 = cross(q2 - q1, p1 - q1);
    const double d4 = cross(q2 - q1, p2 - q1);
    // Callers have already checked that the bounding boxes overlap, which covers
    // the collinear case.
    return d1 * d2 <= 0.0 && d3 * d4 <= 0.0;
}

double signed_area(const Contour& contour, int samples) {
    // Exact for trigonometric polynomials of degree < samples / 2.
    double area = 0.0;
    for (int i = 0; i < samples; ++i) {
        const CurveJet j = contour.jet(kTwoPi * i / samples);
        area += std::imag(std::conj(j.z) * j.dz);
    }
    return 0.5 * area * kTwoPi / samples;
}

Vec2 to_vec(cplx z) { return {z.real(), z.imag()}; }

} // namespace

double curvature(const CurveJet& jet) {
    const double speed = std::abs(jet.dz);
    return std::imag(std::conj(jet.dz) * jet.d2z) / (speed * speed * speed);
}

// ---------------------------------------------------------------------------

FourierContour::FourierContour(std::vector<FourierTerm> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) {
        throw GeometryError("Fourier contour needs at least one term");
    }
}

CurveJet FourierContour::jet(double t) const {
    CurveJet out{};
    for (const auto& term : terms_) {
        const double k = term.k;
        const cplx e = term.coefficient * std::exp(kI * (k * t));
        out.z += e;
        out.dz += kI * k * e;
        out.d2z += -k * k * e;
    }
    return out;
}

cplx FourierContour::third_derivative(double t) const {
    cplx out{};
    for (const auto& term : terms_) {
        const double k = term.k;
        out += -kI * k * k * k * term.coefficient * std::exp(kI * (k * t));
    }
    return out;
}

std::string FourierContour::describe() const {
    std::ostringstream os;
    os.precision(17);
    os << "fourier[";
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i) os << ' ';
        os << terms_[i].k << ':' << terms_[i].coefficient.real() << ',' << terms_[i].coefficient.imag();
    }
    os << ']';
    return os.str();
}

ReversedContour::ReversedContour(std::shared_ptr<const Contour> base) : base_(std::move(base)) {}

CurveJet ReversedContour::jet(double t) const {
    const CurveJet b = base_->jet(-t);
    return {b.z, -b.dz, b.d2z};
}

cplx ReversedContour::third_derivative(double t) const { return -base_->third_derivative(-t); }

std::string ReversedContour::describe() const { return "reversed(" + base_->describe() + ")"; }

NormalOffsetContour::NormalOffsetContour(std::shared_ptr<const Contour> base, double eta)
    : base_(std::move(base)), eta_(eta) {}

CurveJet NormalOffsetContour::jet(double t) const {
    const CurveJet b = base_->jet(t);
    const cplx d3 = base_->third_derivative(t);
    const double speed = std::abs(b.dz);
    const double kappa = curvature(b);
    const cplx c = std::conj(b.dz);
    const double dkappa = std::imag(c * d3) / std::pow(speed, 3)
                          - 3.0 * std::imag(c * b.d2z) * std::real(c * b.d2z) / std::pow(speed, 5);
    const cplx nu = -kI * b.dz / speed;
    const double stretch = 1.0 + eta_ * kappa;
    return {b.z + eta_ * nu, b.dz * stretch, b.d2z * stretch + b.dz * (eta_ * dkappa)};
}

cplx NormalOffsetContour::third_derivative(double) const {
    throw GeometryError("nested normal offsets are not supported");
}

std::string NormalOffsetContour::describe() const {
    std::ostringstream os;
    os.precision(17);
    os << "offset(" << base_->describe() << ", eta=" << eta_ << ')';
    return os.str();
}

// ---------------------------------------------------------------------------

CellGeometry::CellGeometry(std::shared_ptr<const Contour> contour, double period_ratio, int node_count)
    : contour_(std::move(contour)), period_ratio_(period_ratio) {
    if (!(period_ratio_ > 0.0) || !std::isfinite(period_ratio_)) {
        throw GeometryError("period ratio must be positive and finite");
    }
    if (node_count < kMinNodeCount || node_count % 2 != 0) {
        throw GeometryError("node_count must be even and at least " + std::to_string(kMinNodeCount)
                            + ", got " + std::to_string(node_count));
    }
    if (signed_area(*contour_, std::max(node_count, 64)) < 0.0) {
        contour_ = std::make_shared<ReversedContour>(contour_);
    }
    sample(node_count);
    validate();
}

CellGeometry::CellGeometry(Unchecked, std::shared_ptr<const Contour> contour, double period_ratio,
                           int node_count)
    : contour_(std::move(contour)), period_ratio_(period_ratio) {
    sample(node_count);
}

void CellGeometry::sample(int node_count) {
    params_.resize(node_count);
    curvatures_.resize(node_count);
    weights_.resize(node_count);
    speeds_.resize(node_count);
    nodes_.resize(node_count);
    normals_.resize(node_count);
    tangents_.resize(node_count);
    const double h = kTwoPi / node_count;
    for (int i = 0; i < node_count; ++i) {
        const double t = h * i;
        const CurveJet j = contour_->jet(t);
        const double speed = std::abs(j.dz);
        if (!(speed > 0.0) || !std::isfinite(speed)) {
            throw GeometryError("degenerate parametrization (zero speed)");
        }
        const cplx tangent = j.dz / speed;
        params_[i] = t;
        nodes_[i] = to_vec(j.z);
        tangents_[i] = to_vec(tangent);
        normals_[i] = to_vec(-kI * tangent);
        curvatures_[i] = curvature(j);
        speeds_[i] = speed;
        weights_[i] = h * speed;
    }
}

void CellGeometry::validate() const {
    const int n = size();
    const double half = 0.5 * period_ratio_;
    const int fine = 8 * n;
    for (int i = 0; i < fine; ++i) {
        const double x1 = contour_->jet(kTwoPi * i / fine).z.real();
        if (!(std::abs(x1) < half)) {
            std::ostringstream os;
            os << "particle boundary leaves the strip |xi_1| < " << half << " (reaches " << x1
               << "); it would overlap its periodic copies";
            throw GeometryError(os.str());
        }
    }
    for (int i = 0; i < n; ++i) {
        const Vec2& p1 = nodes_[i];
        const Vec2& p2 = nodes_[(i + 1) % n];
        const Eigen::AlignedBox2d box_p(p1.cwiseMin(p2), p1.cwiseMax(p2));
        for (int j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;
            const Vec2& q1 = nodes_[j];
            const Vec2& q2 = nodes_[(j + 1) % n];
            const Eigen::AlignedBox2d box_q(q1.cwiseMin(q2), q1.cwiseMax(q2));
            if (!box_p.intersects(box_q)) continue;
            if (segments_cross(p1, p2, q1, q2)) {
                throw GeometryError("particle boundary self-intersects (segments " + std::to_string(i)
                                    + " and " + std::to_string(j) + ")");
            }
        }
    }
}

Eigen::VectorXd CellGeometry::normal_component(int l) const {
    Eigen::VectorXd out(size());
    for (int i = 0; i < size(); ++i) out[i] = normals_[i][l];
    return out;
}

Eigen::VectorXd CellGeometry::coordinate(int l) const {
    Eigen::VectorXd out(size());
    for (int i = 0; i < size(); ++i) out[i] = nodes_[i][l];
    return out;
}

std::string CellGeometry::descriptor() const {
    std::ostringstream os;
    os.precision(17);
    os << contour_->describe() << " period=" << period_ratio_ << " nodes=" << size();
    return os.str();
}

CellGeometry CellGeometry::resampled(int node_count) const {
    return CellGeometry(Unchecked{}, contour_, period_ratio_, node_count);
}

// ---------------------------------------------------------------------------

CellGeometry make_disk_cell(double radius, double period, int node_count) {
    if (!(radius > 0.0)) {
        throw GeometryError("disk radius must be positive");
    }
    if (!(2.0 * radius < period)) {
        std::ostringstream os;
        os << "disk of radius " << radius << " touches or overlaps its periodic copies at period " << period;
        throw GeometryError(os.str());
    }
    return CellGeometry(std::make_shared<FourierContour>(std::vector<FourierTerm>{{1, radius}}), period,
                        node_count);
}

CellGeometry make_ellipse_cell(double semi_axis_1, double semi_axis_2, double period, int node_count) {
    if (!(semi_axis_1 > 0.0 && semi_axis_2 > 0.0)) {
        throw GeometryError("ellipse semi-axes must be positive");
    }
    // a cos t + i b sin t
    std::vector<FourierTerm> terms{{1, 0.5 * (semi_axis_1 + semi_axis_2)}};
    if (semi_axis_1 != semi_axis_2) {
        terms.push_back({-1, 0.5 * (semi_axis_1 - semi_axis_2)});
    }
    return CellGeometry(std::make_shared<FourierContour>(std::move(terms)), period, node_count);
}

CellGeometry make_smooth_cell(std::vector<FourierTerm> terms, double period, int node_count) {
    return CellGeometry(std::make_shared<FourierContour>(std::move(terms)), period, node_count);
}

CellGeometry perturb_normal(const CellGeometry& cell, double eta) {
    if (eta == 0.0) {
        return cell;
    }
    for (int i = 0; i < cell.size(); ++i) {
        if (!(1.0 + eta * cell.curvatures()[i] > 0.0)) {
            throw GeometryError("normal offset folds the boundary (1 + eta*kappa <= 0)");
        }
    }
    auto offset = std::make_shared<NormalOffsetContour>(cell.parametrization(), eta);
    return CellGeometry(std::move(offset), cell.period_ratio(), cell.size());
}

} // namespace npstrain
