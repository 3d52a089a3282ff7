#include "npstrain/shape_deriv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "npstrain/errors.hpp"
#include "npstrain/layer_ops.hpp"
#include "npstrain/trig.hpp"

namespace npstrain {

namespace {

constexpr double kMinOverlap = 0.9;

std::pair<double, double> signs(SignReading r) {
    switch (r) {
    case SignReading::statement: return {-1.0, 1.0};
    case SignReading::proof: return {1.0, -1.0};
    case SignReading::mixed: return {-1.0, -1.0};
    case SignReading::both_plus: return {1.0, 1.0};
    }
    return {0.0, 0.0};
}

struct Tracked {
    double eigenvalue;
    double overlap;
};

// Mode of the perturbed spectrum that best matches `phi` in the base pairing.
Tracked track_mode(const Eigen::VectorXd& phi, const Eigen::MatrixXd& base_gram, const SpectralDecomposition& perturbed) {
    const Eigen::VectorXd g_phi = base_gram * phi;
    Tracked best{0.0, -1.0};
    for (int k = 1; k < perturbed.size(); ++k) {
        const auto psi = perturbed.eigendensities.col(k);
        const double norm = std::sqrt(std::abs(psi.dot(base_gram * psi)));
        const double overlap = std::abs(g_phi.dot(psi)) / norm;
        if (overlap > best.overlap) best = {perturbed.eigenvalues[k], overlap};
    }
    return best;
}

} // namespace

std::string to_string(SignReading reading) {
    switch (reading) {
    case SignReading::statement: return "statement(-,+)";
    case SignReading::proof: return "proof(+,-)";
    case SignReading::mixed: return "mixed(-,-)";
    case SignReading::both_plus: return "both_plus(+,+)";
    }
    return "unknown";
}

double ShapeDerivativeTerms::slope(SignReading reading) const {
    const auto [sv, st] = signs(reading);
    return sv * volume_term + st * tangential_term;
}

double ShapeDerivativeTerms::first_order(double eta, SignReading reading) const {
    return eigenvalue + eta * slope(reading);
}

ShapeDerivativeTerms shape_derivative(const CellGeometry& cell, const SpectralDecomposition& spec, int mode) {
    if (mode < 1 || mode >= spec.size()) {
        throw DomainError("shape derivative needs a zero-mean mode index in [1, " + std::to_string(spec.size() - 1) + "]");
    }
    if (cell.size() != spec.size()) throw DomainError("cell and spectrum have different node counts");
    const double lam = spec.eigenvalues[mode];
    double gap = std::numeric_limits<double>::infinity();
    for (int k = 1; k < spec.size(); ++k) {
        if (k != mode) gap = std::min(gap, std::abs(spec.eigenvalues[k] - lam));
    }
    if (gap < kSimplicityGap) {
        std::ostringstream os;
        os << "eigenvalue " << mode << " (" << lam << ") is not simple: gap " << gap << " to its nearest neighbour";
        throw DomainError(os.str());
    }
    const Eigen::VectorXd phi = spec.eigendensities.col(mode);
    const BoundaryOperator single = assemble_single_layer(cell);
    const Eigen::VectorXd trace = single.apply(phi);
    const Eigen::VectorXd tangential = trig::derivative(trace).cwiseQuotient(cell.speeds());
    const Eigen::VectorXd& w = cell.weights();

    ShapeDerivativeTerms t;
    t.mode = mode;
    t.eigenvalue = lam;
    t.gap = gap;
    t.volume_term = (lam - 0.5) * (lam + 0.5) * w.dot(phi.cwiseAbs2());
    t.tangential_term = w.dot(tangential.cwiseAbs2());
    return t;
}

double ShapeDerivativeReport::prediction() const { return terms.slope(selected); }

std::string ShapeDerivativeReport::describe() const {
    std::ostringstream os;
    os.precision(10);
    os << "mode " << terms.mode << " lambda " << terms.eigenvalue << " gap " << terms.gap << '\n';
    for (std::size_t r = 0; r < kAllReadings.size(); ++r) {
        os << "  reading " << to_string(kAllReadings[r]) << " predicted slope " << predictions[r] << '\n';
    }
    for (const auto& row : ladder) {
        os << "  eta " << row.eta << " fd forward " << row.slope_forward << " backward " << row.slope_backward
           << " central " << row.slope_central << " error " << row.error << '\n';
    }
    os << "  selected sign reading " << to_string(selected) << (sign_consistent ? " (consistent)" : " (INCONSISTENT)")
       << " error exponent " << error_exponent;
    return os.str();
}

ShapeDerivativeReport validate_shape_derivative(const CellGeometry& cell, int mode, const std::vector<double>& etas) {
    if (etas.empty()) throw DomainError("shape-derivative validation needs at least one eta");
    const SpectralDecomposition base = eigendecompose(cell);
    ShapeDerivativeReport report;
    report.terms = shape_derivative(cell, base, mode);
    for (std::size_t r = 0; r < kAllReadings.size(); ++r) report.predictions[r] = report.terms.slope(kAllReadings[r]);

    const Eigen::VectorXd phi = base.eigendensities.col(mode);
    const double lam = report.terms.eigenvalue;
    for (double eta : etas) {
        if (!(eta > 0.0)) throw DomainError("eta values must be positive");
        const SpectralDecomposition plus = eigendecompose(perturb_normal(cell, eta));
        const SpectralDecomposition minus = eigendecompose(perturb_normal(cell, -eta));
        const Tracked tp = track_mode(phi, base.gram, plus);
        const Tracked tm = track_mode(phi, base.gram, minus);
        if (tp.overlap < kMinOverlap || tm.overlap < kMinOverlap) {
            std::ostringstream os;
            os << "mode tracking is ambiguous at eta " << eta << ": overlaps " << tp.overlap << ", " << tm.overlap;
            throw NumericalError(os.str());
        }
        ShapeLadderRow row;
        row.eta = eta;
        row.slope_forward = (tp.eigenvalue - lam) / eta;
        row.slope_backward = (lam - tm.eigenvalue) / eta;
        row.slope_central = (tp.eigenvalue - tm.eigenvalue) / (2.0 * eta);
        row.overlap_forward = tp.overlap;
        row.overlap_backward = tm.overlap;
        report.ladder.push_back(row);
    }

    const auto finest = std::min_element(report.ladder.begin(), report.ladder.end(),
                                         [](const auto& a, const auto& b) { return a.eta < b.eta; });
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < kAllReadings.size(); ++r) {
        const double err = std::abs(report.predictions[r] - finest->slope_central);
        if (err < best) {
            best = err;
            report.selected = kAllReadings[r];
        }
    }
    const double pred = report.prediction();
    report.sign_consistent = best <= 1e-3 * std::max(1.0, std::abs(pred));
    for (auto& row : report.ladder) row.error = std::abs(row.slope_forward - pred);

    if (report.ladder.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(report.ladder.size());
        for (const auto& row : report.ladder) {
            const double x = std::log(row.eta);
            const double y = std::log(std::max(row.error, std::numeric_limits<double>::min()));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        report.error_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    return report;
}

} // namespace npstrain
