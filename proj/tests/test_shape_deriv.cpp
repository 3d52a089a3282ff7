#include <doctest.h>

#include <cmath>

#include "npstrain/errors.hpp"
#include "npstrain/shape_deriv.hpp"

using namespace npstrain;
using doctest::Approx;

TEST_CASE("free-space disk: the mixed reading predicts a zero slope") {
    // Every non-trivial eigenvalue of a free-space disk is 0 for all radii, so dλ/dη = 0.
    const CellGeometry cell = make_disk_cell(0.3, 1e3, 64);
    const SpectralDecomposition spec = eigendecompose(cell);
    const ShapeDerivativeTerms t = shape_derivative(cell, spec, spec.dominant_mode());
    CHECK(t.gap > kSimplicityGap);
    // both_plus is the negative of mixed, so it vanishes here as well.
    CHECK(std::abs(t.slope(SignReading::mixed)) < 1e-5 * std::abs(t.volume_term));
    for (SignReading r : {SignReading::statement, SignReading::proof}) {
        CHECK(std::abs(t.slope(r)) > 0.1 * std::abs(t.volume_term));
    }
}

TEST_CASE("degenerate eigenvalues and bad indices are rejected") {
    const CellGeometry cell = make_disk_cell(0.3, 1e3, 64);
    const SpectralDecomposition spec = eigendecompose(cell);
    CHECK_THROWS_AS(shape_derivative(cell, spec, spec.size() / 2), DomainError);
    CHECK_THROWS_AS(shape_derivative(cell, spec, 0), DomainError);
    CHECK_THROWS_AS(shape_derivative(cell, spec, spec.size()), DomainError);
    CHECK_THROWS_AS(shape_derivative(make_disk_cell(0.3, 1e3, 32), spec, 1), DomainError);
}

TEST_CASE("terms are consistent across readings") {
    ShapeDerivativeTerms t;
    t.eigenvalue = -0.2;
    t.volume_term = 0.3;
    t.tangential_term = 0.7;
    CHECK(t.slope(SignReading::statement) == Approx(-0.3 + 0.7));
    CHECK(t.slope(SignReading::proof) == Approx(0.3 - 0.7));
    CHECK(t.slope(SignReading::mixed) == Approx(-1.0));
    CHECK(t.slope(SignReading::both_plus) == Approx(1.0));
    CHECK(t.first_order(1e-3) == Approx(-0.2 - 1e-3));
    CHECK(to_string(SignReading::mixed) == "mixed(-,-)");
}

TEST_CASE("ellipse: finite differences select a reading and converge linearly") {
    const CellGeometry cell = make_ellipse_cell(0.3, 0.2, 1.0, 128);
    const int mode = eigendecompose(cell).dominant_mode();
    const ShapeDerivativeReport rep = validate_shape_derivative(cell, mode, {1e-2, 1e-3, 1e-4});
    CHECK(rep.selected == kDefaultReading);
    CHECK(rep.sign_consistent);
    REQUIRE(rep.ladder.size() == 3);
    CHECK(rep.ladder[0].error > rep.ladder[1].error);
    CHECK(rep.ladder[1].error > rep.ladder[2].error);
    CHECK(rep.error_exponent == Approx(1.0).epsilon(0.1));
    for (const auto& row : rep.ladder) {
        CHECK(row.overlap_forward > 0.99);
        CHECK(row.overlap_backward > 0.99);
        // Central differences are second order.
        CHECK(std::abs(row.slope_central - rep.prediction()) < 10 * row.eta);
    }
    for (std::size_t r = 0; r < kAllReadings.size(); ++r) CHECK(rep.predictions[r] == rep.terms.slope(kAllReadings[r]));
    CHECK(rep.describe().find("selected sign reading mixed(-,-)") != std::string::npos);
    CHECK_THROWS_AS(validate_shape_derivative(cell, mode, {}), DomainError);
}
