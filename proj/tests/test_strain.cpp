#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "npstrain/errors.hpp"
#include "npstrain/strain.hpp"

using namespace npstrain;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;

CalibrationTable synthetic_table(const std::vector<double>& periods) {
    CalibrationTable t;
    for (double p : periods) {
        CalibrationRow r;
        r.period = p;
        r.found = true;
        r.peak_wavelength = 800e-9 + 600e-9 / (p * p);
        t.rows.push_back(r);
    }
    return t;
}
} // namespace

TEST_CASE("stretch ratio of a threefold elongation") {
    const double r = 5e-6;
    CHECK(std::abs(stretch_ratio(r, 3 * r) - 2.13) < 0.005);
    CHECK(stretch_ratio(r, r) == Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(stretch_ratio(r, 0.5 * r), DomainError);
}

TEST_CASE("deformation index and perimeter") {
    CHECK(deformation_index(3.0, 1.0) == Approx(0.5));
    CHECK(deformation_index(2.0, 2.0) == 0.0);
    CHECK_THROWS_AS(deformation_index(1.0, 2.0), DomainError);
    CHECK(perimeter(1.0, 1.0) == Approx(2 * kPi).epsilon(1e-15));
    CHECK_THROWS_AS(perimeter(-1.0, 1.0), DomainError);
}

TEST_CASE("axes from perimeter invert the forward map") {
    const double r = 5e-6;
    for (double f = 1.0; f <= 5.0; f += 0.01) {
        const double L1 = f * r, L2 = r * r / L1;
        const auto [a, b] = axes_from_perimeter(r, perimeter(L1, L2));
        CHECK(std::abs(a - L1) < 1e-10 * L1);
        CHECK(std::abs(b - L2) < 1e-10 * L2);
        CHECK(a * b == Approx(r * r).epsilon(1e-14));
    }
    // Below √ε the perimeter no longer resolves L1 − r; the error is then
    // bounded by the conditioning of P(L1) at its minimum.
    for (double f : {1e-9, 1e-6}) {
        const double L1 = r * (1 + f);
        const auto [a, b] = axes_from_perimeter(r, perimeter(L1, r * r / L1));
        CHECK(std::abs(a - L1) < 4 * std::sqrt(std::numeric_limits<double>::epsilon()) * r);
    }
    const auto [a, b] = axes_from_perimeter(r, 2 * kPi * r);
    CHECK(a == b);
    CHECK_THROWS_AS(axes_from_perimeter(r, 0.99 * 2 * kPi * r), DomainError);
}

TEST_CASE("capsule states from axis and from period agree") {
    const CapsuleSpec cap;
    CHECK(cap.rest_period_ratio() == Approx(2 * kPi * cap.r / (cap.N * cap.delta_phys)));
    for (double L1 : {1.05 * cap.r, 1.6 * cap.r, 2.5 * cap.r}) {
        const CapsuleState a = state_from_axis(cap, L1);
        const CapsuleState b = state_from_period(cap, a.period_ratio);
        CHECK(b.L1 == Approx(a.L1).epsilon(1e-12));
        CHECK(b.D == Approx(a.D).epsilon(1e-10));
        CHECK(b.d == Approx(a.d).epsilon(1e-14));
        CHECK(b.theta == 0.0);
        CHECK(a.d * a.N == Approx(a.P).epsilon(1e-15));
    }
    CHECK(state_from_axis(cap, 2 * cap.r).describe().find("D=") != std::string::npos);
    CapsuleSpec bad = cap;
    bad.N = 0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("calibration interpolation") {
    const std::vector<double> periods{1.0, 1.125, 1.25, 1.375, 1.5, 1.625, 1.75, 1.875, 2.0};
    const CalibrationTable t = synthetic_table(periods);
    // Exact at the knots.
    for (const auto& row : t.rows) CHECK(period_from_peak(row.peak_wavelength, t) == Approx(row.period).epsilon(1e-14));
    // Monotone between knots.
    double prev = 3.0;
    for (double lam = t.rows.back().peak_wavelength; lam <= t.rows.front().peak_wavelength; lam += 5e-9) {
        const double p = period_from_peak(lam, t);
        CHECK(p <= prev);
        prev = p;
    }
    // Accuracy against the smooth generating law.
    const double lam = 800e-9 + 600e-9 / (1.3 * 1.3);
    CHECK(period_from_peak(lam, t) == Approx(1.3).epsilon(1e-3));

    CHECK_THROWS_AS(period_from_peak(100e-9, t), DomainError);
    CHECK_THROWS_AS(period_from_peak(5e-6, t), DomainError);

    // Two rows: linear in 1/Λ².
    const CalibrationTable small = synthetic_table({1.0, 2.0});
    const double a = small.rows[0].peak_wavelength, b = small.rows[1].peak_wavelength;
    const double mid = 1.0 / std::sqrt(0.5 * (1.0 / (a * a) + 1.0 / (b * b)));
    CHECK(period_from_peak(mid, small) == Approx(1.5).epsilon(1e-14));

    CalibrationTable broken = t;
    broken.rows[3].found = false;
    CHECK_THROWS_AS(period_from_peak(1e-6, broken), DomainError);
    CHECK_THROWS_AS(period_from_peak(1e-6, CalibrationTable{}), DomainError);
}

TEST_CASE("graded periods") {
    const std::vector<double> p = graded_periods(1.0, 2.0, 9);
    REQUIRE(p.size() == 9);
    CHECK(p.front() == 1.0);
    CHECK(p.back() == 2.0);
    CHECK(p[4] == Approx(1.25));
    for (std::size_t i = 2; i < p.size(); ++i) CHECK(p[i] - p[i - 1] > p[i - 1] - p[i - 2]);
    CHECK_THROWS_AS(graded_periods(2.0, 1.0, 9), DomainError);
    CHECK_THROWS_AS(graded_periods(1.0, 2.0, 1), DomainError);
}

TEST_CASE("forward then inverse recovers the deformation") {
    const CapsuleSpec cap;
    const CalibrationTable t = synthetic_table(graded_periods(1.0, 2.0, 9));
    for (double L1 : {1.05 * cap.r, 1.2 * cap.r, 1.7 * cap.r, 2.4 * cap.r}) {
        const CapsuleState truth = state_from_axis(cap, L1);
        if (truth.period_ratio < 1.0 || truth.period_ratio > 2.0) continue;
        const double lam = 800e-9 + 600e-9 / (truth.period_ratio * truth.period_ratio);
        const CapsuleState got = invert_peak_to_deformation(lam, t, cap);
        CHECK(std::abs(got.D - truth.D) < 1e-3);
    }
}
