#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "npstrain/errors.hpp"
#include "npstrain/resonance_sweep.hpp"

using namespace npstrain;
using doctest::Approx;

namespace {
std::vector<double> uniform(double lo, double hi, int n) {
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = lo + (hi - lo) * i / (n - 1);
    return x;
}
} // namespace

TEST_CASE("find_peaks refines a sampled Lorentzian") {
    const auto x = uniform(0.0, 10.0, 201);
    const double h = x[1] - x[0];
    for (double x0 : {3.013, 6.5, 4.97}) {
        std::vector<double> y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = 1.0 / ((x[i] - x0) * (x[i] - x0) + 0.3 * 0.3);
        const auto peaks = find_peaks(x, y);
        REQUIRE(peaks.size() == 1);
        CHECK(std::abs(peaks[0].wavelength - x0) < 0.02 * h);
        CHECK(std::abs(x[peaks[0].grid_index] - x0) <= 0.5 * h + 1e-12);
        CHECK(peaks[0].mode_index == -1);
    }
}

TEST_CASE("find_peaks: symmetric on-grid peak, monotone data, two peaks, positive rescaling") {
    const auto x = uniform(0.0, 1.0, 11);
    std::vector<double> y{1, 2, 3, 4, 5, 6, 5, 4, 3, 2, 1};
    auto p = find_peaks(x, y);
    REQUIRE(p.size() == 1);
    CHECK(p[0].wavelength == Approx(0.5).epsilon(1e-14));
    CHECK(p[0].grid_index == 5);

    std::vector<double> inc{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
    CHECK(find_peaks(x, inc).empty());
    std::vector<double> flat(11, 2.0);
    CHECK(find_peaks(x, flat).empty());

    std::vector<double> two{1, 3, 1, 1, 1, 1, 2, 5, 2, 1, 1};
    CHECK(find_peaks(x, two).size() == 2);

    std::vector<double> scaled(y.size());
    const std::vector<double> skew{1, 2, 3, 4, 6, 7, 5, 4, 3, 2, 1};
    for (std::size_t i = 0; i < y.size(); ++i) scaled[i] = 37.5 * skew[i];
    CHECK(find_peaks(x, scaled)[0].wavelength == Approx(find_peaks(x, skew)[0].wavelength).epsilon(1e-14));
}

TEST_CASE("window validation") {
    SweepWindow w;
    CHECK_NOTHROW(w.validate());
    CHECK(w.grid().front() == w.min_wavelength);
    CHECK(w.grid().back() == w.max_wavelength);
    w.samples = 8;
    CHECK_THROWS_AS(w.validate(), DomainError);
    w = SweepWindow{};
    w.max_wavelength = w.min_wavelength;
    CHECK_THROWS_AS(static_cast<void>(w.grid()), DomainError);
}

TEST_CASE("sweep: parallel equals serial, peak sits at the closed-form resonance") {
    const MaterialParams m;
    const SpectralDecomposition spec = eigendecompose(make_disk_cell(0.45, 1.0, 128));
    SweepWindow w;
    w.samples = 200;
    const ResonanceCurve a = sweep(spec, m, w);
    const ResonanceCurve b = reference::sweep(spec, m, w);
    CHECK(a.magnitudes == b.magnitudes);
    REQUIRE(a.peaks.size() == b.peaks.size());
    for (std::size_t i = 0; i < a.peaks.size(); ++i) CHECK(a.peaks[i].wavelength == b.peaks[i].wavelength);

    const Peak* p = dominant_peak(a);
    REQUIRE(p != nullptr);
    CHECK(p->mode_index == spec.dominant_mode());
    // Half width of the Drude resonance in ω is 1/(2T).
    const double omega = frequency_from_wavelength(p->predicted_wavelength, m);
    const double half_width = p->predicted_wavelength * (0.5 / m.collision_time) / omega;
    CHECK(std::abs(p->wavelength - p->predicted_wavelength) < half_width);
    // Brent polishing is at least as high as the parabola and the samples.
    CHECK(p->magnitude >= a.magnitudes[p->grid_index]);
    CHECK(alpha2_magnitude(spec, m, p->wavelength) == p->magnitude);
}

TEST_CASE("peaks follow the closed-form prediction for a range of collision times") {
    const SpectralDecomposition spec = eigendecompose(make_disk_cell(0.45, 1.5, 128));
    for (double T : {1e-14, 1e-13}) {
        MaterialParams m;
        m.collision_time = T;
        const ResonanceCurve c = sweep(spec, m, SweepWindow{});
        const Peak* p = dominant_peak(c);
        REQUIRE(p != nullptr);
        const double omega = frequency_from_wavelength(p->predicted_wavelength, m);
        CHECK(std::abs(p->wavelength - p->predicted_wavelength) < p->predicted_wavelength * (0.5 / T) / omega);
    }
}

TEST_CASE("dominant peak ties break toward longer wavelength") {
    ResonanceCurve c;
    Peak a;
    a.wavelength = 1.0;
    a.magnitude = 2.0;
    Peak b = a;
    b.wavelength = 2.0;
    c.peaks = {a, b};
    CHECK(dominant_peak(c)->wavelength == 2.0);
    c.peaks.clear();
    CHECK(dominant_peak(c) == nullptr);
}

TEST_CASE("calibration table: direction, monotonicity, CSV round trip") {
    CalibrationTable t;
    for (double p : {1.0, 1.5, 2.0}) {
        CalibrationRow r;
        r.period = p;
        r.found = true;
        r.peak_wavelength = 1.5e-6 / p;
        r.peak_magnitude = 3.0 * p;
        r.mode_index = 7;
        t.rows.push_back(r);
    }
    CHECK(t.monotone());
    CHECK(t.direction() == -1);

    std::ostringstream os;
    write_calibration_csv(os, t, {"test"});
    CHECK(os.str().find("shift_with_increasing_period=blue") != std::string::npos);
    std::istringstream is(os.str());
    const CalibrationTable back = read_calibration_csv(is);
    REQUIRE(back.rows.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(back.rows[i].period == t.rows[i].period);
        CHECK(back.rows[i].peak_wavelength == t.rows[i].peak_wavelength);
        CHECK(back.rows[i].peak_magnitude == t.rows[i].peak_magnitude);
        CHECK(back.rows[i].mode_index == 7);
    }

    t.rows[1].peak_wavelength = 2e-6;
    CHECK_FALSE(t.monotone());
    t.rows[1].found = false;
    CHECK_FALSE(t.monotone());
    std::ostringstream os2;
    write_calibration_csv(os2, t, {});
    std::istringstream is2(os2.str());
    CHECK_FALSE(read_calibration_csv(is2).rows[1].found);

    std::istringstream junk("period,peak_wavelength_m,peak_magnitude,mode_index\n1,abc,2,3\n");
    CHECK_THROWS_AS(read_calibration_csv(junk), ConfigError);
    std::istringstream missing("period,peak\n1,2\n");
    CHECK_THROWS_AS(read_calibration_csv(missing), ConfigError);
}

TEST_CASE("peak_vs_period on a small grid is monotone") {
    SweepWindow w;
    w.samples = 120;
    std::vector<ResonanceCurve> curves;
    const CalibrationTable t = peak_vs_period(0.45, {1.0, 1.5, 2.0}, MaterialParams{}, w, 96, &curves);
    CHECK(curves.size() == 3);
    CHECK(t.monotone());
    std::ostringstream os;
    write_curve_csv(os, curves[0], {"hdr"});
    CHECK(os.str().rfind("# hdr\n", 0) == 0);
    CHECK(os.str().find("wavelength_m,magnitude\n") != std::string::npos);
}
