#include "npstrain/trig.hpp"

#include <complex>
#include <stdexcept>

#include <unsupported/Eigen/FFT>

namespace npstrain::trig {

namespace {

Eigen::VectorXcd forward(const Eigen::VectorXcd& samples) {
    Eigen::FFT<double> fft;
    Eigen::VectorXcd spectrum;
    fft.fwd(spectrum, samples);
    return spectrum;
}

Eigen::VectorXcd inverse(const Eigen::VectorXcd& spectrum) {
    Eigen::FFT<double> fft;
    Eigen::VectorXcd samples;
    fft.inv(samples, spectrum);
    return samples;
}

} // namespace

Eigen::VectorXd derivative(const Eigen::VectorXd& samples) {
    const Eigen::Index n = samples.size();
    Eigen::VectorXcd spectrum = forward(samples.cast<std::complex<double>>());
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index k = (2 * i < n) ? i : (2 * i == n ? 0 : i - n);
        spectrum[i] *= std::complex<double>(0.0, static_cast<double>(k));
    }
    return inverse(spectrum).real();
}

Eigen::VectorXcd resample(const Eigen::VectorXcd& samples, int target) {
    const Eigen::Index n = samples.size();
    if (target < n || n % 2 != 0) {
        throw std::invalid_argument("trig::resample needs an even sample count and target >= samples");
    }
    if (target == n) {
        return samples;
    }
    const Eigen::VectorXcd spectrum = forward(samples);
    const double scale = static_cast<double>(target) / static_cast<double>(n);
    Eigen::VectorXcd padded = Eigen::VectorXcd::Zero(target);
    const Eigen::Index half = n / 2;
    for (Eigen::Index i = 0; i < half; ++i) {
        padded[i] = scale * spectrum[i];
    }
    for (Eigen::Index i = half + 1; i < n; ++i) {
        padded[target - (n - i)] = scale * spectrum[i];
    }
    padded[half] += 0.5 * scale * spectrum[half];
    padded[target - half] += 0.5 * scale * spectrum[half];
    return inverse(padded);
}

Eigen::VectorXd resample(const Eigen::VectorXd& samples, int target) {
    return resample(Eigen::VectorXcd(samples.cast<std::complex<double>>()), target).real();
}

} // namespace npstrain::trig
