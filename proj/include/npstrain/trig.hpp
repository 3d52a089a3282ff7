#pragma once

#include <Eigen/Dense>

namespace npstrain::trig {

// Utilities for samples of a 2π-periodic function on the uniform grid
// t_i = 2πi/n, n even. The Nyquist mode is split symmetrically.

/// d/dt of the trigonometric interpolant, evaluated on the same grid.
Eigen::VectorXd derivative(const Eigen::VectorXd& samples);

/// Trigonometric interpolant resampled onto `target` ≥ n uniform points.
Eigen::VectorXd resample(const Eigen::VectorXd& samples, int target);
Eigen::VectorXcd resample(const Eigen::VectorXcd& samples, int target);

} // namespace npstrain::trig
