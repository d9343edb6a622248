#pragma once

#include <Eigen/Dense>

#include "ntdlab/errors.hpp"

namespace ntdlab {

/// Log-log least-squares exponent with its standard error. `curvature_flag`
/// is raised when a quadratic term in log x exceeds 3x its own standard
/// error, i.e. the data do not look like a power law over the window.
struct ExponentFit {
    double slope = 0.0;
    double stderr_ = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
    int n_points = 0;
    bool curvature_flag = false;
};

/// Fit y ~ c * x^slope over the window [window_lo, window_hi] (inclusive).
/// Requires >= 3 in-window points, all with x, y > 0.
ExponentFit fit_exponent(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                         double window_lo, double window_hi);

/// Fit over the full data range.
ExponentFit fit_exponent(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

Eigen::VectorXd log_grid(double lo, double hi, int n);
Eigen::VectorXd lin_grid(double lo, double hi, int n);

/// n points from lo with an irrational step (golden-ratio perturbed), so the
/// grid cannot hit squared eigenvalues of rational-sided rectangles exactly.
/// Points stay inside [lo, hi].
Eigen::VectorXd irrational_grid(double lo, double hi, int n);

}  // namespace ntdlab
