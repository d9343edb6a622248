#pragma once

#include <Eigen/Dense>

#include "ntdlab/signal.hpp"

namespace ntdlab {

/// Weighted-reflection extension operator: negative-time values are
/// sum_k alpha_k * u(beta_k * t), with the weights solving the moment system
/// sum_k alpha_k beta_k^j = 1 for j = -m..m-1.
struct ReflectionExtension {
    int order = 0;              // m
    Eigen::VectorXd betas;      // 2m distinct negative reals
    Eigen::VectorXd alphas;     // 2m reals

    /// Max residual of the moment equations, checked on construction.
    double moment_residual() const;
};

/// Solve the 2m x 2m moment system for the reflection weights.
/// Rejects betas that are not distinct or not negative; the returned weights
/// satisfy every moment equation to 1e-10.
ReflectionExtension solve_reflection_coefficients(int m, const Eigen::VectorXd& betas);

/// Well-conditioned default nodes: a geometric family (-0.2, -0.6) for
/// m = 1 and (-0.08, -0.24, -0.72, -2.16) for m = 2, chosen so the moment
/// weights stay small (the arithmetic family -1..-2m is admissible but its
/// m = 2 weights reach |alpha| = 135).
ReflectionExtension default_reflection(int m);

/// Extend u from (0, T) to (-T_left, T) by weighted reflection, with
/// T_left = T / max|beta_k|. Restriction to (0, T) is sample-exact; values at
/// beta_k*t between grid points are linearly interpolated.
TwoSidedSignal extend_by_reflection(const SampledSignal& u, const ReflectionExtension& ext);

/// Extend u by zero to negative times (finitely supported two-sided signal).
TwoSidedSignal extend_by_zero(const SampledSignal& u);

/// Bessel-potential norm of a finitely supported two-sided signal:
///   ( (1/2pi) * sum_w (1 + w^2)^s |u_hat(w)|^2 dw )^(1/2)
/// evaluated with a zero-padded DFT (pad_factor >= 4; padding fixes the
/// frequency resolution and makes the value deterministic). The 1/2pi factor
/// makes s = 0 coincide with the quadrature L2 norm exactly.
double bessel_norm(const TwoSidedSignal& u, double s, int pad_factor = 8);

/// Leaky time integral z(t) = int_0^t e^{-(t-r)} u(r) dr, sampled on the grid
/// of u (exact for piecewise-linear integrands). Since z' + z = u, the norm
/// sandwich trades one negative order for this smoothing step.
SampledSignal leaky_integral(const SampledSignal& u);

/// H^s(0, T) norm (up to equivalence), -2 <= s <= 2.
///
/// Dispatch: s > 0 uses a finite-interval reflection extension of order
/// m = max(1, ceil(s)) — smoothly cut-off edge neighbourhoods reflected
/// across both endpoints — followed by the Bessel norm; -1/2 < s <= 0 goes
/// through the zero extension (so s = 0 returns the quadrature L2 norm
/// exactly); s in [-2, -1/2] is reduced to hs_norm(z, s+1) with z the leaky
/// integral. Only norm-equivalence accuracy is claimed for s != 0.
double hs_norm(const SampledSignal& u, double s, int pad_factor = 8);

/// Translation (Besov-type) seminorm of order r in (0, 1):
///   ( C(r)^{-1} int_0^inf tau^{-(1+2r)} int |u(t+tau) - u(t)|^2 dt dtau )^(1/2)
/// with interior inner integral and log-spaced tau quadrature (64 nodes per
/// decade, from dt to T). The constant C(r) = 2*int_0^inf (1-cos s)/s^{1+2r} ds
/// calibrates the seminorm against the Bessel convention, so that
/// (seminorm^2 + L2^2)^(1/2) is comparable with hs_norm(u, r).
double besov_seminorm(const SampledSignal& u, double r);

/// Windowed lower-bound check for negative-order norms: compares
/// |u|^2_{H^{-s}(0,T)} against the sum of plain and half-shifted window
/// norms. `ratio` = lhs / rhs_sum is an empirical equivalence constant.
struct WindowedReport {
    double lhs = 0.0;        // |u|^2 in H^{-s}(0, T)
    double rhs_sum = 0.0;    // sum of squared window norms, plain + shifted
    double ratio = 0.0;      // lhs / rhs_sum (0 when trivial)
    bool trivial = false;    // zero signal: estimate holds vacuously
    int n_windows = 0;
};

/// s in [0, 2]; requires T >= 2 * t_window. The effective window length is
/// rounded to a whole number of samples.
WindowedReport windowed_lower_bound_check(const SampledSignal& u, double s, double t_window);

}  // namespace ntdlab
