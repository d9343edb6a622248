#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

#include "ntdlab/errors.hpp"

namespace ntdlab {

using Complex = std::complex<double>;

/// Uniformly sampled vector-valued function on (0, T).
///
/// Samples live at t_i = i*dt for i = 0..count-1 and the signal is regarded
/// as defined on (0, T) with T = dt*count. `values` is dim x count, one
/// column per sample.
struct SampledSignal {
    double dt = 0.0;
    Eigen::MatrixXcd values;

    SampledSignal() = default;
    SampledSignal(double dt_, Eigen::MatrixXcd values_);

    Eigen::Index dim() const { return values.rows(); }
    Eigen::Index count() const { return values.cols(); }
    double duration() const { return dt * static_cast<double>(count()); }

    /// Value at arbitrary time in [0, (count-1)*dt], linearly interpolated.
    Eigen::VectorXcd interpolate(double t) const;

    /// Quadrature L2 norm, ( dt * sum_i |u_i|^2 )^(1/2).
    double l2_norm() const;

    /// Restriction to the sample window [first, first+len).
    SampledSignal window(Eigen::Index first, Eigen::Index len) const;
};

/// Signal on a two-sided grid; sample i sits at t = (i - neg_count)*dt.
/// Implicitly zero off its grid (finitely supported).
struct TwoSidedSignal {
    double dt = 0.0;
    Eigen::Index neg_count = 0;
    Eigen::MatrixXcd values;

    Eigen::Index dim() const { return values.rows(); }
    Eigen::Index count() const { return values.cols(); }
};

/// Scalar signal helper (dim 1) from a lambda sampled at t_i = i*dt.
template <typename F>
SampledSignal sample_scalar(double dt, Eigen::Index n, F&& f) {
    Eigen::MatrixXcd v(1, n);
    for (Eigen::Index i = 0; i < n; ++i) v(0, i) = Complex(f(dt * static_cast<double>(i)));
    return SampledSignal(dt, std::move(v));
}

/// CSV interchange: header `t,re_0,im_0,...,re_{d-1},im_{d-1}`, one row per
/// sample, strictly increasing equispaced t.
void write_signal_csv(const SampledSignal& u, const std::string& path);
SampledSignal read_signal_csv(const std::string& path);

}  // namespace ntdlab
