#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "ntdlab/signal.hpp"

namespace ntdlab {

/// Diagonal semigroup generator A = diag(mu_k) on l^2(K) with scalar-valued
/// observation C x = sum_k c_k x_k and control (B u)_k = b_k u.
struct DiagonalModel {
    Eigen::VectorXcd mus;  // spectrum, Re mu_k <= sigma0
    Eigen::VectorXcd cs;   // observation coefficients
    Eigen::VectorXcd bs;   // control coefficients
    double sigma0 = 0.0;   // growth bound

    DiagonalModel() = default;
    DiagonalModel(Eigen::VectorXcd mus_, Eigen::VectorXcd cs_, Eigen::VectorXcd bs_,
                  double sigma0_);

    Eigen::Index size() const { return mus.size(); }

    /// Truncation to the first k modes (used for K-doubling studies).
    DiagonalModel truncated(Eigen::Index k) const;

    /// Adjoint generator model: conjugated spectrum, observation and control
    /// roles swapped and conjugated.
    DiagonalModel adjoint() const;
};

/// TOML-style model file with arrays mus_re, mus_im, cs_re, cs_im, bs_re,
/// bs_im and scalar sigma0.
DiagonalModel read_diagonal_model(const std::string& path);
void write_diagonal_model(const DiagonalModel& model, const std::string& path);

/// Frequency grid on the vertical line Re p = sigma > sigma0.
struct SweepGrid {
    double sigma = 1.0;
    Eigen::VectorXd omegas;
};

/// Exact operator norm of C (sigma + i omega - A)^{-1} for scalar output:
/// ( sum_k |c_k|^2 / |sigma + i omega - mu_k|^2 )^(1/2). Requires sigma > sigma0.
double resolvent_observation_norm(const DiagonalModel& model, double sigma, double omega);

/// Same with the control coefficients b_k in place of c_k.
double resolvent_control_norm(const DiagonalModel& model, double sigma, double omega);

/// Transfer value C (sigma + i omega - A)^{-1} B = sum_k c_k b_k / (sigma + i omega - mu_k).
Complex transfer_value(const DiagonalModel& model, double sigma, double omega);

/// Output trajectory y(t) = sum_k c_k e^{mu_k t} x0_k, evaluated exactly per
/// sample (no ODE solver). Scalar signal.
SampledSignal simulate_output(const DiagonalModel& model, const Eigen::VectorXcd& x0,
                              double dt, double T);

struct RatioStats {
    double max_ratio = 0.0;
    double mean_ratio = 0.0;
    std::uint64_t seed = 0;
};

inline constexpr std::uint64_t kDefaultSeed = 20240901ULL;

/// Draw random unit initial states (standard complex Gaussian, normalized),
/// and report statistics of hs_norm(output, -eta) / |x0|. Deterministic for a
/// fixed seed.
RatioStats admissibility_ratio(const DiagonalModel& model, double eta, double T, double dt,
                               int trials, std::uint64_t seed = kDefaultSeed);

/// Sobolev scale norm |(mu_shift - A)^s x| = ( sum |mu_shift - mu_k|^{2s} |x_k|^2 )^(1/2).
/// mu_shift must avoid the spectrum.
double scale_norm(const DiagonalModel& model, const Eigen::VectorXcd& x, double s,
                  Complex mu_shift);

}  // namespace ntdlab
