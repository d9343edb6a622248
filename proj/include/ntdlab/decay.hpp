#pragma once

#include <Eigen/Dense>
#include <string>

#include "ntdlab/fitting.hpp"
#include "ntdlab/rectangle.hpp"

namespace ntdlab {

/// Spectral Galerkin form of the boundary-damped wave equation
/// w'' + B w' + Lambda w = 0 over (M+1)^2 cosine modes.
struct DampedGalerkinSystem {
    Eigen::VectorXd lambda;  // diagonal of L = -Delta_N, entries >= 0
    Eigen::MatrixXd B;       // symmetric PSD damping matrix

    Eigen::Index size() const { return lambda.size(); }
};

DampedGalerkinSystem make_system(const RectangleModel& model, const BoundaryPatch& patch);

struct GalerkinState {
    Eigen::VectorXd w;
    Eigen::VectorXd v;
};

/// E = (v.v + w.Lambda.w) / 2.
double energy(const DampedGalerkinSystem& system, const GalerkinState& state);

/// Implicit midpoint stepper. With B = 0 the discrete energy is conserved
/// exactly (quadratic invariant of the rule); with B PSD the per-step
/// identity E_{n+1} - E_n = -dt * vm.B.vm holds in exact arithmetic, where
/// vm is the midpoint velocity.
class MidpointStepper {
public:
    MidpointStepper(const DampedGalerkinSystem& system, double dt);
    GalerkinState step(const GalerkinState& state) const;
    /// Midpoint velocity of the step leaving `state` (used for dissipation
    /// accounting).
    Eigen::VectorXd midpoint_velocity(const GalerkinState& state) const;

private:
    const DampedGalerkinSystem& system_;
    double dt_;
    Eigen::LLT<Eigen::MatrixXd> solver_;
};

/// One implicit-midpoint step (builds a stepper internally).
GalerkinState step_implicit_midpoint(const DampedGalerkinSystem& system,
                                     const GalerkinState& state, double dt);

/// Per-step record of a damped run.
struct TrajectoryRecord {
    Eigen::VectorXd times;
    Eigen::VectorXd energies;
    Eigen::VectorXd cumulative_dissipation;  // sum of dt * vm.B.vm

    Eigen::Index steps() const { return times.size() > 0 ? times.size() - 1 : 0; }
};

TrajectoryRecord simulate(const DampedGalerkinSystem& system, const GalerkinState& initial,
                          double T, double dt);

/// Max over steps of |Delta E + Delta dissipation| / E(0) — the discrete
/// counterpart of dE/dt = -|b dw/dt|^2 on the boundary.
double dissipation_residual(const TrajectoryRecord& record);

enum class DataProfile { GaussianBump, LowModes };

DataProfile profile_from_string(const std::string& name);

/// Smooth initial data (w0, v0) with unit energy. gaussian_bump places a
/// narrow Gaussian in displacement (coefficients are its exact 2-D cosine
/// transform, by tensorized Gauss-Legendre quadrature); low_modes excites
/// modes with m + n <= 4. Coefficient decay is the smoothness surrogate for
/// dom(A_D) membership: the compatibility condition is a boundary-trace
/// constraint outside the truncated space and is not enforced exactly.
GalerkinState classical_data(const RectangleModel& model, DataProfile profile);

/// Log-log fit of E(t) ~ t^{-r} over [t0, t1]; the curvature flag marks
/// non-power-law behaviour (e.g. the late exponential tail of a finite
/// truncation).
ExponentFit decay_fit(const TrajectoryRecord& record, double t0, double t1);

/// Caveat attached to every decay report: a finite Galerkin truncation
/// decays exponentially at late times, so fits are only meaningful on the
/// algebraic transient and say nothing about the PDE rate as M grows.
extern const char* const kDecayFitCaveat;

}  // namespace ntdlab
