#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>

#include "ntdlab/fitting.hpp"
#include "ntdlab/signal.hpp"

namespace ntdlab {

enum class Side { South, North, West, East };

Side side_from_string(const std::string& name);
std::string to_string(Side side);

/// Piecewise-constant damping patch: amplitude b0 on the interval [s0, s1]
/// of one side, zero elsewhere.
struct BoundaryPatch {
    Side side = Side::South;
    double s0 = 0.0;
    double s1 = 1.0;
    double b0 = 1.0;
};

/// Neumann Laplacian on the rectangle (0,a) x (0,b), cosine eigenbasis
/// truncated at M modes per axis. Interior modes are indexed mode(m, n)
/// = m*(M+1) + n; eigenvalues lambda_{mn} = (m pi/a)^2 + (n pi/b)^2.
///
/// Boundary traces are expanded in the per-side orthonormal cosine basis
/// e_j; the couplings are closed-form (south: (2-delta_{n0})^(1/2)/b^(1/2)
/// at j = m, north with the extra (-1)^n, east/west with roles swapped).
struct RectangleModel {
    double a = 1.0;
    double b = 1.0;
    int M = 1;
    Eigen::VectorXd eigenvalues;  // (M+1)^2, mode-major order

    Eigen::Index n_modes() const { return static_cast<Eigen::Index>(M + 1) * (M + 1); }
    Eigen::Index mode(int m, int n) const { return static_cast<Eigen::Index>(m) * (M + 1) + n; }
    double lambda_mn(int m, int n) const { return eigenvalues[mode(m, n)]; }
    double lambda_max() const { return eigenvalues[n_modes() - 1]; }
    double side_length(Side side) const {
        return (side == Side::South || side == Side::North) ? a : b;
    }

    /// Trace coefficient of interior mode (m, n) against boundary cosine
    /// mode j of `side`.
    double trace_coefficient(Side side, int m, int n, int j) const;
};

RectangleModel build_model(double a, double b, int M);

/// Config keys a, b, M, J, side, s0, s1, b0 (rectangle_lab schema).
struct RectangleConfig {
    RectangleModel model;
    BoundaryPatch patch;
    int J = 0;
};

/// Truncated Neumann-to-Dirichlet matrix gamma (p^2 - Delta_N)^{-1} gamma*
/// over boundary cosine modes (side, j), j <= J, all four sides; row/column
/// index side*(J+1)+j with sides ordered S, N, W, E.
struct TransferMatrix {
    Eigen::MatrixXcd G;
    Complex p;
    int J = 0;
    std::array<double, 4> side_lengths{};  // S, N, W, E
};

/// Requires Re p > 0 (resolvent set guard) and J <= M.
TransferMatrix ntd_matrix(const RectangleModel& model, Complex p, int J);

enum class BoundaryTarget { L2, H1 };

/// Largest singular value; for the H1 target rows are pre-scaled by
/// (1 + (j pi / side_length)^2)^(1/2).
double operator_norm(const TransferMatrix& matrix, BoundaryTarget target);

/// Largest singular value of (p^2 - Delta_N)^{-1} gamma* as a map
/// L2(boundary) -> L2(interior), from the same spectral sum.
double interior_control_norm(const RectangleModel& model, Complex p, int J);

struct NtdSweepResult {
    Eigen::VectorXd lambdas;
    Eigen::VectorXd norm_l2;
    Eigen::VectorXd norm_h1;
    ExponentFit fit_l2;
    ExponentFit fit_h1;
};

/// Sweep p = sigma + i*lambda. Truncation guard: max lambda^2 on the grid
/// must not exceed half the largest retained eigenvalue.
NtdSweepResult ntd_sweep(const RectangleModel& model, const Eigen::VectorXd& lambdas, int J,
                         double sigma = 1.0);

/// Damping Gram matrix over interior modes: entries
/// b0^2 * int_patch (gamma phi_mn)(gamma phi_m'n') ds, exact cosine-product
/// integrals (no quadrature). Symmetric PSD.
Eigen::MatrixXd boundary_gram(const RectangleModel& model, const BoundaryPatch& patch);

/// Non-uniform Hautus scan value: square root of the smallest eigenvalue of
/// D^2 + B with D = diag(lambda_mn - lambda^2) and B the boundary Gram of
/// the patch geometry with unit amplitude. The resonant sign convention
/// (lambda_mn - lambda^2, i.e. L - lambda^2 with L = -Delta_N) is used
/// throughout. Truncated minimization: a necessary-condition check only.
double hautus_sigma_min(const RectangleModel& model, const BoundaryPatch& patch, double lambda);

/// Damped second-order resolvent norm |(L + i*lambda*B - lambda^2)^{-1}|,
/// the reciprocal smallest singular value over the truncated mode space.
/// Exact resonances with b0 = 0 are reported as +infinity.
double damped_resolvent_norm(const RectangleModel& model, const BoundaryPatch& patch,
                             double lambda);

void check_truncation(const RectangleModel& model, double lambda_max);

}  // namespace ntdlab
