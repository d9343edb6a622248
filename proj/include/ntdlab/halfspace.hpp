#pragma once

#include <Eigen/Dense>
#include <string>

#include "ntdlab/fitting.hpp"
#include "ntdlab/signal.hpp"

namespace ntdlab {

enum class SymbolKind { WaveHelmholtz, Schrodinger };

/// Boundary weights realizing the L2, tangential-derivative and H1 target
/// norms on the flat boundary.
enum class BoundaryWeight { One, Tau, SqrtOnePlusTauSq };

std::string to_string(SymbolKind kind);
std::string to_string(BoundaryWeight weight);
SymbolKind symbol_kind_from_string(const std::string& name);
BoundaryWeight weight_from_string(const std::string& name);

/// Wave (shifted Helmholtz) Neumann-to-Dirichlet symbol 1/rho with
/// rho = sqrt((1 + i*lambda)^2 + tau^2), Re rho > 0. The decaying branch is
/// nondegenerate for all real lambda, tau.
Complex wave_ntd_symbol(double lambda, double tau);

/// Schroedinger Neumann-to-Dirichlet symbol 1/r for spectral parameter
/// lambda (lambda = k^2 on the propagating side, negative lambda is the
/// elliptic regime): r = sqrt(tau^2 - lambda + i), Re r > 0,
/// |r| = ((tau^2 - lambda)^2 + 1)^(1/4).
Complex schrodinger_ntd_symbol_lambda(double lambda, double tau);

/// Convenience form in the group variable k >= 0 (lambda = k^2).
Complex schrodinger_ntd_symbol(double k, double tau);

/// A Neumann-to-Dirichlet symbol at a fixed frequency parameter; evaluation
/// always returns the decaying branch.
struct NtDSymbol {
    SymbolKind kind = SymbolKind::WaveHelmholtz;
    double frequency = 0.0;  // lambda for wave, k for Schroedinger
    bool elliptic = false;   // Schroedinger only: spectral parameter -frequency^2

    Complex eval(double tau) const;
    /// Tangential frequency of the glancing ray, where the symbol peaks.
    double glancing_tau() const;
};

/// sup over tau in [0, tau_max] of weight(tau)*|symbol(tau)|, via a coarse
/// grid clustered at the glancing ray plus golden-section refinement.
/// Relative accuracy <= 1e-4 (refinement stops at relative interval width
/// rel_tol). Requires tau_max >= 4 * max(1, frequency), otherwise the
/// glancing peak could be missed.
double symbol_sup(const NtDSymbol& symbol, BoundaryWeight weight, double tau_max,
                  double rel_tol = 1e-6);

/// Default tau range, 8 * frequency + 16.
double default_tau_max(const NtDSymbol& symbol);

/// One weighted operator-norm sweep over a frequency grid.
struct WeightedSweep {
    SymbolKind kind = SymbolKind::WaveHelmholtz;
    BoundaryWeight weight = BoundaryWeight::One;
    Eigen::VectorXd frequencies;  // native parameter: lambda (wave) or k (Schroedinger)
    Eigen::VectorXd sups;
};

WeightedSweep sweep_symbols(SymbolKind kind, BoundaryWeight weight,
                            const Eigen::VectorXd& frequencies);

/// Sweep plus log-log slope. For the Schroedinger kind the fit abscissa is
/// the spectral parameter lambda = k^2; for the wave it is lambda itself.
struct SweepFitResult {
    WeightedSweep sweep;
    ExponentFit fit;
};

SweepFitResult sweep_and_fit(SymbolKind kind, BoundaryWeight weight,
                             const Eigen::VectorXd& frequencies);

}  // namespace ntdlab
