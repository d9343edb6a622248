#include "ntdlab/halfspace.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace ntdlab {

namespace {

/// Principal square root with the sign fixed so that Re > 0; for purely
/// imaginary arguments the principal branch already satisfies Re > 0.
Complex decaying_root(Complex z) {
    Complex r = std::sqrt(z);
    if (r.real() < 0.0) r = -r;
    return r;
}

}  // namespace

Complex wave_ntd_symbol(double lambda, double tau) {
    const Complex one_i_lambda(1.0, lambda);
    const Complex rho = decaying_root(one_i_lambda * one_i_lambda + tau * tau);
    return 1.0 / rho;
}

Complex schrodinger_ntd_symbol_lambda(double lambda, double tau) {
    const Complex r = decaying_root(Complex(tau * tau - lambda, 1.0));
    return 1.0 / r;
}

Complex schrodinger_ntd_symbol(double k, double tau) {
    if (k < 0.0) throw ValidationError("schrodinger_ntd_symbol: k must be >= 0");
    return schrodinger_ntd_symbol_lambda(k * k, tau);
}

Complex NtDSymbol::eval(double tau) const {
    if (kind == SymbolKind::WaveHelmholtz) return wave_ntd_symbol(frequency, tau);
    const double lambda = elliptic ? -(frequency * frequency) : frequency * frequency;
    return schrodinger_ntd_symbol_lambda(lambda, tau);
}

double NtDSymbol::glancing_tau() const {
    if (elliptic) return 0.0;
    if (kind == SymbolKind::Schrodinger) return std::abs(frequency);
    const double l2 = frequency * frequency;
    return l2 > 1.0 ? std::sqrt(l2 - 1.0) : 0.0;
}

std::string to_string(SymbolKind kind) {
    return kind == SymbolKind::WaveHelmholtz ? "wave" : "schrodinger";
}

std::string to_string(BoundaryWeight weight) {
    switch (weight) {
        case BoundaryWeight::One: return "one";
        case BoundaryWeight::Tau: return "tau";
        default: return "sqrt_1_plus_tau2";
    }
}

SymbolKind symbol_kind_from_string(const std::string& name) {
    if (name == "wave") return SymbolKind::WaveHelmholtz;
    if (name == "schrodinger") return SymbolKind::Schrodinger;
    throw ValidationError("unknown symbol kind: " + name);
}

BoundaryWeight weight_from_string(const std::string& name) {
    if (name == "one") return BoundaryWeight::One;
    if (name == "tau") return BoundaryWeight::Tau;
    if (name == "sqrt_1_plus_tau2") return BoundaryWeight::SqrtOnePlusTauSq;
    throw ValidationError("unknown boundary weight: " + name);
}

namespace {

double apply_weight(BoundaryWeight weight, double tau) {
    switch (weight) {
        case BoundaryWeight::One: return 1.0;
        case BoundaryWeight::Tau: return tau;
        default: return std::sqrt(1.0 + tau * tau);
    }
}

double golden_section_max(const std::function<double(double)>& f, double a, double b,
                          double rel_tol) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    const double scale = std::max(1.0, std::abs(b));
    while (b - a > rel_tol * scale) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    return std::max(f1, f2);
}

}  // namespace

double default_tau_max(const NtDSymbol& symbol) {
    return 8.0 * std::abs(symbol.frequency) + 16.0;
}

double symbol_sup(const NtDSymbol& symbol, BoundaryWeight weight, double tau_max,
                  double rel_tol) {
    const double freq = std::abs(symbol.frequency);
    if (!(tau_max >= 4.0 * std::max(1.0, freq)))
        throw ValidationError("symbol_sup: tau_max must exceed 4x the frequency parameter");

    auto f = [&](double tau) { return apply_weight(weight, tau) * std::abs(symbol.eval(tau)); };

    // Coarse grid: global coverage plus two clusters around the glancing ray
    // (peak width is O(1) in tau for the wave symbol, O(1/frequency) for the
    // Schroedinger one).
    std::vector<double> grid;
    grid.reserve(6200);
    grid.push_back(0.0);
    for (int i = 0; i <= 1024; ++i)
        grid.push_back(tau_max * static_cast<double>(i) / 1024.0);
    const double tau_star = symbol.glancing_tau();
    const double wide = 4.0;
    const double narrow = 8.0 / std::max(1.0, tau_star);
    for (int i = 0; i <= 2048; ++i) {
        const double u = static_cast<double>(i) / 1024.0 - 1.0;  // [-1, 1]
        grid.push_back(std::clamp(tau_star + wide * u, 0.0, tau_max));
        grid.push_back(std::clamp(tau_star + narrow * u, 0.0, tau_max));
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<double> vals(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) vals[i] = f(grid[i]);

    // Refine around every coarse local maximum.
    double best = 0.0;
    for (size_t i = 0; i < grid.size(); ++i) {
        const bool left_ok = (i == 0) || vals[i] >= vals[i - 1];
        const bool right_ok = (i + 1 == grid.size()) || vals[i] >= vals[i + 1];
        if (!(left_ok && right_ok)) continue;
        const double a = (i == 0) ? grid[0] : grid[i - 1];
        const double b = (i + 1 == grid.size()) ? grid.back() : grid[i + 1];
        best = std::max(best, a < b ? golden_section_max(f, a, b, rel_tol) : vals[i]);
    }
    return best;
}

WeightedSweep sweep_symbols(SymbolKind kind, BoundaryWeight weight,
                            const Eigen::VectorXd& frequencies) {
    if (frequencies.size() < 1) throw ValidationError("sweep_symbols: empty grid");
    for (Eigen::Index i = 1; i < frequencies.size(); ++i)
        if (!(frequencies[i] > frequencies[i - 1]))
            throw ValidationError("sweep_symbols: frequencies must be increasing");
    if (!(frequencies[0] > 0.0))
        throw ValidationError("sweep_symbols: frequencies must be positive");

    WeightedSweep sweep;
    sweep.kind = kind;
    sweep.weight = weight;
    sweep.frequencies = frequencies;
    sweep.sups.resize(frequencies.size());
    for (Eigen::Index i = 0; i < frequencies.size(); ++i) {
        NtDSymbol sym{kind, frequencies[i], false};
        sweep.sups[i] = symbol_sup(sym, weight, default_tau_max(sym));
    }
    return sweep;
}

SweepFitResult sweep_and_fit(SymbolKind kind, BoundaryWeight weight,
                             const Eigen::VectorXd& frequencies) {
    if (frequencies.size() < 8)
        throw ValidationError("sweep_and_fit: need at least 8 grid points");
    SweepFitResult out;
    out.sweep = sweep_symbols(kind, weight, frequencies);
    Eigen::VectorXd x = frequencies;
    if (kind == SymbolKind::Schrodinger) x = x.array().square();  // lambda = k^2
    out.fit = fit_exponent(x, out.sweep.sups);
    return out;
}

}  // namespace ntdlab
