#include "ntdlab/decay.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace ntdlab {

const char* const kDecayFitCaveat =
    "finite Galerkin truncations decay exponentially at late times; the fitted exponent "
    "describes the algebraic transient only and is not claimed to converge to the PDE rate";

DampedGalerkinSystem make_system(const RectangleModel& model, const BoundaryPatch& patch) {
    DampedGalerkinSystem system;
    system.lambda = model.eigenvalues;
    system.B = boundary_gram(model, patch);
    return system;
}

double energy(const DampedGalerkinSystem& system, const GalerkinState& state) {
    return 0.5 * (state.v.squaredNorm() + state.w.dot(system.lambda.asDiagonal() * state.w));
}

MidpointStepper::MidpointStepper(const DampedGalerkinSystem& system, double dt)
    : system_(system), dt_(dt) {
    if (!(dt > 0.0)) throw ValidationError("MidpointStepper: dt must be positive");
    Eigen::MatrixXd s = (0.5 * dt) * system.B;
    s.diagonal() += Eigen::VectorXd::Ones(system.size()) +
                    (0.25 * dt * dt) * system.lambda;
    solver_.compute(s);
    if (solver_.info() != Eigen::Success)
        throw NumericsError("midpoint system factorization failed (damping matrix not PSD?)");
}

Eigen::VectorXd MidpointStepper::midpoint_velocity(const GalerkinState& state) const {
    return solver_.solve(state.v - (0.5 * dt_) * system_.lambda.cwiseProduct(state.w));
}

GalerkinState MidpointStepper::step(const GalerkinState& state) const {
    const Eigen::VectorXd vm = midpoint_velocity(state);
    GalerkinState next;
    next.w = state.w + dt_ * vm;
    next.v = 2.0 * vm - state.v;
    return next;
}

GalerkinState step_implicit_midpoint(const DampedGalerkinSystem& system,
                                     const GalerkinState& state, double dt) {
    return MidpointStepper(system, dt).step(state);
}

TrajectoryRecord simulate(const DampedGalerkinSystem& system, const GalerkinState& initial,
                          double T, double dt) {
    if (!(T > 0.0) || !(dt > 0.0)) throw ValidationError("simulate: need T, dt > 0");
    if (initial.w.size() != system.size() || initial.v.size() != system.size())
        throw ValidationError("simulate: state size mismatch");

    const auto n_steps = std::max<Eigen::Index>(1, static_cast<Eigen::Index>(std::llround(T / dt)));
    MidpointStepper stepper(system, dt);

    TrajectoryRecord record;
    record.times.resize(n_steps + 1);
    record.energies.resize(n_steps + 1);
    record.cumulative_dissipation.resize(n_steps + 1);

    GalerkinState state = initial;
    record.times[0] = 0.0;
    record.energies[0] = energy(system, state);
    record.cumulative_dissipation[0] = 0.0;
    double dissipated = 0.0;
    for (Eigen::Index i = 1; i <= n_steps; ++i) {
        const Eigen::VectorXd vm = stepper.midpoint_velocity(state);
        state.w += dt * vm;
        state.v = 2.0 * vm - state.v;
        dissipated += dt * vm.dot(system.B * vm);
        record.times[i] = dt * static_cast<double>(i);
        record.energies[i] = energy(system, state);
        record.cumulative_dissipation[i] = dissipated;
    }
    return record;
}

double dissipation_residual(const TrajectoryRecord& record) {
    if (record.times.size() < 2) throw ValidationError("dissipation_residual: record too short");
    const double e0 = record.energies[0];
    if (!(e0 > 0.0)) return 0.0;
    double worst = 0.0;
    for (Eigen::Index i = 1; i < record.times.size(); ++i) {
        const double de = record.energies[i] - record.energies[i - 1];
        const double dd = record.cumulative_dissipation[i] - record.cumulative_dissipation[i - 1];
        worst = std::max(worst, std::abs(de + dd) / e0);
    }
    return worst;
}

DataProfile profile_from_string(const std::string& name) {
    if (name == "gaussian_bump") return DataProfile::GaussianBump;
    if (name == "low_modes") return DataProfile::LowModes;
    throw ValidationError("unknown data profile: " + name);
}

namespace {

// 10-point Gauss-Legendre rule on [-1, 1].
constexpr double kGlNodes[5] = {0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
                                0.8650633666889845, 0.9739065285171717};
constexpr double kGlWeights[5] = {0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
                                  0.1494513491505806, 0.0666713443086881};

template <typename F>
double gauss_legendre(F&& f, double lo, double hi, int panels) {
    double acc = 0.0;
    const double h = (hi - lo) / static_cast<double>(panels);
    for (int p = 0; p < panels; ++p) {
        const double mid = lo + (static_cast<double>(p) + 0.5) * h;
        for (int q = 0; q < 5; ++q) {
            acc += kGlWeights[q] * (f(mid + 0.5 * h * kGlNodes[q]) + f(mid - 0.5 * h * kGlNodes[q]));
        }
    }
    return acc * 0.5 * h;
}

// 1-D cosine transform of a Gaussian factor exp(-(x-x0)^2 / (2 sigma^2))
// against the orthonormal basis sqrt((2-delta_{k0})/len) cos(k pi x / len).
Eigen::VectorXd gaussian_cosine_transform(double len, int M, double x0, double sigma) {
    Eigen::VectorXd coeffs(M + 1);
    const int panels = 2 * (M + 8);
    for (int k = 0; k <= M; ++k) {
        const double wave = static_cast<double>(k) * std::numbers::pi / len;
        auto f = [&](double x) {
            const double d = (x - x0) / sigma;
            return std::exp(-0.5 * d * d) * std::cos(wave * x);
        };
        const double norm = std::sqrt((k == 0 ? 1.0 : 2.0) / len);
        coeffs[k] = norm * gauss_legendre(f, 0.0, len, panels);
    }
    return coeffs;
}

void check_coefficient_decay(const RectangleModel& model, const Eigen::VectorXd& c) {
    // Smoothness surrogate: above the spectral midpoint no coefficient may
    // exceed peak * (1 + lambda)^{-2} rescaled to the first excited level.
    const double peak = c.cwiseAbs().maxCoeff();
    if (peak == 0.0) return;
    const double lambda_ref = model.lambda_mn(1, 0);
    const double scale = peak * std::pow(1.0 + lambda_ref, 2.0);
    const double lambda_mid = 0.5 * model.lambda_max();
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        const double lam = model.eigenvalues[i];
        if (lam < lambda_mid) continue;
        if (std::abs(c[i]) > scale * std::pow(1.0 + lam, -2.0))
            throw NumericsError("classical_data: coefficient decay slower than (1+lambda)^-2");
    }
}

}  // namespace

GalerkinState classical_data(const RectangleModel& model, DataProfile profile) {
    GalerkinState data;
    data.w.setZero(model.n_modes());
    data.v.setZero(model.n_modes());

    if (profile == DataProfile::GaussianBump) {
        const double sigma = 0.08 * std::min(model.a, model.b);
        const Eigen::VectorXd cx = gaussian_cosine_transform(model.a, model.M, 0.5 * model.a, sigma);
        const Eigen::VectorXd cy = gaussian_cosine_transform(model.b, model.M, 0.5 * model.b, sigma);
        for (int m = 0; m <= model.M; ++m)
            for (int n = 0; n <= model.M; ++n) data.w[model.mode(m, n)] = cx[m] * cy[n];
    } else {
        for (int m = 0; m <= model.M && m <= 4; ++m)
            for (int n = 0; n <= model.M && n + m <= 4; ++n) {
                if (m == 0 && n == 0) continue;
                data.w[model.mode(m, n)] = 1.0 / static_cast<double>((m + 1) * (n + 1));
                data.v[model.mode(m, n)] = 0.5 / (1.0 + static_cast<double>(m * m + n * n));
            }
    }

    const double e = 0.5 * (data.v.squaredNorm() + data.w.dot(model.eigenvalues.asDiagonal() * data.w));
    if (!(e > 0.0)) throw NumericsError("classical_data: degenerate initial data");
    const double s = 1.0 / std::sqrt(e);
    data.w *= s;
    data.v *= s;

    check_coefficient_decay(model, data.w);
    check_coefficient_decay(model, data.v);
    return data;
}

ExponentFit decay_fit(const TrajectoryRecord& record, double t0, double t1) {
    if (!(t0 > 0.0 && t1 > t0)) throw ValidationError("decay_fit: need 0 < t0 < t1");
    if (record.times.size() < 3 || t1 > record.times[record.times.size() - 1] + 1e-12)
        throw ValidationError("decay_fit: window outside the record");
    return fit_exponent(record.times, record.energies, t0, t1);
}

}  // namespace ntdlab
