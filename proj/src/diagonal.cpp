#include "ntdlab/diagonal.hpp"

#include <cmath>
#include <fstream>
#include <random>

#include "ntdlab/config.hpp"
#include "ntdlab/sobolev.hpp"

namespace ntdlab {

DiagonalModel::DiagonalModel(Eigen::VectorXcd mus_, Eigen::VectorXcd cs_, Eigen::VectorXcd bs_,
                             double sigma0_)
    : mus(std::move(mus_)), cs(std::move(cs_)), bs(std::move(bs_)), sigma0(sigma0_) {
    if (mus.size() < 1) throw ValidationError("DiagonalModel: need K >= 1 modes");
    if (cs.size() != mus.size() || bs.size() != mus.size())
        throw ValidationError("DiagonalModel: coefficient lengths must match the spectrum");
    for (Eigen::Index k = 0; k < mus.size(); ++k)
        if (mus[k].real() > sigma0 + 1e-12)
            throw ValidationError("DiagonalModel: Re mu_k must not exceed sigma0");
}

DiagonalModel DiagonalModel::truncated(Eigen::Index k) const {
    if (k < 1 || k > size()) throw ValidationError("DiagonalModel::truncated: bad size");
    return DiagonalModel(mus.head(k), cs.head(k), bs.head(k), sigma0);
}

DiagonalModel DiagonalModel::adjoint() const {
    return DiagonalModel(mus.conjugate(), bs.conjugate(), cs.conjugate(), sigma0);
}

namespace {

void check_abscissa(const DiagonalModel& model, double sigma) {
    if (!(sigma > model.sigma0))
        throw ValidationError("sweep abscissa sigma must exceed the growth bound sigma0");
}

double coefficient_resolvent_norm(const Eigen::VectorXcd& coeffs, const Eigen::VectorXcd& mus,
                                  double sigma, double omega) {
    double acc = 0.0;
    const Complex p(sigma, omega);
    for (Eigen::Index k = 0; k < mus.size(); ++k) acc += std::norm(coeffs[k]) / std::norm(p - mus[k]);
    return std::sqrt(acc);
}

}  // namespace

double resolvent_observation_norm(const DiagonalModel& model, double sigma, double omega) {
    check_abscissa(model, sigma);
    return coefficient_resolvent_norm(model.cs, model.mus, sigma, omega);
}

double resolvent_control_norm(const DiagonalModel& model, double sigma, double omega) {
    check_abscissa(model, sigma);
    return coefficient_resolvent_norm(model.bs, model.mus, sigma, omega);
}

Complex transfer_value(const DiagonalModel& model, double sigma, double omega) {
    check_abscissa(model, sigma);
    Complex acc(0.0, 0.0);
    const Complex p(sigma, omega);
    for (Eigen::Index k = 0; k < model.size(); ++k) acc += model.cs[k] * model.bs[k] / (p - model.mus[k]);
    return acc;
}

SampledSignal simulate_output(const DiagonalModel& model, const Eigen::VectorXcd& x0,
                              double dt, double T) {
    if (x0.size() != model.size()) throw ValidationError("simulate_output: state size mismatch");
    if (!(dt > 0.0) || !(T > 0.0)) throw ValidationError("simulate_output: need dt, T > 0");
    const auto n = std::max<Eigen::Index>(2, static_cast<Eigen::Index>(std::llround(T / dt)));
    Eigen::MatrixXcd y(1, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double t = dt * static_cast<double>(i);
        Complex acc(0.0, 0.0);
        for (Eigen::Index k = 0; k < model.size(); ++k)
            acc += model.cs[k] * std::exp(model.mus[k] * t) * x0[k];
        y(0, i) = acc;
    }
    return SampledSignal(dt, std::move(y));
}

RatioStats admissibility_ratio(const DiagonalModel& model, double eta, double T, double dt,
                               int trials, std::uint64_t seed) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw ValidationError("admissibility_ratio: eta in [0, 1]");
    if (trials < 1) throw ValidationError("admissibility_ratio: trials >= 1");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    RatioStats stats;
    stats.seed = seed;
    double sum = 0.0;
    for (int t = 0; t < trials; ++t) {
        Eigen::VectorXcd x0(model.size());
        for (Eigen::Index k = 0; k < model.size(); ++k) x0[k] = Complex(gauss(rng), gauss(rng));
        const double nrm = x0.norm();
        if (nrm == 0.0) continue;
        x0 /= nrm;
        const double ratio = hs_norm(simulate_output(model, x0, dt, T), -eta);
        stats.max_ratio = std::max(stats.max_ratio, ratio);
        sum += ratio;
    }
    stats.mean_ratio = sum / static_cast<double>(trials);
    return stats;
}

double scale_norm(const DiagonalModel& model, const Eigen::VectorXcd& x, double s,
                  Complex mu_shift) {
    if (x.size() != model.size()) throw ValidationError("scale_norm: state size mismatch");
    double acc = 0.0;
    for (Eigen::Index k = 0; k < model.size(); ++k) {
        const double dist2 = std::norm(mu_shift - model.mus[k]);
        if (dist2 == 0.0) throw ValidationError("scale_norm: mu_shift hits the spectrum");
        acc += std::pow(dist2, s) * std::norm(x[k]);
    }
    return std::sqrt(acc);
}

DiagonalModel read_diagonal_model(const std::string& path) {
    const KeyValueConfig cfg = parse_config_file(path);
    const auto mre = cfg.get_array("mus_re");
    const auto mim = cfg.get_array("mus_im");
    const auto cre = cfg.get_array("cs_re");
    const auto cim = cfg.get_array("cs_im");
    const auto bre = cfg.get_array("bs_re");
    const auto bim = cfg.get_array("bs_im");
    const auto k = static_cast<Eigen::Index>(mre.size());
    if (mim.size() != mre.size() || cre.size() != mre.size() || cim.size() != mre.size() ||
        bre.size() != mre.size() || bim.size() != mre.size())
        throw ValidationError("model file: coefficient arrays must share one length");
    Eigen::VectorXcd mus(k), cs(k), bs(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        mus[i] = Complex(mre[i], mim[i]);
        cs[i] = Complex(cre[i], cim[i]);
        bs[i] = Complex(bre[i], bim[i]);
    }
    return DiagonalModel(std::move(mus), std::move(cs), std::move(bs), cfg.get_double("sigma0"));
}

void write_diagonal_model(const DiagonalModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open for writing: " + path);
    auto dump = [&](const char* name, auto getter) {
        out << name << " = [";
        for (Eigen::Index k = 0; k < model.size(); ++k) {
            if (k) out << ", ";
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", getter(k));
            out << buf;
        }
        out << "]\n";
    };
    dump("mus_re", [&](Eigen::Index k) { return model.mus[k].real(); });
    dump("mus_im", [&](Eigen::Index k) { return model.mus[k].imag(); });
    dump("cs_re", [&](Eigen::Index k) { return model.cs[k].real(); });
    dump("cs_im", [&](Eigen::Index k) { return model.cs[k].imag(); });
    dump("bs_re", [&](Eigen::Index k) { return model.bs[k].real(); });
    dump("bs_im", [&](Eigen::Index k) { return model.bs[k].imag(); });
    out << "sigma0 = " << model.sigma0 << "\n";
}

}  // namespace ntdlab
