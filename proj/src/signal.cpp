#include "ntdlab/signal.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace ntdlab {

SampledSignal::SampledSignal(double dt_, Eigen::MatrixXcd values_)
    : dt(dt_), values(std::move(values_)) {
    if (!(dt > 0.0)) throw ValidationError("SampledSignal: dt must be positive");
    if (values.rows() < 1) throw ValidationError("SampledSignal: dimension must be >= 1");
    if (values.cols() < 2) throw ValidationError("SampledSignal: need at least 2 samples");
}

Eigen::VectorXcd SampledSignal::interpolate(double t) const {
    const double p = t / dt;
    if (p <= 0.0) return values.col(0);
    const auto n = count();
    if (p >= static_cast<double>(n - 1)) return values.col(n - 1);
    const auto i0 = static_cast<Eigen::Index>(std::floor(p));
    const double frac = p - static_cast<double>(i0);
    return (1.0 - frac) * values.col(i0) + frac * values.col(i0 + 1);
}

double SampledSignal::l2_norm() const { return std::sqrt(dt * values.squaredNorm()); }

SampledSignal SampledSignal::window(Eigen::Index first, Eigen::Index len) const {
    if (first < 0 || len < 2 || first + len > count())
        throw ValidationError("SampledSignal::window: range out of bounds");
    return SampledSignal(dt, values.middleCols(first, len));
}

namespace {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

void write_signal_csv(const SampledSignal& u, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open for writing: " + path);
    out << "t";
    for (Eigen::Index r = 0; r < u.dim(); ++r) out << ",re_" << r << ",im_" << r;
    out << "\n";
    for (Eigen::Index i = 0; i < u.count(); ++i) {
        out << format_double(u.dt * static_cast<double>(i));
        for (Eigen::Index r = 0; r < u.dim(); ++r)
            out << "," << format_double(u.values(r, i).real()) << ","
                << format_double(u.values(r, i).imag());
        out << "\n";
    }
}

SampledSignal read_signal_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open signal CSV: " + path);
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("empty signal CSV: " + path);

    Eigen::Index ncols = 1;
    for (char c : line)
        if (c == ',') ++ncols;
    if (ncols < 3 || (ncols - 1) % 2 != 0)
        throw ValidationError("signal CSV header must be t,re_0,im_0,...: " + path);
    const Eigen::Index d = (ncols - 1) / 2;

    std::vector<double> times;
    std::vector<Complex> flat;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (static_cast<Eigen::Index>(row.size()) != ncols)
            throw ValidationError("signal CSV row width mismatch: " + path);
        times.push_back(row[0]);
        for (Eigen::Index r = 0; r < d; ++r) flat.emplace_back(row[1 + 2 * r], row[2 + 2 * r]);
    }
    const auto n = static_cast<Eigen::Index>(times.size());
    if (n < 2) throw ValidationError("signal CSV needs at least 2 samples: " + path);

    const double dt = times[1] - times[0];
    if (!(dt > 0.0)) throw ValidationError("signal CSV times must be strictly increasing");
    for (Eigen::Index i = 1; i < n; ++i) {
        const double step = times[i] - times[i - 1];
        if (!(step > 0.0) || std::abs(step - dt) > 1e-9 * dt)
            throw ValidationError("signal CSV times must be equispaced");
    }

    Eigen::MatrixXcd v(d, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index r = 0; r < d; ++r) v(r, i) = flat[i * d + r];
    return SampledSignal(dt, std::move(v));
}

}  // namespace ntdlab
