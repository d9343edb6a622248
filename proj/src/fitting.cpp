#include "ntdlab/fitting.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace ntdlab {

namespace {

struct PolyFit {
    Eigen::VectorXd coeffs;
    Eigen::VectorXd stderrs;
};

// Least squares for log y against powers of log x, with coefficient
// standard errors from the residual variance.
PolyFit poly_fit(const std::vector<double>& lx, const std::vector<double>& ly, int degree) {
    const auto n = static_cast<Eigen::Index>(lx.size());
    const Eigen::Index p = degree + 1;
    Eigen::MatrixXd design(n, p);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double v = 1.0;
        for (Eigen::Index j = 0; j < p; ++j) {
            design(i, j) = v;
            v *= lx[static_cast<size_t>(i)];
        }
        rhs[i] = ly[static_cast<size_t>(i)];
    }
    PolyFit fit;
    fit.coeffs = design.colPivHouseholderQr().solve(rhs);
    const double rss = (design * fit.coeffs - rhs).squaredNorm();
    const double dof = static_cast<double>(n - p);
    const double sigma2 = dof > 0 ? rss / dof : 0.0;
    const Eigen::MatrixXd cov = sigma2 * (design.transpose() * design).inverse();
    fit.stderrs = cov.diagonal().cwiseMax(0.0).cwiseSqrt();
    return fit;
}

}  // namespace

ExponentFit fit_exponent(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                         double window_lo, double window_hi) {
    if (x.size() != y.size()) throw ValidationError("fit_exponent: size mismatch");
    if (!(window_lo < window_hi)) throw ValidationError("fit_exponent: bad window");

    std::vector<double> lx, ly;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (x[i] < window_lo || x[i] > window_hi) continue;
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw ValidationError("fit_exponent: values must be positive inside the window");
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
    }
    if (lx.size() < 3) throw ValidationError("fit_exponent: need >= 3 points in the window");

    const PolyFit lin = poly_fit(lx, ly, 1);

    ExponentFit out;
    out.slope = lin.coeffs[1];
    out.stderr_ = lin.stderrs[1];
    out.window_lo = window_lo;
    out.window_hi = window_hi;
    out.n_points = static_cast<int>(lx.size());
    if (lx.size() >= 4) {
        const PolyFit quad = poly_fit(lx, ly, 2);
        const double c2 = quad.coeffs[2], se = quad.stderrs[2];
        out.curvature_flag = se > 0.0 ? std::abs(c2) > 3.0 * se
                                      : std::abs(c2) > 1e-10;
    }
    if (!std::isfinite(out.stderr_)) out.stderr_ = 0.0;
    return out;
}

ExponentFit fit_exponent(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    if (x.size() < 1) throw ValidationError("fit_exponent: empty data");
    const double lo = x.minCoeff(), hi = x.maxCoeff();
    return fit_exponent(x, y, lo - 1e-12 * std::abs(lo), hi + 1e-12 * std::abs(hi));
}

Eigen::VectorXd log_grid(double lo, double hi, int n) {
    if (!(lo > 0.0 && hi > lo) || n < 2) throw ValidationError("log_grid: bad range");
    Eigen::VectorXd g(n);
    for (int i = 0; i < n; ++i)
        g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(n - 1));
    return g;
}

Eigen::VectorXd lin_grid(double lo, double hi, int n) {
    if (!(hi > lo) || n < 2) throw ValidationError("lin_grid: bad range");
    Eigen::VectorXd g(n);
    for (int i = 0; i < n; ++i)
        g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return g;
}

Eigen::VectorXd irrational_grid(double lo, double hi, int n) {
    if (!(hi > lo) || n < 2) throw ValidationError("irrational_grid: bad range");
    const double phi = 0.5 * (1.0 + std::sqrt(5.0));
    // Step is an irrational multiple of the span, so lo + j*step is never a
    // rational multiple of pi^2 for j >= 1; the last point stays below hi.
    const double step = (hi - lo) / (static_cast<double>(n - 1) + 1.0 / (2.0 * phi));
    Eigen::VectorXd g(n);
    for (int i = 0; i < n; ++i) g[i] = lo + step * static_cast<double>(i);
    return g;
}

}  // namespace ntdlab
