#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "ntdlab/sobolev.hpp"
#include "test_util.hpp"

using namespace ntdlab;
using testutil::complex_exponential;
using testutil::gaussian_bump;
using testutil::smooth_corpus;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent dense solver for the moment system (partial-pivot Gaussian
// elimination, no Eigen), used as the oracle for the reflection weights.
std::vector<double> naive_moment_solve(int m, const std::vector<double>& betas) {
    const int n = 2 * m;
    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
    for (int row = 0; row < n; ++row) {
        const int j = row - m;
        for (int col = 0; col < n; ++col) a[row][col] = std::pow(betas[col], j);
        a[row][n] = 1.0;
    }
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        std::swap(a[col], a[pivot]);
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            for (int c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    std::vector<double> x(n);
    for (int r = 0; r < n; ++r) x[r] = a[r][n] / a[r][r];
    return x;
}

}  // namespace

TEST_CASE("reflection weights: m=1 hand-checked solution") {
    Eigen::VectorXd betas(2);
    betas << -1.0, -2.0;
    const ReflectionExtension ext = solve_reflection_coefficients(1, betas);
    // Solving alpha1 + alpha2 = 1, -alpha1 - alpha2/2 = 1 by hand gives (-3, 4).
    CHECK(ext.alphas[0] == doctest::Approx(-3.0).epsilon(1e-12));
    CHECK(ext.alphas[1] == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("reflection weights: repeated nodes are rejected") {
    Eigen::VectorXd betas(2);
    betas << -1.0, -1.0;
    CHECK_THROWS_AS(solve_reflection_coefficients(1, betas), ValidationError);
    betas << -1.0, 2.0;
    CHECK_THROWS_AS(solve_reflection_coefficients(1, betas), ValidationError);
}

TEST_CASE("reflection weights: m=2 agrees with an independent solver") {
    Eigen::VectorXd betas(4);
    betas << -1.0, -2.0, -3.0, -4.0;
    const ReflectionExtension ext = solve_reflection_coefficients(2, betas);
    const auto oracle = naive_moment_solve(2, {-1.0, -2.0, -3.0, -4.0});
    for (int k = 0; k < 4; ++k)
        CHECK(ext.alphas[k] == doctest::Approx(oracle[static_cast<size_t>(k)]).epsilon(1e-9));
    CHECK(ext.moment_residual() < 1e-10);
}

TEST_CASE("moment residuals stay below 1e-10 for default and arithmetic nodes") {
    for (int m : {1, 2}) {
        CHECK(default_reflection(m).moment_residual() < 1e-10);
        Eigen::VectorXd betas(2 * m);
        for (int k = 0; k < 2 * m; ++k) betas[k] = -static_cast<double>(k + 1);
        CHECK(solve_reflection_coefficients(m, betas).moment_residual() < 1e-10);
    }
}

TEST_CASE("extension by reflection: linearity, constants build from the j=0 moment") {
    const auto n = Eigen::Index{128};
    SampledSignal zero(1.0 / 128.0, Eigen::MatrixXcd::Zero(1, n));
    const ReflectionExtension ext = default_reflection(1);
    CHECK(extend_by_reflection(zero, ext).values.cwiseAbs().maxCoeff() == 0.0);

    SampledSignal constant(1.0 / 128.0, Eigen::MatrixXcd::Constant(1, n, Complex(2.5, -1.0)));
    const TwoSidedSignal two = extend_by_reflection(constant, ext);
    CHECK(two.neg_count > 0);
    for (Eigen::Index i = 0; i < two.count(); ++i)
        CHECK(std::abs(two.values(0, i) - Complex(2.5, -1.0)) < 1e-12);
}

TEST_CASE("extension by reflection: linear ramp follows the weighted formula") {
    const auto n = Eigen::Index{256};
    const double dt = 1.0 / 256.0;
    SampledSignal ramp = sample_scalar(dt, n, [](double t) { return t; });
    Eigen::VectorXd betas(2);
    betas << -1.0, -2.0;
    const ReflectionExtension ext = solve_reflection_coefficients(1, betas);
    const TwoSidedSignal two = extend_by_reflection(ramp, ext);

    // ext(-tau) = -3 u(tau) + 4 u(2 tau) = 5 tau for the ramp.
    for (Eigen::Index j = 1; j <= two.neg_count; ++j) {
        const double tau = dt * static_cast<double>(j);
        const double got = two.values(0, two.neg_count - j).real();
        CHECK(got == doctest::Approx(5.0 * tau).epsilon(1e-10));
    }
    // continuity across 0 at grid accuracy
    CHECK(std::abs(two.values(0, two.neg_count - 1)) < 6.0 * dt);
    // restriction identity is bit-exact
    for (Eigen::Index i = 0; i < n; ++i)
        CHECK(two.values(0, two.neg_count + i) == ramp.values(0, i));
}

TEST_CASE("extension by zero") {
    SampledSignal one(0.01, Eigen::MatrixXcd::Constant(1, 100, Complex(1.0, 0.0)));
    const TwoSidedSignal two = extend_by_zero(one);
    CHECK(two.neg_count == 0);
    CHECK(two.values == one.values);
    // L2 norm preserved (s = 0 case)
    CHECK(bessel_norm(two, 0.0) == doctest::Approx(one.l2_norm()).epsilon(1e-10));
}

TEST_CASE("bessel norm: zero signal and Plancherel at s = 0") {
    TwoSidedSignal zero;
    zero.dt = 0.01;
    zero.neg_count = 0;
    zero.values = Eigen::MatrixXcd::Zero(2, 64);
    CHECK(bessel_norm(zero, 1.0) == 0.0);

    const SampledSignal g = gaussian_bump(0.5, 0.07, 1.0, 512, 11.0);
    CHECK(bessel_norm(extend_by_zero(g), 0.0) ==
          doctest::Approx(g.l2_norm()).epsilon(1e-6));
    CHECK_THROWS_AS(bessel_norm(extend_by_zero(g), 0.0, 3), ValidationError);
}

TEST_CASE("bessel norm at s = 1 matches the finite-difference H1 oracle") {
    const SampledSignal g = gaussian_bump(0.5, 0.06, 1.0, 1024);
    const double dt = g.dt;

    double l2sq = g.dt * g.values.squaredNorm();
    double deriv_sq = 0.0;
    for (Eigen::Index i = 0; i + 1 < g.count(); ++i)
        deriv_sq += dt * std::norm((g.values(0, i + 1) - g.values(0, i)) / dt);
    const double oracle = std::sqrt(l2sq + deriv_sq);

    CHECK(bessel_norm(extend_by_zero(g), 1.0) == doctest::Approx(oracle).epsilon(0.01));
    // the interval norm only adds negligible edge-wing mass for a bump
    CHECK(hs_norm(g, 1.0) == doctest::Approx(oracle).epsilon(0.02));
}

TEST_CASE("hs_norm: s = 0 is the quadrature L2 norm; homogeneity is exact") {
    for (const auto& u : smooth_corpus()) {
        CHECK(hs_norm(u, 0.0) == doctest::Approx(u.l2_norm()).epsilon(1e-10));
        const Complex c(-1.75, 0.5);
        for (double s : {-1.5, -0.7, 0.0, 0.4, 1.0, 2.0}) {
            SampledSignal scaled(u.dt, c * u.values);
            const double lhs = hs_norm(scaled, s);
            const double rhs = std::abs(c) * hs_norm(u, s);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        }
    }
}

TEST_CASE("hs_norm rejects |s| > 2") {
    const SampledSignal g = gaussian_bump(0.5, 0.1, 1.0, 128);
    CHECK_THROWS_AS(hs_norm(g, 2.5), ValidationError);
    CHECK_THROWS_AS(hs_norm(g, -2.5), ValidationError);
}

TEST_CASE("hs_norm at s = -1 against the periodic Fourier oracle") {
    // e^{ikt} on (0, 2pi): |u|_{H^-1} ~ sqrt(2 pi) / (1 + k^2)^{1/2}; only
    // norm-equivalence accuracy is claimed (15%).
    const double k = 8.0;
    const SampledSignal u = complex_exponential(k, 2.0 * kPi, 512);
    const double oracle = std::sqrt(2.0 * kPi) / std::sqrt(1.0 + k * k);
    const double got = hs_norm(u, -1.0);
    CHECK(std::abs(got - oracle) / oracle < 0.15);
}

TEST_CASE("monotonicity across the smooth corpus") {
    const std::vector<double> orders = {0.0, 0.3, 0.5, 0.7, 1.0, 1.5, 2.0};
    for (const auto& u : smooth_corpus())
        for (size_t i = 0; i < orders.size(); ++i)
            for (size_t j = i; j < orders.size(); ++j)
                CHECK(hs_norm(u, orders[i]) <= 3.0 * hs_norm(u, orders[j]));
}

TEST_CASE("derivative sandwich: ratios stay within a factor 10") {
    for (const auto& u : smooth_corpus()) {
        for (double s : {0.3, 0.7, 1.0, 1.5}) {
            // finite-difference derivative on the same grid
            Eigen::MatrixXcd dv(1, u.count() - 1);
            for (Eigen::Index i = 0; i + 1 < u.count(); ++i)
                dv(0, i) = (u.values(0, i + 1) - u.values(0, i)) / u.dt;
            SampledSignal du(u.dt, std::move(dv));

            const double num = hs_norm(u, s);
            const double den = hs_norm(u, s - 1.0) + hs_norm(du, s - 1.0);
            const double ratio = num / den;
            CHECK(ratio > 0.1);
            CHECK(ratio < 10.0);
        }
    }
}

TEST_CASE("besov seminorm: degenerate cases and parameter validation") {
    SampledSignal zero(0.01, Eigen::MatrixXcd::Zero(1, 128));
    CHECK(besov_seminorm(zero, 0.5) == 0.0);

    SampledSignal constant(0.01, Eigen::MatrixXcd::Constant(1, 128, Complex(3.0, 0.0)));
    // interior differences vanish; only boundary truncation remains
    CHECK(besov_seminorm(constant, 0.5) < 1e-10);

    CHECK_THROWS_AS(besov_seminorm(constant, 0.0), ValidationError);
    CHECK_THROWS_AS(besov_seminorm(constant, 1.0), ValidationError);
}

TEST_CASE("besov vs bessel cross-method agreement at r = 1/2") {
    const SampledSignal g = gaussian_bump(0.5, 0.05, 1.0, 1024);
    const double besov = besov_seminorm(g, 0.5);
    const double l2 = g.l2_norm();
    const double combined = std::sqrt(besov * besov + l2 * l2);
    const double bessel = hs_norm(g, 0.5);
    CHECK(std::abs(combined - bessel) / bessel < 0.10);
}

TEST_CASE("windowed lower bound: zero signal is trivially satisfied") {
    SampledSignal zero(1.0 / 256.0, Eigen::MatrixXcd::Zero(1, 256));
    const WindowedReport rep = windowed_lower_bound_check(zero, 1.0, 0.25);
    CHECK(rep.trivial);
    CHECK(rep.ratio == 0.0);
}

TEST_CASE("windowed lower bound: s = 0 tiles with overlap") {
    const SampledSignal g = gaussian_bump(0.5, 0.1, 1.0, 512, 30.0);
    const WindowedReport rep = windowed_lower_bound_check(g, 0.0, 0.25);
    CHECK_FALSE(rep.trivial);
    CHECK(rep.ratio <= 2.0 + 1e-9);
    CHECK(rep.ratio > 0.0);
}

TEST_CASE("windowed lower bound: stable empirical constant across oscillations") {
    double lo = 1e300, hi = 0.0;
    for (double k : {2.0, 8.0, 32.0}) {
        const SampledSignal u = complex_exponential(k, 4.0, 1024);
        for (double s : {0.5, 1.0, 2.0}) {
            const WindowedReport rep = windowed_lower_bound_check(u, s, 1.0);
            CHECK_FALSE(rep.trivial);
            CHECK(std::isfinite(rep.ratio));
            if (s == 1.0) {
                lo = std::min(lo, rep.ratio);
                hi = std::max(hi, rep.ratio);
            }
        }
    }
    CHECK(hi / lo < 10.0);
}

TEST_CASE("windowed lower bound rejects oversized windows") {
    const SampledSignal g = gaussian_bump(0.5, 0.1, 1.0, 256);
    CHECK_THROWS_AS(windowed_lower_bound_check(g, 1.0, 0.6), ValidationError);
}
