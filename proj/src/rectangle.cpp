#include "ntdlab/rectangle.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace ntdlab {

namespace {

constexpr double kPi = std::numbers::pi;

double largest_singular_value(const Eigen::MatrixXcd& a) {
    if (a.size() == 0) return 0.0;
    const Eigen::MatrixXcd gram = a.adjoint() * a;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, eig.eigenvalues().maxCoeff()));
}

// int_{s0}^{s1} cos(m pi x / len) cos(m' pi x / len) dx, closed form.
double cos_product_integral(int m, int mp, double s0, double s1, double len) {
    const double am = static_cast<double>(m) * kPi / len;
    const double ap = static_cast<double>(mp) * kPi / len;
    if (m == 0 && mp == 0) return s1 - s0;
    if (m == mp) {
        return 0.5 * (s1 - s0) + (std::sin(2.0 * am * s1) - std::sin(2.0 * am * s0)) / (4.0 * am);
    }
    const double d = am - ap, s = am + ap;
    return 0.5 * ((std::sin(d * s1) - std::sin(d * s0)) / d +
                  (std::sin(s * s1) - std::sin(s * s0)) / s);
}

// Orthonormal cosine normalizer sqrt((2 - delta_{k0}) / len).
double axis_normalizer(int k, double len) {
    return std::sqrt((k == 0 ? 1.0 : 2.0) / len);
}

}  // namespace

Side side_from_string(const std::string& name) {
    if (name.empty()) throw ValidationError("empty side name");
    switch (std::tolower(static_cast<unsigned char>(name[0]))) {
        case 's': return Side::South;
        case 'n': return Side::North;
        case 'w': return Side::West;
        case 'e': return Side::East;
        default: throw ValidationError("unknown side: " + name);
    }
}

std::string to_string(Side side) {
    switch (side) {
        case Side::South: return "S";
        case Side::North: return "N";
        case Side::West: return "W";
        default: return "E";
    }
}

RectangleModel build_model(double a, double b, int M) {
    if (!(a > 0.0 && b > 0.0)) throw ValidationError("build_model: side lengths must be positive");
    if (M < 1) throw ValidationError("build_model: M >= 1 required");
    RectangleModel model;
    model.a = a;
    model.b = b;
    model.M = M;
    model.eigenvalues.resize(model.n_modes());
    for (int m = 0; m <= M; ++m)
        for (int n = 0; n <= M; ++n) {
            const double km = static_cast<double>(m) * kPi / a;
            const double kn = static_cast<double>(n) * kPi / b;
            model.eigenvalues[model.mode(m, n)] = km * km + kn * kn;
        }
    return model;
}

double RectangleModel::trace_coefficient(Side side, int m, int n, int j) const {
    switch (side) {
        case Side::South:
            return j == m ? axis_normalizer(n, b) : 0.0;
        case Side::North:
            return j == m ? axis_normalizer(n, b) * (n % 2 == 0 ? 1.0 : -1.0) : 0.0;
        case Side::West:
            return j == n ? axis_normalizer(m, a) : 0.0;
        default:  // East
            return j == n ? axis_normalizer(m, a) * (m % 2 == 0 ? 1.0 : -1.0) : 0.0;
    }
}

void check_truncation(const RectangleModel& model, double lambda_max) {
    if (lambda_max * lambda_max > 0.5 * model.lambda_max())
        throw NumericsError("truncation too small: max lambda^2 exceeds half the retained spectrum");
}

TransferMatrix ntd_matrix(const RectangleModel& model, Complex p, int J) {
    if (!(p.real() > 0.0)) throw ValidationError("ntd_matrix: Re p > 0 required");
    if (J < 0 || J > model.M) throw ValidationError("ntd_matrix: need 0 <= J <= M");

    const int stride = J + 1;
    TransferMatrix out;
    out.p = p;
    out.J = J;
    out.side_lengths = {model.a, model.a, model.b, model.b};
    out.G.setZero(4 * stride, 4 * stride);

    const Complex p2 = p * p;
    // Each interior mode meets at most four boundary cosine modes, so the
    // spectral sum is a sparse rank-one update per (m, n).
    std::vector<std::pair<int, double>> hits;
    for (int m = 0; m <= model.M; ++m)
        for (int n = 0; n <= model.M; ++n) {
            hits.clear();
            if (m <= J) {
                hits.emplace_back(0 * stride + m, model.trace_coefficient(Side::South, m, n, m));
                hits.emplace_back(1 * stride + m, model.trace_coefficient(Side::North, m, n, m));
            }
            if (n <= J) {
                hits.emplace_back(2 * stride + n, model.trace_coefficient(Side::West, m, n, n));
                hits.emplace_back(3 * stride + n, model.trace_coefficient(Side::East, m, n, n));
            }
            if (hits.empty()) continue;
            const Complex d = 1.0 / (p2 + model.lambda_mn(m, n));
            for (const auto& [i, gi] : hits)
                for (const auto& [j, gj] : hits) out.G(i, j) += d * gi * gj;
        }
    return out;
}

double operator_norm(const TransferMatrix& matrix, BoundaryTarget target) {
    if (target == BoundaryTarget::L2) return largest_singular_value(matrix.G);
    const int stride = matrix.J + 1;
    Eigen::MatrixXcd scaled = matrix.G;
    for (int side = 0; side < 4; ++side)
        for (int j = 0; j < stride; ++j) {
            const double kj = static_cast<double>(j) * kPi / matrix.side_lengths[static_cast<size_t>(side)];
            scaled.row(side * stride + j) *= std::sqrt(1.0 + kj * kj);
        }
    return largest_singular_value(scaled);
}

double interior_control_norm(const RectangleModel& model, Complex p, int J) {
    if (!(p.real() > 0.0)) throw ValidationError("interior_control_norm: Re p > 0 required");
    if (J < 0 || J > model.M) throw ValidationError("interior_control_norm: need 0 <= J <= M");

    const int stride = J + 1;
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(4 * stride, 4 * stride);
    const Complex p2 = p * p;
    std::vector<std::pair<int, double>> hits;
    for (int m = 0; m <= model.M; ++m)
        for (int n = 0; n <= model.M; ++n) {
            hits.clear();
            if (m <= J) {
                hits.emplace_back(0 * stride + m, model.trace_coefficient(Side::South, m, n, m));
                hits.emplace_back(1 * stride + m, model.trace_coefficient(Side::North, m, n, m));
            }
            if (n <= J) {
                hits.emplace_back(2 * stride + n, model.trace_coefficient(Side::West, m, n, n));
                hits.emplace_back(3 * stride + n, model.trace_coefficient(Side::East, m, n, n));
            }
            if (hits.empty()) continue;
            const double w = 1.0 / std::norm(p2 + model.lambda_mn(m, n));
            for (const auto& [i, gi] : hits)
                for (const auto& [j, gj] : hits) gram(i, j) += w * gi * gj;
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, eig.eigenvalues().maxCoeff()));
}

NtdSweepResult ntd_sweep(const RectangleModel& model, const Eigen::VectorXd& lambdas, int J,
                         double sigma) {
    if (lambdas.size() < 1) throw ValidationError("ntd_sweep: empty grid");
    check_truncation(model, lambdas.cwiseAbs().maxCoeff());

    NtdSweepResult out;
    out.lambdas = lambdas;
    out.norm_l2.resize(lambdas.size());
    out.norm_h1.resize(lambdas.size());
    for (Eigen::Index i = 0; i < lambdas.size(); ++i) {
        const TransferMatrix G = ntd_matrix(model, Complex(sigma, lambdas[i]), J);
        out.norm_l2[i] = operator_norm(G, BoundaryTarget::L2);
        out.norm_h1[i] = operator_norm(G, BoundaryTarget::H1);
    }
    if (lambdas.size() >= 3) {
        out.fit_l2 = fit_exponent(lambdas, out.norm_l2);
        out.fit_h1 = fit_exponent(lambdas, out.norm_h1);
    }
    return out;
}

Eigen::MatrixXd boundary_gram(const RectangleModel& model, const BoundaryPatch& patch) {
    const double len = model.side_length(patch.side);
    if (!(patch.s0 >= 0.0 && patch.s0 < patch.s1 && patch.s1 <= len))
        throw ValidationError("boundary_gram: patch interval outside the side");
    if (patch.b0 < 0.0) throw ValidationError("boundary_gram: amplitude must be >= 0");

    const auto n_modes = model.n_modes();
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n_modes, n_modes);
    if (patch.b0 == 0.0) return gram;

    const bool horizontal = (patch.side == Side::South || patch.side == Side::North);
    const double amp2 = patch.b0 * patch.b0;

    // Trace of phi_{mn} on the side factors as (along-side cosine) x
    // (across-side value); the across factor carries the normalizer and, on
    // the far side, the (-1)^index sign.
    auto across_factor = [&](int m, int n) {
        switch (patch.side) {
            case Side::South: return axis_normalizer(n, model.b);
            case Side::North: return axis_normalizer(n, model.b) * (n % 2 == 0 ? 1.0 : -1.0);
            case Side::West: return axis_normalizer(m, model.a);
            default: return axis_normalizer(m, model.a) * (m % 2 == 0 ? 1.0 : -1.0);
        }
    };

    for (int m = 0; m <= model.M; ++m)
        for (int n = 0; n <= model.M; ++n) {
            const auto row = model.mode(m, n);
            for (int mp = 0; mp <= model.M; ++mp)
                for (int np = 0; np <= model.M; ++np) {
                    const auto col = model.mode(mp, np);
                    if (col < row) continue;
                    const int k1 = horizontal ? m : n;
                    const int k2 = horizontal ? mp : np;
                    const double along = axis_normalizer(k1, len) * axis_normalizer(k2, len) *
                                         cos_product_integral(k1, k2, patch.s0, patch.s1, len);
                    const double v = amp2 * across_factor(m, n) * across_factor(mp, np) * along;
                    gram(row, col) = v;
                    gram(col, row) = v;
                }
        }
    return gram;
}

double hautus_sigma_min(const RectangleModel& model, const BoundaryPatch& patch, double lambda) {
    check_truncation(model, lambda);
    BoundaryPatch unit_patch = patch;
    unit_patch.b0 = 1.0;  // the scan uses b == 1 on the patch
    Eigen::MatrixXd quad = boundary_gram(model, unit_patch);
    const double l2 = lambda * lambda;
    for (Eigen::Index i = 0; i < model.n_modes(); ++i) {
        const double d = model.eigenvalues[i] - l2;
        quad(i, i) += d * d;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(quad, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, eig.eigenvalues().minCoeff()));
}

double damped_resolvent_norm(const RectangleModel& model, const BoundaryPatch& patch,
                             double lambda) {
    check_truncation(model, lambda);
    const double l2 = lambda * lambda;

    if (patch.b0 == 0.0) {
        double gap = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < model.n_modes(); ++i)
            gap = std::min(gap, std::abs(model.eigenvalues[i] - l2));
        if (gap == 0.0) return std::numeric_limits<double>::infinity();
        return 1.0 / gap;
    }

    const Eigen::MatrixXd B = boundary_gram(model, patch);
    Eigen::MatrixXcd op = Complex(0.0, lambda) * B;
    for (Eigen::Index i = 0; i < model.n_modes(); ++i)
        op(i, i) += model.eigenvalues[i] - l2;
    const Eigen::MatrixXcd gram = op.adjoint() * op;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram, Eigen::EigenvaluesOnly);
    const double smallest = eig.eigenvalues().minCoeff();
    if (!(smallest > 0.0)) return std::numeric_limits<double>::infinity();
    return 1.0 / std::sqrt(smallest);
}

}  // namespace ntdlab
