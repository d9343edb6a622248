// Command-line front door: build models from config, run sweeps and
// simulations, emit CSV results plus flat JSON fit summaries.
//
// Exit codes: 0 success, 2 validation error, 3 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <thread>
#include <vector>

#include "ntdlab/config.hpp"
#include "ntdlab/decay.hpp"
#include "ntdlab/diagonal.hpp"
#include "ntdlab/fitting.hpp"
#include "ntdlab/halfspace.hpp"
#include "ntdlab/rectangle.hpp"
#include "ntdlab/sobolev.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace ntdlab;

struct CommonOptions {
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = kDefaultSeed;
    int workers = 1;
};

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

KeyValueConfig load_config(const CommonOptions& common) {
    if (common.config_path.empty()) return {};
    return parse_config_file(common.config_path);
}

std::ofstream open_out(const CommonOptions& common, const std::string& name) {
    std::filesystem::create_directories(common.out_dir);
    const auto path = std::filesystem::path(common.out_dir) / name;
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open output file: " + path.string());
    return out;
}

json base_summary(const std::string& command, const CommonOptions& common,
                  const KeyValueConfig& cfg) {
    json j;
    j["command"] = command;
    j["seed"] = common.seed;
    for (const auto& [key, value] : cfg.entries()) j["config_" + key] = value;
    return j;
}

void add_fit(json& j, const ExponentFit& fit) {
    j["slope"] = fit.slope;
    j["stderr"] = fit.stderr_;
    j["window_lo"] = fit.window_lo;
    j["window_hi"] = fit.window_hi;
    j["n_points"] = fit.n_points;
    j["curvature_flag"] = fit.curvature_flag;
}

void write_summary(const CommonOptions& common, const std::string& name, const json& j) {
    auto out = open_out(common, name);
    out << j.dump(2) << "\n";
}

template <typename F>
void parallel_for(Eigen::Index n, int workers, F&& fn) {
    workers = std::max(1, workers);
    if (workers == 1) {
        for (Eigen::Index i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<Eigen::Index> next{0};
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&]() {
            for (;;) {
                const Eigen::Index i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    for (auto& t : pool) t.join();
}

// ---------------------------------------------------------------- symbols

int run_symbols(const CommonOptions& common, const KeyValueConfig& cfg) {
    const SymbolKind kind = symbol_kind_from_string(cfg.get_string("kind", "wave"));
    const BoundaryWeight weight = weight_from_string(cfg.get_string("weight", "one"));
    const Eigen::VectorXd freqs = parse_grid_spec(cfg.get_string("grid", "10:1000:24log"));
    if (freqs.size() < 8) throw ValidationError("symbols: grid needs at least 8 points");

    Eigen::VectorXd sups(freqs.size());
    parallel_for(freqs.size(), common.workers, [&](Eigen::Index i) {
        NtDSymbol sym{kind, freqs[i], false};
        sups[i] = symbol_sup(sym, weight, default_tau_max(sym));
    });

    Eigen::VectorXd x = freqs;
    if (kind == SymbolKind::Schrodinger) x = x.array().square();
    const ExponentFit fit = fit_exponent(x, sups);

    auto csv = open_out(common, "symbols.csv");
    csv << "freq,sup,weight,kind\n";
    for (Eigen::Index i = 0; i < freqs.size(); ++i)
        csv << fmt(freqs[i]) << "," << fmt(sups[i]) << "," << to_string(weight) << ","
            << to_string(kind) << "\n";

    json j = base_summary("symbols", common, cfg);
    add_fit(j, fit);
    write_summary(common, "symbols_summary.json", j);
    std::cout << "symbols: slope " << fit.slope << " +- " << fit.stderr_ << " over "
              << fit.n_points << " points\n";
    return 0;
}

// ----------------------------------------------------- rectangle commands

RectangleConfig rectangle_from_config(const KeyValueConfig& cfg) {
    RectangleConfig rc;
    rc.model = build_model(cfg.get_double("a", 1.0), cfg.get_double("b", 1.0),
                           static_cast<int>(cfg.get_int("M", 24)));
    rc.J = static_cast<int>(cfg.get_int("J", std::min(16L, static_cast<long>(rc.model.M))));
    rc.patch.side = side_from_string(cfg.get_string("side", "S"));
    rc.patch.s0 = cfg.get_double("s0", 0.0);
    rc.patch.s1 = cfg.get_double("s1", rc.model.side_length(rc.patch.side));
    rc.patch.b0 = cfg.get_double("b0", 1.0);
    return rc;
}

int run_rect_ntd(const CommonOptions& common, const KeyValueConfig& cfg) {
    const RectangleConfig rc = rectangle_from_config(cfg);
    const Eigen::VectorXd lambdas = parse_grid_spec(cfg.get_string("grid", "5:100:24log"));
    const double sigma = cfg.get_double("sigma", 1.0);
    check_truncation(rc.model, lambdas.cwiseAbs().maxCoeff());

    Eigen::VectorXd l2(lambdas.size()), h1(lambdas.size());
    parallel_for(lambdas.size(), common.workers, [&](Eigen::Index i) {
        const TransferMatrix g = ntd_matrix(rc.model, Complex(sigma, lambdas[i]), rc.J);
        l2[i] = operator_norm(g, BoundaryTarget::L2);
        h1[i] = operator_norm(g, BoundaryTarget::H1);
    });

    auto csv = open_out(common, "rect_ntd.csv");
    csv << "lambda,norm_l2,norm_h1\n";
    for (Eigen::Index i = 0; i < lambdas.size(); ++i)
        csv << fmt(lambdas[i]) << "," << fmt(l2[i]) << "," << fmt(h1[i]) << "\n";

    const ExponentFit fit_l2 = fit_exponent(lambdas, l2);
    const ExponentFit fit_h1 = fit_exponent(lambdas, h1);
    json jl = base_summary("rect-ntd", common, cfg);
    add_fit(jl, fit_l2);
    jl["target"] = "l2";
    write_summary(common, "rect_ntd_l2.json", jl);
    json jh = base_summary("rect-ntd", common, cfg);
    add_fit(jh, fit_h1);
    jh["target"] = "h1";
    write_summary(common, "rect_ntd_h1.json", jh);
    std::cout << "rect-ntd: L2 slope " << fit_l2.slope << ", H1 slope " << fit_h1.slope << "\n";
    return 0;
}

int run_hautus(const CommonOptions& common, const KeyValueConfig& cfg) {
    const RectangleConfig rc = rectangle_from_config(cfg);
    const int n = static_cast<int>(cfg.get_int("n_points", 48));
    const double lo = cfg.get_double("lambda_lo", 1.0);
    const double hi = cfg.get_double("lambda_hi", 60.0);
    const Eigen::VectorXd lambdas = irrational_grid(lo, hi, n);
    check_truncation(rc.model, lambdas.cwiseAbs().maxCoeff());

    Eigen::VectorXd sigma_min(lambdas.size());
    parallel_for(lambdas.size(), common.workers, [&](Eigen::Index i) {
        sigma_min[i] = hautus_sigma_min(rc.model, rc.patch, lambdas[i]);
    });

    auto csv = open_out(common, "hautus.csv");
    csv << "lambda,sigma_min\n";
    for (Eigen::Index i = 0; i < lambdas.size(); ++i)
        csv << fmt(lambdas[i]) << "," << fmt(sigma_min[i]) << "\n";

    Eigen::Index argmin = 0;
    const double smallest = sigma_min.minCoeff(&argmin);
    json j = base_summary("hautus", common, cfg);
    j["sigma_min_min"] = smallest;
    j["sigma_min_argmin_lambda"] = lambdas[argmin];
    j["n_points"] = static_cast<int>(lambdas.size());
    j["all_positive"] = bool(smallest > 0.0);
    write_summary(common, "hautus.json", j);
    std::cout << "hautus: min sigma_min " << smallest << " at lambda " << lambdas[argmin] << "\n";
    return 0;
}

int run_damped_resolvent(const CommonOptions& common, const KeyValueConfig& cfg) {
    const RectangleConfig rc = rectangle_from_config(cfg);
    if (!(rc.patch.b0 > 0.0))
        throw ValidationError("damped-resolvent: patch amplitude b0 must be positive");
    const int n = static_cast<int>(cfg.get_int("n_points", 24));
    const double lo = cfg.get_double("lambda_lo", 5.0);
    const double hi = cfg.get_double("lambda_hi", 80.0);
    const Eigen::VectorXd lambdas = irrational_grid(lo, hi, n);
    check_truncation(rc.model, lambdas.cwiseAbs().maxCoeff());

    Eigen::VectorXd norms(lambdas.size());
    parallel_for(lambdas.size(), common.workers, [&](Eigen::Index i) {
        norms[i] = damped_resolvent_norm(rc.model, rc.patch, lambdas[i]);
    });
    if (!norms.allFinite()) throw NumericsError("damped-resolvent: singular resolvent encountered");

    auto csv = open_out(common, "damped_resolvent.csv");
    csv << "lambda,res_norm\n";
    for (Eigen::Index i = 0; i < lambdas.size(); ++i)
        csv << fmt(lambdas[i]) << "," << fmt(norms[i]) << "\n";

    const ExponentFit fit = fit_exponent(lambdas, norms);
    json j = base_summary("damped-resolvent", common, cfg);
    add_fit(j, fit);
    write_summary(common, "damped_resolvent.json", j);
    std::cout << "damped-resolvent: slope " << fit.slope << " +- " << fit.stderr_ << "\n";
    return 0;
}

int run_decay(const CommonOptions& common, const KeyValueConfig& cfg) {
    const RectangleConfig rc = rectangle_from_config(cfg);
    const double T = cfg.get_double("T", 200.0);
    const double dt = cfg.get_double("dt", 1e-3);
    const DataProfile profile = profile_from_string(cfg.get_string("profile", "low_modes"));
    const double t0 = cfg.get_double("fit_t0", std::max(1.0, 0.02 * T));
    const double t1 = cfg.get_double("fit_t1", 0.5 * T);

    const DampedGalerkinSystem system = make_system(rc.model, rc.patch);
    const GalerkinState data = classical_data(rc.model, profile);
    const TrajectoryRecord record = simulate(system, data, T, dt);

    auto csv = open_out(common, "decay.csv");
    csv << "t,E,cumulative_dissipation\n";
    for (Eigen::Index i = 0; i < record.times.size(); ++i)
        csv << fmt(record.times[i]) << "," << fmt(record.energies[i]) << ","
            << fmt(record.cumulative_dissipation[i]) << "\n";

    const ExponentFit fit = decay_fit(record, t0, t1);
    json j = base_summary("decay", common, cfg);
    add_fit(j, fit);
    j["dissipation_residual"] = dissipation_residual(record);
    j["energy_final"] = record.energies[record.times.size() - 1];
    j["caveat"] = kDecayFitCaveat;
    write_summary(common, "decay.json", j);
    std::cout << "decay: fitted exponent " << fit.slope << " over [" << t0 << ", " << t1
              << "]\nnote: " << kDecayFitCaveat << "\n";
    return 0;
}

// ------------------------------------------------------------- sobolev/diag

int run_sobolev(const CommonOptions& common, const KeyValueConfig& cfg) {
    const SampledSignal u = read_signal_csv(cfg.get_string("signal"));
    json j = base_summary("sobolev", common, cfg);
    if (cfg.has("s")) {
        const double s = cfg.get_double("s");
        j["hs_norm"] = hs_norm(u, s);
        j["s"] = s;
    }
    if (cfg.has("besov_r")) {
        const double r = cfg.get_double("besov_r");
        j["besov_seminorm"] = besov_seminorm(u, r);
        j["besov_r"] = r;
    }
    if (cfg.has("window")) {
        const double s = cfg.get_double("window_s", 1.0);
        const WindowedReport rep = windowed_lower_bound_check(u, s, cfg.get_double("window"));
        j["window_lhs"] = rep.lhs;
        j["window_rhs_sum"] = rep.rhs_sum;
        j["window_ratio"] = rep.ratio;
        j["window_trivial"] = rep.trivial;
    }
    j["l2_norm"] = u.l2_norm();
    write_summary(common, "sobolev.json", j);
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_diag(const CommonOptions& common, const KeyValueConfig& cfg) {
    const DiagonalModel model = read_diagonal_model(cfg.get_string("model"));
    const double sigma = cfg.get_double("sigma", model.sigma0 + 1.0);
    const Eigen::VectorXd omegas = parse_grid_spec(cfg.get_string("grid", "8:256:16log"));

    Eigen::VectorXd obs(omegas.size()), ctrl(omegas.size()), tf(omegas.size());
    parallel_for(omegas.size(), common.workers, [&](Eigen::Index i) {
        obs[i] = resolvent_observation_norm(model, sigma, omegas[i]);
        ctrl[i] = resolvent_control_norm(model, sigma, omegas[i]);
        tf[i] = std::abs(transfer_value(model, sigma, omegas[i]));
    });

    auto csv = open_out(common, "diag.csv");
    csv << "omega,obs_norm,ctrl_norm,transfer_abs\n";
    for (Eigen::Index i = 0; i < omegas.size(); ++i)
        csv << fmt(omegas[i]) << "," << fmt(obs[i]) << "," << fmt(ctrl[i]) << "," << fmt(tf[i])
            << "\n";

    json j = base_summary("diag", common, cfg);
    add_fit(j, fit_exponent(omegas, obs));
    const ExponentFit fit_ctrl = fit_exponent(omegas, ctrl);
    const ExponentFit fit_tf = fit_exponent(omegas, tf);
    j["ctrl_slope"] = fit_ctrl.slope;
    j["transfer_slope"] = fit_tf.slope;

    if (cfg.has("eta")) {
        const RatioStats stats =
            admissibility_ratio(model, cfg.get_double("eta"), cfg.get_double("T", 6.283185307179586),
                                cfg.get_double("dt", 6.283185307179586 / 1024.0),
                                static_cast<int>(cfg.get_int("trials", 16)), common.seed);
        j["admissibility_max_ratio"] = stats.max_ratio;
        j["admissibility_mean_ratio"] = stats.mean_ratio;
    }
    write_summary(common, "diag.json", j);
    std::cout << "diag: obs slope " << j["slope"].get<double>() << ", ctrl slope "
              << fit_ctrl.slope << ", transfer slope " << fit_tf.slope << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for semigroup admissibility, Neumann-to-Dirichlet "
                 "transfer asymptotics, and boundary-damped wave decay"};
    app.require_subcommand(1);

    CommonOptions common;
    KeyValueConfig overrides;
    std::vector<std::string> sets;

    app.add_option("--config", common.config_path, "structured-text config file");
    app.add_option("--out", common.out_dir, "output directory");
    app.add_option("--seed", common.seed, "random seed recorded in outputs");
    app.add_option("--workers", common.workers, "worker pool size for sweeps");
    app.add_option("--set", sets, "override config key (key=value), repeatable");

    // Per-command flag mirrors of the config keys.
    std::map<std::string, std::map<std::string, std::string>> flag_values;
    auto mirror = [&](CLI::App* sub, std::initializer_list<const char*> keys) {
        for (const char* key : keys)
            sub->add_option_function<std::string>(
                "--" + std::string(key),
                [&flag_values, sub, key](const std::string& v) {
                    flag_values[sub->get_name()][key] = v;
                },
                "config key " + std::string(key));
    };

    CLI::App* symbols = app.add_subcommand("symbols", "half-space NtD symbol sweep + fit");
    mirror(symbols, {"kind", "weight", "grid"});
    CLI::App* rect = app.add_subcommand("rect-ntd", "rectangle NtD operator-norm sweep");
    mirror(rect, {"a", "b", "M", "J", "grid", "sigma"});
    CLI::App* hautus = app.add_subcommand("hautus", "rectangle Hautus singular-value scan");
    mirror(hautus, {"a", "b", "M", "side", "s0", "s1", "lambda_lo", "lambda_hi", "n_points"});
    CLI::App* damped = app.add_subcommand("damped-resolvent", "damped second-order resolvent sweep");
    mirror(damped, {"a", "b", "M", "side", "s0", "s1", "b0", "lambda_lo", "lambda_hi", "n_points"});
    CLI::App* decay = app.add_subcommand("decay", "boundary-damped Galerkin wave simulation");
    mirror(decay, {"a", "b", "M", "side", "s0", "s1", "b0", "T", "dt", "profile", "fit_t0", "fit_t1"});
    CLI::App* sobolev = app.add_subcommand("sobolev", "fractional Sobolev norms of a signal CSV");
    mirror(sobolev, {"signal", "s", "besov_r", "window", "window_s"});
    CLI::App* diag = app.add_subcommand("diag", "diagonal-model resolvent/transfer sweep");
    mirror(diag, {"model", "sigma", "grid", "eta", "T", "dt", "trials"});

    CLI11_PARSE(app, argc, argv);

    try {
        KeyValueConfig cfg = load_config(common);
        CLI::App* sub = app.get_subcommands().front();
        for (const auto& [key, value] : flag_values[sub->get_name()]) cfg.set(key, value);
        for (const auto& kv : sets) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw ValidationError("--set expects key=value, got: " + kv);
            cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
        }

        const std::string name = sub->get_name();
        if (name == "symbols") return run_symbols(common, cfg);
        if (name == "rect-ntd") return run_rect_ntd(common, cfg);
        if (name == "hautus") return run_hautus(common, cfg);
        if (name == "damped-resolvent") return run_damped_resolvent(common, cfg);
        if (name == "decay") return run_decay(common, cfg);
        if (name == "sobolev") return run_sobolev(common, cfg);
        if (name == "diag") return run_diag(common, cfg);
        throw ValidationError("unknown command: " + name);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericsError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}
