// Command-line front end: simulation, drift-sign tests, estimators, and
// one-command reproduction of the built-in Monte Carlo tables.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "fou/estimators.hpp"
#include "fou/experiments.hpp"
#include "fou/fou_process.hpp"
#include "fou/path_io.hpp"
#include "fou/presets.hpp"
#include "fou/serialization.hpp"
#include "fou/sign_test.hpp"

namespace {

constexpr const char* kSchema = "fou-lab/1";

std::uint64_t default_seed() {
    if (const char* env = std::getenv("FOU_LAB_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0') return v;
        throw std::invalid_argument("FOU_LAB_SEED is not an unsigned integer");
    }
    return fou::kDefaultTableSeed;
}

void write_output(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text << '\n';
        return;
    }
    std::ofstream os(output_path);
    if (!os) throw std::runtime_error("cannot open output file " + output_path);
    os << text << '\n';
    if (!os) throw std::runtime_error("write failed: " + output_path);
}

struct CliArgs {
    // simulate
    double theta = 0.0, x0 = 1.0, hurst = 0.5, step = 1e-3;
    std::uint64_t points = 1000;
    std::string process = "fou";
    // tests
    double xt = 0.0, t = 0.0, alpha = 0.05, theta0 = 0.0, max_t = 1e5;
    // estimate
    std::string input, estimator;
    int n = 0, m = 2;
    // tables
    std::string table_name, mode;
    std::vector<double> alphas;
    int replications = -1;
    double table_step = -1.0;
    // moers-quantile
    double prob = 0.95;
    int q_replications = 20000, grid_points = 10000;
    // common
    std::uint64_t seed = 0;
    bool seed_given = false;
    int workers = fou::default_workers();
    std::string output;
};

int run(int argc, char** argv) {
    CLI::App app{"fractional Ornstein-Uhlenbeck lab: exact-law simulation, drift-sign "
                 "tests, drift estimators, and Monte Carlo table reproduction"};
    app.require_subcommand(1);
    CliArgs a;

    auto add_seed = [&](CLI::App* cmd) {
        cmd->add_option("--seed", a.seed,
                        "RNG seed (default: FOU_LAB_SEED env var, else built-in constant)")
            ->each([&](const std::string&) { a.seed_given = true; });
    };
    auto add_output = [&](CLI::App* cmd, const char* what) {
        cmd->add_option("--output", a.output, what);
    };

    CLI::App* sim = app.add_subcommand("simulate", "simulate an fOU or fBm trajectory");
    sim->add_option("--theta", a.theta, "drift parameter (1/time units; ignored for fbm)");
    sim->add_option("--x0", a.x0, "initial value (process units; ignored for fbm)");
    sim->add_option("--hurst", a.hurst, "Hurst index, in (0,1)")->required();
    sim->add_option("--step", a.step, "grid step h > 0 (time units)")->required();
    sim->add_option("--points", a.points, "number of steps (path has points+1 values)")
        ->required();
    sim->add_option("--process", a.process, "what to simulate: fou | fbm")
        ->check(CLI::IsMember({"fou", "fbm"}));
    add_seed(sim);
    add_output(sim, "write a binary path dump here instead of JSON to stdout");

    CLI::App* ts = app.add_subcommand(
        "test-sign", "Algorithm 1: test H0 theta <= 0 vs H1 theta > 0 from X_t");
    ts->add_option("--xt", a.xt, "observed value X_t (process units)")->required();
    ts->add_option("--t", a.t, "observation time, must exceed the solved guard t0 > 1")
        ->required();
    ts->add_option("--x0", a.x0, "initial value x0");
    ts->add_option("--hurst", a.hurst, "Hurst index, in (0,1)")->required();
    ts->add_option("--alpha", a.alpha, "significance level, in (0,1)");
    ts->add_option("--max-t", a.max_t, "guard search bound (default 1e5)");
    add_output(ts, "write the JSON decision here instead of stdout");

    CLI::App* tt = app.add_subcommand(
        "test-theta0", "Algorithm 2: test H0 theta >= theta0 vs H1 theta <= 0 from X_t");
    tt->add_option("--xt", a.xt, "observed value X_t (process units)")->required();
    tt->add_option("--t", a.t, "observation time, must exceed the solved guard")->required();
    tt->add_option("--x0", a.x0, "initial value x0");
    tt->add_option("--hurst", a.hurst, "Hurst index, in (0,1)")->required();
    tt->add_option("--alpha", a.alpha, "significance level, in (0,1)");
    tt->add_option("--theta0", a.theta0, "tested lower drift bound, in [0,1)")->required();
    tt->add_option("--max-t", a.max_t, "guard search bound (default 1e5; theta0=0 may need more)");
    add_output(tt, "write the JSON decision here instead of stdout");

    CLI::App* est = app.add_subcommand("estimate", "drift estimators on a dumped path");
    est->add_option("--input", a.input, "binary path dump (from `simulate --output`)")
        ->required();
    est->add_option("--estimator", a.estimator,
                    "theta1 (ergodic) | theta2 (non-ergodic) | theta3 | theta4 (discrete) | "
                    "moers")
        ->required()
        ->check(CLI::IsMember({"theta1", "theta2", "theta3", "theta4", "moers"}));
    est->add_option("--hurst", a.hurst, "Hurst index, in (0,1)")->required();
    est->add_option("--n", a.n, "observation density for theta3/theta4 (points at k/n)");
    est->add_option("--m", a.m, "horizon exponent m > 1 for theta3/theta4");
    add_output(est, "write the JSON report here instead of stdout");

    CLI::App* tab = app.add_subcommand("tables", "reproduce a built-in table as CSV");
    tab->add_option("--name", a.table_name, "table1 .. table8")->required();
    tab->add_option("--alpha", a.alphas, "significance level rows (table1; repeatable)");
    tab->add_option("--replications", a.replications, "Monte Carlo replications per cell");
    tab->add_option("--step", a.table_step, "simulation step h");
    tab->add_option("--mode", a.mode, "marginal sampling: exact-gaussian | euler-path")
        ->check(CLI::IsMember({"exact-gaussian", "euler-path"}));
    tab->add_option("--workers", a.workers, "worker threads (default: hardware parallelism)");
    add_seed(tab);
    add_output(tab, "write CSV here instead of stdout");

    CLI::App* mq = app.add_subcommand("moers-quantile",
                                      "Monte Carlo quantile of the Moers limit distribution");
    mq->add_option("--hurst", a.hurst, "Hurst index, in (0,1)")->required();
    mq->add_option("--prob", a.prob, "quantile level, in [0,1]");
    mq->add_option("--replications", a.q_replications, "Monte Carlo replications (>= 1000)");
    mq->add_option("--grid-points", a.grid_points, "fBm grid points on [0,1]");
    mq->add_option("--workers", a.workers, "worker threads");
    add_seed(mq);
    add_output(mq, "write the JSON result here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2; // argument errors are exit 2, whatever CLI11 thinks
    }
    const std::uint64_t seed = a.seed_given ? a.seed : default_seed();

    if (sim->parsed()) {
        const fou::HurstParam H(a.hurst);
        fou::RandomStream rng(seed);
        fou::SamplePath path = [&] {
            if (a.process == "fbm") return fou::sample_fbm(H, a.step, a.points, rng);
            return fou::simulate_fou(fou::ModelParams(a.theta, a.x0, H), a.step, a.points, rng);
        }();
        if (!a.output.empty()) {
            fou::write_path_dump(path, a.output);
        } else {
            nlohmann::json j{{"schema", kSchema},
                             {"kind", "path"},
                             {"process", a.process},
                             {"step", path.step},
                             {"seed", seed},
                             {"values", path.values}};
            std::cout << j.dump() << '\n';
        }
        return 0;
    }

    if (ts->parsed() || tt->parsed()) {
        const fou::HurstParam H(a.hurst);
        const fou::Probability alpha(a.alpha);
        const fou::SearchConfig search{a.max_t, 1.02};
        const fou::TestDecision d =
            ts->parsed()
                ? fou::test_positive_drift(a.xt, a.t, a.x0, H, alpha, search)
                : fou::test_theta0_drift(a.xt, a.t, a.x0, H, alpha, a.theta0, search);
        nlohmann::json j = fou::to_json(d);
        j["schema"] = kSchema;
        write_output(j.dump(), a.output);
        return 0;
    }

    if (est->parsed()) {
        const fou::HurstParam H(a.hurst);
        const fou::SamplePath path = fou::read_path_dump(a.input);
        nlohmann::json j;
        if (a.estimator == "moers") {
            const double stat = fou::moers_statistic(path, H);
            const double T = path.step * static_cast<double>(path.values.size() - 1);
            j = {{"estimator_id", "Moers"},
                 {"value", stat},
                 {"t_times_value", T * stat},
                 {"horizon_T", T},
                 {"h_step", path.step}};
        } else if (a.estimator == "theta1") {
            j = fou::to_json(fou::theta_hat_1(path, H));
        } else if (a.estimator == "theta2") {
            j = fou::to_json(fou::theta_hat_2(path, H));
        } else {
            if (a.n < 1)
                throw CLI::ValidationError("--n", "theta3/theta4 require the density --n >= 1");
            j = a.estimator == "theta3" ? fou::to_json(fou::theta_hat_3(path, H, a.n, a.m))
                                        : fou::to_json(fou::theta_hat_4(path, H, a.n, a.m));
        }
        j["schema"] = kSchema;
        write_output(j.dump(), a.output);
        return 0;
    }

    if (tab->parsed()) {
        fou::TablePresetOverrides over;
        over.alphas = a.alphas;
        if (a.replications >= 0) over.replications = a.replications;
        if (a.table_step > 0) over.step = a.table_step;
        over.seed = seed;
        if (!a.mode.empty())
            over.marginal_mode = a.mode == "exact-gaussian" ? fou::MarginalMode::ExactGaussian
                                                            : fou::MarginalMode::EulerPath;
        const fou::TableReport report = fou::reproduce_table(a.table_name, over, a.workers);
        if (a.output.empty()) {
            fou::emit_csv(report, std::cout);
        } else {
            std::ofstream os(a.output);
            if (!os) throw std::runtime_error("cannot open output file " + a.output);
            fou::emit_csv(report, os);
        }
        return 0;
    }

    if (mq->parsed()) {
        const fou::HurstParam H(a.hurst);
        fou::RandomStream rng(seed);
        const double q = fou::moers_limit_quantile(H, fou::Probability(a.prob),
                                                   a.q_replications, a.grid_points, rng,
                                                   a.workers);
        nlohmann::json j{{"schema", kSchema},      {"quantile", q},
                         {"hurst", a.hurst},       {"prob", a.prob},
                         {"replications", a.q_replications}, {"grid_points", a.grid_points},
                         {"seed", seed}};
        write_output(j.dump(), a.output);
        return 0;
    }

    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const fou::guard_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const fou::no_bracket_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
