#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fou/experiments.hpp"

namespace fou {

/// Default seed for the built-in table presets; override with --seed or
/// FOU_LAB_SEED for fresh replications.
inline constexpr std::uint64_t kDefaultTableSeed = 0x464f55u; // "FOU"

/// Knobs a caller may override on a table preset; anything unset keeps
/// the built-in protocol value.
struct TablePresetOverrides {
    std::vector<double> alphas;              // table1 significance levels
    std::optional<int> replications;
    std::optional<double> step;
    std::optional<std::uint64_t> seed;
    std::optional<MarginalMode> marginal_mode;
};

inline bool is_table_name(const std::string& name) {
    return name.size() == 6 && name.rfind("table", 0) == 0 && name[5] >= '1' && name[5] <= '8';
}

/// The experiment specs behind a named table. Most tables are a single
/// spec; tables whose rows vary a scalar the spec holds only once
/// (significance level, theta0, per-block time grids) expand to one spec
/// per row block, merged after running.
inline std::vector<ExperimentSpec> table_preset_specs(const std::string& name,
                                                      const TablePresetOverrides& over = {}) {
    const std::vector<double> all_h = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    const std::uint64_t seed = over.seed.value_or(kDefaultTableSeed);

    std::vector<ExperimentSpec> specs;
    auto base = [&](ExperimentKind kind) {
        ExperimentSpec s;
        s.kind = kind;
        s.x0 = 1.0;
        s.alpha = 0.05;
        s.seed = seed;
        return s;
    };

    if (name == "table1") {
        std::vector<double> alphas = over.alphas.empty()
                                         ? std::vector<double>{0.01, 0.05}
                                         : over.alphas;
        for (double a : alphas) {
            ExperimentSpec s = base(ExperimentKind::ThresholdT0);
            s.hurst_grid = all_h;
            s.alpha = a;
            s.replications = 1;
            specs.push_back(s);
        }
    } else if (name == "table2") {
        for (double theta0 : {0.1, 0.05, 0.01, 0.001, 0.0}) {
            ExperimentSpec s = base(ExperimentKind::ThresholdT0Tilde);
            s.hurst_grid = all_h;
            s.theta0 = theta0;
            s.replications = 1;
            specs.push_back(s);
        }
    } else if (name == "table3" || name == "table4") {
        ExperimentSpec s = base(name == "table3" ? ExperimentKind::RejectionAlg1
                                                 : ExperimentKind::RejectionMoers);
        s.hurst_grid = (name == "table3") ? std::vector<double>{0.3, 0.7}
                                          : std::vector<double>{0.7};
        s.theta_grid = {-0.1, -0.05, 0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3};
        s.time_grid = {20, 40, 60, 80, 100};
        s.replications = 1000;
        s.step = 1e-4;
        s.marginal_mode = MarginalMode::EulerPath;
        specs.push_back(s);
    } else if (name == "table5") {
        const std::vector<std::pair<double, std::vector<double>>> blocks = {
            {0.3, {32, 33, 34, 35, 36}},
            {0.7, {25, 30, 35, 40, 45}},
        };
        for (const auto& [h, times] : blocks) {
            ExperimentSpec s = base(ExperimentKind::RejectionAlg2);
            s.hurst_grid = {h};
            s.time_grid = times;
            s.theta_grid = {-0.4, -0.3, -0.2, -0.1, 0.0, 0.1, 0.2, 0.3};
            s.theta0 = 0.1;
            s.replications = 1000;
            s.step = 1e-4;
            s.marginal_mode = MarginalMode::EulerPath;
            specs.push_back(s);
        }
    } else if (name == "table6") {
        ExperimentSpec s = base(ExperimentKind::RejectionAlg2);
        s.hurst_grid = {0.7};
        s.time_grid = {40, 50, 60, 70, 80};
        s.theta_grid = {-0.35, -0.3, -0.25, -0.2, -0.15, -0.1, -0.05, 0.0, 0.05, 0.1, 0.15};
        s.theta0 = 0.05;
        s.replications = 1000;
        s.step = 1e-4;
        s.marginal_mode = MarginalMode::EulerPath;
        specs.push_back(s);
    } else if (name == "table7" || name == "table8") {
        ExperimentSpec s = base(ExperimentKind::EstimatorQuality);
        s.hurst_grid = {0.1, 0.3, 0.5, 0.7, 0.9};
        s.theta_grid = {name == "table7" ? -1.0 : 1.0};
        s.time_grid = {10, 50, 100, 200, 500, 1000};
        s.m_exponent = 2;
        s.replications = 100;
        s.step = 1.0 / 2000.0;
        s.marginal_mode = MarginalMode::EulerPath;
        specs.push_back(s);
    } else {
        throw std::invalid_argument("unknown table preset \"" + name +
                                    "\" (expected table1..table8)");
    }

    for (ExperimentSpec& s : specs) {
        if (over.replications) s.replications = *over.replications;
        if (over.step) s.step = *over.step;
        if (over.marginal_mode && s.kind != ExperimentKind::RejectionMoers &&
            s.kind != ExperimentKind::EstimatorQuality)
            s.marginal_mode = *over.marginal_mode;
        s.validate();
    }
    return specs;
}

/// Run a named table end to end and return the merged report.
inline TableReport reproduce_table(const std::string& name,
                                   const TablePresetOverrides& over = {}, int workers = 1) {
    std::vector<TableReport> parts;
    for (const ExperimentSpec& spec : table_preset_specs(name, over))
        parts.push_back(run_experiment(spec, workers));
    return merge_report_rows(parts);
}

} // namespace fou
