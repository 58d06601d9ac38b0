#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fou/estimators.hpp"
#include "fou/fbm.hpp"
#include "fou/fou_process.hpp"
#include "fou/hurst.hpp"
#include "fou/parallel.hpp"
#include "fou/rng.hpp"
#include "fou/sign_test.hpp"

namespace fou {

enum class ExperimentKind {
    ThresholdT0,
    ThresholdT0Tilde,
    RejectionAlg1,
    RejectionAlg2,
    RejectionMoers,
    EstimatorQuality,
};

enum class MarginalMode { ExactGaussian, EulerPath };

inline const char* to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::ThresholdT0: return "ThresholdT0";
        case ExperimentKind::ThresholdT0Tilde: return "ThresholdT0Tilde";
        case ExperimentKind::RejectionAlg1: return "RejectionAlg1";
        case ExperimentKind::RejectionAlg2: return "RejectionAlg2";
        case ExperimentKind::RejectionMoers: return "RejectionMoers";
        case ExperimentKind::EstimatorQuality: return "EstimatorQuality";
    }
    return "?";
}

inline const char* to_string(MarginalMode m) {
    return m == MarginalMode::ExactGaussian ? "ExactGaussian" : "EulerPath";
}

/// Declarative Monte Carlo experiment over a (H, theta, t) grid.
///
/// Grid roles per kind:
///  - ThresholdT0 / ThresholdT0Tilde: hurst_grid only (one row).
///  - RejectionAlg1/Alg2/Moers: rows = hurst x time, columns = theta
///    (true drift); theta0 is the tested bound for Alg2.
///  - EstimatorQuality: rows = hurst, columns = time_grid interpreted as
///    the observation density n (horizon n^(m-1), observations at k/n);
///    theta_grid holds the single true drift, whose sign picks the
///    estimator.
struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::RejectionAlg1;
    std::vector<double> hurst_grid;
    std::vector<double> theta_grid;
    std::vector<double> time_grid;
    double alpha = 0.05;
    double x0 = 1.0;
    int replications = 1000;
    double step = 1e-4;
    std::uint64_t seed = 0;
    MarginalMode marginal_mode = MarginalMode::ExactGaussian;
    std::optional<int> m_exponent;
    std::optional<double> theta0;

    void validate() const {
        if (hurst_grid.empty()) throw std::invalid_argument("spec: hurst_grid must be non-empty");
        for (double h : hurst_grid) (void)HurstParam(h);
        if (replications < 1) throw std::invalid_argument("spec: replications must be >= 1");
        if (!(step > 0.0)) throw std::invalid_argument("spec: step must be > 0");
        if (!(alpha > 0.0 && alpha < 1.0))
            throw std::invalid_argument("spec: alpha must lie in (0,1)");
        if (!std::isfinite(x0)) throw std::invalid_argument("spec: x0 must be finite");

        const bool wants_theta0 =
            kind == ExperimentKind::ThresholdT0Tilde || kind == ExperimentKind::RejectionAlg2;
        if (wants_theta0 != theta0.has_value())
            throw std::invalid_argument(
                "spec: theta0 must be present exactly for ThresholdT0Tilde and RejectionAlg2");
        if (theta0 && !(*theta0 >= 0.0 && *theta0 < 1.0))
            throw std::invalid_argument("spec: theta0 must lie in [0,1)");

        switch (kind) {
            case ExperimentKind::ThresholdT0:
            case ExperimentKind::ThresholdT0Tilde:
                break;
            case ExperimentKind::RejectionAlg1:
            case ExperimentKind::RejectionAlg2:
            case ExperimentKind::RejectionMoers:
                if (theta_grid.empty() || time_grid.empty())
                    throw std::invalid_argument("spec: theta_grid and time_grid must be non-empty");
                for (double t : time_grid)
                    if (!(t > 1.0))
                        throw std::invalid_argument("spec: rejection kinds need times > 1");
                if (kind == ExperimentKind::RejectionMoers &&
                    marginal_mode != MarginalMode::EulerPath)
                    throw std::invalid_argument(
                        "spec: RejectionMoers integrates the whole path; requires EulerPath mode");
                break;
            case ExperimentKind::EstimatorQuality: {
                if (theta_grid.size() != 1 || theta_grid[0] == 0.0)
                    throw std::invalid_argument(
                        "spec: EstimatorQuality needs exactly one nonzero theta");
                if (!m_exponent || *m_exponent <= 1)
                    throw std::invalid_argument("spec: EstimatorQuality needs m_exponent > 1");
                if (marginal_mode != MarginalMode::EulerPath)
                    throw std::invalid_argument("spec: EstimatorQuality requires EulerPath mode");
                if (time_grid.empty())
                    throw std::invalid_argument("spec: time_grid (observation densities) empty");
                for (double n : time_grid)
                    if (!(n >= 1.0) || n != std::floor(n))
                        throw std::invalid_argument(
                            "spec: EstimatorQuality time_grid entries must be integers >= 1");
                break;
            }
        }
    }
};

namespace detail {

inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

inline std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

} // namespace detail

inline nlohmann::json to_json(const ExperimentSpec& spec) {
    nlohmann::json j;
    j["kind"] = to_string(spec.kind);
    j["hurst_grid"] = spec.hurst_grid;
    j["theta_grid"] = spec.theta_grid;
    j["time_grid"] = spec.time_grid;
    j["alpha"] = spec.alpha;
    j["x0"] = spec.x0;
    j["replications"] = spec.replications;
    j["step"] = spec.step;
    j["seed"] = spec.seed;
    j["marginal_mode"] = to_string(spec.marginal_mode);
    if (spec.m_exponent) j["m_exponent"] = *spec.m_exponent;
    if (spec.theta0) j["theta0"] = *spec.theta0;
    return j;
}

inline ExperimentSpec experiment_spec_from_json(const nlohmann::json& j) {
    static const std::vector<std::string> known = {
        "kind", "hurst_grid", "theta_grid", "time_grid",   "alpha",      "x0",
        "seed", "step",       "theta0",     "m_exponent",  "replications",
        "marginal_mode"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::find(known.begin(), known.end(), it.key()) == known.end())
            throw std::invalid_argument("experiment spec: unknown key \"" + it.key() + "\"");
    }
    ExperimentSpec spec;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "ThresholdT0") spec.kind = ExperimentKind::ThresholdT0;
    else if (kind == "ThresholdT0Tilde") spec.kind = ExperimentKind::ThresholdT0Tilde;
    else if (kind == "RejectionAlg1") spec.kind = ExperimentKind::RejectionAlg1;
    else if (kind == "RejectionAlg2") spec.kind = ExperimentKind::RejectionAlg2;
    else if (kind == "RejectionMoers") spec.kind = ExperimentKind::RejectionMoers;
    else if (kind == "EstimatorQuality") spec.kind = ExperimentKind::EstimatorQuality;
    else throw std::invalid_argument("experiment spec: unknown kind \"" + kind + "\"");

    if (j.contains("hurst_grid")) spec.hurst_grid = j["hurst_grid"].get<std::vector<double>>();
    if (j.contains("theta_grid")) spec.theta_grid = j["theta_grid"].get<std::vector<double>>();
    if (j.contains("time_grid")) spec.time_grid = j["time_grid"].get<std::vector<double>>();
    if (j.contains("alpha")) spec.alpha = j["alpha"].get<double>();
    if (j.contains("x0")) spec.x0 = j["x0"].get<double>();
    if (j.contains("replications")) spec.replications = j["replications"].get<int>();
    if (j.contains("step")) spec.step = j["step"].get<double>();
    if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("marginal_mode")) {
        const std::string mode = j["marginal_mode"].get<std::string>();
        if (mode == "ExactGaussian") spec.marginal_mode = MarginalMode::ExactGaussian;
        else if (mode == "EulerPath") spec.marginal_mode = MarginalMode::EulerPath;
        else throw std::invalid_argument("experiment spec: unknown marginal_mode \"" + mode + "\"");
    }
    if (j.contains("m_exponent")) spec.m_exponent = j["m_exponent"].get<int>();
    if (j.contains("theta0")) spec.theta0 = j["theta0"].get<double>();
    spec.validate();
    return spec;
}

/// Digest binding a report to the exact generating spec and seed.
inline std::string spec_digest(const ExperimentSpec& spec) {
    return detail::hex64(detail::fnv1a(to_json(spec).dump()));
}

/// Result matrix with provenance. Cells are NaN where a guard made the
/// test inapplicable; such cells are emitted as "NA", never as numbers.
struct TableReport {
    std::string spec_digest;
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    std::vector<std::vector<double>> cells;
    std::optional<std::vector<std::vector<double>>> standard_errors;
    int replications = 0;
    std::uint64_t seed = 0;
    double elapsed_seconds = 0.0;
};

namespace detail {

// Tag separating the Moers-quantile stream family from per-cell streams.
inline constexpr std::uint64_t kQuantileStreamTag = 0x6d6f6572732d7121ull;

struct RejectionCellTask {
    double theta_true;
    double t;
    HurstParam H;
    std::size_t cell_index;
};

} // namespace detail

/// Run the experiment with the given worker count. Deterministic for a
/// fixed (spec, seed) regardless of workers: every replication draws from
/// stream(seed, cell_index, replication_index) and aggregation happens in
/// index order after the workers finish.
inline TableReport run_experiment(const ExperimentSpec& spec, int workers = 1) {
    spec.validate();
    const auto t_start = std::chrono::steady_clock::now();
    RandomStream root(spec.seed);

    TableReport report;
    report.spec_digest = spec_digest(spec);
    report.seed = spec.seed;

    const auto finish = [&](TableReport& r) -> TableReport& {
        r.elapsed_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
        return r;
    };

    const double nan = std::numeric_limits<double>::quiet_NaN();

    if (spec.kind == ExperimentKind::ThresholdT0 ||
        spec.kind == ExperimentKind::ThresholdT0Tilde) {
        const bool tilde = spec.kind == ExperimentKind::ThresholdT0Tilde;
        report.row_labels = {tilde ? "theta0=" + detail::format_number(*spec.theta0)
                                   : "alpha=" + detail::format_number(spec.alpha)};
        report.cells.emplace_back(spec.hurst_grid.size(), nan);
        for (double h : spec.hurst_grid)
            report.col_labels.push_back("H=" + detail::format_number(h));
        report.replications = 0;
        std::vector<double>& row = report.cells[0];
        parallel_chunks(spec.hurst_grid.size(), workers, [&](std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i) {
                const HurstParam H(spec.hurst_grid[i]);
                row[i] = tilde ? find_t0_tilde(Probability(spec.alpha), *spec.theta0, spec.x0, H,
                                               SearchConfig{1e18, 1.02})
                               : find_t0(Probability(spec.alpha), spec.x0, H);
            }
        });
        return finish(report);
    }

    if (spec.kind == ExperimentKind::EstimatorQuality) {
        const double theta = spec.theta_grid[0];
        const int m = *spec.m_exponent;
        for (double h : spec.hurst_grid)
            report.row_labels.push_back("H=" + detail::format_number(h));
        for (double n : spec.time_grid)
            report.col_labels.push_back("n=" + detail::format_number(n));
        report.replications = spec.replications;
        report.cells.assign(report.row_labels.size(),
                            std::vector<double>(report.col_labels.size(), nan));
        report.standard_errors = report.cells;

        const auto reps = static_cast<std::size_t>(spec.replications);
        std::vector<double> values(reps);
        for (std::size_t r = 0; r < spec.hurst_grid.size(); ++r) {
            const HurstParam H(spec.hurst_grid[r]);
            for (std::size_t c = 0; c < spec.time_grid.size(); ++c) {
                const int n = static_cast<int>(spec.time_grid[c]);
                const std::size_t cell = r * spec.time_grid.size() + c;
                parallel_chunks(reps, workers, [&](std::size_t b, std::size_t e) {
                    for (std::size_t rep = b; rep < e; ++rep) {
                        RandomStream stream = root.child(cell, rep);
                        values[rep] =
                            discrete_estimator_trial(theta, spec.x0, H, n, m, spec.step, stream);
                    }
                });
                double mean = 0.0;
                for (double v : values) mean += v;
                mean /= static_cast<double>(reps);
                double ss = 0.0;
                for (double v : values) ss += (v - mean) * (v - mean);
                const double sd =
                    reps > 1 ? std::sqrt(ss / static_cast<double>(reps - 1)) : 0.0;
                report.cells[r][c] = mean;
                (*report.standard_errors)[r][c] = sd;
            }
        }
        return finish(report);
    }

    // Rejection kinds: rows = hurst x time, columns = theta.
    report.replications = spec.replications;
    for (double theta : spec.theta_grid)
        report.col_labels.push_back("theta=" + detail::format_number(theta));
    for (double h : spec.hurst_grid)
        for (double t : spec.time_grid)
            report.row_labels.push_back("H=" + detail::format_number(h) +
                                        " t=" + detail::format_number(t));
    report.cells.assign(report.row_labels.size(),
                        std::vector<double>(report.col_labels.size(), nan));
    report.standard_errors = report.cells;

    const auto reps = static_cast<std::size_t>(spec.replications);
    const Probability alpha(spec.alpha);
    std::vector<double> outcomes(reps);

    for (std::size_t hi = 0; hi < spec.hurst_grid.size(); ++hi) {
        const HurstParam H(spec.hurst_grid[hi]);

        double guard = 0.0;
        double moers_psi = 0.0;
        if (spec.kind == ExperimentKind::RejectionAlg1) {
            guard = find_t0(alpha, spec.x0, H);
        } else if (spec.kind == ExperimentKind::RejectionAlg2) {
            guard = find_t0_tilde(alpha, *spec.theta0, spec.x0, H, SearchConfig{1e18, 1.02});
        } else {
            RandomStream qstream = root.child(detail::kQuantileStreamTag, hi);
            moers_psi = moers_limit_quantile(H, Probability(1.0 - spec.alpha), 20000, 10000,
                                             qstream, workers);
        }

        for (std::size_t ti = 0; ti < spec.time_grid.size(); ++ti) {
            const double t = spec.time_grid[ti];
            const std::size_t row = hi * spec.time_grid.size() + ti;

            if (spec.kind != ExperimentKind::RejectionMoers && !(t > guard)) continue; // NA row

            std::optional<PositiveDriftTest> alg1;
            std::optional<Theta0DriftTest> alg2;
            if (spec.kind == ExperimentKind::RejectionAlg1)
                alg1.emplace(spec.x0, H, alpha, t, guard);
            else if (spec.kind == ExperimentKind::RejectionAlg2)
                alg2.emplace(spec.x0, H, alpha, *spec.theta0, t, guard);

            std::size_t n_steps = 0;
            std::shared_ptr<const FgnSampler> sampler;
            if (spec.marginal_mode == MarginalMode::EulerPath) {
                const double ratio = t / spec.step;
                n_steps = static_cast<std::size_t>(std::llround(ratio));
                if (n_steps < 1 || std::fabs(ratio - static_cast<double>(n_steps)) > 1e-6)
                    throw std::invalid_argument("run_experiment: step does not divide t = " +
                                                detail::format_number(t));
                sampler = shared_fgn_sampler(H, n_steps);
            }

            for (std::size_t ci = 0; ci < spec.theta_grid.size(); ++ci) {
                const double theta = spec.theta_grid[ci];
                const std::size_t cell = row * spec.theta_grid.size() + ci;
                const ModelParams params(theta, spec.x0, H);

                std::optional<MarginalLaw> law;
                if (spec.marginal_mode == MarginalMode::ExactGaussian)
                    law = marginal_law(theta, spec.x0, t, H);

                try {
                    parallel_chunks(reps, workers, [&](std::size_t b, std::size_t e) {
                        FgnSampler::Scratch scratch;
                        std::vector<double> fgn;
                        const double noise_scale = std::pow(spec.step, H.value());
                        const double growth = 1.0 + theta * spec.step;
                        for (std::size_t rep = b; rep < e; ++rep) {
                            RandomStream stream = root.child(cell, rep);
                            bool reject;
                            if (spec.kind == ExperimentKind::RejectionMoers) {
                                fgn.resize(n_steps);
                                sampler->sample(stream, fgn.data(), n_steps, scratch);
                                std::vector<double> x(n_steps + 1);
                                x[0] = spec.x0;
                                for (std::size_t k = 0; k < n_steps; ++k) {
                                    x[k + 1] = x[k] * growth + noise_scale * fgn[k];
                                    if (!(std::fabs(x[k + 1]) <= kPathOverflowGuard))
                                        throw diverged_path_error(k + 1);
                                }
                                SamplePath path(spec.step, std::move(x));
                                reject = t * moers_statistic(path, H) > moers_psi;
                            } else {
                                double x_t;
                                if (law) {
                                    x_t = law->mean + std::sqrt(law->variance) * stream.gauss();
                                } else {
                                    fgn.resize(n_steps);
                                    sampler->sample(stream, fgn.data(), n_steps, scratch);
                                    double x = spec.x0;
                                    for (std::size_t k = 0; k < n_steps; ++k) {
                                        x = x * growth + noise_scale * fgn[k];
                                        if (!(std::fabs(x) <= kPathOverflowGuard))
                                            throw diverged_path_error(k + 1);
                                    }
                                    x_t = x;
                                }
                                const TestDecision d = alg1 ? alg1->apply(x_t) : alg2->apply(x_t);
                                reject = d.verdict == Verdict::RejectNull;
                            }
                            outcomes[rep] = reject ? 1.0 : 0.0;
                        }
                    });
                } catch (const std::exception& e) {
                    throw std::runtime_error(std::string("run_experiment: cell (") +
                                             report.row_labels[row] + ", " +
                                             report.col_labels[ci] + ") failed: " + e.what());
                }

                double rejections = 0.0;
                for (double o : outcomes) rejections += o;
                const double p = rejections / static_cast<double>(reps);
                report.cells[row][ci] = p;
                (*report.standard_errors)[row][ci] =
                    std::sqrt(p * (1.0 - p) / static_cast<double>(reps));
            }
        }
    }
    return finish(report);
}

/// CSV: header row of column labels, one row per row label, cells with six
/// significant digits ("NA" where not applicable), then a comment line
/// with the digest and seed. A second block carries standard errors when
/// the report has them.
inline void emit_csv(const TableReport& report, std::ostream& os) {
    const auto emit_matrix = [&](const std::vector<std::vector<double>>& m) {
        os << "row";
        for (const auto& c : report.col_labels) os << ',' << c;
        os << '\n';
        for (std::size_t r = 0; r < report.row_labels.size(); ++r) {
            os << report.row_labels[r];
            for (double v : m[r]) {
                if (std::isnan(v)) {
                    os << ",NA";
                } else {
                    char buf[40];
                    std::snprintf(buf, sizeof(buf), "%.6g", v);
                    os << ',' << buf;
                }
            }
            os << '\n';
        }
    };
    emit_matrix(report.cells);
    if (report.standard_errors) {
        os << "# standard_errors\n";
        emit_matrix(*report.standard_errors);
    }
    os << "# spec_digest=" << report.spec_digest << " seed=" << report.seed << '\n';
    if (!os) throw std::runtime_error("emit_csv: write failed");
}

enum class ToleranceKind { Absolute, BinomialSE };

struct ToleranceRule {
    ToleranceKind kind;
    double value; // epsilon for Absolute, multiplier k for BinomialSE

    static ToleranceRule absolute(double eps) { return {ToleranceKind::Absolute, eps}; }
    static ToleranceRule binomial_se(double k) { return {ToleranceKind::BinomialSE, k}; }
};

struct CellViolation {
    std::string row_label;
    std::string col_label;
    double got;
    double reference;
    double allowed;
};

/// Every cell of `report` deviating from `reference` beyond the rule.
/// BinomialSE(k) allows k*sqrt(p(1-p)/replications) with p the reference
/// value clamped away from {0,1} by half a count.
inline std::vector<CellViolation> verify_against_reference(const TableReport& report,
                                                           const TableReport& reference,
                                                           ToleranceRule rule) {
    if (report.row_labels.size() != reference.row_labels.size() ||
        report.col_labels.size() != reference.col_labels.size())
        throw std::invalid_argument("verify_against_reference: shape mismatch");
    std::vector<CellViolation> violations;
    for (std::size_t r = 0; r < report.row_labels.size(); ++r) {
        for (std::size_t c = 0; c < report.col_labels.size(); ++c) {
            const double got = report.cells[r][c];
            const double want = reference.cells[r][c];
            if (std::isnan(got) && std::isnan(want)) continue;
            double allowed;
            if (rule.kind == ToleranceKind::Absolute) {
                allowed = rule.value;
            } else {
                const auto reps = static_cast<double>(report.replications);
                if (!(reps >= 1.0))
                    throw std::invalid_argument(
                        "verify_against_reference: BinomialSE needs replications");
                const double p = std::min(std::max(want, 0.5 / reps), 1.0 - 0.5 / reps);
                allowed = rule.value * std::sqrt(p * (1.0 - p) / reps);
            }
            if (std::isnan(got) || std::isnan(want) || std::fabs(got - want) > allowed)
                violations.push_back({report.row_labels[r], report.col_labels[c], got, want,
                                      allowed});
        }
    }
    return violations;
}

/// Stack reports that share column labels (used by the multi-row table
/// presets). The digest hashes the children's digests in order.
inline TableReport merge_report_rows(const std::vector<TableReport>& parts) {
    if (parts.empty()) throw std::invalid_argument("merge_report_rows: nothing to merge");
    TableReport merged = parts.front();
    std::string digest_input = parts.front().spec_digest;
    for (std::size_t i = 1; i < parts.size(); ++i) {
        const TableReport& p = parts[i];
        if (p.col_labels != merged.col_labels)
            throw std::invalid_argument("merge_report_rows: column labels differ");
        if (static_cast<bool>(p.standard_errors) != static_cast<bool>(merged.standard_errors))
            throw std::invalid_argument("merge_report_rows: standard-error presence differs");
        merged.row_labels.insert(merged.row_labels.end(), p.row_labels.begin(),
                                 p.row_labels.end());
        merged.cells.insert(merged.cells.end(), p.cells.begin(), p.cells.end());
        if (merged.standard_errors)
            merged.standard_errors->insert(merged.standard_errors->end(),
                                           p.standard_errors->begin(),
                                           p.standard_errors->end());
        merged.elapsed_seconds += p.elapsed_seconds;
        merged.replications = std::max(merged.replications, p.replications);
        digest_input += p.spec_digest;
    }
    merged.spec_digest = detail::hex64(detail::fnv1a(digest_input));
    return merged;
}

} // namespace fou
