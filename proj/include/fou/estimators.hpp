#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fou/fbm.hpp"
#include "fou/hurst.hpp"
#include "fou/parallel.hpp"
#include "fou/probability.hpp"
#include "fou/rng.hpp"
#include "fou/sample_path.hpp"

namespace fou {

enum class EstimatorId { Erg1, NonErg2, DiscErg3, DiscNonErg4, Moers };

inline const char* to_string(EstimatorId id) {
    switch (id) {
        case EstimatorId::Erg1: return "Erg1";
        case EstimatorId::NonErg2: return "NonErg2";
        case EstimatorId::DiscErg3: return "DiscErg3";
        case EstimatorId::DiscNonErg4: return "DiscNonErg4";
        case EstimatorId::Moers: return "Moers";
    }
    return "?";
}

struct EstimateReport {
    EstimatorId estimator_id;
    double value;
    double horizon_T;
    std::optional<int> m_exponent; // discrete estimators only
    double h_step;
};

struct degenerate_path_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {

// Left-endpoint Riemann sum of X^2 over the path grid, excluding the
// final point; mirrors the discrete estimators' sum convention.
inline double riemann_sum_sq(const SamplePath& path) {
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < path.values.size(); ++k)
        sum += path.values[k] * path.values[k];
    return sum * path.step;
}

inline double h_gamma_2h(HurstParam H) {
    return H.value() * std::tgamma(2.0 * H.value());
}

} // namespace detail

/// Ergodic-case estimator -(int_0^T X^2 dt / (H Gamma(2H) T))^(-1/(2H)).
/// Strongly consistent for theta < 0; always strictly negative.
inline EstimateReport theta_hat_1(const SamplePath& path, HurstParam H) {
    if (path.values.size() < 2) throw std::invalid_argument("theta_hat_1: need >= 2 points");
    const double T = path.step * static_cast<double>(path.values.size() - 1);
    const double integral = detail::riemann_sum_sq(path);
    if (!(integral > 0.0)) throw degenerate_path_error("theta_hat_1: int X^2 dt is zero");
    const double avg = integral / (detail::h_gamma_2h(H) * T);
    return {EstimatorId::Erg1, -std::pow(avg, -1.0 / (2.0 * H.value())), T, std::nullopt,
            path.step};
}

/// Non-ergodic-case estimator X_T^2 / (2 int_0^T X^2 dt); strictly positive.
inline EstimateReport theta_hat_2(const SamplePath& path, HurstParam H) {
    (void)H;
    if (path.values.size() < 2) throw std::invalid_argument("theta_hat_2: need >= 2 points");
    const double T = path.step * static_cast<double>(path.values.size() - 1);
    const double integral = detail::riemann_sum_sq(path);
    if (!(integral > 0.0)) throw degenerate_path_error("theta_hat_2: int X^2 dt is zero");
    const double xt = path.values.back();
    return {EstimatorId::NonErg2, xt * xt / (2.0 * integral), T, std::nullopt, path.step};
}

namespace detail {

inline void check_discrete_grid(const SamplePath& path, int n, int m) {
    if (n < 1 || m <= 1) throw std::invalid_argument("discrete estimator: need n >= 1, m > 1");
    double points = 1.0;
    for (int i = 0; i < m; ++i) points *= static_cast<double>(n);
    if (points > 1e9) throw std::invalid_argument("discrete estimator: n^m too large");
    const auto expected = static_cast<std::size_t>(points) + 1;
    if (path.values.size() != expected)
        throw std::invalid_argument("discrete estimator: path has " +
                                    std::to_string(path.values.size()) + " points, grid (n=" +
                                    std::to_string(n) + ", m=" + std::to_string(m) +
                                    ") requires " + std::to_string(expected));
    if (std::fabs(path.step * n - 1.0) > 1e-9)
        throw std::invalid_argument("discrete estimator: path step must equal 1/n");
}

} // namespace detail

/// Discrete ergodic-case estimator on observations X_{k/n}, 0 <= k <= n^m.
inline EstimateReport theta_hat_3(const SamplePath& path, HurstParam H, int n, int m) {
    detail::check_discrete_grid(path, n, m);
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < path.values.size(); ++k)
        sum += path.values[k] * path.values[k];
    if (!(sum > 0.0)) throw degenerate_path_error("theta_hat_3: sum X^2 is zero");
    const double n_m = static_cast<double>(path.values.size() - 1);
    const double avg = sum / (detail::h_gamma_2h(H) * n_m);
    return {EstimatorId::DiscErg3, -std::pow(avg, -1.0 / (2.0 * H.value())),
            n_m / static_cast<double>(n), m, path.step};
}

/// Discrete non-ergodic-case estimator n X_{n^(m-1)}^2 / (2 sum X_{k/n}^2).
inline EstimateReport theta_hat_4(const SamplePath& path, HurstParam H, int n, int m) {
    (void)H;
    detail::check_discrete_grid(path, n, m);
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < path.values.size(); ++k)
        sum += path.values[k] * path.values[k];
    if (!(sum > 0.0)) throw degenerate_path_error("theta_hat_4: sum X^2 is zero");
    const double xt = path.values.back();
    const double n_m = static_cast<double>(path.values.size() - 1);
    return {EstimatorId::DiscNonErg4, static_cast<double>(n) * xt * xt / (2.0 * sum),
            n_m / static_cast<double>(n), m, path.step};
}

/// Sign-test statistic of Moers: (X_T^2 - X_0^2)/(2 int X^2) minus the
/// ergodic functional; T * statistic is compared against the limit-law
/// quantile.
inline double moers_statistic(const SamplePath& path, HurstParam H) {
    if (path.values.size() < 2) throw std::invalid_argument("moers_statistic: need >= 2 points");
    const double T = path.step * static_cast<double>(path.values.size() - 1);
    const double integral = detail::riemann_sum_sq(path);
    if (!(integral > 0.0)) throw degenerate_path_error("moers_statistic: int X^2 dt is zero");
    const double xt = path.values.back();
    const double x0 = path.values.front();
    const double avg = integral / (detail::h_gamma_2h(H) * T);
    return (xt * xt - x0 * x0) / (2.0 * integral) - std::pow(avg, -1.0 / (2.0 * H.value()));
}

/// Empirical quantile (linear interpolation between order statistics;
/// prob = 0 gives the minimum, prob = 1 the maximum).
inline double empirical_quantile(std::vector<double> sample, Probability prob) {
    if (sample.empty()) throw std::invalid_argument("empirical_quantile: empty sample");
    std::sort(sample.begin(), sample.end());
    const double h = prob.value() * static_cast<double>(sample.size() - 1);
    const auto lo = static_cast<std::size_t>(h);
    if (lo + 1 >= sample.size()) return sample.back();
    const double frac = h - static_cast<double>(lo);
    return sample[lo] + frac * (sample[lo + 1] - sample[lo]);
}

/// Draws from the limit distribution of T * (Moers statistic): the
/// statistic of an fBm path discretized on [0,1]. Replications run in
/// parallel on per-replication streams; results are ordered by
/// replication index, independent of worker scheduling.
inline std::vector<double> moers_limit_sample(HurstParam H, int replications, int grid_points,
                                              RandomStream& rng, int workers = 1) {
    if (replications < 1) throw std::invalid_argument("moers_limit_sample: need replications");
    if (grid_points < 2) throw std::invalid_argument("moers_limit_sample: grid too coarse");

    const auto sampler = shared_fgn_sampler(H, static_cast<std::size_t>(grid_points));
    const double step = 1.0 / static_cast<double>(grid_points);
    const double scale = std::pow(step, H.value());
    const double hg = detail::h_gamma_2h(H);

    std::vector<double> stats(static_cast<std::size_t>(replications));
    parallel_chunks(static_cast<std::size_t>(replications), workers,
                    [&](std::size_t begin, std::size_t end) {
                        FgnSampler::Scratch scratch;
                        std::vector<double> fgn(static_cast<std::size_t>(grid_points));
                        for (std::size_t rep = begin; rep < end; ++rep) {
                            RandomStream stream = rng.child(rep);
                            sampler->sample(stream, fgn.data(), fgn.size(), scratch);
                            double b = 0.0, sum_sq = 0.0;
                            for (int k = 0; k < grid_points; ++k) {
                                sum_sq += b * b; // left endpoint, excludes B_1
                                b += scale * fgn[static_cast<std::size_t>(k)];
                            }
                            const double integral = sum_sq * step;
                            stats[rep] = b * b / (2.0 * integral) -
                                         std::pow(integral / hg, -1.0 / (2.0 * H.value()));
                        }
                    });
    return stats;
}

/// Empirical quantile of the limit law, by Monte Carlo with a
/// deterministic final sort.
inline double moers_limit_quantile(HurstParam H, Probability prob, int replications,
                                   int grid_points, RandomStream& rng, int workers = 1) {
    if (replications < 1000)
        throw std::invalid_argument("moers_limit_quantile: need >= 1000 replications");
    return empirical_quantile(moers_limit_sample(H, replications, grid_points, rng, workers),
                              prob);
}

/// One discrete-estimator trial under the table protocol: simulate the
/// process at step h on [0, n^(m-1)], observe at k/n, and evaluate the
/// sign-appropriate discrete estimator. For theta > 0 the trajectory
/// grows like e^(theta t) and overflows doubles past t ~ 350, so the
/// recursion tracks a power-of-two scale factor; the estimator is a
/// degree-zero ratio, so the scale cancels exactly. Noise increments that
/// fall below the rescaled resolution are absorbed, which matches what
/// full-precision arithmetic would round away.
inline double discrete_estimator_trial(double theta, double x0, HurstParam H, int n, int m,
                                       double h, RandomStream& rng) {
    if (n < 1 || m <= 1) throw std::invalid_argument("discrete_estimator_trial: bad grid");
    const double obs_step = 1.0 / static_cast<double>(n);
    const double ratio = obs_step / h;
    const auto obs_every = static_cast<std::size_t>(std::llround(ratio));
    if (obs_every < 1 || std::fabs(ratio - static_cast<double>(obs_every)) > 1e-9)
        throw std::invalid_argument("discrete_estimator_trial: h must divide 1/n");

    double n_obs_d = 1.0;
    for (int i = 0; i < m; ++i) n_obs_d *= static_cast<double>(n);
    const auto n_obs = static_cast<std::size_t>(n_obs_d); // observations 0 .. n^m - 1
    const std::size_t n_steps = n_obs * obs_every;

    const auto sampler = shared_fgn_sampler(H, n_steps);
    std::vector<double> fgn(n_steps);
    FgnSampler::Scratch scratch;
    sampler->sample(rng, fgn.data(), n_steps, scratch);
    const double noise_scale = std::pow(h, H.value());

    const double growth = 1.0 + theta * h;
    double x = x0;
    double sum_sq = 0.0; // sum of squared observations in the current scale
    int scale_log2 = 0;
    for (std::size_t k = 0; k < n_steps; ++k) {
        if (k % obs_every == 0) sum_sq += x * x;
        x = x * growth + std::ldexp(noise_scale * fgn[k], -scale_log2);
        if (std::fabs(x) > 0x1p256) {
            x = std::ldexp(x, -256);
            sum_sq = std::ldexp(sum_sq, -512);
            scale_log2 += 256;
        }
    }
    if (!(sum_sq > 0.0)) throw degenerate_path_error("discrete_estimator_trial: zero sum");

    if (theta <= 0.0) {
        if (scale_log2 != 0)
            throw std::range_error("discrete_estimator_trial: bounded-drift path overflowed");
        const double avg = sum_sq / (detail::h_gamma_2h(H) * n_obs_d);
        return -std::pow(avg, -1.0 / (2.0 * H.value()));
    }
    return static_cast<double>(n) * x * x / (2.0 * sum_sq);
}

} // namespace fou
