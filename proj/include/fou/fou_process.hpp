#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "fou/fbm.hpp"
#include "fou/hurst.hpp"
#include "fou/marginals.hpp"
#include "fou/rng.hpp"
#include "fou/sample_path.hpp"

namespace fou {

/// Parameters of dX = theta X dt + dB^H, X_0 = x0.
struct ModelParams {
    double theta;
    double x0;
    HurstParam hurst;

    ModelParams(double theta_, double x0_, HurstParam hurst_)
        : theta(theta_), x0(x0_), hurst(hurst_) {
        if (!std::isfinite(theta) || !std::isfinite(x0))
            throw std::invalid_argument("ModelParams: theta and x0 must be finite");
    }
};

/// Raised when a simulated trajectory leaves the representable range
/// (positive drift over a long horizon grows like e^(theta t)).
struct diverged_path_error : std::runtime_error {
    std::size_t first_bad_index;
    explicit diverged_path_error(std::size_t index)
        : std::runtime_error("path diverged (|X| > 1e300) at index " + std::to_string(index)),
          first_bad_index(index) {}
};

inline constexpr double kPathOverflowGuard = 1e300;

/// Euler scheme on a driving fBm path: X_{k+1} = X_k (1 + theta h) + dB_k.
/// Same grid as the driving path.
inline SamplePath euler_path(const ModelParams& params, const SamplePath& driving) {
    if (driving.values.empty() || driving.values.front() != 0.0)
        throw std::invalid_argument("euler_path: driving path must start at 0");
    const double h = driving.step;
    const double growth = 1.0 + params.theta * h;
    std::vector<double> x(driving.values.size());
    x[0] = params.x0;
    for (std::size_t k = 0; k + 1 < x.size(); ++k) {
        x[k + 1] = x[k] * growth + (driving.values[k + 1] - driving.values[k]);
        if (!(std::fabs(x[k + 1]) <= kPathOverflowGuard)) throw diverged_path_error(k + 1);
    }
    return SamplePath(h, std::move(x), driving.origin_time);
}

/// Value of the explicit solution
///   X_t = x0 e^(theta t) + theta e^(theta t) int_0^t e^(-theta s) B_s ds + B_t
/// at a grid index, with the integral by the trapezoidal rule. An
/// independent discretization of the same equation; the kernel is
/// evaluated as e^(theta (t - s)) so no intermediate overflows for
/// mean-reverting drift.
inline double solution_value_from_fbm(const ModelParams& params, const SamplePath& driving,
                                      std::size_t t_index) {
    if (t_index >= driving.values.size())
        throw std::out_of_range("solution_value_from_fbm: index past driving path");
    if (driving.values.front() != 0.0)
        throw std::invalid_argument("solution_value_from_fbm: driving path must start at 0");
    const double h = driving.step;
    const double t = static_cast<double>(t_index) * h;
    const double theta = params.theta;

    // trapezoid of e^(theta (t - s)) B_s over [0, t]
    double integral = 0.0;
    for (std::size_t k = 0; k <= t_index; ++k) {
        const double s = static_cast<double>(k) * h;
        const double w = (k == 0 || k == t_index) ? 0.5 : 1.0;
        integral += w * std::exp(theta * (t - s)) * driving.values[k];
    }
    integral *= h;

    const double value = params.x0 * std::exp(theta * t) + theta * integral +
                         driving.values[t_index];
    if (!(std::fabs(value) <= kPathOverflowGuard))
        throw diverged_path_error(t_index);
    return value;
}

/// Draw X_t from its exact Gaussian law N(x0 e^(theta t), v(theta,t)).
/// Zero discretization error; the workhorse for distribution-level tests.
inline double sample_marginal_exact(const ModelParams& params, double t, RandomStream& rng) {
    if (!(t > 0.0)) throw std::domain_error("sample_marginal_exact: t must be > 0");
    const MarginalLaw law = marginal_law(params.theta, params.x0, t, params.hurst);
    if (!(law.variance > 0.0) || !std::isfinite(law.variance))
        throw std::range_error("sample_marginal_exact: variance not finite and positive");
    return law.mean + std::sqrt(law.variance) * rng.gauss();
}

/// Simulate a full fOU trajectory: exact-law driving fBm, then Euler.
inline SamplePath simulate_fou(const ModelParams& params, double step, std::size_t n_points,
                               RandomStream& rng) {
    return euler_path(params, sample_fbm(params.hurst, step, n_points, rng));
}

} // namespace fou
