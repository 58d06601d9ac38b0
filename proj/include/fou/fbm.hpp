#pragma once

#include <fftw3.h>

#include <complex>
#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "fou/hurst.hpp"
#include "fou/rng.hpp"
#include "fou/sample_path.hpp"

namespace fou {

/// Covariance of fractional Brownian motion at times t, s >= 0.
inline double fbm_covariance(HurstParam H, double t, double s) {
    if (t < 0.0 || s < 0.0) throw std::domain_error("fbm_covariance: times must be >= 0");
    const double twoH = 2.0 * H.value();
    return 0.5 * (std::pow(std::fabs(t), twoH) + std::pow(std::fabs(s), twoH) -
                  std::pow(std::fabs(t - s), twoH));
}

/// Autocovariance of unit-step fractional Gaussian noise at the given lag.
inline double fgn_autocovariance(HurstParam H, long lag) {
    if (lag < 0) throw std::domain_error("fgn_autocovariance: lag must be >= 0");
    const double twoH = 2.0 * H.value();
    const double k = static_cast<double>(lag);
    return 0.5 * (std::pow(k + 1.0, twoH) - 2.0 * std::pow(k, twoH) +
                  std::pow(std::fabs(k - 1.0), twoH));
}

struct embedding_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// FFTW planning is not reentrant; executing a cached plan on fresh
// arrays is. Plans are created FFTW_UNALIGNED so caller buffers need no
// special allocation.
class FftPlans {
public:
    static fftw_plan r2c(std::size_t n) {
        return instance().get(n, /*r2c=*/true);
    }
    static fftw_plan c2r(std::size_t n) {
        return instance().get(n, /*r2c=*/false);
    }

private:
    static FftPlans& instance() {
        static FftPlans plans;
        return plans;
    }

    fftw_plan get(std::size_t n, bool r2c_kind) {
        std::lock_guard<std::mutex> lock(mu_);
        auto& cache = r2c_kind ? r2c_ : c2r_;
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
        std::vector<double> real(n);
        std::vector<std::complex<double>> cplx(n / 2 + 1);
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        fftw_plan plan =
            r2c_kind
                ? fftw_plan_dft_r2c_1d(static_cast<int>(n), real.data(),
                                     reinterpret_cast<fftw_complex*>(cplx.data()), flags)
                : fftw_plan_dft_c2r_1d(static_cast<int>(n),
                                     reinterpret_cast<fftw_complex*>(cplx.data()),
                                     real.data(), flags);
        if (!plan) throw std::runtime_error("fftw planning failed");
        cache.emplace(n, plan);
        return plan;
    }

    std::mutex mu_;
    std::map<std::size_t, fftw_plan> r2c_, c2r_;
};

inline std::size_t next_pow2(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

} // namespace detail

/// Exact sampler for unit-step fractional Gaussian noise by circulant
/// embedding (Davies-Harte). The covariance of the length-2M circulant is
/// diagonalized once by FFT; each sample costs one half-spectrum of
/// Gaussians plus a complex-to-real transform. Spectral coefficients must
/// be nonnegative up to a relative tolerance, otherwise construction
/// throws embedding_error and callers fall back to the Hosking recursion.
class FgnSampler {
public:
    static constexpr double kSpectralTolerance = 1e-10;

    FgnSampler(HurstParam H, std::size_t n) : n_(n), m_(detail::next_pow2(n)) {
        if (n == 0) throw std::invalid_argument("FgnSampler: need n >= 1");
        const std::size_t two_m = 2 * m_;
        std::vector<double> row(two_m);
        for (std::size_t k = 0; k <= m_; ++k) row[k] = fgn_autocovariance(H, static_cast<long>(k));
        for (std::size_t k = m_ + 1; k < two_m; ++k) row[k] = row[two_m - k];

        std::vector<std::complex<double>> spec(m_ + 1);
        fftw_execute_dft_r2c(detail::FftPlans::r2c(two_m), row.data(),
                             reinterpret_cast<fftw_complex*>(spec.data()));

        double max_lambda = 0.0, min_lambda = 0.0;
        for (std::size_t k = 0; k <= m_; ++k) {
            max_lambda = std::max(max_lambda, spec[k].real());
            min_lambda = std::min(min_lambda, spec[k].real());
        }
        if (min_lambda < -kSpectralTolerance * max_lambda)
            throw embedding_error("circulant embedding has negative spectrum: min " +
                                  std::to_string(min_lambda));

        // amplitude[k] multiplies a standard normal (real and imaginary
        // parts separately for interior k).
        amplitude_.resize(m_ + 1);
        const double inv = 1.0 / static_cast<double>(two_m);
        for (std::size_t k = 0; k <= m_; ++k) {
            const double lambda = std::max(spec[k].real(), 0.0);
            amplitude_[k] = (k == 0 || k == m_) ? std::sqrt(lambda * inv)
                                                : std::sqrt(0.5 * lambda * inv);
        }
    }

    std::size_t size() const { return n_; }

    struct Scratch {
        std::vector<std::complex<double>> freq;
        std::vector<double> time;
    };

    /// Write `count` unit-step fGn values to out (count <= size()).
    /// Consumes exactly 2M Gaussians regardless of count.
    void sample(RandomStream& rng, double* out, std::size_t count, Scratch& scratch) const {
        if (count > n_) throw std::invalid_argument("FgnSampler: count exceeds table size");
        const std::size_t two_m = 2 * m_;
        scratch.freq.resize(m_ + 1);
        scratch.time.resize(two_m);
        scratch.freq[0] = {amplitude_[0] * rng.gauss(), 0.0};
        scratch.freq[m_] = {amplitude_[m_] * rng.gauss(), 0.0};
        for (std::size_t k = 1; k < m_; ++k) {
            const double re = amplitude_[k] * rng.gauss();
            const double im = amplitude_[k] * rng.gauss();
            scratch.freq[k] = {re, im};
        }
        fftw_execute_dft_c2r(detail::FftPlans::c2r(two_m),
                             reinterpret_cast<fftw_complex*>(scratch.freq.data()),
                             scratch.time.data());
        for (std::size_t j = 0; j < count; ++j) out[j] = scratch.time[j];
    }

    void sample(RandomStream& rng, std::vector<double>& out, std::size_t count) const {
        out.resize(count);
        Scratch scratch;
        sample(rng, out.data(), count, scratch);
    }

private:
    std::size_t n_, m_;
    std::vector<double> amplitude_;
};

/// Process-wide sampler cache. Tables depend only on (H, padded length) and
/// are immutable once built, so concurrent trials share them freely.
inline std::shared_ptr<const FgnSampler> shared_fgn_sampler(HurstParam H, std::size_t n) {
    static std::mutex mu;
    static std::map<std::pair<double, std::size_t>, std::shared_ptr<const FgnSampler>> cache;
    const auto key = std::make_pair(H.value(), detail::next_pow2(n));
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_shared<FgnSampler>(H, key.second)).first;
    return it->second;
}

/// Unit-step fGn by the Hosking (Durbin-Levinson) recursion, O(n^2).
/// Exact for any valid autocovariance; used as the embedding fallback and
/// as an independent generator in distributional tests.
inline std::vector<double> sample_fgn_hosking(HurstParam H, std::size_t n, RandomStream& rng) {
    if (n == 0) throw std::invalid_argument("sample_fgn_hosking: need n >= 1");
    std::vector<double> gamma(n);
    for (std::size_t k = 0; k < n; ++k) gamma[k] = fgn_autocovariance(H, static_cast<long>(k));

    std::vector<double> x(n), phi, phi_prev;
    double sigma2 = gamma[0];
    x[0] = std::sqrt(sigma2) * rng.gauss();
    for (std::size_t k = 1; k < n; ++k) {
        double acc = gamma[k];
        for (std::size_t j = 1; j < k; ++j) acc -= phi_prev[j - 1] * gamma[k - j];
        const double phi_kk = acc / sigma2;
        phi.assign(k, 0.0);
        for (std::size_t j = 1; j < k; ++j)
            phi[j - 1] = phi_prev[j - 1] - phi_kk * phi_prev[k - 1 - j];
        phi[k - 1] = phi_kk;
        sigma2 *= (1.0 - phi_kk * phi_kk);
        double mean = 0.0;
        for (std::size_t j = 1; j <= k; ++j) mean += phi[j - 1] * x[k - j];
        x[k] = mean + std::sqrt(sigma2) * rng.gauss();
        phi_prev = phi;
    }
    return x;
}

inline constexpr double kMaxFbmHorizon = 1e9;
inline constexpr std::size_t kMaxFbmPoints = std::size_t{1} << 31;

/// Sample an fBm path at 0, step, ..., n_points*step with the exact joint
/// law: unit-grid fGn scaled by step^H (self-similarity), then summed.
/// Returns n_points + 1 values, the first exactly zero.
inline SamplePath sample_fbm(HurstParam H, double step, std::size_t n_points,
                             RandomStream& rng) {
    if (!(step > 0.0)) throw std::invalid_argument("sample_fbm: step must be > 0");
    if (n_points < 1) throw std::invalid_argument("sample_fbm: need n_points >= 1");
    if (n_points > kMaxFbmPoints)
        throw std::invalid_argument("sample_fbm: n_points exceeds allocation limit");
    if (static_cast<double>(n_points) * step > kMaxFbmHorizon)
        throw std::invalid_argument("sample_fbm: horizon exceeds configured maximum");

    std::vector<double> fgn;
    try {
        shared_fgn_sampler(H, n_points)->sample(rng, fgn, n_points);
    } catch (const embedding_error&) {
        fgn = sample_fgn_hosking(H, n_points, rng);
    }

    const double scale = std::pow(step, H.value());
    std::vector<double> values(n_points + 1);
    values[0] = 0.0;
    for (std::size_t k = 0; k < n_points; ++k) values[k + 1] = values[k] + scale * fgn[k];
    return SamplePath(step, std::move(values));
}

} // namespace fou
