#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fou {

/// A trajectory observed on the uniform grid origin_time + k*step.
struct SamplePath {
    double step = 0.0;
    double origin_time = 0.0;
    std::vector<double> values;

    SamplePath() = default;
    SamplePath(double step_, std::vector<double> values_, double origin_time_ = 0.0)
        : step(step_), origin_time(origin_time_), values(std::move(values_)) {
        if (!(step > 0.0)) throw std::invalid_argument("SamplePath: step must be > 0");
        if (values.empty()) throw std::invalid_argument("SamplePath: values must be non-empty");
        if (origin_time < 0.0) throw std::invalid_argument("SamplePath: origin_time must be >= 0");
    }

    std::size_t size() const { return values.size(); }
    double time_at(std::size_t k) const { return origin_time + static_cast<double>(k) * step; }
    double horizon() const { return time_at(values.size() - 1); }
    double front() const { return values.front(); }
    double back() const { return values.back(); }
};

/// Keep every `every`-th point (including both endpoints when they align).
inline SamplePath subsample(const SamplePath& path, std::size_t every) {
    if (every == 0) throw std::invalid_argument("subsample: every must be >= 1");
    if ((path.values.size() - 1) % every != 0)
        throw std::invalid_argument("subsample: stride does not divide the grid");
    std::vector<double> out;
    out.reserve((path.values.size() - 1) / every + 1);
    for (std::size_t k = 0; k < path.values.size(); k += every) out.push_back(path.values[k]);
    return SamplePath(path.step * static_cast<double>(every), std::move(out), path.origin_time);
}

} // namespace fou
