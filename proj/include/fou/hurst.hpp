#pragma once

#include <stdexcept>
#include <string>

namespace fou {

/// Hurst index of fractional Brownian motion, restricted to the open
/// interval (0,1). H > 1/2 gives long-range dependence, H < 1/2
/// short-range; H = 1/2 is ordinary Brownian motion.
class HurstParam {
public:
    explicit HurstParam(double value) : value_(value) {
        if (!(value > 0.0) || !(value < 1.0))
            throw std::domain_error("Hurst parameter must lie in (0,1), got " +
                                    std::to_string(value));
    }

    double value() const { return value_; }

private:
    double value_;
};

} // namespace fou
