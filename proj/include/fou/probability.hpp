#pragma once

#include <stdexcept>
#include <string>

namespace fou {

/// A probability value in [0,1]. Construction rejects out-of-range inputs;
/// `clamped` forgives roundoff up to a small slack and is used where a
/// numeric pipeline can legitimately land a hair outside the interval.
class Probability {
public:
    explicit Probability(double value) : value_(value) {
        if (!(value >= 0.0) || !(value <= 1.0))
            throw std::domain_error("probability must lie in [0,1], got " +
                                    std::to_string(value));
    }

    static Probability clamped(double value, double slack = 1e-12) {
        if (value < 0.0) {
            if (value < -slack)
                throw std::domain_error("probability out of range beyond slack: " +
                                        std::to_string(value));
            value = 0.0;
        } else if (value > 1.0) {
            if (value > 1.0 + slack)
                throw std::domain_error("probability out of range beyond slack: " +
                                        std::to_string(value));
            value = 1.0;
        }
        return Probability(value);
    }

    double value() const { return value_; }

private:
    double value_;
};

} // namespace fou
