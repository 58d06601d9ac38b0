#pragma once

#include <json.hpp>

#include "fou/estimators.hpp"
#include "fou/sign_test.hpp"

namespace fou {

/// Flat JSON object mirroring the decision fields one-to-one.
inline nlohmann::json to_json(const TestDecision& d) {
    return nlohmann::json{
        {"statistic_z", d.statistic_z}, {"g_value", d.g_value.value()},
        {"alpha", d.alpha.value()},     {"verdict", to_string(d.verdict)},
        {"t_used", d.t_used},           {"guard_t0", d.guard_t0},
    };
}

inline nlohmann::json to_json(const EstimateReport& r) {
    nlohmann::json j{
        {"estimator_id", to_string(r.estimator_id)},
        {"value", r.value},
        {"horizon_T", r.horizon_T},
        {"h_step", r.h_step},
    };
    if (r.m_exponent) j["m_exponent"] = *r.m_exponent;
    return j;
}

} // namespace fou
