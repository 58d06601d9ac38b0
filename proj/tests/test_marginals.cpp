#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "fou/marginals.hpp"

using fou::HurstParam;
using fou::Probability;

namespace {

const std::vector<double> kHGrid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};

TEST(VarianceV, DriftlessClosedForm) {
    // v(0,t) = t^(2H)
    for (double h : kHGrid) {
        for (double t : {0.5, 1.0, 4.0, 5.0, 123.0}) {
            const double expected = std::pow(t, 2 * h);
            EXPECT_NEAR(fou::variance_v(0.0, t, HurstParam(h)), expected, 1e-10 * expected);
        }
    }
}

// extended-precision references for the quadrature
TEST(VarianceV, FrozenReferenceValues) {
    EXPECT_NEAR(fou::variance_v(0.5, 2.0, HurstParam(0.3)), 5.17201534207088374,
                1e-12 * 5.172);
    EXPECT_NEAR(fou::variance_v(2.0, 3.0, HurstParam(0.6)), 39016.7904428876879,
                1e-11 * 39016.8);
    // H = 1/2 closed form (e^(2 theta t) - 1)/(2 theta)
    EXPECT_NEAR(fou::variance_v(1.0, 10.0, HurstParam(0.5)), 242582597.204895139,
                1e-12 * 2.4e8);
    EXPECT_NEAR(fou::variance_v(0.1, 28.66, HurstParam(0.5)),
                (std::exp(2 * 0.1 * 28.66) - 1.0) / 0.2, 1e-11 * 1536.0);
}

TEST(VarianceV, ErgodicLimit) {
    // v(-1, 200, 0.5) -> H*Gamma(2H)/1 = 0.5
    EXPECT_NEAR(fou::variance_v(-1.0, 200.0, HurstParam(0.5)), 0.5, 1e-6);
    EXPECT_NEAR(fou::asymptotic_variance(-1.0, HurstParam(0.5)), 0.5, 1e-15);
    EXPECT_NEAR(fou::asymptotic_variance(-2.0, HurstParam(0.5)), 0.25, 1e-15);
    // 0.7 * Gamma(1.4), extended-precision reference
    EXPECT_NEAR(fou::asymptotic_variance(1.0, HurstParam(0.7)), 0.621084672252152702,
                1e-15);
    EXPECT_THROW(fou::asymptotic_variance(0.0, HurstParam(0.5)), std::domain_error);
}

TEST(VarianceV, ReflectionIdentity) {
    // v(theta,t) = e^(2 theta t) v(-theta,t), relative 1e-8 over the grid
    for (double h : kHGrid) {
        for (double theta : {0.25, 0.5, 1.0, 2.0}) {
            for (double t : {0.5, 1.0, 3.0, 10.0, 50.0}) {
                if (theta * t >= 170.0) continue; // e^(2 theta t) must be finite
                const double lhs = fou::variance_v(theta, t, HurstParam(h));
                const double rhs =
                    std::exp(2 * theta * t) * fou::variance_v(-theta, t, HurstParam(h));
                EXPECT_NEAR(lhs, rhs, 1e-8 * lhs) << "H=" << h << " theta=" << theta
                                                  << " t=" << t;
            }
        }
    }
}

TEST(VarianceV, NodeDoublingConverged) {
    for (double h : kHGrid) {
        for (double theta : {-3.0, -1.0, -0.001, 0.3, 1.0}) {
            for (double t : {0.8, 5.0, 60.0, 300.0}) {
                if (theta * t >= 350.0) continue;
                const double v128 = fou::variance_v(theta, t, HurstParam(h), 128);
                const double v256 = fou::variance_v(theta, t, HurstParam(h), 256);
                EXPECT_NEAR(v128, v256, 1e-10 * std::fabs(v128))
                    << "H=" << h << " theta=" << theta << " t=" << t;
            }
        }
    }
}

TEST(VarianceV, RangeGuards) {
    EXPECT_THROW(fou::variance_v(0.0, 0.0, HurstParam(0.5)), std::domain_error);
    EXPECT_THROW(fou::variance_v(2.0, 300.0, HurstParam(0.5)), std::range_error);
}

TEST(LogVarianceV, AgreesWithDirectOnOverlap) {
    EXPECT_NEAR(fou::log_variance_v(1.0, 10.0, HurstParam(0.5)),
                std::log(fou::variance_v(1.0, 10.0, HurstParam(0.5))), 1e-10);
    EXPECT_NEAR(fou::log_variance_v(0.5, 2.0, HurstParam(0.3)),
                std::log(fou::variance_v(0.5, 2.0, HurstParam(0.3))), 1e-10);
}

TEST(LogVarianceV, AsymptoticForm) {
    // ln v(1, 500, 0.5) = 1000 + ln(0.5 (1 + o(1))); frozen ln v(-1,500,.5)
    const double lv = fou::log_variance_v(1.0, 500.0, HurstParam(0.5));
    EXPECT_NEAR(lv, 1000.0 - 0.693147180559945309, 1e-9);
    EXPECT_THROW(fou::log_variance_v(-1.0, 10.0, HurstParam(0.5)), std::domain_error);
}

TEST(LogVarianceV, QuadratureDoubling) {
    const double a = fou::log_variance_v(0.5, 2.0, HurstParam(0.3), 128);
    const double b = fou::log_variance_v(0.5, 2.0, HurstParam(0.3), 256);
    EXPECT_NEAR(a, b, 1e-10);
}

TEST(VarianceVDtheta, AnalyticDriftlessHalf) {
    // theta=0, H=1/2, t=1: H int_0^1 (s + (2-s)) ds = 1
    EXPECT_NEAR(fou::variance_v_dtheta(0.0, 1.0, HurstParam(0.5)), 1.0, 1e-12);
    // frozen extended-precision value
    EXPECT_NEAR(fou::variance_v_dtheta(0.3, 2.0, HurstParam(0.7)), 11.5056099133787195,
                1e-11 * 11.5);
}

TEST(VarianceVDtheta, PositiveEverywhere) {
    for (double h : kHGrid)
        for (double theta : {-2.0, -0.5, 0.0, 0.5, 2.0})
            for (double t : {0.5, 2.0, 20.0})
                EXPECT_GT(fou::variance_v_dtheta(theta, t, HurstParam(h)), 0.0);
}

TEST(VarianceVDtheta, MatchesFiniteDifference) {
    const double eps = 1e-5;
    for (double h : {0.3, 0.5, 0.7}) {
        for (double theta : {-1.0, -0.2, 0.0, 0.3}) {
            for (double t : {1.5, 2.0, 10.0}) {
                const HurstParam H(h);
                const double fd = (fou::variance_v(theta + eps, t, H) -
                                   fou::variance_v(theta - eps, t, H)) /
                                  (2 * eps);
                const double an = fou::variance_v_dtheta(theta, t, H);
                EXPECT_NEAR(an, fd, 1e-5 * std::fabs(an))
                    << "H=" << h << " theta=" << theta << " t=" << t;
            }
        }
    }
}

TEST(GCdf, SaturatedCase) {
    // e^(t^c) with t=10, c=0.99 dwarfs everything
    EXPECT_NEAR(fou::g_cdf(0.0, 1.0, 10.0, 0.99, HurstParam(0.5)).value(), 1.0, 1e-12);
}

TEST(GCdf, SymmetricTwoSidedIdentity) {
    // x0 = 0, c chosen so e^(t^c) = t^H * 1.959964 at t = e:
    // g = 2 Phi(1.959964) - 1
    const double t = std::exp(1.0);
    const double z = 1.959964;
    const double h = 0.5;
    const double c = std::log(h + std::log(z)); // ln t = 1
    EXPECT_NEAR(fou::g_cdf(0.0, 0.0, t, c, HurstParam(h)).value(),
                2 * fou::normal_cdf(z) - 1.0, 1e-12);
}

TEST(GCdf, RejectsTAtOrBelowOne) {
    EXPECT_THROW(fou::g_cdf(0.0, 1.0, 1.0, 0.5, HurstParam(0.5)), std::domain_error);
    EXPECT_THROW(fou::g_cdf(0.0, 1.0, 0.5, 0.5, HurstParam(0.5)), std::domain_error);
}

TEST(GCdf, MonotoneDecreasingInTheta) {
    const std::vector<double> thetas = {-1.0, -0.5, 0.0, 0.5, 1.0};
    for (double x0 : {-2.0, 0.0, 1.0, 2.0}) {
        for (double t : {2.0, 5.0, 20.0, 100.0}) {
            for (double c = 0.1; c < 0.95; c += 0.2) {
                for (double h : {0.1, 0.3, 0.5, 0.7, 0.9}) {
                    double prev = 2.0;
                    for (double theta : thetas) {
                        const double g =
                            fou::g_cdf(theta, x0, t, c, HurstParam(h)).value();
                        // strict decrease unless both saturated at the same bound
                        if (!(prev == g && (g == 0.0 || g == 1.0)))
                            EXPECT_LT(g, prev) << "x0=" << x0 << " t=" << t << " c=" << c
                                               << " H=" << h << " theta=" << theta;
                        prev = g;
                    }
                }
            }
        }
    }
}

TEST(GCdf, MonotoneIncreasingInC) {
    for (double theta : {-0.5, 0.0, 0.3}) {
        for (double t : {2.0, 20.0, 100.0}) {
            for (double h : {0.3, 0.7}) {
                double prev = -1.0;
                for (double c = 0.05; c < 1.0; c += 0.1) {
                    const double g = fou::g_cdf(theta, 1.0, t, c, HurstParam(h)).value();
                    if (!(prev == g && (g == 0.0 || g == 1.0)))
                        EXPECT_GT(g, prev)
                            << "theta=" << theta << " t=" << t << " c=" << c << " H=" << h;
                    prev = g;
                }
            }
        }
    }
}

TEST(GCdf, StaysInUnitIntervalAtExtremes) {
    for (double theta : {-5.0, 0.0, 0.9}) {
        for (double t : {1.0001, 2.0, 1e4, 1e12}) {
            for (double c : {0.0, 0.001, 0.999, 1.0}) {
                const double g = fou::g_cdf(theta, -3.0, t, c, HurstParam(0.2)).value();
                EXPECT_GE(g, 0.0);
                EXPECT_LE(g, 1.0);
            }
        }
    }
    // very large theta*t through the log-space route
    const double g = fou::g_cdf(0.9, 1.0, 1e4, 0.5, HurstParam(0.4)).value();
    EXPECT_GE(g, 0.0);
    EXPECT_LE(g, 1.0);
}

TEST(MarginalLawValues, MeanAndVariance) {
    const auto law = fou::marginal_law(0.0, 1.0, 4.0, HurstParam(0.3));
    EXPECT_DOUBLE_EQ(law.mean, 1.0);
    EXPECT_NEAR(law.variance, std::pow(4.0, 0.6), 1e-10 * law.variance);
}

} // namespace
