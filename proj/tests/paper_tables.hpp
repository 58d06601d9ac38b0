#pragma once

// Published reference values for the reproduction suites.

#include <array>
#include <vector>

namespace fou::testing::paper {

inline const std::vector<double> kHurstGrid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};

// t0 thresholds; rows alpha = 0.01, 0.05; columns over kHurstGrid.
inline const std::array<std::array<double, 9>, 2> kTable1 = {{
    {1.2157, 1.2313, 1.2492, 1.2699, 1.2940, 1.3224, 1.3561, 1.3968, 1.4462},
    {1.5310, 1.2373, 1.1526, 1.1124, 1.0889, 1.0736, 1.0627, 1.0547, 1.0485},
}};

// t0~ thresholds at alpha = 0.05, x0 = 1; rows theta0 = 0.1, 0.05, 0.01,
// 0.001, 0; columns over kHurstGrid.
inline const std::array<std::array<double, 9>, 5> kTable2 = {{
    {32.43, 32.67, 31.99, 30.59, 28.66, 26.38, 23.90, 21.39, 18.95},
    {65.24, 64.72, 61.73, 57.08, 51.41, 45.23, 38.97, 33.00, 27.62},
    {326.47, 307.43, 271.64, 227.99, 181.64, 137.06, 98.76, 69.62, 49.41},
    {3193.6, 2719.1, 2073.5, 1387.8, 778.9, 382.1, 189.7, 104.1, 63.6},
    {2.34e16, 1.53e8, 285900.0, 12364.1, 1878.1, 534.7, 218.0, 111.2, 65.9},
}};

inline const std::vector<double> kRejectionThetaGrid = {-0.1, -0.05, 0.0,  0.05, 0.1,
                                                        0.15, 0.2,  0.25, 0.3};
inline const std::vector<double> kRejectionTimeGrid = {20, 40, 60, 80, 100};

// Empirical rejection of the positive-drift test, 1000 replications;
// rows (H=0.3 then H=0.7) x t in {20,...,100}; columns kRejectionThetaGrid.
inline const std::array<std::array<double, 9>, 10> kTable3 = {{
    {0.000, 0.003, 0.043, 0.341, 0.701, 0.880, 0.973, 0.982, 0.996},
    {0.000, 0.000, 0.043, 0.675, 0.952, 0.995, 0.999, 1.000, 1.000},
    {0.000, 0.000, 0.039, 0.860, 0.994, 1.000, 1.000, 1.000, 1.000},
    {0.000, 0.000, 0.048, 0.940, 1.000, 1.000, 1.000, 1.000, 1.000},
    {0.000, 0.000, 0.049, 0.986, 1.000, 1.000, 1.000, 1.000, 1.000},
    {0.000, 0.001, 0.058, 0.284, 0.540, 0.800, 0.910, 0.967, 0.979},
    {0.000, 0.000, 0.050, 0.581, 0.889, 0.984, 0.998, 1.000, 1.000},
    {0.000, 0.000, 0.042, 0.782, 0.980, 1.000, 0.999, 1.000, 1.000},
    {0.000, 0.000, 0.047, 0.908, 0.995, 1.000, 1.000, 1.000, 1.000},
    {0.000, 0.000, 0.048, 0.959, 1.000, 1.000, 1.000, 1.000, 1.000},
}};

// Empirical rejection of the Moers test, H = 0.7; same grid as Table 3.
inline const std::array<std::array<double, 9>, 5> kTable4 = {{
    {0.001, 0.013, 0.085, 0.370, 0.706, 0.873, 0.947, 0.976, 0.992},
    {0.000, 0.004, 0.095, 0.682, 0.948, 0.993, 0.999, 1.000, 1.000},
    {0.000, 0.002, 0.092, 0.881, 0.995, 1.000, 1.000, 1.000, 1.000},
    {0.000, 0.000, 0.105, 0.948, 0.999, 1.000, 1.000, 1.000, 1.000},
    {0.000, 0.000, 0.089, 0.977, 1.000, 1.000, 1.000, 1.000, 1.000},
}};

inline const std::vector<double> kTable5ThetaGrid = {-0.4, -0.3, -0.2, -0.1,
                                                     0.0,  0.1,  0.2,  0.3};
inline const std::vector<double> kTable5TimesH03 = {32, 33, 34, 35, 36};
inline const std::vector<double> kTable5TimesH07 = {25, 30, 35, 40, 45};

// theta0 = 0.1; rows (H=0.3: t=32..36) then (H=0.7: t=25..45).
inline const std::array<std::array<double, 8>, 10> kTable5 = {{
    {0.999, 0.996, 0.985, 0.961, 0.626, 0.052, 0.001, 0.000},
    {0.999, 0.999, 0.997, 0.978, 0.667, 0.046, 0.000, 0.000},
    {0.999, 0.998, 0.994, 0.989, 0.721, 0.042, 0.001, 0.000},
    {1.000, 1.000, 0.999, 0.992, 0.764, 0.047, 0.000, 0.000},
    {1.000, 1.000, 1.000, 1.000, 0.805, 0.048, 0.000, 0.000},
    {0.954, 0.936, 0.798, 0.598, 0.255, 0.030, 0.003, 0.000},
    {0.998, 0.994, 0.959, 0.817, 0.363, 0.039, 0.003, 0.000},
    {1.000, 1.000, 1.000, 0.969, 0.513, 0.043, 0.003, 0.000},
    {1.000, 1.000, 1.000, 1.000, 0.732, 0.047, 0.001, 0.000},
    {1.000, 1.000, 1.000, 1.000, 0.906, 0.046, 0.000, 0.000},
}};

inline const std::vector<double> kTable6ThetaGrid = {-0.35, -0.3, -0.25, -0.2, -0.15, -0.1,
                                                     -0.05, 0.0,  0.05,  0.1,  0.15};
inline const std::vector<double> kTable6Times = {40, 50, 60, 70, 80};

// theta0 = 0.05, H = 0.7.
inline const std::array<std::array<double, 11>, 5> kTable6 = {{
    {0.904, 0.893, 0.842, 0.773, 0.661, 0.566, 0.368, 0.149, 0.051, 0.007, 0.000},
    {0.999, 0.991, 0.978, 0.948, 0.901, 0.793, 0.555, 0.209, 0.053, 0.003, 0.000},
    {1.000, 1.000, 0.999, 1.000, 0.990, 0.955, 0.799, 0.346, 0.047, 0.002, 0.000},
    {1.000, 1.000, 1.000, 1.000, 1.000, 0.999, 0.964, 0.504, 0.045, 0.001, 0.000},
    {1.000, 1.000, 1.000, 1.000, 1.000, 1.000, 0.999, 0.719, 0.044, 0.001, 0.000},
}};

inline const std::vector<int> kEstimatorDensities = {10, 50, 100, 200, 500, 1000};
inline const std::vector<double> kEstimatorHurstGrid = {0.1, 0.3, 0.5, 0.7, 0.9};

// Discrete ergodic estimator at theta = -1, m = 2, 100 trajectories,
// step 1/2000: means then standard deviations; rows over
// kEstimatorHurstGrid, columns over kEstimatorDensities.
inline const std::array<std::array<double, 6>, 5> kTable7Mean = {{
    {-0.7417, -0.8550, -0.9308, -0.9619, -0.9805, -0.9878},
    {-0.9434, -0.9940, -0.9875, -0.9913, -0.9856, -0.9941},
    {-1.1299, -1.0288, -1.0168, -1.0118, -0.9990, -0.9980},
    {-1.2482, -1.0634, -1.0309, -1.0096, -0.9954, -0.9963},
    {-1.4098, -1.2191, -1.1654, -1.1007, -1.0701, -1.0621},
}};

inline const std::array<std::array<double, 6>, 5> kTable7Sd = {{
    {0.83493, 0.25492, 0.19887, 0.14314, 0.08914, 0.06096},
    {0.46723, 0.19727, 0.14965, 0.11490, 0.06408, 0.04367},
    {0.50298, 0.23068, 0.15288, 0.10412, 0.06861, 0.04729},
    {0.54527, 0.22771, 0.16644, 0.11165, 0.07714, 0.05332},
    {0.54264, 0.39257, 0.32444, 0.27009, 0.23992, 0.19265},
}};

// Discrete non-ergodic estimator at theta = 1, m = 2: means; rows over
// kEstimatorHurstGrid (spread below ~1e-3 for n >= 50).
inline const std::array<std::array<double, 6>, 5> kTable8Mean = {{
    {1.10671, 1.02001, 1.00981, 1.00476, 1.00175, 1.00075},
    {1.10673, 1.02001, 1.00981, 1.00476, 1.00175, 1.00075},
    {1.10671, 1.02001, 1.00981, 1.00476, 1.00175, 1.00075},
    {1.10665, 1.02001, 1.00981, 1.00476, 1.00175, 1.00075},
    {1.10633, 1.02001, 1.00981, 1.00476, 1.00175, 1.00075},
}};

inline constexpr double kMoersQuantile95H07 = 0.827946;

} // namespace fou::testing::paper
