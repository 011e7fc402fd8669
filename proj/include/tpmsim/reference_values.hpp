#pragma once

// Published measurement values with their quoted standard errors, used by
// the --check mode and the acceptance suite as comparison bands.

#include <array>

namespace tpmsim::reference {

struct Measured {
    double value;
    double stderr_;
};

// Pure-state grid: rows alpha = {1, sqrt(2/3), sqrt(1/3)}, columns
// t = {1, 2, 3, 4} in units of tau.
inline constexpr std::array<std::array<Measured, 4>, 3> kTotalMutualInformation{{
    {{{0.001, 0.021}, {0.002, 0.006}, {0.002, 0.008}, {0.001, 0.016}}},
    {{{0.937, 0.054}, {0.560, 0.023}, {0.508, 0.019}, {0.509, 0.046}}},
    {{{0.520, 0.036}, {0.540, 0.024}, {0.553, 0.025}, {0.930, 0.051}}},
}};

inline constexpr std::array<std::array<Measured, 4>, 3> kExpNegInfo{{
    {{{0.978, 0.025}, {0.978, 0.008}, {0.978, 0.011}, {0.973, 0.020}}},
    {{{0.985, 0.039}, {0.985, 0.061}, {1.015, 0.063}, {0.974, 0.029}}},
    {{{0.993, 0.059}, {1.021, 0.078}, {1.023, 0.055}, {1.009, 0.029}}},
}};

// Thermal grid: rows betaE = {0.2, 0.5, 1.0}, columns Hf = {Hf1, Hf2, Hf3}.
inline constexpr std::array<std::array<Measured, 3>, 3> kDissipation{{
    {{{0.046, 0.003}, {0.044, 0.004}, {0.048, 0.003}}},
    {{{0.234, 0.008}, {0.231, 0.012}, {0.240, 0.008}}},
    {{{0.766, 0.013}, {0.761, 0.025}, {0.779, 0.015}}},
}};

inline constexpr std::array<std::array<Measured, 3>, 3> kJarzynski{{
    {{{0.987, 0.014}, {0.998, 0.017}, {0.999, 0.014}}},
    {{{0.990, 0.017}, {1.002, 0.020}, {1.002, 0.017}}},
    {{{0.963, 0.023}, {0.977, 0.026}, {0.976, 0.024}}},
}};

// Quoted SPAM budget: preparation 0.7(2)%, detection 0.22(8)%.
inline constexpr double kPrepErrorBudget = 0.007;
inline constexpr double kDetectErrorBudget = 0.0022;

}  // namespace tpmsim::reference
