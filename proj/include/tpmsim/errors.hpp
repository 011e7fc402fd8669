#pragma once

#include <stdexcept>
#include <string>

namespace tpmsim {

// A projective outcome with zero probability cannot produce a
// post-measurement state.
struct OutcomeImpossibleError : std::runtime_error {
    explicit OutcomeImpossibleError(const std::string& what) : std::runtime_error(what) {}
};

// Pointwise information is undefined when q_m = 0 on a cell that carries
// conditional weight.
struct SingularSupportError : std::runtime_error {
    explicit SingularSupportError(const std::string& what) : std::runtime_error(what) {}
};

// F = -ln Z / beta has no finite value at beta = 0.
struct UndefinedFreeEnergyError : std::runtime_error {
    explicit UndefinedFreeEnergyError(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidCountsError : std::runtime_error {
    explicit InvalidCountsError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tpmsim
