#pragma once

// Finite-shot simulation of the three measurement processes, plug-in
// estimators for every reported quantity, and replication statistics.
//
// The three processes consume independent shot budgets, mirroring hardware
// that destroys the state on readout: (I) first-measurement outcomes,
// (II) unconditional second-measurement outcomes, (III) sequential
// (n, m) pairs obtained by collapse -> evolution -> measurement.
// Optional SPAM errors flip the prepared state with p_prep_error (pure
// preparation; a thermal preparation re-draws from the same diagonal and
// is distribution-neutral) and flip each recorded binary outcome with
// p_detect_error.
//
// Determinism contract: replication k of a run draws from the substream
// (seed, k) only, and reductions run in replication order, so results are
// bit-identical for a fixed (seed, plan, config) at any thread count.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tpmsim/protocol.hpp"
#include "tpmsim/rng.hpp"

namespace tpmsim {

struct SpamModel {
    double p_prep_error = 0.0;
    double p_detect_error = 0.0;
};

struct ShotPlan {
    std::uint64_t shots_per_setting = 40000;
    std::uint64_t replications = 100;
    std::uint64_t seed = 0;
    std::optional<SpamModel> spam;

    void validate() const;
};

struct CountsTable {
    std::array<std::uint64_t, 2> first_counts{};
    std::uint64_t first_shots = 0;
    std::array<std::uint64_t, 2> second_counts{};
    std::uint64_t second_shots = 0;
    std::array<std::array<std::uint64_t, 2>, 2> pair_counts{};
    std::uint64_t pair_shots = 0;

    bool operator==(const CountsTable&) const = default;
};

struct EstimateReport {
    std::string quantity;
    double point_estimate = 0.0;
    double rms_error = 0.0;  // standard error of the mean over replications
    std::uint64_t replications = 0;
    std::uint64_t shots = 0;

    bool operator==(const EstimateReport&) const = default;
};

// Point estimates from one counts table.
struct PluginEstimates {
    std::array<double, 2> p_n{};
    std::array<double, 2> q_m{};
    std::array<std::optional<std::array<double, 2>>, 2> p_m_given_n{};
    std::array<std::array<double, 2>, 2> p_nm{};
    std::optional<double> exp_neg_info;     // absent when the empirical support is singular
    std::optional<double> total_mi;
    std::optional<double> min_info;         // smallest pointwise information over supported cells
    std::optional<double> jarzynski;        // present when an EnergySpec is supplied
    std::optional<double> dissipation;
    int undefined_rows = 0;
    bool info_singular = false;             // q_m = 0 on a cell with conditional weight
};

struct ReplicationSummary {
    std::vector<EstimateReport> reports;
    std::uint64_t flagged_replications = 0;        // replications with an undefined conditional row
    std::uint64_t singular_replications = 0;       // replications with singular information support
    std::uint64_t negative_info_replications = 0;  // replications containing a negative pointwise information

    const EstimateReport& report(const std::string& quantity) const;
    const EstimateReport* find(const std::string& quantity) const;
};

// Binomial count: number of successes among n Bernoulli(p) trials.
std::uint64_t sample_binary(double p, std::uint64_t n, Rng& rng);

CountsTable simulate_protocol(const ProtocolConfig& config, const ShotPlan& plan, Rng& rng);

PluginEstimates plugin_estimates(const CountsTable& counts, const std::optional<EnergySpec>& energy);

ReplicationSummary replicate(const ProtocolConfig& config, const ShotPlan& plan, unsigned threads = 1);

}  // namespace tpmsim
