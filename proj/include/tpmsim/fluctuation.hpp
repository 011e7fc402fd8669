#pragma once

// Information- and thermodynamics-side functionals over an exact outcome
// distribution: pointwise mutual information I_nm = ln p_{m|n} - ln q_m,
// its exponential average (identically 1 on full support), the total
// mutual information, the two-point work statistics and the Jarzynski
// average. All logarithms are natural. Terms with zero joint weight
// contribute 0 by continuity.

#include <array>

#include "tpmsim/protocol.hpp"

namespace tpmsim {

struct InfoRecord {
    // entries are meaningful only where weights > 0; other cells hold NaN
    std::array<std::array<double, 2>, 2> i_nm{};
    std::array<std::array<double, 2>, 2> weights{};
};

struct ThermoRecord {
    std::array<std::array<double, 2>, 2> w_nm{};  // units of E
    double delta_F = 0.0;                         // units of E
    double beta = 0.0;                            // units of 1/E
};

InfoRecord pointwise_mutual_information(const OutcomeDistribution& dist);

double exp_neg_info_average(const OutcomeDistribution& dist, const InfoRecord& info);

double total_mutual_information(const OutcomeDistribution& dist, const InfoRecord& info);

// w_nm = E^i_n - E^f_m. Both spectra are {-E, +E}, so Z_i = Z_f and the
// free-energy difference vanishes for every beta.
ThermoRecord work_matrix(const EnergySpec& energy);

// General Delta F = F_i - F_f with F = -ln Z / beta for two-level spectra
// {-E_i, +E_i} and {-E_f, +E_f}.
double free_energy_difference(double beta, double e_initial, double e_final);

double jarzynski_average(const OutcomeDistribution& dist, const ThermoRecord& thermo);

// sum p_nm * beta * (Delta F - W); dimensionless, matching the convention
// in which the reported column absorbs beta.
double dissipation_average(const OutcomeDistribution& dist, const ThermoRecord& thermo);

// The information content beta*(Delta F - w_nm) whose exponential average
// reproduces the Jarzynski average exactly.
InfoRecord info_thermo_bridge(const ThermoRecord& thermo);

}  // namespace tpmsim
