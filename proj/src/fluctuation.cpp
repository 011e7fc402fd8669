#include "tpmsim/fluctuation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tpmsim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_consistent(const OutcomeDistribution& dist, const InfoRecord& info) {
    bool untied = true;  // bridge records carry no weights and apply to any distribution
    for (int n = 0; n < 2; ++n)
        for (int m = 0; m < 2; ++m)
            if (!std::isnan(info.weights[n][m])) untied = false;
    if (untied) return;
    for (int n = 0; n < 2; ++n)
        for (int m = 0; m < 2; ++m)
            if (std::abs(info.weights[n][m] - dist.p_nm[n][m]) > kPhysTol)
                throw std::invalid_argument("InfoRecord does not belong to this distribution");
}

}  // namespace

InfoRecord pointwise_mutual_information(const OutcomeDistribution& dist) {
    InfoRecord rec;
    rec.weights = dist.p_nm;
    for (int n = 0; n < 2; ++n) {
        for (int m = 0; m < 2; ++m) {
            rec.i_nm[n][m] = kNaN;
            if (dist.p_nm[n][m] <= 0.0) continue;
            const double cond = (*dist.p_m_given_n[n])[m];
            if (dist.q_m[m] <= 0.0)
                throw SingularSupportError("pointwise_mutual_information: q_m = 0 on a supported cell");
            rec.i_nm[n][m] = std::log(cond) - std::log(dist.q_m[m]);
        }
    }
    return rec;
}

double exp_neg_info_average(const OutcomeDistribution& dist, const InfoRecord& info) {
    require_consistent(dist, info);
    double sum = 0.0;
    for (int n = 0; n < 2; ++n)
        for (int m = 0; m < 2; ++m)
            if (dist.p_nm[n][m] > 0.0) sum += dist.p_nm[n][m] * std::exp(-info.i_nm[n][m]);
    return sum;
}

double total_mutual_information(const OutcomeDistribution& dist, const InfoRecord& info) {
    require_consistent(dist, info);
    double sum = 0.0;
    for (int n = 0; n < 2; ++n)
        for (int m = 0; m < 2; ++m)
            if (dist.p_nm[n][m] > 0.0) sum += dist.p_nm[n][m] * info.i_nm[n][m];
    return sum;
}

ThermoRecord work_matrix(const EnergySpec& energy) {
    if (!(energy.beta_E >= 0.0)) throw std::invalid_argument("work_matrix: beta_E must be >= 0");
    ThermoRecord rec;
    rec.beta = energy.beta_E;  // E = 1
    rec.delta_F = 0.0;         // equal spectra: Z_i = Z_f at every beta
    for (int n = 0; n < 2; ++n)
        for (int m = 0; m < 2; ++m)
            rec.w_nm[n][m] =
                energy.energy_initial(static_cast<Outcome>(n)) - energy.energy_final(static_cast<Outcome>(m));
    return rec;
}

double free_energy_difference(double beta, double e_initial, double e_final) {
    if (!(beta > 0.0)) throw UndefinedFreeEnergyError("free_energy_difference: beta must be > 0");
    const double ln_zi = std::log(2.0 * std::cosh(beta * e_initial));
    const double ln_zf = std::log(2.0 * std::cosh(beta * e_final));
    return (ln_zf - ln_zi) / beta;
}

double jarzynski_average(const OutcomeDistribution& dist, const ThermoRecord& thermo) {
    double sum = 0.0;
    for (int n = 0; n < 2; ++n)
        for (int m = 0; m < 2; ++m)
            if (dist.p_nm[n][m] > 0.0)
                sum += dist.p_nm[n][m] * std::exp(thermo.beta * (thermo.w_nm[n][m] - thermo.delta_F));
    return sum;
}

double dissipation_average(const OutcomeDistribution& dist, const ThermoRecord& thermo) {
    double sum = 0.0;
    for (int n = 0; n < 2; ++n)
        for (int m = 0; m < 2; ++m)
            if (dist.p_nm[n][m] > 0.0)
                sum += dist.p_nm[n][m] * thermo.beta * (thermo.delta_F - thermo.w_nm[n][m]);
    return sum;
}

InfoRecord info_thermo_bridge(const ThermoRecord& thermo) {
    InfoRecord rec;
    for (int n = 0; n < 2; ++n)
        for (int m = 0; m < 2; ++m) {
            rec.i_nm[n][m] = thermo.beta * (thermo.delta_F - thermo.w_nm[n][m]);
            rec.weights[n][m] = kNaN;  // not tied to a distribution
        }
    return rec;
}

}  // namespace tpmsim
