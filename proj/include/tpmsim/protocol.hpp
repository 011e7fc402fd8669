#pragma once

// The measured sequence: state preparation, a carrier-pulse evolution
// sandwiched between two projective measurements, and the exact outcome
// distributions it induces.
//
// Three processes produce the raw probabilities:
//   (I)   measure {P_n} on rho                          -> p_n
//   (II)  evolve rho, measure {Q_m}, no first step      -> q_m
//   (III) collapse on P_n, evolve, measure {Q_m}        -> p_{m|n}
// and the joint is assembled as p_nm = p_n * p_{m|n}. Note q_m generally
// differs from sum_n p_nm: the first measurement erases coherence.

#include <array>
#include <optional>

#include "tpmsim/qubit.hpp"

namespace tpmsim {

// Dimensionless energies: the two-level spectra are {-E, +E} with E = 1,
// and beta carries the product beta*E. sign maps record which outcome is
// assigned which eigenvalue (default: outcome "-" gets -E).
struct EnergySpec {
    double beta_E = 0.0;
    bool swap_sign_i = false;
    bool swap_sign_f = false;

    double energy_initial(Outcome n) const { return (swap_sign_i ? -1.0 : 1.0) * sign_of(n); }
    double energy_final(Outcome m) const { return (swap_sign_f ? -1.0 : 1.0) * sign_of(m); }

    EnergySpec with_swapped_m_labels() const {
        EnergySpec s = *this;
        s.swap_sign_f = !s.swap_sign_f;
        return s;
    }
};

struct InitialStateSpec {
    enum class Kind { pure, gibbs };
    Kind kind = Kind::pure;
    double alpha = 1.0;    // pure: amplitude of |down>, in [0, 1]
    double beta_E = 0.0;   // gibbs: dimensionless beta*E, >= 0

    static InitialStateSpec make_pure(double a) { return {Kind::pure, a, 0.0}; }
    static InitialStateSpec make_gibbs(double be) { return {Kind::gibbs, 1.0, be}; }
};

struct ProtocolConfig {
    InitialStateSpec initial;
    BlochVector p_axis{0.0, 0.0, 1.0};
    BlochVector q_axis{0.0, 1.0, 0.0};
    PulseSpec evolution{};          // U_C(theta1, phi1)
    double prep_phase = 0.0;        // phi0 of the preparation pulse (pure states)
    std::optional<EnergySpec> energy;

    void validate() const;
    QubitState initial_state() const;
};

struct OutcomeDistribution {
    std::array<double, 2> p_n{};
    std::array<double, 2> q_m{};
    // row n of conditionals; a row is empty when p_n = 0 (undefined, not 0)
    std::array<std::optional<std::array<double, 2>>, 2> p_m_given_n{};
    std::array<std::array<double, 2>, 2> p_nm{};

    void validate() const;

    // Same physics with the two m labels exchanged globally.
    OutcomeDistribution with_swapped_m_labels() const;
};

QubitState prepare_pure(double alpha);
QubitState prepare_pure(double alpha, double phi0);
QubitState prepare_gibbs(double beta_E);
QubitState dephase(const QubitState& state);

// (theta2, phi2) such that U_C(theta2,phi2)^dag |up><up| U_C(theta2,phi2)
// equals projector(axis, sign). theta2 in [0, pi], phi2 in (-pi, pi].
PulseSpec pulse_for_projector(const BlochVector& axis, Outcome sign);

std::array<double, 2> first_measurement(const QubitState& state, const BlochVector& p_axis);

std::array<double, 2> second_measurement_unconditional(const QubitState& state, const PulseSpec& evolution,
                                                       const BlochVector& q_axis);

std::array<std::optional<std::array<double, 2>>, 2> conditional_probabilities(const QubitState& state,
                                                                              const BlochVector& p_axis,
                                                                              const PulseSpec& evolution,
                                                                              const BlochVector& q_axis);

OutcomeDistribution joint_distribution(const ProtocolConfig& config);

}  // namespace tpmsim
