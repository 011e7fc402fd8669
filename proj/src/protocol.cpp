#include "tpmsim/protocol.hpp"

#include <cmath>
#include <stdexcept>

namespace tpmsim {

void ProtocolConfig::validate() const {
    require_unit(p_axis, "ProtocolConfig.p_axis");
    require_unit(q_axis, "ProtocolConfig.q_axis");
    if (initial.kind == InitialStateSpec::Kind::pure) {
        if (!(initial.alpha >= 0.0 && initial.alpha <= 1.0))
            throw std::invalid_argument("ProtocolConfig: alpha must lie in [0, 1]");
    } else {
        if (!(initial.beta_E >= 0.0)) throw std::invalid_argument("ProtocolConfig: beta_E must be >= 0");
    }
    if (energy && !(energy->beta_E >= 0.0))
        throw std::invalid_argument("ProtocolConfig: energy.beta_E must be >= 0");
}

QubitState ProtocolConfig::initial_state() const {
    validate();
    if (initial.kind == InitialStateSpec::Kind::pure) return prepare_pure(initial.alpha, prep_phase);
    return prepare_gibbs(initial.beta_E);
}

QubitState prepare_pure(double alpha, double phi0) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("prepare_pure: alpha must lie in [0, 1]");
    const Operator2 u = carrier_unitary(2.0 * std::acos(alpha), phi0);
    return evolve(QubitState::down(), u);
}

QubitState prepare_pure(double alpha) { return prepare_pure(alpha, 0.0); }

QubitState dephase(const QubitState& state) {
    return QubitState({state(0, 0).real(), 0.0, 0.0, state(1, 1).real()});
}

QubitState prepare_gibbs(double beta_E) {
    if (!(beta_E >= 0.0)) throw std::invalid_argument("prepare_gibbs: beta_E must be >= 0");
    // Rotate |down> so the populations carry the thermal weights, then erase
    // the coherence. Must agree with the closed-form thermal state.
    const double z = std::exp(beta_E) + std::exp(-beta_E);
    const double alpha = std::sqrt(std::exp(beta_E) / z);
    const QubitState rho = dephase(prepare_pure(alpha));
    const QubitState direct = gibbs_state(pauli(PauliAxis::Z), beta_E);
    if (rho.rho().max_abs_diff(direct.rho()) > kPhysTol)
        throw std::logic_error("prepare_gibbs: dephased preparation disagrees with the thermal state");
    return rho;
}

PulseSpec pulse_for_projector(const BlochVector& axis, Outcome sign) {
    require_unit(axis, "pulse_for_projector");
    // The pulse must rotate the measured axis onto the |up> detector:
    // U^dag |up><up| U = (I + n.sigma)/2 with n = sign * axis requires
    // theta2 = acos(n_z) and phi2 = -atan2(n_y, n_x) - pi/2.
    const double s = sign_of(sign);
    const double nx = s * axis.x, ny = s * axis.y, nz = s * axis.z;
    const double theta2 = std::acos(std::min(1.0, std::max(-1.0, nz)));
    double phi2 = 0.0;
    if (std::hypot(nx, ny) >= kPhysTol) phi2 = -std::atan2(ny, nx) - M_PI / 2.0;
    return normalized(PulseSpec{theta2, phi2});
}

std::array<double, 2> first_measurement(const QubitState& state, const BlochVector& p_axis) {
    return {born_probability(state, projector(p_axis, Outcome::minus)),
            born_probability(state, projector(p_axis, Outcome::plus))};
}

std::array<double, 2> second_measurement_unconditional(const QubitState& state, const PulseSpec& evolution,
                                                       const BlochVector& q_axis) {
    const QubitState evolved = evolve(state, carrier_unitary(evolution));
    return {born_probability(evolved, projector(q_axis, Outcome::minus)),
            born_probability(evolved, projector(q_axis, Outcome::plus))};
}

std::array<std::optional<std::array<double, 2>>, 2> conditional_probabilities(const QubitState& state,
                                                                              const BlochVector& p_axis,
                                                                              const PulseSpec& evolution,
                                                                              const BlochVector& q_axis) {
    const auto p_n = first_measurement(state, p_axis);
    std::array<std::optional<std::array<double, 2>>, 2> rows;
    for (Outcome n : {Outcome::minus, Outcome::plus}) {
        const int i = index_of(n);
        if (p_n[i] <= 0.0) continue;  // undefined row, not silently zero
        // rank-1 collapse: the conditioned state is the projector itself
        const QubitState collapsed{projector(p_axis, n)};
        rows[i] = second_measurement_unconditional(collapsed, evolution, q_axis);
    }
    return rows;
}

OutcomeDistribution joint_distribution(const ProtocolConfig& config) {
    config.validate();
    const QubitState rho = config.initial_state();
    OutcomeDistribution dist;
    dist.p_n = first_measurement(rho, config.p_axis);
    dist.q_m = second_measurement_unconditional(rho, config.evolution, config.q_axis);
    dist.p_m_given_n = conditional_probabilities(rho, config.p_axis, config.evolution, config.q_axis);
    for (int n = 0; n < 2; ++n) {
        const auto& row = dist.p_m_given_n[n];
        for (int m = 0; m < 2; ++m) dist.p_nm[n][m] = row ? dist.p_n[n] * (*row)[m] : 0.0;
    }
    dist.validate();
    return dist;
}

void OutcomeDistribution::validate() const {
    const auto in01 = [](double v) { return v >= 0.0 && v <= 1.0; };
    for (int k = 0; k < 2; ++k)
        if (!in01(p_n[k]) || !in01(q_m[k]))
            throw std::logic_error("OutcomeDistribution: probability outside [0, 1]");
    if (std::abs(p_n[0] + p_n[1] - 1.0) > kPhysTol || std::abs(q_m[0] + q_m[1] - 1.0) > kPhysTol)
        throw std::logic_error("OutcomeDistribution: marginals do not sum to 1");
    for (int n = 0; n < 2; ++n) {
        const auto& row = p_m_given_n[n];
        if (row && std::abs((*row)[0] + (*row)[1] - 1.0) > kPhysTol)
            throw std::logic_error("OutcomeDistribution: conditional row does not sum to 1");
        for (int m = 0; m < 2; ++m) {
            if (row && !in01((*row)[m]))
                throw std::logic_error("OutcomeDistribution: conditional outside [0, 1]");
            if (!in01(p_nm[n][m])) throw std::logic_error("OutcomeDistribution: joint outside [0, 1]");
            const double expected = row ? p_n[n] * (*row)[m] : 0.0;
            if (std::abs(p_nm[n][m] - expected) > kPhysTol)
                throw std::logic_error("OutcomeDistribution: p_nm inconsistent with p_n * p_{m|n}");
        }
    }
}

OutcomeDistribution OutcomeDistribution::with_swapped_m_labels() const {
    OutcomeDistribution s = *this;
    std::swap(s.q_m[0], s.q_m[1]);
    for (int n = 0; n < 2; ++n) {
        if (s.p_m_given_n[n]) std::swap((*s.p_m_given_n[n])[0], (*s.p_m_given_n[n])[1]);
        std::swap(s.p_nm[n][0], s.p_nm[n][1]);
    }
    return s;
}

}  // namespace tpmsim
