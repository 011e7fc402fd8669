#pragma once

// Exact 2x2 complex operator algebra for a single qubit.
//
// Basis order is (|down>, |up>) throughout, with
//   sigma_z = diag(-1, +1)        (|down> carries eigenvalue -1)
//   sigma_y |down> = +i |up>
// so a Hamiltonian E*sigma_z gives |down> the energy -E and the thermal
// weight e^{+beta E}. All physicality checks use an absolute tolerance of
// 1e-12; every operation here is a pure function over immutable values.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "tpmsim/errors.hpp"

namespace tpmsim {

using cplx = std::complex<double>;

inline constexpr double kPhysTol = 1e-12;

// Measurement outcome labels; index 0 is "-", index 1 is "+".
enum class Outcome : int { minus = 0, plus = 1 };

inline constexpr int index_of(Outcome o) { return static_cast<int>(o); }
inline constexpr Outcome other(Outcome o) { return o == Outcome::minus ? Outcome::plus : Outcome::minus; }
inline constexpr double sign_of(Outcome o) { return o == Outcome::minus ? -1.0 : +1.0; }

class Operator2 {
  public:
    Operator2() : e_{cplx{}, cplx{}, cplx{}, cplx{}} {}
    Operator2(cplx m00, cplx m01, cplx m10, cplx m11) : e_{m00, m01, m10, m11} {}

    static Operator2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Operator2 zero() { return {}; }

    cplx& operator()(int r, int c) { return e_[static_cast<std::size_t>(2 * r + c)]; }
    const cplx& operator()(int r, int c) const { return e_[static_cast<std::size_t>(2 * r + c)]; }

    Operator2 operator+(const Operator2& o) const {
        return {e_[0] + o.e_[0], e_[1] + o.e_[1], e_[2] + o.e_[2], e_[3] + o.e_[3]};
    }
    Operator2 operator-(const Operator2& o) const {
        return {e_[0] - o.e_[0], e_[1] - o.e_[1], e_[2] - o.e_[2], e_[3] - o.e_[3]};
    }
    Operator2 operator*(const Operator2& o) const {
        return {e_[0] * o.e_[0] + e_[1] * o.e_[2], e_[0] * o.e_[1] + e_[1] * o.e_[3],
                e_[2] * o.e_[0] + e_[3] * o.e_[2], e_[2] * o.e_[1] + e_[3] * o.e_[3]};
    }
    friend Operator2 operator*(cplx s, const Operator2& o) {
        return {s * o.e_[0], s * o.e_[1], s * o.e_[2], s * o.e_[3]};
    }

    Operator2 adjoint() const {
        return {std::conj(e_[0]), std::conj(e_[2]), std::conj(e_[1]), std::conj(e_[3])};
    }

    cplx trace() const { return e_[0] + e_[3]; }
    cplx det() const { return e_[0] * e_[3] - e_[1] * e_[2]; }

    double max_abs_diff(const Operator2& o) const {
        double m = 0.0;
        for (int k = 0; k < 4; ++k) m = std::max(m, std::abs(e_[static_cast<std::size_t>(k)] - o.e_[static_cast<std::size_t>(k)]));
        return m;
    }

    bool approx_equal(const Operator2& o, double tol = kPhysTol) const { return max_abs_diff(o) <= tol; }

    bool is_finite() const {
        for (const auto& v : e_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        return true;
    }

    bool is_hermitian(double tol = kPhysTol) const { return max_abs_diff(adjoint()) <= tol; }
    bool is_unitary(double tol = kPhysTol) const { return ((*this) * adjoint()).max_abs_diff(identity()) <= tol; }
    bool is_projector(double tol = kPhysTol) const {
        return is_hermitian(tol) && ((*this) * (*this)).max_abs_diff(*this) <= tol;
    }

    // Eigenvalues of a Hermitian operator, ascending.
    std::array<double, 2> hermitian_eigenvalues() const {
        const double a = e_[0].real();
        const double d = e_[3].real();
        const double h = (a - d) / 2.0;
        const double r = std::sqrt(h * h + std::norm(e_[1]));
        const double mid = (a + d) / 2.0;
        return {mid - r, mid + r};
    }

  private:
    std::array<cplx, 4> e_;
};

struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 1.0;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    BlochVector negated() const { return {-x, -y, -z}; }
};

inline void require_unit(const BlochVector& n, const char* where) {
    if (std::abs(n.norm() - 1.0) > kPhysTol)
        throw std::invalid_argument(std::string(where) + ": Bloch vector must be unit length");
}

// Rotation pulse parameters: theta in [0, 2*pi), phi in (-pi, pi].
struct PulseSpec {
    double theta = 0.0;
    double phi = 0.0;
};

inline PulseSpec normalized(PulseSpec p) {
    const double two_pi = 2.0 * M_PI;
    p.theta = std::fmod(p.theta, two_pi);
    if (p.theta < 0) p.theta += two_pi;
    p.phi = std::fmod(p.phi, two_pi);
    if (p.phi > M_PI) p.phi -= two_pi;
    if (p.phi <= -M_PI) p.phi += two_pi;
    return p;
}

enum class PauliAxis { I, X, Y, Z };

inline Operator2 pauli(PauliAxis axis) {
    switch (axis) {
        case PauliAxis::I: return Operator2::identity();
        case PauliAxis::X: return {0.0, 1.0, 1.0, 0.0};
        case PauliAxis::Y: return {0.0, cplx{0.0, -1.0}, cplx{0.0, 1.0}, 0.0};
        case PauliAxis::Z: return {-1.0, 0.0, 0.0, 1.0};
    }
    throw std::invalid_argument("pauli: unknown axis");
}

// n . sigma for a unit Bloch vector n.
inline Operator2 bloch_operator(const BlochVector& n) {
    require_unit(n, "bloch_operator");
    return {cplx{-n.z, 0.0}, cplx{n.x, -n.y}, cplx{n.x, n.y}, cplx{n.z, 0.0}};
}

// (I + sign * n . sigma) / 2
inline Operator2 projector(const BlochVector& n, Outcome sign) {
    require_unit(n, "projector");
    const double s = sign_of(sign);
    return {cplx{(1.0 - s * n.z) / 2.0, 0.0}, cplx{s * n.x / 2.0, -s * n.y / 2.0},
            cplx{s * n.x / 2.0, s * n.y / 2.0}, cplx{(1.0 + s * n.z) / 2.0}};
}

// U_C(theta, phi) = cos(theta/2) I - i sin(theta/2) (sigma_x cos phi - sigma_y sin phi)
inline Operator2 carrier_unitary(const PulseSpec& pulse) {
    const double c = std::cos(pulse.theta / 2.0);
    const double s = std::sin(pulse.theta / 2.0);
    const cplx off{std::cos(pulse.phi), std::sin(pulse.phi)};  // e^{i phi}
    // matrix form: [[c, -i s e^{i phi}], [-i s e^{-i phi}, c]]
    return {cplx{c, 0.0}, cplx{0.0, -s} * off, cplx{0.0, -s} * std::conj(off), cplx{c, 0.0}};
}

inline Operator2 carrier_unitary(double theta, double phi) { return carrier_unitary(PulseSpec{theta, phi}); }

// Density matrix with enforced physicality: Hermitian, unit trace,
// nonnegative spectrum (all within 1e-12).
class QubitState {
  public:
    explicit QubitState(const Operator2& rho) : rho_(rho) {
        if (!rho_.is_finite()) throw std::invalid_argument("QubitState: non-finite entries");
        if (!rho_.is_hermitian(kPhysTol)) throw std::invalid_argument("QubitState: not Hermitian");
        if (std::abs(rho_.trace() - cplx{1.0, 0.0}) > kPhysTol)
            throw std::invalid_argument("QubitState: trace != 1");
        if (rho_.hermitian_eigenvalues()[0] < -kPhysTol)
            throw std::invalid_argument("QubitState: negative eigenvalue");
    }

    static QubitState down() { return QubitState({1.0, 0.0, 0.0, 0.0}); }
    static QubitState up() { return QubitState({0.0, 0.0, 0.0, 1.0}); }
    static QubitState maximally_mixed() { return QubitState({0.5, 0.0, 0.0, 0.5}); }

    const Operator2& rho() const { return rho_; }
    const cplx& operator()(int r, int c) const { return rho_(r, c); }

  private:
    Operator2 rho_;
};

inline QubitState evolve(const QubitState& state, const Operator2& u) {
    if (!u.is_unitary(kPhysTol)) throw std::invalid_argument("evolve: operator is not unitary");
    return QubitState(u * state.rho() * u.adjoint());
}

// exp(-beta H) / tr{exp(-beta H)} via the closed form
// exp(a I + b n.sigma) = e^a (cosh b I + sinh b n.sigma).
inline QubitState gibbs_state(const Operator2& h, double beta) {
    if (!h.is_hermitian(kPhysTol)) throw std::invalid_argument("gibbs_state: H must be Hermitian");
    if (!(beta >= 0.0)) throw std::invalid_argument("gibbs_state: beta must be >= 0");
    // -beta H = a I + v . sigma; the e^a factor cancels against the trace,
    // leaving (I + tanh|v| n.sigma) / 2.
    const double vz = -beta * (h(1, 1).real() - h(0, 0).real()) / 2.0;
    const double vx = -beta * h(1, 0).real();
    const double vy = -beta * h(1, 0).imag();
    const double b = std::sqrt(vx * vx + vy * vy + vz * vz);
    if (b <= 0.0) return QubitState::maximally_mixed();
    const double t = std::tanh(b);
    const BlochVector n{vx / b, vy / b, vz / b};
    Operator2 rho{cplx{(1.0 - t * n.z) / 2.0, 0.0}, cplx{t * n.x / 2.0, -t * n.y / 2.0},
                  cplx{t * n.x / 2.0, t * n.y / 2.0}, cplx{(1.0 + t * n.z) / 2.0, 0.0}};
    return QubitState(rho);
}

// tr{P rho}, clamped to [0, 1]. Negativity beyond -1e-12 indicates a logic
// bug upstream and is reported instead of clamped.
inline double born_probability(const QubitState& state, const Operator2& proj) {
    if (!proj.is_projector(1e-9)) throw std::invalid_argument("born_probability: operator is not a projector");
    const double p = (proj * state.rho()).trace().real();
    if (p < -kPhysTol) throw std::logic_error("born_probability: probability below -1e-12");
    if (p > 1.0 + kPhysTol) throw std::logic_error("born_probability: probability above 1+1e-12");
    return std::min(std::max(p, 0.0), 1.0);
}

// P rho P / tr{P rho P}. For a rank-1 projector this collapses to P itself.
inline QubitState post_measurement_state(const QubitState& state, const Operator2& proj) {
    const double p = born_probability(state, proj);
    if (p <= 0.0) throw OutcomeImpossibleError("post_measurement_state: outcome has zero probability");
    const Operator2 m = proj * state.rho() * proj;
    return QubitState((cplx{1.0 / p, 0.0}) * m);
}

}  // namespace tpmsim
