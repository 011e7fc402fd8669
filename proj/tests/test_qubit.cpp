#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "test_support.hpp"
#include "tpmsim/qubit.hpp"

using namespace tpmsim;

namespace {

Operator2 outer_up() { return {0.0, 0.0, 0.0, 1.0}; }
Operator2 outer_down() { return {1.0, 0.0, 0.0, 0.0}; }

bool approx(double a, double b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("pauli matrices carry the adopted conventions") {
    const Operator2 z = pauli(PauliAxis::Z);
    CHECK(z.approx_equal({-1.0, 0.0, 0.0, 1.0}));

    // sigma_y |down> = +i |up>
    const Operator2 y = pauli(PauliAxis::Y);
    CHECK(y(0, 0) == cplx{0.0, 0.0});
    CHECK(y(1, 0) == cplx{0.0, 1.0});
    CHECK(y(0, 1) == cplx{0.0, -1.0});

    const Operator2 x = pauli(PauliAxis::X);
    CHECK((x * x).approx_equal(Operator2::identity()));
    CHECK(std::abs(y.trace()) == 0.0);
    CHECK(pauli(PauliAxis::I).approx_equal(Operator2::identity()));

    // involution and pairwise anticommutation
    for (const Operator2& s : {x, y, z}) CHECK((s * s).approx_equal(Operator2::identity()));
    CHECK((x * y + y * x).approx_equal(Operator2::zero()));
    CHECK((y * z + z * y).approx_equal(Operator2::zero()));
    CHECK((x * z + z * x).approx_equal(Operator2::zero()));
}

TEST_CASE("bloch_operator") {
    CHECK(bloch_operator({0.0, 0.0, 1.0}).approx_equal(pauli(PauliAxis::Z)));

    const Operator2 o = bloch_operator({0.5, std::sqrt(3.0) / 2.0, 0.0});
    const Operator2 expected =
        cplx{0.5, 0.0} * pauli(PauliAxis::X) + cplx{std::sqrt(3.0) / 2.0, 0.0} * pauli(PauliAxis::Y);
    CHECK(o.approx_equal(expected));

    const auto eig = bloch_operator({1.0, 0.0, 0.0}).hermitian_eigenvalues();
    CHECK(approx(eig[0], -1.0));
    CHECK(approx(eig[1], 1.0));

    CHECK_THROWS_AS(bloch_operator({0.5, 0.0, 0.0}), std::invalid_argument);

    Rng rng(7001);
    for (int k = 0; k < 1000; ++k) {
        const BlochVector n = test_support::random_axis(rng);
        const Operator2 op = bloch_operator(n);
        CHECK(op.is_hermitian());
        CHECK(std::abs(op.trace()) <= 1e-12);
        CHECK((op * op).approx_equal(Operator2::identity()));
    }
}

TEST_CASE("projector") {
    CHECK(projector({0.0, 0.0, 1.0}, Outcome::plus).approx_equal(outer_up()));
    CHECK(projector({0.0, 0.0, 1.0}, Outcome::minus).approx_equal(outer_down()));

    const Operator2 yplus = projector({0.0, 1.0, 0.0}, Outcome::plus);
    CHECK(yplus.approx_equal({cplx{0.5, 0.0}, cplx{0.0, -0.5}, cplx{0.0, 0.5}, cplx{0.5, 0.0}}));

    CHECK_THROWS_AS(projector({0.0, 1.1, 0.0}, Outcome::plus), std::invalid_argument);

    Rng rng(7002);
    for (int k = 0; k < 1000; ++k) {
        const BlochVector n = test_support::random_axis(rng);
        const Operator2 plus = projector(n, Outcome::plus);
        const Operator2 minus = projector(n, Outcome::minus);
        CHECK((plus * plus).approx_equal(plus));
        CHECK(plus.is_hermitian());
        CHECK(approx(plus.trace().real(), 1.0));
        CHECK((plus + minus).approx_equal(Operator2::identity()));
    }
}

TEST_CASE("carrier_unitary") {
    CHECK(carrier_unitary(0.0, 0.0).approx_equal(Operator2::identity()));
    CHECK(carrier_unitary(0.0, 2.1).approx_equal(Operator2::identity()));

    const Operator2 full_flip = carrier_unitary(M_PI, 0.0);
    CHECK(full_flip.approx_equal(cplx{0.0, -1.0} * pauli(PauliAxis::X)));

    // (I + i sigma_y)/sqrt(2) = [[1, 1], [-1, 1]] / sqrt(2)
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(carrier_unitary(M_PI / 2.0, M_PI / 2.0)
              .approx_equal({cplx{r, 0.0}, cplx{r, 0.0}, cplx{-r, 0.0}, cplx{r, 0.0}}));

    Rng rng(7003);
    for (int k = 0; k < 1000; ++k) {
        const Operator2 u = carrier_unitary(rng.uniform(0.0, 2.0 * M_PI), rng.uniform(-M_PI, M_PI));
        CHECK(u.is_unitary());
    }
}

TEST_CASE("evolve") {
    const QubitState down = QubitState::down();
    CHECK(evolve(down, Operator2::identity()).rho().approx_equal(down.rho()));
    CHECK(evolve(down, carrier_unitary(M_PI, 0.0)).rho().approx_equal(outer_up()));

    const QubitState mixed = QubitState::maximally_mixed();
    CHECK(evolve(mixed, carrier_unitary(1.234, 0.7)).rho().approx_equal(mixed.rho()));

    CHECK_THROWS_AS(evolve(down, cplx{2.0, 0.0} * Operator2::identity()), std::invalid_argument);

    Rng rng(7004);
    for (int k = 0; k < 200; ++k) {
        const QubitState state =
            gibbs_state(bloch_operator(test_support::random_axis(rng)), rng.uniform(0.0, 2.0));
        const QubitState out =
            evolve(state, carrier_unitary(rng.uniform(0.0, 2 * M_PI), rng.uniform(-M_PI, M_PI)));
        CHECK(approx(out.rho().trace().real(), 1.0));
        CHECK(out.rho().is_hermitian());
    }
}

TEST_CASE("gibbs_state") {
    CHECK(gibbs_state(pauli(PauliAxis::Z), 0.0).rho().approx_equal(QubitState::maximally_mixed().rho()));

    // beta E = 1: populations e^{+-1} / Z with Z = e + 1/e = 3.0862
    const double z1 = 3.0861612696304874;
    const QubitState hot = gibbs_state(pauli(PauliAxis::Z), 1.0);
    CHECK(approx(hot(0, 0).real(), std::exp(1.0) / z1));
    CHECK(approx(hot(1, 1).real(), std::exp(-1.0) / z1));
    CHECK(approx(hot(0, 0).real(), 0.8807970779778824));
    CHECK(approx(hot(1, 1).real(), 0.11920292202211756));
    CHECK(std::abs(hot(0, 1)) == 0.0);

    CHECK_THROWS_AS(gibbs_state({0.0, cplx{1.0, 0.0}, cplx{2.0, 0.0}, 0.0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(gibbs_state(pauli(PauliAxis::Z), -0.5), std::invalid_argument);

    Rng rng(7005);
    for (int k = 0; k < 300; ++k) {
        // random Hermitian H = a I + b n.sigma
        const BlochVector n = test_support::random_axis(rng);
        const Operator2 h = cplx{rng.uniform(-1.0, 1.0), 0.0} * Operator2::identity() +
                            cplx{rng.uniform(-2.0, 2.0), 0.0} * bloch_operator(n);
        const double beta = rng.uniform(0.0, 3.0);
        const QubitState rho = gibbs_state(h, beta);
        CHECK(approx(rho.rho().trace().real(), 1.0));
        CHECK((rho.rho() * h).approx_equal(h * rho.rho()));
    }
}

TEST_CASE("born_probability") {
    CHECK(born_probability(QubitState::down(), outer_down()) == 1.0);
    CHECK(approx(born_probability(QubitState::maximally_mixed(), outer_up()), 0.5));

    // alpha = sqrt(2/3): |<down|psi>|^2 = 2/3
    const QubitState psi =
        evolve(QubitState::down(), carrier_unitary(2.0 * std::acos(std::sqrt(2.0 / 3.0)), 0.0));
    CHECK(approx(born_probability(psi, outer_down()), 2.0 / 3.0));

    CHECK_THROWS_AS(born_probability(QubitState::down(), pauli(PauliAxis::X)), std::invalid_argument);

    Rng rng(7006);
    for (int k = 0; k < 500; ++k) {
        const QubitState rho =
            gibbs_state(bloch_operator(test_support::random_axis(rng)), rng.uniform(0.0, 3.0));
        const BlochVector n = test_support::random_axis(rng);
        const double sum = born_probability(rho, projector(n, Outcome::plus)) +
                           born_probability(rho, projector(n, Outcome::minus));
        CHECK(approx(sum, 1.0));
    }
}

TEST_CASE("post_measurement_state") {
    const Operator2 p_minus = projector({0.0, 0.0, 1.0}, Outcome::minus);
    const QubitState psi = evolve(QubitState::down(), carrier_unitary(1.1, 0.3));
    CHECK(post_measurement_state(psi, p_minus).rho().approx_equal(p_minus));
    CHECK(post_measurement_state(QubitState::maximally_mixed(), projector({0, 0, 1}, Outcome::plus))
              .rho()
              .approx_equal(outer_up()));
    CHECK_THROWS_AS(post_measurement_state(QubitState::up(), p_minus), OutcomeImpossibleError);
}

TEST_CASE("QubitState enforces physicality") {
    CHECK_THROWS_AS(QubitState({cplx{0.5, 0.0}, cplx{0.1, 0.0}, cplx{0.3, 0.0}, cplx{0.5, 0.0}}),
                    std::invalid_argument);  // not Hermitian
    CHECK_THROWS_AS(QubitState({cplx{0.9, 0.0}, 0.0, 0.0, cplx{0.2, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(QubitState({cplx{1.2, 0.0}, 0.0, 0.0, cplx{-0.2, 0.0}}), std::invalid_argument);
}

TEST_CASE("library operators agree with the amplitude oracle") {
    Rng rng(7007);
    for (int k = 0; k < 200; ++k) {
        const double theta = rng.uniform(0.0, 2 * M_PI), phi = rng.uniform(-M_PI, M_PI);
        const Operator2 u = carrier_unitary(theta, phi);
        const oracle::Ket from_down = oracle::apply_carrier(theta, phi, {1.0, 0.0});
        const oracle::Ket from_up = oracle::apply_carrier(theta, phi, {0.0, 1.0});
        CHECK(std::abs(u(0, 0) - from_down.a0) <= 1e-12);
        CHECK(std::abs(u(1, 0) - from_down.a1) <= 1e-12);
        CHECK(std::abs(u(0, 1) - from_up.a0) <= 1e-12);
        CHECK(std::abs(u(1, 1) - from_up.a1) <= 1e-12);

        const BlochVector n = test_support::random_axis(rng);
        const oracle::Ket plus = oracle::plus_eigenket({n.x, n.y, n.z});
        // the +1 eigenket must be a fixed point of projector(n, +)
        const Operator2 p = projector(n, Outcome::plus);
        CHECK(std::abs(p(0, 0) * plus.a0 + p(0, 1) * plus.a1 - plus.a0) <= 1e-12);
        CHECK(std::abs(p(1, 0) * plus.a0 + p(1, 1) * plus.a1 - plus.a1) <= 1e-12);
    }
}
