"""Smoke tests for the python module."""

import math

import numpy as np
import pytest

import tpmsim


def test_pauli_conventions():
    z = tpmsim.pauli("z")
    assert np.allclose(z, np.diag([-1.0, 1.0]))
    y = tpmsim.pauli("y")
    # sigma_y |down> = +i |up>
    assert np.allclose(y @ np.array([1.0, 0.0]), np.array([0.0, 1.0j]))
    x = tpmsim.pauli("x")
    assert np.allclose(x @ x, np.eye(2))


def test_carrier_unitary_and_evolution():
    u = tpmsim.carrier_unitary(0.62831853, 0.0)
    assert np.allclose(u @ u.conj().T, np.eye(2), atol=1e-12)
    rho = tpmsim.prepare_pure(1.0)
    flipped = tpmsim.evolve(rho, tpmsim.carrier_unitary(math.pi, 0.0))
    assert np.allclose(flipped, np.diag([0.0, 1.0]), atol=1e-12)


def test_gibbs_state_populations():
    rho = tpmsim.prepare_gibbs(1.0)
    z = math.exp(1.0) + math.exp(-1.0)
    assert rho[0, 0].real == pytest.approx(math.exp(1.0) / z, abs=1e-12)
    assert rho[1, 1].real == pytest.approx(math.exp(-1.0) / z, abs=1e-12)
    direct = tpmsim.gibbs_state(tpmsim.pauli("z"), 1.0)
    assert np.allclose(rho, direct, atol=1e-12)


def test_projector_pulse_roundtrip():
    axis = (0.5, math.sqrt(3.0) / 2.0, 0.0)
    theta2, phi2 = tpmsim.pulse_for_projector(axis, "+")
    u = tpmsim.carrier_unitary(theta2, phi2)
    up = np.diag([0.0, 1.0]).astype(complex)
    assert np.allclose(u.conj().T @ up @ u, tpmsim.projector(axis, "+"), atol=1e-12)


def test_joint_distribution_and_functionals():
    config = tpmsim.ProtocolConfig(
        state="pure", alpha=math.sqrt(2.0 / 3.0), theta1=4.0 * math.pi / 5.0
    )
    dist = tpmsim.joint_distribution(config)
    assert sum(dist["p_n"]) == pytest.approx(1.0, abs=1e-12)
    assert dist["q_m"][0] == pytest.approx(0.21658994017028926, abs=1e-12)
    fun = tpmsim.exact_functionals(config)
    assert fun["exp_neg_info"] == pytest.approx(1.0, abs=1e-12)
    assert fun["total_mi"] == pytest.approx(0.5041185703430315, abs=1e-12)


def test_jarzynski_identity():
    config = tpmsim.ProtocolConfig(
        state="gibbs", beta_e=1.0, q_axis=(1.0, 0.0, 0.0), theta1=0.7, phi1=0.0
    )
    fun = tpmsim.exact_functionals(config)
    assert fun["jarzynski"] == pytest.approx(1.0, abs=1e-12)
    assert fun["dissipation"] == pytest.approx(math.tanh(1.0), abs=1e-12)


def test_replicate_deterministic():
    config = tpmsim.ProtocolConfig(state="gibbs", beta_e=0.5, q_axis=(1.0, 0.0, 0.0))
    plan = tpmsim.ShotPlan(shots=2000, replications=10, seed=42)
    a = tpmsim.replicate(config, plan)
    b = tpmsim.replicate(config, plan, threads=4)
    assert a["jarzynski"]["mean"] == b["jarzynski"]["mean"]
    assert a["p--"]["rms_error"] == b["p--"]["rms_error"]
    assert a["jarzynski"]["mean"] == pytest.approx(1.0, abs=0.05)


def test_run_suite_rows():
    rows = tpmsim.run_suite("table4", mode="exact")
    assert len(rows) == 18
    diss = [
        r
        for r in rows
        if r["quantity"] == "dissipation" and r["alpha_or_betaE"] == "1" and r["t_or_hf"] == "Hf1"
    ]
    assert len(diss) == 1
    assert diss[0]["exact"] == pytest.approx(0.7615941559557649, abs=1e-12)
    assert diss[0]["mc_mean"] is None


def test_invalid_arguments_raise():
    with pytest.raises(ValueError):
        tpmsim.ProtocolConfig(state="pure", alpha=1.2)
    with pytest.raises(ValueError):
        tpmsim.prepare_gibbs(-0.1)
