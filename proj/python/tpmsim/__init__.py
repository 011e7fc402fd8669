"""Two-point-measurement qubit simulator.

Exact single-qubit protocol distributions, information/work functionals,
and seeded finite-shot replication. Basis order is (|down>, |up>) with
sigma_z = diag(-1, +1).
"""

from tpmsim._core import (
    ProtocolConfig,
    ShotPlan,
    bloch_operator,
    born_probability,
    carrier_unitary,
    dephase,
    evolve,
    exact_functionals,
    gibbs_state,
    joint_distribution,
    pauli,
    post_measurement_state,
    prepare_gibbs,
    prepare_pure,
    projector,
    pulse_for_projector,
    replicate,
    run_suite,
)

__all__ = [
    "ProtocolConfig",
    "ShotPlan",
    "bloch_operator",
    "born_probability",
    "carrier_unitary",
    "dephase",
    "evolve",
    "exact_functionals",
    "gibbs_state",
    "joint_distribution",
    "pauli",
    "post_measurement_state",
    "prepare_gibbs",
    "prepare_pure",
    "projector",
    "pulse_for_projector",
    "replicate",
    "run_suite",
]
