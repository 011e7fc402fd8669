// Python bindings for the core operations.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tpmsim/emit.hpp"
#include "tpmsim/fluctuation.hpp"
#include "tpmsim/montecarlo.hpp"
#include "tpmsim/protocol.hpp"
#include "tpmsim/qubit.hpp"
#include "tpmsim/suites.hpp"

namespace py = pybind11;
using namespace tpmsim;

namespace {

py::array_t<std::complex<double>> to_numpy(const Operator2& op) {
    py::array_t<std::complex<double>> arr({2, 2});
    auto view = arr.mutable_unchecked<2>();
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) view(r, c) = op(r, c);
    return arr;
}

Operator2 from_numpy(const py::array_t<std::complex<double>>& arr) {
    if (arr.ndim() != 2 || arr.shape(0) != 2 || arr.shape(1) != 2)
        throw std::invalid_argument("expected a 2x2 complex array");
    auto view = arr.unchecked<2>();
    return {view(0, 0), view(0, 1), view(1, 0), view(1, 1)};
}

BlochVector to_axis(const std::array<double, 3>& v) { return {v[0], v[1], v[2]}; }

Outcome to_outcome(const std::string& s) {
    if (s == "+" || s == "plus") return Outcome::plus;
    if (s == "-" || s == "minus") return Outcome::minus;
    throw std::invalid_argument("outcome must be '+' or '-'");
}

PauliAxis to_pauli_axis(const std::string& s) {
    if (s == "I" || s == "i") return PauliAxis::I;
    if (s == "X" || s == "x") return PauliAxis::X;
    if (s == "Y" || s == "y") return PauliAxis::Y;
    if (s == "Z" || s == "z") return PauliAxis::Z;
    throw std::invalid_argument("axis must be one of I, X, Y, Z");
}

ProtocolConfig make_config(const std::string& state, double alpha, double beta_e,
                           std::array<double, 3> p_axis, std::array<double, 3> q_axis, double theta1,
                           double phi1, double phi0, bool with_energy) {
    ProtocolConfig config;
    if (state == "pure") {
        config.initial = InitialStateSpec::make_pure(alpha);
    } else if (state == "gibbs") {
        config.initial = InitialStateSpec::make_gibbs(beta_e);
        with_energy = true;
    } else {
        throw std::invalid_argument("state must be 'pure' or 'gibbs'");
    }
    config.p_axis = to_axis(p_axis);
    config.q_axis = to_axis(q_axis);
    config.evolution = {theta1, phi1};
    config.prep_phase = phi0;
    if (with_energy) {
        EnergySpec energy;
        energy.beta_E = config.initial.kind == InitialStateSpec::Kind::gibbs ? beta_e : 0.0;
        config.energy = energy;
    }
    config.validate();
    return config;
}

py::dict dist_to_dict(const OutcomeDistribution& dist) {
    py::dict d;
    d["p_n"] = dist.p_n;
    d["q_m"] = dist.q_m;
    py::list rows;
    for (int n = 0; n < 2; ++n) {
        if (dist.p_m_given_n[n])
            rows.append(py::cast(*dist.p_m_given_n[n]));
        else
            rows.append(py::none());
    }
    d["p_m_given_n"] = rows;
    d["p_nm"] = dist.p_nm;
    return d;
}

py::dict exact_functionals(const ProtocolConfig& config) {
    const OutcomeDistribution dist = joint_distribution(config);
    const InfoRecord info = pointwise_mutual_information(dist);
    py::dict d;
    d["total_mi"] = total_mutual_information(dist, info);
    d["exp_neg_info"] = exp_neg_info_average(dist, info);
    if (config.energy) {
        const ThermoRecord thermo = work_matrix(*config.energy);
        d["jarzynski"] = jarzynski_average(dist, thermo);
        d["dissipation"] = dissipation_average(dist, thermo);
    }
    return d;
}

py::dict replicate_to_dict(const ProtocolConfig& config, const ShotPlan& plan, unsigned threads) {
    const ReplicationSummary summary = replicate(config, plan, threads);
    py::dict d;
    for (const EstimateReport& r : summary.reports) {
        py::dict q;
        q["mean"] = r.point_estimate;
        q["rms_error"] = r.rms_error;
        q["replications"] = r.replications;
        q["shots"] = r.shots;
        d[py::str(r.quantity)] = q;
    }
    d["flagged_replications"] = summary.flagged_replications;
    d["singular_replications"] = summary.singular_replications;
    d["negative_info_replications"] = summary.negative_info_replications;
    return d;
}

py::list run_suite_py(const std::string& suite, const std::string& mode, py::object seed,
                      std::uint64_t shots, std::uint64_t reps, py::object spam, py::object phi1) {
    std::map<std::string, std::string> kv;
    kv["suite"] = suite;
    kv["mode"] = mode;
    kv["shots"] = std::to_string(shots);
    kv["reps"] = std::to_string(reps);
    if (!seed.is_none()) kv["seed"] = std::to_string(seed.cast<std::uint64_t>());
    if (!spam.is_none()) {
        const auto pair = spam.cast<std::array<double, 2>>();
        kv["spam"] = format_number(pair[0]) + "," + format_number(pair[1]);
    }
    if (!phi1.is_none()) kv["phi1"] = format_number(phi1.cast<double>());
    const SuiteSpec spec = resolve_suite_spec({}, kv);
    py::list out;
    for (const ResultRow& row : run_suite(spec)) {
        py::dict d;
        d["suite"] = row.suite;
        d["alpha_or_betaE"] = row.coord1;
        d["t_or_hf"] = row.coord2;
        d["quantity"] = row.quantity;
        d["exact"] = row.exact ? py::object(py::float_(*row.exact)) : py::none();
        d["mc_mean"] = row.mc_mean ? py::object(py::float_(*row.mc_mean)) : py::none();
        d["mc_rms"] = row.mc_rms ? py::object(py::float_(*row.mc_rms)) : py::none();
        d["flags"] = row.flags;
        out.append(d);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Two-point-measurement qubit simulator";

    py::class_<ProtocolConfig>(m, "ProtocolConfig")
        .def(py::init(&make_config), py::arg("state") = "pure", py::arg("alpha") = 1.0,
             py::arg("beta_e") = 0.0, py::arg("p_axis") = std::array<double, 3>{0, 0, 1},
             py::arg("q_axis") = std::array<double, 3>{0, 1, 0}, py::arg("theta1") = 0.0,
             py::arg("phi1") = 0.0, py::arg("phi0") = 0.0, py::arg("energy") = false);

    py::class_<ShotPlan>(m, "ShotPlan")
        .def(py::init([](std::uint64_t shots, std::uint64_t replications, std::uint64_t seed,
                         py::object spam) {
                 ShotPlan plan;
                 plan.shots_per_setting = shots;
                 plan.replications = replications;
                 plan.seed = seed;
                 if (!spam.is_none()) {
                     const auto pair = spam.cast<std::array<double, 2>>();
                     plan.spam = SpamModel{pair[0], pair[1]};
                 }
                 plan.validate();
                 return plan;
             }),
             py::arg("shots") = 40000, py::arg("replications") = 100, py::arg("seed") = 0,
             py::arg("spam") = py::none());

    m.def("pauli", [](const std::string& axis) { return to_numpy(pauli(to_pauli_axis(axis))); },
          py::arg("axis"));
    m.def("bloch_operator",
          [](std::array<double, 3> n) { return to_numpy(bloch_operator(to_axis(n))); }, py::arg("axis"));
    m.def("projector",
          [](std::array<double, 3> n, const std::string& sign) {
              return to_numpy(projector(to_axis(n), to_outcome(sign)));
          },
          py::arg("axis"), py::arg("sign"));
    m.def("carrier_unitary",
          [](double theta, double phi) { return to_numpy(carrier_unitary(theta, phi)); },
          py::arg("theta"), py::arg("phi") = 0.0);
    m.def("evolve",
          [](const py::array_t<std::complex<double>>& rho, const py::array_t<std::complex<double>>& u) {
              return to_numpy(evolve(QubitState(from_numpy(rho)), from_numpy(u)).rho());
          },
          py::arg("rho"), py::arg("u"));
    m.def("gibbs_state",
          [](const py::array_t<std::complex<double>>& h, double beta) {
              return to_numpy(gibbs_state(from_numpy(h), beta).rho());
          },
          py::arg("hamiltonian"), py::arg("beta"));
    m.def("born_probability",
          [](const py::array_t<std::complex<double>>& rho, const py::array_t<std::complex<double>>& p) {
              return born_probability(QubitState(from_numpy(rho)), from_numpy(p));
          },
          py::arg("rho"), py::arg("projector"));
    m.def("post_measurement_state",
          [](const py::array_t<std::complex<double>>& rho, const py::array_t<std::complex<double>>& p) {
              return to_numpy(post_measurement_state(QubitState(from_numpy(rho)), from_numpy(p)).rho());
          },
          py::arg("rho"), py::arg("projector"));
    m.def("prepare_pure",
          [](double alpha, double phi0) { return to_numpy(prepare_pure(alpha, phi0).rho()); },
          py::arg("alpha"), py::arg("phi0") = 0.0);
    m.def("prepare_gibbs", [](double beta_e) { return to_numpy(prepare_gibbs(beta_e).rho()); },
          py::arg("beta_e"));
    m.def("dephase",
          [](const py::array_t<std::complex<double>>& rho) {
              return to_numpy(dephase(QubitState(from_numpy(rho))).rho());
          },
          py::arg("rho"));
    m.def("pulse_for_projector",
          [](std::array<double, 3> axis, const std::string& sign) {
              const PulseSpec p = pulse_for_projector(to_axis(axis), to_outcome(sign));
              return std::make_pair(p.theta, p.phi);
          },
          py::arg("axis"), py::arg("sign"));

    m.def("joint_distribution",
          [](const ProtocolConfig& config) { return dist_to_dict(joint_distribution(config)); },
          py::arg("config"));
    m.def("exact_functionals", &exact_functionals, py::arg("config"));
    m.def("replicate", &replicate_to_dict, py::arg("config"), py::arg("plan"), py::arg("threads") = 1);
    m.def("run_suite", &run_suite_py, py::arg("suite"), py::arg("mode") = "exact",
          py::arg("seed") = py::none(), py::arg("shots") = 40000, py::arg("reps") = 100,
          py::arg("spam") = py::none(), py::arg("phi1") = py::none());
}
