#include "tpmsim/suites.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tpmsim/emit.hpp"
#include "tpmsim/fluctuation.hpp"
#include "tpmsim/reference_values.hpp"
#include "tpmsim/rng.hpp"

namespace tpmsim {

namespace {

constexpr double kTau = M_PI / 5.0;  // theta advanced per time step

const BlochVector kZ{0.0, 0.0, 1.0};
const BlochVector kY{0.0, 1.0, 0.0};

const std::array<double, 3> kAlphas{1.0, std::sqrt(2.0 / 3.0), std::sqrt(1.0 / 3.0)};
const std::array<double, 3> kBetaEs{0.2, 0.5, 1.0};

struct FinalAxis {
    const char* label;
    BlochVector axis;
};
const std::array<FinalAxis, 3> kFinalAxes{{{"Hf1", {1.0, 0.0, 0.0}},
                                           {"Hf2", {0.0, 1.0, 0.0}},
                                           {"Hf3", {0.5, std::sqrt(3.0) / 2.0, 0.0}}}};

const std::vector<std::string> kFunctionalQuantities{"total_mi", "exp_neg_info"};
const std::vector<std::string> kThermoQuantities{"dissipation", "jarzynski"};
const std::vector<std::string> kProbabilityQuantities{"p-", "p+", "q-", "q+",
                                                      "p-|-", "p-|+", "p+|-", "p+|+"};

std::vector<SuiteCell> pure_grid(const std::vector<double>& alphas, std::optional<double> phi1,
                                 const std::vector<std::string>& quantities) {
    std::vector<SuiteCell> cells;
    for (double alpha : alphas) {
        for (int k = 1; k <= 4; ++k) {
            ProtocolConfig config;
            config.initial = InitialStateSpec::make_pure(alpha);
            config.p_axis = kZ;
            config.q_axis = kY;
            config.evolution = {k * kTau, phi1.value_or(0.0)};
            cells.push_back({format_number(alpha), std::to_string(k), config, quantities});
        }
    }
    return cells;
}

std::vector<SuiteCell> thermal_grid(std::optional<double> phi1) {
    std::vector<SuiteCell> cells;
    for (double beta_E : kBetaEs) {
        for (const FinalAxis& hf : kFinalAxes) {
            ProtocolConfig config;
            config.initial = InitialStateSpec::make_gibbs(beta_E);
            config.p_axis = kZ;
            config.q_axis = hf.axis;
            // default phase makes the drive commute with {Q_m}
            const double commuting_phi1 = -std::atan2(hf.axis.y, hf.axis.x);
            config.evolution = {kTau, phi1.value_or(commuting_phi1)};
            EnergySpec energy;
            energy.beta_E = beta_E;
            config.energy = energy;
            cells.push_back({format_number(beta_E), hf.label, config, kThermoQuantities});
        }
    }
    return cells;
}

std::vector<std::string> custom_quantities(const ProtocolConfig& config) {
    std::vector<std::string> q = kProbabilityQuantities;
    for (const auto& name : {"p--", "p-+", "p+-", "p++"}) q.push_back(name);
    for (const auto& name : kFunctionalQuantities) q.push_back(name);
    if (config.energy)
        for (const auto& name : kThermoQuantities) q.push_back(name);
    return q;
}

// Exact value of one named quantity; nullopt when undefined (conditional
// row with zero probability).
std::optional<double> exact_quantity(const std::string& name, const OutcomeDistribution& dist,
                                     const ProtocolConfig& config) {
    const auto cond = [&](int n, int m) -> std::optional<double> {
        if (!dist.p_m_given_n[n]) return std::nullopt;
        return (*dist.p_m_given_n[n])[m];
    };
    if (name == "p-") return dist.p_n[0];
    if (name == "p+") return dist.p_n[1];
    if (name == "q-") return dist.q_m[0];
    if (name == "q+") return dist.q_m[1];
    if (name == "p-|-") return cond(0, 0);
    if (name == "p+|-") return cond(0, 1);
    if (name == "p-|+") return cond(1, 0);
    if (name == "p+|+") return cond(1, 1);
    if (name == "p--") return dist.p_nm[0][0];
    if (name == "p-+") return dist.p_nm[0][1];
    if (name == "p+-") return dist.p_nm[1][0];
    if (name == "p++") return dist.p_nm[1][1];
    if (name == "total_mi" || name == "exp_neg_info") {
        const InfoRecord info = pointwise_mutual_information(dist);
        return name == "total_mi" ? total_mutual_information(dist, info)
                                  : exp_neg_info_average(dist, info);
    }
    if (name == "jarzynski" || name == "dissipation") {
        if (!config.energy) return std::nullopt;
        const ThermoRecord thermo = work_matrix(*config.energy);
        return name == "jarzynski" ? jarzynski_average(dist, thermo) : dissipation_average(dist, thermo);
    }
    throw std::logic_error("unknown quantity: " + name);
}

}  // namespace

std::string suite_name(SuiteKind kind) {
    switch (kind) {
        case SuiteKind::table2: return "table2";
        case SuiteKind::table4: return "table4";
        case SuiteKind::fig2: return "fig2";
        case SuiteKind::custom: return "custom";
    }
    return "?";
}

std::vector<SuiteCell> suite_cells(const SuiteSpec& spec) {
    switch (spec.suite) {
        case SuiteKind::table2:
            return pure_grid({kAlphas.begin(), kAlphas.end()}, spec.phi1_override, kFunctionalQuantities);
        case SuiteKind::fig2: {
            std::vector<std::string> q = kProbabilityQuantities;
            for (const auto& name : kFunctionalQuantities) q.push_back(name);
            return pure_grid({kAlphas[1]}, spec.phi1_override, q);
        }
        case SuiteKind::table4:
            return thermal_grid(spec.phi1_override);
        case SuiteKind::custom: {
            if (!spec.custom_config) throw std::invalid_argument("custom suite requires a full protocol config");
            ProtocolConfig config = *spec.custom_config;
            if (spec.phi1_override) config.evolution.phi = *spec.phi1_override;
            config.validate();
            const std::string c1 = config.initial.kind == InitialStateSpec::Kind::pure
                                       ? format_number(config.initial.alpha)
                                       : format_number(config.initial.beta_E);
            return {{c1, format_number(config.evolution.theta / kTau), config, custom_quantities(config)}};
        }
    }
    throw std::logic_error("unknown suite");
}

std::vector<ResultRow> run_suite(const SuiteSpec& spec) {
    const bool want_exact = spec.mode != RunMode::montecarlo;
    const bool want_mc = spec.mode != RunMode::exact;
    std::vector<ResultRow> rows;
    std::uint64_t cell_index = 0;
    for (const SuiteCell& cell : suite_cells(spec)) {
        std::optional<OutcomeDistribution> dist;
        if (want_exact) dist = joint_distribution(cell.config);
        std::optional<ReplicationSummary> summary;
        if (want_mc) {
            // each grid cell gets its own deterministic seed so cells carry
            // independent shot noise
            ShotPlan plan = spec.plan;
            std::uint64_t mix = spec.plan.seed;
            (void)detail::splitmix64(mix);
            mix ^= 0x9E3779B97F4A7C15ULL * (cell_index + 1);
            plan.seed = detail::splitmix64(mix);
            summary = replicate(cell.config, plan, spec.threads);
        }
        ++cell_index;
        for (const std::string& name : cell.quantities) {
            ResultRow row;
            row.suite = suite_name(spec.suite);
            row.coord1 = cell.coord1;
            row.coord2 = cell.coord2;
            row.quantity = name;
            std::string flags;
            if (dist) {
                row.exact = exact_quantity(name, *dist, cell.config);
                if (!row.exact) flags = "undefined";
            }
            if (summary) {
                if (const EstimateReport* rep = summary->find(name); rep && rep->replications > 0) {
                    row.mc_mean = rep->point_estimate;
                    row.mc_rms = rep->rms_error;
                    if (rep->replications < spec.plan.replications)
                        flags += (flags.empty() ? "" : ";") +
                                 ("valid_reps=" + std::to_string(rep->replications));
                }
                if (summary->flagged_replications > 0 && (name.find('|') != std::string::npos))
                    flags += (flags.empty() ? "" : ";") +
                             ("flagged_reps=" + std::to_string(summary->flagged_replications));
            }
            row.flags = flags;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

namespace {

std::optional<double> row_value(const std::vector<ResultRow>& rows, const std::string& coord1,
                                const std::string& coord2, const std::string& quantity, bool exact) {
    for (const ResultRow& r : rows)
        if (r.coord1 == coord1 && r.coord2 == coord2 && r.quantity == quantity)
            return exact ? r.exact : r.mc_mean;
    return std::nullopt;
}

void expect(std::vector<std::string>& failures, bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
}

}  // namespace

std::vector<std::string> check_suite(const SuiteSpec& spec, const std::vector<ResultRow>& rows) {
    std::vector<std::string> failures;
    const bool has_exact = spec.mode != RunMode::montecarlo;
    const bool has_mc = spec.mode != RunMode::exact;

    if (spec.suite == SuiteKind::table4) {
        for (std::size_t b = 0; b < kBetaEs.size(); ++b) {
            const std::string c1 = format_number(kBetaEs[b]);
            const double closed = kBetaEs[b] * std::tanh(kBetaEs[b]);
            std::optional<double> first_axis;
            for (std::size_t h = 0; h < kFinalAxes.size(); ++h) {
                const std::string c2 = kFinalAxes[h].label;
                if (has_exact) {
                    const auto diss = row_value(rows, c1, c2, "dissipation", true);
                    const auto jarz = row_value(rows, c1, c2, "jarzynski", true);
                    expect(failures, diss && std::abs(*diss - closed) < 1e-12,
                           "table4 " + c1 + "/" + c2 + ": exact dissipation != betaE*tanh(betaE)");
                    if (diss) {
                        if (!first_axis) first_axis = *diss;
                        expect(failures, std::abs(*diss - *first_axis) < 1e-12,
                               "table4 " + c1 + ": dissipation differs across Hf axes");
                        const auto ref = reference::kDissipation[b][h];
                        expect(failures, std::abs(*diss - ref.value) <= 3.0 * ref.stderr_,
                               "table4 " + c1 + "/" + c2 + ": dissipation outside 3 sigma of reference");
                    }
                    expect(failures, jarz && std::abs(*jarz - 1.0) < 1e-12,
                           "table4 " + c1 + "/" + c2 + ": exact Jarzynski average != 1");
                }
                if (has_mc) {
                    const auto mean = row_value(rows, c1, c2, "jarzynski", false);
                    expect(failures, mean && *mean >= 0.95 && *mean <= 1.03,
                           "table4 " + c1 + "/" + c2 + ": MC Jarzynski mean outside [0.95, 1.03]");
                    for (const ResultRow& r : rows)
                        if (r.coord1 == c1 && r.coord2 == c2 && r.quantity == "jarzynski" && r.mc_rms)
                            expect(failures, *r.mc_rms <= 0.03,
                                   "table4 " + c1 + "/" + c2 + ": MC Jarzynski RMS above 0.03");
                }
            }
        }
    } else if (spec.suite == SuiteKind::table2) {
        for (std::size_t a = 0; a < kAlphas.size(); ++a) {
            const std::string c1 = format_number(kAlphas[a]);
            for (int k = 1; k <= 4; ++k) {
                const std::string c2 = std::to_string(k);
                if (has_exact) {
                    const auto mi = row_value(rows, c1, c2, "total_mi", true);
                    const auto eq = row_value(rows, c1, c2, "exp_neg_info", true);
                    expect(failures, eq && std::abs(*eq - 1.0) < 1e-12,
                           "table2 " + c1 + "/t=" + c2 + ": exact equality != 1");
                    if (a == 0) {
                        expect(failures, mi && std::abs(*mi) < 1e-12,
                               "table2 alpha=1/t=" + c2 + ": exact total MI != 0");
                    } else {
                        const auto ref = reference::kTotalMutualInformation[a][k - 1];
                        expect(failures, mi && std::abs(*mi - ref.value) <= 0.15,
                               "table2 " + c1 + "/t=" + c2 + ": exact total MI outside 0.15 of reference");
                    }
                }
                if (has_mc && a == 0) {
                    const auto mi = row_value(rows, c1, c2, "total_mi", false);
                    const auto eq = row_value(rows, c1, c2, "exp_neg_info", false);
                    expect(failures, mi && std::abs(*mi) <= 0.03,
                           "table2 alpha=1/t=" + c2 + ": |MC total MI| above 0.03");
                    expect(failures, eq && *eq >= 0.95 && *eq <= 1.03,
                           "table2 alpha=1/t=" + c2 + ": MC equality outside [0.95, 1.03]");
                }
            }
            if (has_exact && a > 0) {
                // qualitative structure: alpha = sqrt(2/3) decreases with t,
                // alpha = sqrt(1/3) is the mirrored (increasing) trend
                std::array<double, 4> mi{};
                for (int k = 1; k <= 4; ++k)
                    mi[k - 1] = row_value(rows, c1, std::to_string(k), "total_mi", true).value_or(0.0);
                for (int k = 0; k < 3; ++k) {
                    const bool ordered = a == 1 ? mi[k] >= mi[k + 1] - 1e-12 : mi[k] <= mi[k + 1] + 1e-12;
                    expect(failures, ordered, "table2 " + c1 + ": total MI trend not monotone");
                }
            }
        }
    } else if (spec.suite == SuiteKind::fig2) {
        const std::string c1 = format_number(kAlphas[1]);
        std::map<std::string, std::pair<double, double>> ranges;  // quantity -> (min, max) over t
        for (int k = 1; k <= 4; ++k) {
            const std::string c2 = std::to_string(k);
            if (has_exact) {
                const auto pm = row_value(rows, c1, c2, "p-", true);
                const auto pp = row_value(rows, c1, c2, "p+", true);
                expect(failures, pm && std::abs(*pm - 2.0 / 3.0) < 1e-12,
                       "fig2 t=" + c2 + ": exact p- != 2/3");
                expect(failures, pp && std::abs(*pp - 1.0 / 3.0) < 1e-12,
                       "fig2 t=" + c2 + ": exact p+ != 1/3");
                for (const std::string q : {"q-", "q+", "p-|-", "p-|+", "p+|-", "p+|+"}) {
                    const auto v = row_value(rows, c1, c2, q, true);
                    if (!v) continue;
                    auto it = ranges.find(q);
                    if (it == ranges.end())
                        ranges[q] = {*v, *v};
                    else {
                        it->second.first = std::min(it->second.first, *v);
                        it->second.second = std::max(it->second.second, *v);
                    }
                }
            }
            if (has_mc) {
                for (const ResultRow& r : rows) {
                    if (r.coord1 != c1 || r.coord2 != c2 || !r.mc_rms || r.quantity == "total_mi" ||
                        r.quantity == "exp_neg_info")
                        continue;
                    // per-point spread over replications, not the error of the mean
                    const double spread =
                        *r.mc_rms * std::sqrt(static_cast<double>(spec.plan.replications));
                    expect(failures, spread <= 0.02,
                           "fig2 t=" + c2 + " " + r.quantity + ": per-point RMS above 0.02");
                }
            }
        }
        if (has_exact)
            for (const auto& [q, mm] : ranges)
                expect(failures, mm.second - mm.first > 0.01, "fig2 " + q + ": does not vary with t");
    } else {
        failures.push_back("check: no reference values for the custom suite");
    }
    return failures;
}

namespace {

double parse_double(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad numeric value for '" + key + "': " + value);
    }
    if (pos != value.size()) throw std::invalid_argument("config: bad numeric value for '" + key + "': " + value);
    return v;
}

std::uint64_t parse_count(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(value, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: '" + key + "' must be a nonnegative integer");
    }
    if (pos != value.size() || value.find('-') != std::string::npos)
        throw std::invalid_argument("config: '" + key + "' must be a nonnegative integer");
    return v;
}

BlochVector parse_axis(const std::string& key, const std::string& value) {
    if (value == "z") return {0.0, 0.0, 1.0};
    if (value == "x") return {1.0, 0.0, 0.0};
    if (value == "y") return {0.0, 1.0, 0.0};
    if (value == "O") return {0.5, std::sqrt(3.0) / 2.0, 0.0};
    std::stringstream ss(value);
    std::string part;
    std::array<double, 3> c{};
    for (int k = 0; k < 3; ++k) {
        if (!std::getline(ss, part, ',')) throw std::invalid_argument("config: bad axis for '" + key + "'");
        c[k] = parse_double(key, part);
    }
    if (std::getline(ss, part, ',')) throw std::invalid_argument("config: bad axis for '" + key + "'");
    return {c[0], c[1], c[2]};
}

}  // namespace

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto strip = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        if (strip(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("config: expected key = value, got: " + line);
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        if (key.empty()) throw std::invalid_argument("config: empty key in: " + line);
        kv[key] = value;
    }
    return kv;
}

SuiteSpec resolve_suite_spec(const std::map<std::string, std::string>& file_kv,
                             const std::map<std::string, std::string>& flag_kv) {
    static const std::set<std::string> known{
        "suite", "mode",   "seed",   "shots", "reps",  "spam",   "phi1",  "out",
        "format", "check", "state",  "alpha", "beta_e", "p_axis", "q_axis", "theta1", "phi0"};
    std::map<std::string, std::string> kv = file_kv;
    for (const auto& [k, v] : flag_kv) kv[k] = v;

    std::string unknown;
    for (const auto& [k, v] : kv)
        if (!known.count(k)) unknown += (unknown.empty() ? "" : ", ") + k;
    if (!unknown.empty()) throw std::invalid_argument("config: unknown keys: " + unknown);

    const auto get = [&](const char* key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        return it->second;
    };

    SuiteSpec spec;
    const auto suite = get("suite");
    if (!suite) throw std::invalid_argument("config: missing suite");
    if (*suite == "table2") spec.suite = SuiteKind::table2;
    else if (*suite == "table4") spec.suite = SuiteKind::table4;
    else if (*suite == "fig2") spec.suite = SuiteKind::fig2;
    else if (*suite == "custom") spec.suite = SuiteKind::custom;
    else throw std::invalid_argument("config: unknown suite: " + *suite);

    if (const auto mode = get("mode")) {
        if (*mode == "exact") spec.mode = RunMode::exact;
        else if (*mode == "montecarlo") spec.mode = RunMode::montecarlo;
        else if (*mode == "both") spec.mode = RunMode::both;
        else throw std::invalid_argument("config: unknown mode: " + *mode);
    }

    if (const auto shots = get("shots")) spec.plan.shots_per_setting = parse_count("shots", *shots);
    if (const auto reps = get("reps")) spec.plan.replications = parse_count("reps", *reps);
    if (const auto spam = get("spam")) {
        const auto comma = spam->find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("config: spam must be p_prep,p_detect");
        SpamModel model{parse_double("spam", spam->substr(0, comma)),
                        parse_double("spam", spam->substr(comma + 1))};
        spec.plan.spam = model;
    }
    if (const auto phi1 = get("phi1")) spec.phi1_override = parse_double("phi1", *phi1);
    if (const auto out = get("out")) spec.output.path = *out;
    if (const auto format = get("format")) {
        if (*format == "csv") spec.output.format = OutFormat::csv;
        else if (*format == "json") spec.output.format = OutFormat::json;
        else if (*format == "text") spec.output.format = OutFormat::text;
        else throw std::invalid_argument("config: unknown format: " + *format);
    }
    if (const auto check = get("check")) spec.check = (*check == "1" || *check == "true");

    const auto seed = get("seed");
    if (spec.mode != RunMode::exact) {
        if (!seed) throw std::invalid_argument("config: montecarlo mode requires an explicit seed");
        spec.plan.seed = parse_count("seed", *seed);
    } else if (seed) {
        spec.plan.seed = parse_count("seed", *seed);
    }

    if (spec.suite == SuiteKind::custom) {
        ProtocolConfig config;
        const auto state = get("state");
        if (!state) throw std::invalid_argument("config: custom suite requires state = pure | gibbs");
        if (*state == "pure") {
            const auto alpha = get("alpha");
            if (!alpha) throw std::invalid_argument("config: pure state requires alpha");
            config.initial = InitialStateSpec::make_pure(parse_double("alpha", *alpha));
        } else if (*state == "gibbs") {
            const auto beta_e = get("beta_e");
            if (!beta_e) throw std::invalid_argument("config: gibbs state requires beta_e");
            const double be = parse_double("beta_e", *beta_e);
            config.initial = InitialStateSpec::make_gibbs(be);
            EnergySpec energy;
            energy.beta_E = be;
            config.energy = energy;
        } else {
            throw std::invalid_argument("config: unknown state: " + *state);
        }
        if (const auto ax = get("p_axis")) config.p_axis = parse_axis("p_axis", *ax);
        if (const auto ax = get("q_axis")) config.q_axis = parse_axis("q_axis", *ax);
        if (const auto theta1 = get("theta1")) config.evolution.theta = parse_double("theta1", *theta1);
        if (const auto phi0 = get("phi0")) config.prep_phase = parse_double("phi0", *phi0);
        config.evolution = normalized(config.evolution);
        config.validate();
        spec.custom_config = config;
    } else {
        for (const char* key : {"state", "alpha", "beta_e", "p_axis", "q_axis", "theta1", "phi0"})
            if (kv.count(key))
                throw std::invalid_argument(std::string("config: '") + key +
                                            "' applies to the custom suite only");
    }
    if (spec.check && spec.suite == SuiteKind::custom)
        throw std::invalid_argument("config: check requires a preset suite");
    return spec;
}

}  // namespace tpmsim
