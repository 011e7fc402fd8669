#include "tpmsim/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "tpmsim/fluctuation.hpp"

namespace tpmsim {

void ShotPlan::validate() const {
    if (shots_per_setting < 1) throw std::invalid_argument("ShotPlan: shots_per_setting must be >= 1");
    if (replications < 2) throw std::invalid_argument("ShotPlan: replications must be >= 2 for RMS errors");
    if (spam) {
        const auto in01 = [](double v) { return v >= 0.0 && v <= 1.0; };
        if (!in01(spam->p_prep_error) || !in01(spam->p_detect_error))
            throw std::invalid_argument("ShotPlan: SPAM probabilities must lie in [0, 1]");
    }
}

std::uint64_t sample_binary(double p, std::uint64_t n, Rng& rng) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sample_binary: p must lie in [0, 1]");
    if (n < 1) throw std::invalid_argument("sample_binary: n must be >= 1");
    std::uint64_t count = 0;
    for (std::uint64_t k = 0; k < n; ++k)
        if (rng.bernoulli(p)) ++count;
    return count;
}

namespace {

// Exact per-shot probabilities, fixed once per (config, plan).
struct ShotContext {
    std::array<double, 2> p_main{}, p_flip{};
    std::array<double, 2> q_main{}, q_flip{};
    std::array<std::array<double, 2>, 2> cond{};  // rows indexed by the true first outcome
    bool spam = false;
    double p_prep = 0.0, p_detect = 0.0;
};

ShotContext make_context(const ProtocolConfig& config, const ShotPlan& plan) {
    config.validate();
    ShotContext ctx;
    const QubitState rho = config.initial_state();
    ctx.p_main = first_measurement(rho, config.p_axis);
    ctx.q_main = second_measurement_unconditional(rho, config.evolution, config.q_axis);
    for (Outcome n : {Outcome::minus, Outcome::plus}) {
        const QubitState collapsed{projector(config.p_axis, n)};
        ctx.cond[index_of(n)] = second_measurement_unconditional(collapsed, config.evolution, config.q_axis);
    }
    if (plan.spam) {
        ctx.spam = true;
        ctx.p_prep = plan.spam->p_prep_error;
        ctx.p_detect = plan.spam->p_detect_error;
        if (config.initial.kind == InitialStateSpec::Kind::pure) {
            // a failed pure preparation leaves the orthogonal pure state
            const Operator2 prep = carrier_unitary(2.0 * std::acos(config.initial.alpha), config.prep_phase);
            const QubitState flipped = evolve(QubitState::up(), prep);
            ctx.p_flip = first_measurement(flipped, config.p_axis);
            ctx.q_flip = second_measurement_unconditional(flipped, config.evolution, config.q_axis);
        } else {
            // a failed thermal preparation re-draws the same Gibbs diagonal
            ctx.p_flip = ctx.p_main;
            ctx.q_flip = ctx.q_main;
        }
    }
    return ctx;
}

int draw_outcome(const std::array<double, 2>& p, Rng& rng) { return rng.bernoulli(p[0]) ? 0 : 1; }

int maybe_flip(int outcome, const ShotContext& ctx, Rng& rng) {
    if (ctx.spam && rng.bernoulli(ctx.p_detect)) return 1 - outcome;
    return outcome;
}

bool prep_failed(const ShotContext& ctx, Rng& rng) { return ctx.spam && rng.bernoulli(ctx.p_prep); }

CountsTable run_shots(const ShotContext& ctx, std::uint64_t shots, Rng& rng) {
    CountsTable counts;
    counts.first_shots = counts.second_shots = counts.pair_shots = shots;
    for (std::uint64_t k = 0; k < shots; ++k) {
        const auto& p = prep_failed(ctx, rng) ? ctx.p_flip : ctx.p_main;
        counts.first_counts[maybe_flip(draw_outcome(p, rng), ctx, rng)]++;
    }
    for (std::uint64_t k = 0; k < shots; ++k) {
        const auto& q = prep_failed(ctx, rng) ? ctx.q_flip : ctx.q_main;
        counts.second_counts[maybe_flip(draw_outcome(q, rng), ctx, rng)]++;
    }
    for (std::uint64_t k = 0; k < shots; ++k) {
        const auto& p = prep_failed(ctx, rng) ? ctx.p_flip : ctx.p_main;
        const int n_true = draw_outcome(p, rng);
        const int n_rec = maybe_flip(n_true, ctx, rng);
        const int m_true = draw_outcome(ctx.cond[n_true], rng);
        const int m_rec = maybe_flip(m_true, ctx, rng);
        counts.pair_counts[n_rec][m_rec]++;
    }
    return counts;
}

}  // namespace

CountsTable simulate_protocol(const ProtocolConfig& config, const ShotPlan& plan, Rng& rng) {
    plan.validate();
    return run_shots(make_context(config, plan), plan.shots_per_setting, rng);
}

PluginEstimates plugin_estimates(const CountsTable& counts, const std::optional<EnergySpec>& energy) {
    if (counts.first_shots == 0 || counts.second_shots == 0 || counts.pair_shots == 0)
        throw InvalidCountsError("plugin_estimates: zero denominator");
    PluginEstimates est;
    for (int k = 0; k < 2; ++k) {
        est.p_n[k] = static_cast<double>(counts.first_counts[k]) / static_cast<double>(counts.first_shots);
        est.q_m[k] = static_cast<double>(counts.second_counts[k]) / static_cast<double>(counts.second_shots);
    }
    for (int n = 0; n < 2; ++n) {
        const std::uint64_t row_total = counts.pair_counts[n][0] + counts.pair_counts[n][1];
        for (int m = 0; m < 2; ++m)
            est.p_nm[n][m] =
                static_cast<double>(counts.pair_counts[n][m]) / static_cast<double>(counts.pair_shots);
        if (row_total == 0) {
            est.undefined_rows++;
            continue;
        }
        est.p_m_given_n[n] = {static_cast<double>(counts.pair_counts[n][0]) / static_cast<double>(row_total),
                              static_cast<double>(counts.pair_counts[n][1]) / static_cast<double>(row_total)};
    }

    // Information functionals by direct substitution; empirical-zero cells
    // contribute 0, and q_m = 0 under a supported cell poisons the pair.
    double exp_sum = 0.0, mi_sum = 0.0;
    double min_info = std::numeric_limits<double>::infinity();
    bool any_cell = false;
    for (int n = 0; n < 2; ++n) {
        if (!est.p_m_given_n[n]) continue;
        for (int m = 0; m < 2; ++m) {
            if (counts.pair_counts[n][m] == 0) continue;
            if (est.q_m[m] <= 0.0) {
                est.info_singular = true;
                break;
            }
            const double info = std::log((*est.p_m_given_n[n])[m]) - std::log(est.q_m[m]);
            exp_sum += est.p_nm[n][m] * std::exp(-info);
            mi_sum += est.p_nm[n][m] * info;
            min_info = std::min(min_info, info);
            any_cell = true;
        }
        if (est.info_singular) break;
    }
    if (!est.info_singular) {
        est.exp_neg_info = exp_sum;
        est.total_mi = mi_sum;
        if (any_cell) est.min_info = min_info;
    }

    if (energy) {
        const ThermoRecord thermo = work_matrix(*energy);
        double jz = 0.0, ds = 0.0;
        for (int n = 0; n < 2; ++n)
            for (int m = 0; m < 2; ++m) {
                if (est.p_nm[n][m] <= 0.0) continue;
                jz += est.p_nm[n][m] * std::exp(thermo.beta * (thermo.w_nm[n][m] - thermo.delta_F));
                ds += est.p_nm[n][m] * thermo.beta * (thermo.delta_F - thermo.w_nm[n][m]);
            }
        est.jarzynski = jz;
        est.dissipation = ds;
    }
    return est;
}

namespace {

struct Series {
    std::vector<double> values;

    void add(std::optional<double> v) {
        if (v) values.push_back(*v);
    }
    void add(double v) { values.push_back(v); }
};

EstimateReport summarize(const std::string& name, const Series& s, std::uint64_t shots) {
    EstimateReport rep;
    rep.quantity = name;
    rep.replications = s.values.size();
    rep.shots = shots;
    if (s.values.empty()) return rep;
    double sum = 0.0;
    for (double v : s.values) sum += v;
    const double mean = sum / static_cast<double>(s.values.size());
    rep.point_estimate = mean;
    if (s.values.size() > 1) {
        double ss = 0.0;
        for (double v : s.values) ss += (v - mean) * (v - mean);
        const auto n = static_cast<double>(s.values.size());
        rep.rms_error = std::sqrt(ss / (n - 1.0) / n);
    }
    return rep;
}

}  // namespace

const EstimateReport* ReplicationSummary::find(const std::string& quantity) const {
    for (const auto& r : reports)
        if (r.quantity == quantity) return &r;
    return nullptr;
}

const EstimateReport& ReplicationSummary::report(const std::string& quantity) const {
    const EstimateReport* r = find(quantity);
    if (!r) throw std::out_of_range("ReplicationSummary: no quantity named " + quantity);
    return *r;
}

ReplicationSummary replicate(const ProtocolConfig& config, const ShotPlan& plan, unsigned threads) {
    plan.validate();
    const ShotContext ctx = make_context(config, plan);
    const auto reps = static_cast<std::size_t>(plan.replications);
    std::vector<PluginEstimates> per_rep(reps);

    const auto worker = [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
            Rng rng(plan.seed, r);  // substream = replication index
            const CountsTable counts = run_shots(ctx, plan.shots_per_setting, rng);
            per_rep[r] = plugin_estimates(counts, config.energy);
        }
    };
    if (threads <= 1 || reps < 2) {
        worker(0, reps);
    } else {
        const std::size_t nt = std::min<std::size_t>(threads, reps);
        std::vector<std::thread> pool;
        const std::size_t chunk = (reps + nt - 1) / nt;
        for (std::size_t t = 0; t < nt; ++t)
            pool.emplace_back(worker, t * chunk, std::min(reps, (t + 1) * chunk));
        for (auto& th : pool) th.join();
    }

    // Reduce in replication order.
    ReplicationSummary summary;
    Series p_minus, p_plus, q_minus, q_plus;
    std::array<std::array<Series, 2>, 2> cond, joint;
    Series exp_info, total_mi, jarz, diss;
    for (const PluginEstimates& e : per_rep) {
        p_minus.add(e.p_n[0]);
        p_plus.add(e.p_n[1]);
        q_minus.add(e.q_m[0]);
        q_plus.add(e.q_m[1]);
        for (int n = 0; n < 2; ++n)
            for (int m = 0; m < 2; ++m) {
                if (e.p_m_given_n[n]) cond[n][m].add((*e.p_m_given_n[n])[m]);
                joint[n][m].add(e.p_nm[n][m]);
            }
        exp_info.add(e.exp_neg_info);
        total_mi.add(e.total_mi);
        jarz.add(e.jarzynski);
        diss.add(e.dissipation);
        if (e.undefined_rows > 0) summary.flagged_replications++;
        if (e.info_singular) summary.singular_replications++;
        if (e.min_info && *e.min_info < 0.0) summary.negative_info_replications++;
    }

    const std::uint64_t shots = plan.shots_per_setting;
    const char* sign[2] = {"-", "+"};
    summary.reports.push_back(summarize("p-", p_minus, shots));
    summary.reports.push_back(summarize("p+", p_plus, shots));
    summary.reports.push_back(summarize("q-", q_minus, shots));
    summary.reports.push_back(summarize("q+", q_plus, shots));
    for (int n = 0; n < 2; ++n)
        for (int m = 0; m < 2; ++m)
            summary.reports.push_back(
                summarize(std::string("p") + sign[m] + "|" + sign[n], cond[n][m], shots));
    for (int n = 0; n < 2; ++n)
        for (int m = 0; m < 2; ++m)
            summary.reports.push_back(summarize(std::string("p") + sign[n] + sign[m], joint[n][m], shots));
    summary.reports.push_back(summarize("exp_neg_info", exp_info, shots));
    summary.reports.push_back(summarize("total_mi", total_mi, shots));
    if (config.energy) {
        summary.reports.push_back(summarize("jarzynski", jarz, shots));
        summary.reports.push_back(summarize("dissipation", diss, shots));
    }
    return summary;
}

}  // namespace tpmsim
