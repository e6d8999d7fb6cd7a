#include "relex/exp/experiment.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "relex/sim/environment.hpp"

namespace relex {

const char* to_string(Mode mode) {
    switch (mode) {
        case Mode::none: return "none";
        case Mode::retrials: return "retrials";
        case Mode::full: return "full";
    }
    return "?";
}

std::optional<Mode> mode_from_string(std::string_view text) {
    if (text == "none") return Mode::none;
    if (text == "retrials") return Mode::retrials;
    if (text == "full") return Mode::full;
    return std::nullopt;
}

ExecConfig exec_config(Mode mode) {
    switch (mode) {
        case Mode::none: return {.max_replans = 0, .max_retrials = 0};
        case Mode::retrials: return {.max_replans = 1, .max_retrials = 5};
        case Mode::full: return {.max_replans = 5, .max_retrials = 5};
    }
    return {};
}

int ModeResults::successes() const {
    int n = 0;
    for (const auto& t : trials) n += t.success;
    return n;
}

double ModeResults::success_rate() const {
    return trials.empty() ? 0.0 : static_cast<double>(successes()) / trials.size();
}

int ModeResults::successful_replans() const {
    int n = 0;
    for (const auto& t : trials) n += t.success && t.replans_used >= 2;
    return n;
}

std::map<int, int> ModeResults::failures_by_plan_length() const {
    std::map<int, int> out;
    for (const auto& t : trials)
        if (!t.success) ++out[t.nominal_plan_length];
    return out;
}

std::map<int, int> ModeResults::tower_histogram() const {
    std::map<int, int> out;
    for (const auto& t : trials) ++out[t.achieved_tower];
    return out;
}

namespace {

struct Context {
    VocabularyPtr vocab;
    std::vector<GroundedSkill> skills;
    GoalConditions fixed_goal;
    std::vector<int> fixed_chain;  // goal tower bottom-up, when the goal is a tower
};

// Bottom-up tower order implied by a pure-On chain goal, else empty.
std::vector<int> goal_chain(const GoalConditions& goal, const Vocabulary& v) {
    const auto on = v.find_schema("On");
    if (!on) return {};
    const int n = v.universe().size();
    std::vector<int> under(static_cast<size_t>(n), -1), over(static_cast<size_t>(n), -1);
    int edges = 0;
    for (const Atom& a : goal.atoms()) {
        if (a.schema != *on) return {};
        if (under[a.arg0.index] != -1 || over[a.arg1.index] != -1) return {};
        under[a.arg0.index] = a.arg1.index;
        over[a.arg1.index] = a.arg0.index;
        ++edges;
    }
    if (edges == 0) return {};
    int base = -1;
    for (int b = 0; b < n; ++b)
        if (over[b] != -1 && under[b] == -1) {
            if (base != -1) return {};
            base = b;
        }
    if (base == -1) return {};
    std::vector<int> chain{base};
    for (int at = base; over[at] != -1; at = over[at]) chain.push_back(over[at]);
    if (static_cast<int>(chain.size()) != edges + 1) return {};  // disconnected
    return chain;
}

int tower_prefix(const WorldState& w, const std::vector<int>& chain_bottom_up) {
    if (chain_bottom_up.empty()) return 0;
    const int base = chain_bottom_up[0];
    if (!w.on_table(base)) return 0;
    int k = 1;
    while (k < static_cast<int>(chain_bottom_up.size())) {
        const int b = chain_bottom_up[static_cast<size_t>(k)];
        if (b == w.held || w.support[b] != chain_bottom_up[static_cast<size_t>(k - 1)]) break;
        ++k;
    }
    return k;
}

Context make_context(const ExperimentSpec& spec) {
    Context ctx;
    ctx.vocab = scenario_vocabulary(spec.scenario, spec.domain.predicates);
    ctx.skills = ground_skills(spec.domain, *ctx.vocab);
    if (spec.task != Task::reordering) {
        ctx.fixed_goal = scenario_goal(spec.scenario, ctx.vocab);
        ctx.fixed_chain = goal_chain(ctx.fixed_goal, *ctx.vocab);
    }
    return ctx;
}

TrialRecord run_trial(const ExperimentSpec& spec, const Context& ctx, int trial, WorldState& w) {
    GoalConditions goal;
    std::vector<int> chain;
    if (spec.task == Task::reordering) {
        auto tower = single_tower(w);
        if (!tower) {
            w = reset(spec.scenario, ctx.vocab, derive_seed(spec.master_seed, trial, 0));
            tower = single_tower(w);
            if (!tower) throw std::runtime_error("reordering needs a tower layout");
        }
        Rng pick(derive_seed(spec.master_seed, trial, 1));
        const auto variant = static_cast<ReorderVariant>(pick.uniform_int(3));
        const auto order = reorder_goal_order(*tower, variant);
        goal = tower_goal(order, ctx.vocab);
        chain.assign(order.rbegin(), order.rend());
    } else {
        goal = ctx.fixed_goal;
        chain = ctx.fixed_chain;
    }

    SimEnvironment env(w, spec.failures, spec.sensors);
    const ExecOutcome outcome = execute(goal, exec_config(spec.mode), env, ctx.skills,
                                        spec.planner);

    TrialRecord r;
    r.success = goal_achieved_gt(w, goal);
    r.exec_success = outcome.success;
    r.replans_used = outcome.replans_used;
    r.nominal_plan_length = std::max(outcome.first_plan_length, 0);
    r.achieved_tower = tower_prefix(w, chain);
    r.max_step_attempts = outcome.max_step_attempts;
    r.skill_executions = outcome.skill_executions;
    return r;
}

ModeResults run_serial(const ExperimentSpec& spec) {
    const Context ctx = make_context(spec);
    ModeResults results;
    results.mode = spec.mode;
    results.trials.reserve(static_cast<size_t>(spec.trials));
    std::optional<WorldState> carried;
    for (int t = 0; t < spec.trials; ++t) {
        WorldState w = carried ? std::move(*carried)
                               : reset(spec.scenario, ctx.vocab,
                                       derive_seed(spec.master_seed, t, 0));
        carried.reset();
        TrialRecord r = run_trial(spec, ctx, t, w);
        if (spec.reset == ResetPolicy::on_failure && r.success) carried = std::move(w);
        results.trials.push_back(r);
    }
    return results;
}

}  // namespace

ModeResults run_experiment_serial(const ExperimentSpec& spec) { return run_serial(spec); }

ModeResults run_experiment(const ExperimentSpec& spec) {
    if (spec.reset == ResetPolicy::on_failure) return run_serial(spec);
    const Context ctx = make_context(spec);
    {
        // surface scenario problems before the parallel region
        const WorldState probe = reset(spec.scenario, ctx.vocab, 0);
        if (spec.task == Task::reordering && !single_tower(probe))
            throw std::runtime_error("reordering needs a tower layout");
    }
    ModeResults results;
    results.mode = spec.mode;
    results.trials.resize(static_cast<size_t>(spec.trials));
#ifdef _OPENMP
    const int threads = spec.jobs > 0 ? spec.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 8) num_threads(threads)
#endif
    for (int t = 0; t < spec.trials; ++t) {
        WorldState w = reset(spec.scenario, ctx.vocab, derive_seed(spec.master_seed, t, 0));
        results.trials[static_cast<size_t>(t)] = run_trial(spec, ctx, t, w);
    }
    return results;
}

namespace {

std::vector<int> bucket_union(const std::vector<ModeResults>& rows,
                              std::map<int, int> (ModeResults::*get)() const) {
    std::vector<int> keys;
    for (const auto& r : rows)
        for (const auto& [k, v] : (r.*get)())
            if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
    std::sort(keys.begin(), keys.end());
    return keys;
}

}  // namespace

void print_results_table(const std::vector<ModeResults>& rows, std::ostream& out) {
    const auto fail_keys = bucket_union(rows, &ModeResults::failures_by_plan_length);
    const auto tower_keys = bucket_union(rows, &ModeResults::tower_histogram);
    out << std::left << std::setw(10) << "mode" << std::right << std::setw(8) << "trials"
        << std::setw(10) << "success" << std::setw(9) << "rate" << std::setw(12) << "replans-ok";
    for (int k : fail_keys) out << std::setw(10) << ("fail@" + std::to_string(k));
    for (int k : tower_keys) out << std::setw(9) << ("tower" + std::to_string(k));
    out << '\n';
    for (const auto& r : rows) {
        std::ostringstream rate;
        rate << std::fixed << std::setprecision(1) << 100.0 * r.success_rate() << '%';
        out << std::left << std::setw(10) << to_string(r.mode) << std::right << std::setw(8)
            << r.trials.size() << std::setw(10) << r.successes() << std::setw(9) << rate.str()
            << std::setw(12) << r.successful_replans();
        auto fails = r.failures_by_plan_length();
        for (int k : fail_keys) out << std::setw(10) << (fails.count(k) ? fails[k] : 0);
        auto towers = r.tower_histogram();
        for (int k : tower_keys) out << std::setw(9) << (towers.count(k) ? towers[k] : 0);
        out << '\n';
    }
}

void write_results_csv(const std::vector<ModeResults>& rows, std::ostream& out) {
    const auto fail_keys = bucket_union(rows, &ModeResults::failures_by_plan_length);
    const auto tower_keys = bucket_union(rows, &ModeResults::tower_histogram);
    out << "mode,trials,successes,failures,success_rate,successful_replans";
    for (int k : fail_keys) out << ",failures_plan_" << k;
    for (int k : tower_keys) out << ",tower_" << k;
    out << '\n';
    for (const auto& r : rows) {
        out << to_string(r.mode) << ',' << r.trials.size() << ',' << r.successes() << ','
            << r.failures() << ',' << std::fixed << std::setprecision(4) << r.success_rate()
            << ',' << r.successful_replans();
        auto fails = r.failures_by_plan_length();
        for (int k : fail_keys) out << ',' << (fails.count(k) ? fails[k] : 0);
        auto towers = r.tower_histogram();
        for (int k : tower_keys) out << ',' << (towers.count(k) ? towers[k] : 0);
        out << '\n';
    }
}

}  // namespace relex
