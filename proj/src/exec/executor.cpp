#include "relex/exec/executor.hpp"

#include <algorithm>
#include <ostream>

#include <nlohmann/json.hpp>

namespace relex {

bool execute_plan(const LogicalState& first_obs, const GoalConditions& goal, const Plan& p,
                  const ExecConfig& cfg, Environment& env, ExecOutcome& outcome, int plan_round) {
    LogicalState obs = first_obs;
    if (satisfies(obs, goal)) return true;
    std::vector<int> attempts(p.size(), 0);
    int i = 0;
    while (i < static_cast<int>(p.size())) {
        int backtracks = 0;
        while (!preconditions_hold(p.steps[static_cast<size_t>(i)], obs)) {
            --i;
            ++backtracks;
            if (i < 0) return false;
        }
        const auto& step = p.steps[static_cast<size_t>(i)];
        if (++attempts[static_cast<size_t>(i)] > cfg.max_retrials + 1) return false;

        const bool term = env.execute_skill(step);
        obs = env.observe();

        TraceEvent ev;
        ev.plan_round = plan_round;
        ev.step_index = i;
        ev.skill = step.text(*obs.vocab());
        ev.attempt = attempts[static_cast<size_t>(i)];
        ev.precondition_backtracks = backtracks;
        ev.termination_observed = term;
        if (cfg.record_states) ev.sensed_after = obs.atom_texts();
        outcome.trace.push_back(std::move(ev));
        ++outcome.skill_executions;
        outcome.max_step_attempts =
            std::max(outcome.max_step_attempts, attempts[static_cast<size_t>(i)]);

        if (satisfies(obs, goal)) return true;
        ++i;
    }
    return false;
}

ExecOutcome execute(const GoalConditions& goal, const ExecConfig& cfg, Environment& env,
                    const std::vector<GroundedSkill>& skills, const PlannerConfig& planner_cfg) {
    ExecOutcome outcome;
    const int budget = std::max(1, cfg.max_replans);
    while (outcome.replans_used < budget) {
        const LogicalState obs = env.observe();
        PlanResult found = plan(obs, goal, skills, planner_cfg);
        ++outcome.replans_used;
        if (!found) continue;
        if (outcome.first_plan_length < 0)
            outcome.first_plan_length = static_cast<int>(found.plan->size());
        if (execute_plan(obs, goal, *found.plan, cfg, env, outcome, outcome.replans_used)) {
            outcome.success = true;
            return outcome;
        }
    }
    return outcome;
}

void write_trace_jsonl(const ExecOutcome& outcome, std::ostream& out) {
    for (const auto& ev : outcome.trace) {
        nlohmann::json row{{"plan_round", ev.plan_round},
                           {"step", ev.step_index},
                           {"skill", ev.skill},
                           {"attempt", ev.attempt},
                           {"backtracks", ev.precondition_backtracks},
                           {"termination", ev.termination_observed}};
        if (!ev.sensed_after.empty()) row["sensed_after"] = ev.sensed_after;
        out << row.dump() << '\n';
    }
}

}  // namespace relex
