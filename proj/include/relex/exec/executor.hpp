#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "relex/core/state.hpp"
#include "relex/domain/skills.hpp"
#include "relex/planner/planner.hpp"

namespace relex {

class Environment {
public:
    virtual ~Environment() = default;
    virtual LogicalState observe() = 0;
    // Runs the skill to termination; returns the sensed termination signal.
    virtual bool execute_skill(const GroundedSkill& skill) = 0;
};

struct ExecConfig {
    int max_replans = 5;   // total planning rounds allowed (0 behaves as 1)
    int max_retrials = 5;  // re-executions allowed per step per round
    bool record_states = false;  // keep sensed snapshots in the trace
};

struct TraceEvent {
    int plan_round = 0;  // 1-based planning round
    int step_index = 0;
    std::string skill;
    int attempt = 0;                  // 1-based execution count of this step
    int precondition_backtracks = 0;  // backtracks taken to select this step
    bool termination_observed = true;
    std::vector<std::string> sensed_after;  // only with record_states
};

struct ExecOutcome {
    bool success = false;  // goal sensed true (evaluation against ground truth is the caller's)
    int replans_used = 0;
    int skill_executions = 0;
    int max_step_attempts = 0;
    int first_plan_length = -1;  // -1 when no plan was ever found
    std::vector<TraceEvent> trace;
};

// One pass over a plan: walk steps in order, backtracking to the nearest
// earlier step whose preconditions the current observation satisfies;
// each step may execute at most max_retrials + 1 times; the goal is
// checked against every fresh observation. Appends to outcome.trace.
bool execute_plan(const LogicalState& first_obs, const GoalConditions& goal, const Plan& p,
                  const ExecConfig& cfg, Environment& env, ExecOutcome& outcome,
                  int plan_round = 1);

// Observe / plan / execute_plan until success or the planning budget is
// spent. Every planning attempt (even one that finds no plan) counts.
ExecOutcome execute(const GoalConditions& goal, const ExecConfig& cfg, Environment& env,
                    const std::vector<GroundedSkill>& skills,
                    const PlannerConfig& planner_cfg = {});

// One JSON object per trace event.
void write_trace_jsonl(const ExecOutcome& outcome, std::ostream& out);

}  // namespace relex
