#pragma once

#include <optional>
#include <vector>

#include "relex/core/state.hpp"
#include "relex/domain/skills.hpp"

namespace relex {

struct PlannerConfig {
    int max_depth = 20;
    int max_expansions = 200000;
};

enum class NoPlanReason {
    exhausted,      // reachable state space covered, no goal state in it
    depth_cap,      // states beyond max_depth were cut off
    expansion_cap,  // ran out of expansion budget
};

struct PlanResult {
    std::optional<Plan> plan;
    NoPlanReason reason = NoPlanReason::exhausted;  // meaningful when !plan
    int expansions = 0;

    explicit operator bool() const { return plan.has_value(); }
};

// Breadth-first over deduplicated states, uniform cost: returns a shortest
// plan, ties broken by grounded-skill list order. Deterministic. The input
// state may be physically inconsistent; skills whose effects cannot resolve
// are treated as inapplicable.
PlanResult plan(const LogicalState& state, const GoalConditions& goal,
                const std::vector<GroundedSkill>& skills, const PlannerConfig& cfg = {});

// True iff preconditions hold before every step and the chained effects end
// in a goal-satisfying state.
bool validate_plan(const Plan& p, const LogicalState& state, const GoalConditions& goal);

}  // namespace relex
