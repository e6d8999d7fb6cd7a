#include "relex/planner/planner.hpp"

#include <algorithm>
#include <unordered_map>

namespace relex {

namespace {

struct Node {
    Bitset bits;
    int parent = -1;
    int via_skill = -1;
    int depth = 0;
};

Plan reconstruct(const std::vector<Node>& nodes, int index,
                 const std::vector<GroundedSkill>& skills) {
    Plan plan;
    for (int at = index; nodes[at].parent >= 0; at = nodes[at].parent)
        plan.steps.push_back(skills[static_cast<size_t>(nodes[at].via_skill)]);
    std::reverse(plan.steps.begin(), plan.steps.end());
    return plan;
}

}  // namespace

PlanResult plan(const LogicalState& state, const GoalConditions& goal,
                const std::vector<GroundedSkill>& skills, const PlannerConfig& cfg) {
    PlanResult result;
    if (satisfies(state, goal)) {
        result.plan = Plan{};
        return result;
    }

    std::vector<Node> nodes;
    std::unordered_map<Bitset, int, BitsetHash> seen;
    nodes.push_back({state.bits(), -1, -1, 0});
    seen.emplace(state.bits(), 0);

    bool depth_cut = false;
    size_t head = 0;
    while (head < nodes.size()) {
        if (result.expansions >= cfg.max_expansions) {
            result.reason = NoPlanReason::expansion_cap;
            return result;
        }
        const int current = static_cast<int>(head++);
        if (nodes[current].depth >= cfg.max_depth) {
            depth_cut = true;
            continue;
        }
        ++result.expansions;
        const LogicalState here(state.vocab(), nodes[current].bits);
        for (size_t s = 0; s < skills.size(); ++s) {
            if (!preconditions_hold(skills[s], here)) continue;
            auto next = apply_effects(skills[s], here);
            if (!next) continue;
            auto [it, inserted] = seen.emplace(next->bits(), static_cast<int>(nodes.size()));
            if (!inserted) continue;
            nodes.push_back({next->bits(), current, static_cast<int>(s),
                             nodes[current].depth + 1});
            if (next->bits().contains_all(goal.bits())) {
                result.plan = reconstruct(nodes, static_cast<int>(nodes.size()) - 1, skills);
                return result;
            }
        }
    }
    result.reason = depth_cut ? NoPlanReason::depth_cap : NoPlanReason::exhausted;
    return result;
}

bool validate_plan(const Plan& p, const LogicalState& state, const GoalConditions& goal) {
    LogicalState current = state;
    for (const auto& step : p.steps) {
        if (!preconditions_hold(step, current)) return false;
        auto next = apply_effects(step, current);
        if (!next) return false;
        current = std::move(*next);
    }
    return satisfies(current, goal);
}

}  // namespace relex
