#pragma once

#include <map>
#include <string>
#include <vector>

#include "relex/core/rng.hpp"
#include "relex/core/state.hpp"
#include "relex/domain/skills.hpp"

namespace relex {

// Ground-truth scene: who rests on whom, what the hand holds, which blocks
// are reachable. Owns the episode's RNG stream; all stochastic draws
// (failures and sensor flips) consume it in a fixed order.
struct WorldState {
    VocabularyPtr vocab;
    std::vector<int> support;          // per block: supporting block, -1 = table
    int held = -1;
    std::vector<uint8_t> in_workspace;
    std::vector<uint8_t> close;        // n*n symmetric matrix
    std::vector<uint8_t> recoverable;  // false: ejected beyond Pull's reach
    Rng rng;

    explicit WorldState(VocabularyPtr vocab, uint64_t seed = 0);

    int num_blocks() const { return static_cast<int>(support.size()); }
    bool on_table(int b) const { return b != held && support[b] == -1; }
    // block directly on top of b, or -1
    int block_on(int b) const;
    int stack_base(int b) const;
    int stack_height(int b) const;  // height of the stack containing b
    bool is_close(int a, int b) const { return close[a * num_blocks() + b] != 0; }
    void set_close(int a, int b, bool v);
    void clear_close(int b);
};

struct FailureModel {
    double p_fail_default = 0.0;
    std::map<std::string, double> p_fail_by_skill;  // overrides, by schema name
    double topple_base = 0.0;   // topple prob = topple_base * (stack height - 1)
    double p_eject = 0.0;       // per toppled block: leaves the workspace
    double p_eject_hard = 0.1;  // per ejected block: beyond Pull's reach
    double p_drop_close = 0.0;  // dropped block lands close to a table block

    double p_fail(const std::string& skill) const;
    // Regime used by the Monte-Carlo experiments.
    static FailureModel standard_noise();
};

struct SensorModel {
    std::map<std::string, double> fp;  // per predicate name; absent = 0
    std::map<std::string, double> fn;
    double term_fp = 0.0;
    double term_fn = 0.0;

    double fp_rate(const std::string& predicate) const;
    double fn_rate(const std::string& predicate) const;
    // 2% flips on the learned predicates (On, InHand, OnTop); the manual
    // ones (InWorkspace, Close) stay exact.
    static SensorModel standard_noise();
    static SensorModel uniform_learned(double fp, double fn);
};

struct SkillEvent {
    enum class Mode { nominal, precondition_violated, noop, drop, topple };
    Mode mode = Mode::nominal;
    bool termination = true;  // raw signal; term_fp/term_fn flips live upstream
    int scattered = 0;        // topple only
};

const char* to_string(SkillEvent::Mode mode);

// Applies one skill attempt to ground truth. Violated ground-truth
// preconditions make the attempt a no-op; otherwise the failure model picks
// topple / drop / no-op / nominal. Only the six standard skills have
// physics here.
SkillEvent execute_skill(WorldState& w, const GroundedSkill& skill, const FailureModel& fm);

// Exact predicate values from ground truth; always consistent.
LogicalState project_ground_truth(const WorldState& w);

// Ground truth with per-atom i.i.d. sensor flips (fn: true reads false,
// fp: false reads true). Consumes one draw per atom regardless of rates.
LogicalState observe(WorldState& w, const SensorModel& sm);

bool goal_achieved_gt(const WorldState& w, const GoalConditions& goal);

}  // namespace relex
