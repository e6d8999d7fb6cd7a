#pragma once

#include <map>
#include <utility>

#include "relex/exec/executor.hpp"
#include "relex/sim/world.hpp"

namespace relex {

// Environment over the simulator. Individual skill calls can be scripted
// (by 0-based call ordinal) to run under a different failure model, which
// is how tests force slips and topples at exact moments.
class SimEnvironment : public Environment {
public:
    SimEnvironment(WorldState& world, FailureModel failures, SensorModel sensors)
        : world_(world), failures_(std::move(failures)), sensors_(std::move(sensors)) {}

    LogicalState observe() override { return relex::observe(world_, sensors_); }

    bool execute_skill(const GroundedSkill& skill) override {
        const FailureModel* fm = &failures_;
        if (auto it = script_.find(calls_); it != script_.end()) fm = &it->second;
        ++calls_;
        last_event_ = relex::execute_skill(world_, skill, *fm);
        bool term = last_event_.termination;
        if (term ? world_.rng.bernoulli(sensors_.term_fn) : world_.rng.bernoulli(sensors_.term_fp))
            term = !term;
        return term;
    }

    void force_failure(int call_index, FailureModel fm) {
        script_[call_index] = std::move(fm);
    }

    int calls() const { return calls_; }
    const SkillEvent& last_event() const { return last_event_; }
    WorldState& world() { return world_; }

private:
    WorldState& world_;
    FailureModel failures_;
    SensorModel sensors_;
    std::map<int, FailureModel> script_;
    int calls_ = 0;
    SkillEvent last_event_;
};

}  // namespace relex
