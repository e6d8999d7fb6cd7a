#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relex/exec/executor.hpp"
#include "relex/sim/scenario.hpp"

namespace relex {

// Recovery ablations: none = one plan, one shot per step; retrials = one
// plan, per-step retries; full = retries plus replanning.
enum class Mode { none, retrials, full };
enum class ResetPolicy { every_episode, on_failure };
enum class Task { stacking, reordering, custom };

const char* to_string(Mode mode);
std::optional<Mode> mode_from_string(std::string_view text);
ExecConfig exec_config(Mode mode);

struct ExperimentSpec {
    Task task = Task::stacking;
    Scenario scenario;  // initial layout; the goal drives custom tasks
    Domain domain = standard_domain();
    Mode mode = Mode::full;
    int trials = 250;
    uint64_t master_seed = 0;
    FailureModel failures;
    SensorModel sensors;
    ResetPolicy reset = ResetPolicy::every_episode;
    PlannerConfig planner;
    int jobs = 0;  // worker threads; 0 = runtime default
};

struct TrialRecord {
    bool success = false;       // scored against ground truth
    bool exec_success = false;  // the executor's sensed belief
    int replans_used = 0;
    int nominal_plan_length = 0;  // first plan of the episode
    int achieved_tower = 0;       // built prefix of the goal tower, from the base
    int max_step_attempts = 0;
    int skill_executions = 0;
};

struct ModeResults {
    Mode mode = Mode::full;
    std::vector<TrialRecord> trials;

    int successes() const;
    int failures() const { return static_cast<int>(trials.size()) - successes(); }
    double success_rate() const;
    int successful_replans() const;  // successes that took >= 2 planning rounds
    std::map<int, int> failures_by_plan_length() const;
    std::map<int, int> tower_histogram() const;
};

// Monte-Carlo evaluation. Trial t's world derives from (master_seed, t);
// reordering goals permute the current tower, with the permutation drawn
// from a separate per-trial stream. With reset=on-failure a successful
// episode's final world carries into the next trial (so that policy runs
// sequentially); every-episode trials run in parallel.
ModeResults run_experiment(const ExperimentSpec& spec);

// Reference single-thread loop; run_experiment must match it exactly.
ModeResults run_experiment_serial(const ExperimentSpec& spec);

void print_results_table(const std::vector<ModeResults>& rows, std::ostream& out);
void write_results_csv(const std::vector<ModeResults>& rows, std::ostream& out);

}  // namespace relex
