#include <cstdint>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "relex/arm/dataset.hpp"
#include "relex/domain/parser.hpp"
#include "relex/exp/experiment.hpp"
#include "relex/planner/planner.hpp"
#include "relex/sim/environment.hpp"
#include "relex/sim/scenario.hpp"

namespace {

using namespace relex;

struct SharedOpts {
    std::string domain_file;
    std::string scenario_file;
    std::string task = "stacking";
    uint64_t seed = 0;
    double p_fail = 0.10;
    double topple_base = 0.05;
    double p_eject = 0.3;
    double fp = 0.02;
    double fn = 0.02;
};

void add_scenario_flags(CLI::App* cmd, SharedOpts& o) {
    cmd->add_option("task", o.task, "Built-in task")
        ->check(CLI::IsMember({"stacking", "reordering"}));
    cmd->add_option("--domain", o.domain_file, "Skill definition file (default: built-in)");
    cmd->add_option("--scenario", o.scenario_file, "Scenario file (overrides the task)");
}

void add_noise_flags(CLI::App* cmd, SharedOpts& o) {
    cmd->add_option("--seed", o.seed, "Master seed");
    cmd->add_option("--p-fail", o.p_fail, "Per-execution skill failure probability");
    cmd->add_option("--topple-base", o.topple_base, "Topple probability per block of stack height");
    cmd->add_option("--p-eject", o.p_eject, "Chance a toppled block leaves the workspace");
    cmd->add_option("--fp", o.fp, "Sensor false-positive rate on learned-skill predicates");
    cmd->add_option("--fn", o.fn, "Sensor false-negative rate on learned-skill predicates");
}

FailureModel failures_from(const SharedOpts& o) {
    FailureModel fm = FailureModel::standard_noise();
    fm.p_fail_default = o.p_fail;
    fm.topple_base = o.topple_base;
    fm.p_eject = o.p_eject;
    return fm;
}

struct Loaded {
    Task task = Task::stacking;
    Scenario scenario;
    Domain domain;
};

Loaded load(const SharedOpts& o) {
    Loaded l;
    l.domain = o.domain_file.empty() ? standard_domain() : parse_domain_file(o.domain_file);
    if (!o.scenario_file.empty()) {
        l.task = Task::custom;
        l.scenario = parse_scenario_file(o.scenario_file);
    } else if (o.task == "reordering") {
        l.task = Task::reordering;
        l.scenario = reordering_scenario();
    } else {
        l.task = Task::stacking;
        l.scenario = stacking_scenario();
    }
    return l;
}

const char* reason_text(NoPlanReason r) {
    switch (r) {
        case NoPlanReason::exhausted: return "state space exhausted";
        case NoPlanReason::depth_cap: return "depth cap reached";
        case NoPlanReason::expansion_cap: return "expansion cap reached";
    }
    return "?";
}

int cmd_plan(const SharedOpts& o) {
    const Loaded l = load(o);
    auto vocab = scenario_vocabulary(l.scenario, l.domain.predicates);
    const GroundedDomain gd(vocab, l.domain);
    WorldState w = reset(l.scenario, vocab, derive_seed(o.seed, 0, 0));
    const GoalConditions goal = scenario_goal(l.scenario, vocab);
    const PlanResult r = plan(project_ground_truth(w), goal, gd.skills());
    if (!r) {
        std::cout << "NO PLAN\n";
        std::cerr << "no plan: " << reason_text(r.reason) << " after " << r.expansions
                  << " expansions\n";
        return 2;
    }
    for (size_t i = 0; i < r.plan->steps.size(); ++i)
        std::cout << i << ": " << r.plan->steps[i].text(*vocab) << "\n";
    return 0;
}

struct RunOpts {
    std::string mode = "full";
    std::string trace_out;
};

int cmd_run(const SharedOpts& o, const RunOpts& ro) {
    const Loaded l = load(o);
    auto vocab = scenario_vocabulary(l.scenario, l.domain.predicates);
    const GroundedDomain gd(vocab, l.domain);
    WorldState w = reset(l.scenario, vocab, derive_seed(o.seed, 0, 0));
    const GoalConditions goal = scenario_goal(l.scenario, vocab);

    ExecConfig cfg = exec_config(*mode_from_string(ro.mode));
    cfg.record_states = !ro.trace_out.empty();
    SimEnvironment env(w, failures_from(o), SensorModel::uniform_learned(o.fp, o.fn));
    const ExecOutcome out = execute(goal, cfg, env, gd.skills());

    std::cout << "sensed result:     " << (out.success ? "success" : "failure") << "\n";
    std::cout << "ground truth:      " << (goal_achieved_gt(w, goal) ? "success" : "failure")
              << "\n";
    std::cout << "planning rounds:   " << out.replans_used << "\n";
    std::cout << "skill executions:  " << out.skill_executions << "\n";
    if (out.first_plan_length >= 0)
        std::cout << "first plan length: " << out.first_plan_length << "\n";
    else
        std::cout << "first plan length: none (no plan found)\n";

    if (!ro.trace_out.empty()) {
        std::ofstream f(ro.trace_out);
        if (!f) throw std::runtime_error("cannot write " + ro.trace_out);
        write_trace_jsonl(out, f);
    }
    return out.first_plan_length < 0 && !out.success ? 2 : 0;
}

struct ExpOpts {
    std::string mode;  // empty = all three
    int trials = 250;
    std::string reset = "episode";
    std::string csv;
    int jobs = 0;
};

int cmd_experiment(const SharedOpts& o, const ExpOpts& eo) {
    const Loaded l = load(o);
    ExperimentSpec spec;
    spec.task = l.task;
    spec.scenario = l.scenario;
    spec.domain = l.domain;
    spec.trials = eo.trials;
    spec.master_seed = o.seed;
    spec.failures = failures_from(o);
    spec.sensors = SensorModel::uniform_learned(o.fp, o.fn);
    spec.reset = eo.reset == "failure" ? ResetPolicy::on_failure : ResetPolicy::every_episode;
    spec.jobs = eo.jobs;

    std::vector<Mode> modes;
    if (eo.mode.empty())
        modes = {Mode::none, Mode::retrials, Mode::full};
    else
        modes = {*mode_from_string(eo.mode)};

    std::vector<ModeResults> rows;
    for (Mode m : modes) {
        spec.mode = m;
        rows.push_back(run_experiment(spec));
    }

    const char* task_name = o.scenario_file.empty() ? o.task.c_str() : o.scenario_file.c_str();
    std::cout << task_name << ", " << eo.trials << " trials, seed " << o.seed << ", reset "
              << (spec.reset == ResetPolicy::on_failure ? "on failure" : "every episode") << "\n";
    print_results_table(rows, std::cout);

    if (!eo.csv.empty()) {
        std::ofstream f(eo.csv);
        if (!f) throw std::runtime_error("cannot write " + eo.csv);
        write_results_csv(rows, f);
    }
    return 0;
}

struct GenOpts {
    int trajectories = 8;
    int dense_samples = 0;
    double dense_radius = 0.25;
    double resolution = 0.2;
    std::vector<double> obstacles;  // flat x y r triples
    std::vector<int> goal;          // grid cell, default: grid center
    std::string output = "expert.jsonl";
    uint64_t seed = 0;
    int jobs = 0;
};

int cmd_gen_expert(const GenOpts& g) {
    if (g.obstacles.size() % 3 != 0)
        throw std::runtime_error("--obstacles takes x y r triples");
    std::vector<Circle> obstacles;
    for (size_t i = 0; i + 2 < g.obstacles.size(); i += 3)
        obstacles.push_back({g.obstacles[i], g.obstacles[i + 1], g.obstacles[i + 2]});

    const ArmModel arm;
    const CSpaceGrid grid(arm, {g.resolution, g.resolution, g.resolution}, obstacles);

    ExpertConfig cfg;
    cfg.trajectories = g.trajectories;
    cfg.dense_samples = g.dense_samples;
    cfg.dense_radius = g.dense_radius;
    cfg.seed = g.seed;
    cfg.jobs = g.jobs;
    if (g.goal.size() == 3)
        cfg.goal = {g.goal[0], g.goal[1], g.goal[2]};
    else
        cfg.goal = {grid.dims()[0] / 2, grid.dims()[1] / 2, grid.dims()[2] / 2};

    const Dataset ds = generate_trajectories(grid, cfg);
    write_dataset_jsonl(g.output, grid, ds);
    std::cout << "wrote " << ds.rows() << " rows to " << g.output << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reactive skill-based task execution testbed"};
    app.require_subcommand(1);

    SharedOpts shared;
    RunOpts run_opts;
    ExpOpts exp_opts;
    GenOpts gen_opts;

    CLI::App* plan_cmd = app.add_subcommand("plan", "Print a plan for a scenario");
    add_scenario_flags(plan_cmd, shared);
    plan_cmd->add_option("--seed", shared.seed, "Master seed");

    CLI::App* run_cmd = app.add_subcommand("run", "Execute one episode in the simulator");
    add_scenario_flags(run_cmd, shared);
    add_noise_flags(run_cmd, shared);
    run_cmd->add_option("--mode", run_opts.mode, "Recovery mode")
        ->check(CLI::IsMember({"none", "retrials", "full"}));
    run_cmd->add_option("--trace-out", run_opts.trace_out, "Write the execution trace (JSONL)");

    CLI::App* exp_cmd = app.add_subcommand("experiment", "Monte-Carlo evaluation across modes");
    add_scenario_flags(exp_cmd, shared);
    add_noise_flags(exp_cmd, shared);
    exp_cmd->add_option("--mode", exp_opts.mode, "Single mode (default: all three)")
        ->check(CLI::IsMember({"none", "retrials", "full"}));
    exp_cmd->add_option("--trials", exp_opts.trials, "Episodes per mode")
        ->check(CLI::PositiveNumber);
    exp_cmd->add_option("--reset", exp_opts.reset, "World reset policy")
        ->check(CLI::IsMember({"episode", "failure"}));
    exp_cmd->add_option("--csv", exp_opts.csv, "Also write the table as CSV");
    exp_cmd->add_option("--jobs", exp_opts.jobs, "Worker threads (0 = all cores)");

    CLI::App* gen_cmd = app.add_subcommand("gen-expert", "Generate an expert arm dataset");
    gen_cmd->add_option("-n,--trajectories", gen_opts.trajectories, "Trajectory count")
        ->check(CLI::PositiveNumber);
    gen_cmd->add_option("--dense-samples", gen_opts.dense_samples,
                        "Terminal-positive samples per trajectory");
    gen_cmd->add_option("--dense-radius", gen_opts.dense_radius,
                        "Joint-space radius for dense samples (radians)");
    gen_cmd->add_option("--resolution", gen_opts.resolution, "Grid resolution (radians/cell)")
        ->check(CLI::PositiveNumber);
    gen_cmd->add_option("--obstacles", gen_opts.obstacles, "Circles as x y r triples");
    gen_cmd->add_option("--goal", gen_opts.goal, "Goal grid cell")->expected(3);
    gen_cmd->add_option("-o,--output", gen_opts.output, "Output path (JSONL)");
    gen_cmd->add_option("--seed", gen_opts.seed, "Master seed");
    gen_cmd->add_option("--jobs", gen_opts.jobs, "Worker threads (0 = all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(plan_cmd)) return cmd_plan(shared);
        if (app.got_subcommand(run_cmd)) return cmd_run(shared, run_opts);
        if (app.got_subcommand(exp_cmd)) return cmd_experiment(shared, exp_opts);
        if (app.got_subcommand(gen_cmd)) return cmd_gen_expert(gen_opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
