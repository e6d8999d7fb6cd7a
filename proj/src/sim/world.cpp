#include "relex/sim/world.hpp"

#include <stdexcept>

namespace relex {

WorldState::WorldState(VocabularyPtr vocab_in, uint64_t seed)
    : vocab(std::move(vocab_in)),
      support(static_cast<size_t>(vocab->universe().size()), -1),
      in_workspace(support.size(), 1),
      close(support.size() * support.size(), 0),
      recoverable(support.size(), 1),
      rng(seed) {}

int WorldState::block_on(int b) const {
    for (int c = 0; c < num_blocks(); ++c)
        if (c != held && support[c] == b) return c;
    return -1;
}

int WorldState::stack_base(int b) const {
    while (support[b] != -1) b = support[b];
    return b;
}

int WorldState::stack_height(int b) const {
    int h = 1;
    for (int c = stack_base(b); (c = block_on(c)) != -1;) ++h;
    return h;
}

void WorldState::set_close(int a, int b, bool v) {
    close[a * num_blocks() + b] = v;
    close[b * num_blocks() + a] = v;
}

void WorldState::clear_close(int b) {
    for (int c = 0; c < num_blocks(); ++c) set_close(b, c, false);
}

double FailureModel::p_fail(const std::string& skill) const {
    auto it = p_fail_by_skill.find(skill);
    return it != p_fail_by_skill.end() ? it->second : p_fail_default;
}

FailureModel FailureModel::standard_noise() {
    FailureModel fm;
    fm.p_fail_default = 0.10;
    fm.topple_base = 0.05;
    fm.p_eject = 0.3;
    fm.p_eject_hard = 0.1;
    fm.p_drop_close = 0.3;
    return fm;
}

double SensorModel::fp_rate(const std::string& predicate) const {
    auto it = fp.find(predicate);
    return it != fp.end() ? it->second : 0.0;
}

double SensorModel::fn_rate(const std::string& predicate) const {
    auto it = fn.find(predicate);
    return it != fn.end() ? it->second : 0.0;
}

SensorModel SensorModel::standard_noise() { return uniform_learned(0.02, 0.02); }

SensorModel SensorModel::uniform_learned(double fp_in, double fn_in) {
    SensorModel sm;
    for (const char* p : {"On", "InHand", "OnTop"}) {
        sm.fp[p] = fp_in;
        sm.fn[p] = fn_in;
    }
    return sm;
}

const char* to_string(SkillEvent::Mode mode) {
    switch (mode) {
        case SkillEvent::Mode::nominal: return "nominal";
        case SkillEvent::Mode::precondition_violated: return "precondition-violated";
        case SkillEvent::Mode::noop: return "noop";
        case SkillEvent::Mode::drop: return "drop";
        case SkillEvent::Mode::topple: return "topple";
    }
    return "?";
}

namespace {

enum class Kind { reach_table, reach_tower, stack, unstack, pull, singulate };

Kind kind_of(const std::string& name) {
    if (name == "ReachOnTable") return Kind::reach_table;
    if (name == "ReachOnTower") return Kind::reach_tower;
    if (name == "Stack") return Kind::stack;
    if (name == "Unstack") return Kind::unstack;
    if (name == "Pull") return Kind::pull;
    if (name == "Singulate") return Kind::singulate;
    throw std::invalid_argument("no simulator physics for skill '" + name + "'");
}

void scatter_stack(WorldState& w, int member, const FailureModel& fm, SkillEvent& ev) {
    const int base = w.stack_base(member);
    std::vector<int> above;
    for (int c = base; (c = w.block_on(c)) != -1;) above.push_back(c);
    for (int b : above) {
        w.support[b] = -1;
        w.clear_close(b);
        if (w.rng.bernoulli(fm.p_eject)) {
            w.in_workspace[b] = 0;
            if (w.rng.bernoulli(fm.p_eject_hard)) w.recoverable[b] = 0;
        } else {
            w.in_workspace[b] = 1;
        }
    }
    ev.mode = SkillEvent::Mode::topple;
    ev.scattered = static_cast<int>(above.size());
}

void drop_held(WorldState& w, const FailureModel& fm) {
    const int x = w.held;
    w.held = -1;
    w.support[x] = -1;
    w.in_workspace[x] = 1;
    w.recoverable[x] = 1;
    w.clear_close(x);
    if (!w.rng.bernoulli(fm.p_drop_close)) return;
    std::vector<int> candidates;
    for (int b = 0; b < w.num_blocks(); ++b)
        if (b != x && w.on_table(b) && w.in_workspace[b]) candidates.push_back(b);
    if (candidates.empty()) return;
    w.set_close(x, candidates[w.rng.uniform_int(candidates.size())], true);
}

void apply_nominal(WorldState& w, Kind kind, int x, int y) {
    switch (kind) {
        case Kind::reach_table:
        case Kind::reach_tower:
            w.held = x;
            w.support[x] = -1;
            w.clear_close(x);
            break;
        case Kind::stack:
            w.support[x] = y;
            w.held = -1;
            w.in_workspace[x] = w.in_workspace[y];
            w.recoverable[x] = 1;
            break;
        case Kind::unstack:
            w.support[x] = -1;
            w.held = -1;
            w.in_workspace[x] = 1;
            w.recoverable[x] = 1;
            w.clear_close(x);
            break;
        case Kind::pull:
            w.in_workspace[x] = 1;
            break;
        case Kind::singulate:
            w.set_close(x, y, false);
            break;
    }
}

}  // namespace

SkillEvent execute_skill(WorldState& w, const GroundedSkill& skill, const FailureModel& fm) {
    SkillEvent ev;
    const Kind kind = kind_of(skill.name);
    const int x = skill.args.at(0).index;
    const int y = skill.args.size() > 1 ? skill.args[1].index : -1;

    const LogicalState gt = project_ground_truth(w);
    const bool unreachable = kind == Kind::pull && !w.recoverable[x];
    if (!preconditions_hold(skill, gt) || unreachable) {
        ev.mode = SkillEvent::Mode::precondition_violated;
        return ev;
    }

    if (kind == Kind::stack || kind == Kind::reach_tower) {
        const int target = kind == Kind::stack ? y : x;
        const int h = w.stack_height(target);
        if (h >= 2 && w.rng.bernoulli(fm.topple_base * (h - 1))) {
            scatter_stack(w, target, fm, ev);
            return ev;
        }
    }

    if (w.rng.bernoulli(fm.p_fail(skill.name))) {
        if (kind == Kind::stack || kind == Kind::unstack) {
            drop_held(w, fm);
            ev.mode = SkillEvent::Mode::drop;
        } else {
            ev.mode = SkillEvent::Mode::noop;
        }
        return ev;
    }

    apply_nominal(w, kind, x, y);
    return ev;
}

LogicalState project_ground_truth(const WorldState& w) {
    const Vocabulary& v = *w.vocab;
    LogicalState s(w.vocab);
    const auto on = v.find_schema("On");
    const auto in_hand = v.find_schema("InHand");
    const auto on_top = v.find_schema("OnTop");
    const auto in_ws = v.find_schema("InWorkspace");
    const auto close = v.find_schema("Close");
    for (int b = 0; b < w.num_blocks(); ++b) {
        if (b == w.held) {
            if (in_hand) s.insert(v.make_atom(*in_hand, ObjectId{b}));
        } else {
            if (on && w.support[b] != -1)
                s.insert(v.make_atom(*on, ObjectId{b}, ObjectId{w.support[b]}));
            if (on_top && w.block_on(b) == -1) s.insert(v.make_atom(*on_top, ObjectId{b}));
        }
        if (in_ws && w.in_workspace[b]) s.insert(v.make_atom(*in_ws, ObjectId{b}));
        if (close)
            for (int c = b + 1; c < w.num_blocks(); ++c)
                if (w.is_close(b, c)) s.insert(v.make_atom(*close, ObjectId{b}, ObjectId{c}));
    }
    return s;
}

LogicalState observe(WorldState& w, const SensorModel& sm) {
    LogicalState s = project_ground_truth(w);
    const Vocabulary& v = *w.vocab;
    std::vector<double> fp(v.schemas().size()), fn(v.schemas().size());
    for (size_t k = 0; k < v.schemas().size(); ++k) {
        fp[k] = sm.fp_rate(v.schemas()[k].name);
        fn[k] = sm.fn_rate(v.schemas()[k].name);
    }
    for (size_t i = 0; i < v.num_atoms(); ++i) {
        const auto schema = static_cast<size_t>(v.atoms()[i].schema);
        const double u = w.rng.uniform();
        if (s.bits().test(i)) {
            if (u < fn[schema]) s.bits().reset(i);
        } else {
            if (u < fp[schema]) s.bits().set(i);
        }
    }
    return s;
}

bool goal_achieved_gt(const WorldState& w, const GoalConditions& goal) {
    return satisfies(project_ground_truth(w), goal);
}

}  // namespace relex
