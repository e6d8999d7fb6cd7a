#include "relex/domain/skills.hpp"

#include <algorithm>
#include <stdexcept>

namespace relex {

Literal Literal::atom(std::string predicate, std::vector<LiteralArg> args, bool negated) {
    Literal l;
    l.kind = Kind::atom;
    l.negated = negated;
    l.predicate = std::move(predicate);
    l.args = std::move(args);
    return l;
}

Literal Literal::hand_empty() {
    Literal l;
    l.kind = Kind::hand_empty;
    return l;
}

Literal Literal::on_table(int slot, bool negated) {
    Literal l;
    l.kind = Kind::on_table;
    l.slot = slot;
    l.negated = negated;
    return l;
}

Literal Literal::not_close(int slot) {
    Literal l;
    l.kind = Kind::not_close;
    l.slot = slot;
    return l;
}

namespace {

LiteralArg p0() { return LiteralArg::param(0); }
LiteralArg p1() { return LiteralArg::param(1); }

}  // namespace

Domain standard_domain() {
    Domain d;
    d.predicates = standard_predicates();

    SkillSchema reach_table;
    reach_table.name = "ReachOnTable";
    reach_table.arity = 1;
    reach_table.source = SkillSchema::Source::learned;
    reach_table.preconditions = {Literal::atom("OnTop", {p0()}),
                                 Literal::atom("InWorkspace", {p0()}),
                                 Literal::on_table(0),
                                 Literal::hand_empty(),
                                 Literal::not_close(0)};
    reach_table.add_effects = {Literal::atom("InHand", {p0()})};
    reach_table.delete_effects = {Literal::atom("OnTop", {p0()})};
    d.skills.push_back(reach_table);

    SkillSchema reach_tower;
    reach_tower.name = "ReachOnTower";
    reach_tower.arity = 1;
    reach_tower.source = SkillSchema::Source::learned;
    reach_tower.preconditions = {Literal::atom("OnTop", {p0()}),
                                 Literal::atom("InWorkspace", {p0()}),
                                 Literal::on_table(0, /*negated=*/true),
                                 Literal::hand_empty()};
    reach_tower.add_effects = {Literal::atom("InHand", {p0()})};
    reach_tower.delete_effects = {Literal::atom("OnTop", {p0()})};
    reach_tower.expose_under_slot = 0;
    d.skills.push_back(reach_tower);

    SkillSchema stack;
    stack.name = "Stack";
    stack.arity = 2;
    stack.source = SkillSchema::Source::learned;
    stack.preconditions = {Literal::atom("InHand", {p0()}), Literal::atom("OnTop", {p1()}),
                           Literal::atom("InWorkspace", {p1()})};
    stack.add_effects = {Literal::atom("On", {p0(), p1()}), Literal::atom("OnTop", {p0()})};
    stack.delete_effects = {Literal::atom("InHand", {p0()}), Literal::atom("OnTop", {p1()})};
    d.skills.push_back(stack);

    SkillSchema unstack;
    unstack.name = "Unstack";
    unstack.arity = 1;
    unstack.preconditions = {Literal::atom("InHand", {p0()})};
    unstack.add_effects = {Literal::atom("OnTop", {p0()}), Literal::atom("InWorkspace", {p0()})};
    unstack.delete_effects = {Literal::atom("InHand", {p0()})};
    d.skills.push_back(unstack);

    SkillSchema pull;
    pull.name = "Pull";
    pull.arity = 1;
    pull.preconditions = {Literal::atom("InWorkspace", {p0()}, /*negated=*/true),
                          Literal::atom("OnTop", {p0()}), Literal::on_table(0),
                          Literal::hand_empty()};
    pull.add_effects = {Literal::atom("InWorkspace", {p0()})};
    d.skills.push_back(pull);

    SkillSchema singulate;
    singulate.name = "Singulate";
    singulate.arity = 2;
    singulate.symmetric = true;
    singulate.preconditions = {Literal::atom("Close", {p0(), p1()}), Literal::on_table(0),
                               Literal::on_table(1), Literal::hand_empty()};
    singulate.delete_effects = {Literal::atom("Close", {p0(), p1()})};
    d.skills.push_back(singulate);

    return d;
}

std::string GroundedSkill::text(const Vocabulary& v) const {
    std::string out = name;
    out += '(';
    for (size_t i = 0; i < args.size(); ++i) {
        if (i) out += ',';
        out += v.universe().name(args[i]);
    }
    out += ')';
    return out;
}

namespace {

ObjectId resolve_arg(const LiteralArg& arg, const std::vector<ObjectId>& params,
                     const Universe& universe) {
    if (arg.slot >= 0) return params.at(static_cast<size_t>(arg.slot));
    const auto id = universe.find(arg.bound);
    if (!id) throw std::invalid_argument("unknown object '" + arg.bound + "' in literal");
    return *id;
}

size_t atom_bit(const Vocabulary& v, const std::string& predicate,
                const std::vector<LiteralArg>& args, const std::vector<ObjectId>& params) {
    const auto schema = v.find_schema(predicate);
    if (!schema) throw std::invalid_argument("unknown predicate '" + predicate + "'");
    const auto& ps = v.schemas()[static_cast<size_t>(*schema)];
    if (static_cast<int>(args.size()) != ps.arity)
        throw std::invalid_argument("arity mismatch for predicate '" + predicate + "'");
    const ObjectId a = resolve_arg(args[0], params, v.universe());
    if (ps.arity == 1) return v.index_of(v.make_atom(*schema, a));
    const ObjectId b = resolve_arg(args[1], params, v.universe());
    return v.index_of(v.make_atom(*schema, a, b));
}

// Expansion of a derived condition as the set of atoms that must all be
// absent. Negating the condition turns the same set into an any-of group.
Bitset derived_absent_set(const Vocabulary& v, const Literal& lit,
                          const std::vector<ObjectId>& params) {
    Bitset bits(v.num_atoms());
    const int n = v.universe().size();
    if (lit.kind == Literal::Kind::hand_empty) {
        const auto in_hand = v.find_schema("InHand");
        if (!in_hand) throw std::invalid_argument("hand-empty needs an InHand predicate");
        for (int z = 0; z < n; ++z) bits.set(v.index_of(v.make_atom(*in_hand, ObjectId{z})));
        return bits;
    }
    const ObjectId x = params.at(static_cast<size_t>(lit.slot));
    if (lit.kind == Literal::Kind::on_table) {
        const auto on = v.find_schema("On");
        const auto in_hand = v.find_schema("InHand");
        if (!on || !in_hand) throw std::invalid_argument("on-table needs On and InHand predicates");
        bits.set(v.index_of(v.make_atom(*in_hand, x)));
        for (int z = 0; z < n; ++z)
            if (z != x.index) bits.set(v.index_of(v.make_atom(*on, x, ObjectId{z})));
        return bits;
    }
    const auto close = v.find_schema("Close");
    if (!close) throw std::invalid_argument("not-close needs a Close predicate");
    for (int z = 0; z < n; ++z)
        if (z != x.index) bits.set(v.index_of(v.make_atom(*close, x, ObjectId{z})));
    return bits;
}

GroundedSkill ground_one(const Vocabulary& v, const Domain& domain, int schema_index,
                         std::vector<ObjectId> args) {
    const SkillSchema& schema = domain.skills[static_cast<size_t>(schema_index)];
    GroundedSkill g;
    g.schema_index = schema_index;
    g.name = schema.name;
    g.args = std::move(args);
    g.pre_pos = Bitset(v.num_atoms());
    g.pre_neg = Bitset(v.num_atoms());
    g.add = Bitset(v.num_atoms());
    g.del = Bitset(v.num_atoms());

    for (const auto& lit : schema.preconditions) {
        if (lit.kind == Literal::Kind::atom) {
            const size_t bit = atom_bit(v, lit.predicate, lit.args, g.args);
            (lit.negated ? g.pre_neg : g.pre_pos).set(bit);
        } else if (!lit.negated) {
            g.pre_neg |= derived_absent_set(v, lit, g.args);
        } else {
            g.pre_any_of.push_back(derived_absent_set(v, lit, g.args));
        }
    }
    for (const auto& lit : schema.add_effects)
        g.add.set(atom_bit(v, lit.predicate, lit.args, g.args));
    for (const auto& lit : schema.delete_effects)
        g.del.set(atom_bit(v, lit.predicate, lit.args, g.args));
    if (schema.expose_under_slot)
        g.expose_under = g.args.at(static_cast<size_t>(*schema.expose_under_slot));
    return g;
}

}  // namespace

std::vector<GroundedSkill> ground_skills(const Domain& domain, const Vocabulary& vocab) {
    std::vector<GroundedSkill> out;
    const int n = vocab.universe().size();
    for (size_t s = 0; s < domain.skills.size(); ++s) {
        const auto& schema = domain.skills[s];
        const int si = static_cast<int>(s);
        if (schema.arity == 1) {
            for (int a = 0; a < n; ++a)
                out.push_back(ground_one(vocab, domain, si, {ObjectId{a}}));
        } else if (schema.arity == 2) {
            for (int a = 0; a < n; ++a) {
                const int b0 = schema.symmetric ? a + 1 : 0;
                for (int b = b0; b < n; ++b)
                    if (a != b)
                        out.push_back(ground_one(vocab, domain, si, {ObjectId{a}, ObjectId{b}}));
            }
        } else {
            throw std::invalid_argument("ground_skills: unsupported arity");
        }
    }
    return out;
}

GroundedDomain::GroundedDomain(VocabularyPtr vocab, Domain domain)
    : vocab_(std::move(vocab)), domain_(std::move(domain)) {
    skills_ = ground_skills(domain_, *vocab_);
}

bool preconditions_hold(const GroundedSkill& skill, const LogicalState& state) {
    const Bitset& bits = state.bits();
    if (!bits.contains_all(skill.pre_pos)) return false;
    if (bits.intersects(skill.pre_neg)) return false;
    for (const auto& group : skill.pre_any_of)
        if (!bits.intersects(group)) return false;
    return true;
}

std::optional<LogicalState> apply_effects(const GroundedSkill& skill, const LogicalState& state) {
    const Vocabulary& v = *state.vocab();
    Bitset out = state.bits();
    out |= skill.add;
    out.subtract(skill.del);
    if (skill.expose_under) {
        const auto on = v.find_schema("On");
        const auto on_top = v.find_schema("OnTop");
        if (!on || !on_top) return std::nullopt;
        const ObjectId x = *skill.expose_under;
        int under = -1;
        for (int y = 0; y < v.universe().size(); ++y) {
            if (y == x.index) continue;
            if (!state.contains(v.make_atom(*on, x, ObjectId{y}))) continue;
            if (under != -1) return std::nullopt;  // no unique support
            under = y;
        }
        if (under == -1) return std::nullopt;
        out.reset(v.index_of(v.make_atom(*on, x, ObjectId{under})));
        out.set(v.index_of(v.make_atom(*on_top, ObjectId{under})));
    }
    return LogicalState(state.vocab(), std::move(out));
}

}  // namespace relex
