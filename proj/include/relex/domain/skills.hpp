#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relex/core/state.hpp"
#include "relex/core/vocabulary.hpp"

namespace relex {

// One argument slot in a literal template: either a skill parameter ($k) or
// an object bound by name, resolved against the universe at grounding time.
struct LiteralArg {
    int slot = -1;       // >= 0: parameter index
    std::string bound;   // non-empty: fixed object name

    static LiteralArg param(int k) { return LiteralArg{k, {}}; }
    static LiteralArg object(std::string name) { return LiteralArg{-1, std::move(name)}; }
    bool operator==(const LiteralArg&) const = default;
};

// Precondition/effect template. Derived kinds expand at grounding time into
// conjunctions over all other objects:
//   hand_empty     ->  no InHand(Z) for any Z
//   on_table($k)   ->  no InHand(X) and no On(X,Z) for any Z
//   not_close($k)  ->  no Close(X,Z) for any Z
struct Literal {
    enum class Kind { atom, hand_empty, on_table, not_close };

    Kind kind = Kind::atom;
    bool negated = false;
    std::string predicate;          // atom kind
    std::vector<LiteralArg> args;   // atom kind: length = predicate arity
    int slot = -1;                  // on_table / not_close kind

    static Literal atom(std::string predicate, std::vector<LiteralArg> args, bool negated = false);
    static Literal hand_empty();
    static Literal on_table(int slot, bool negated = false);
    static Literal not_close(int slot);

    bool operator==(const Literal&) const = default;
};

struct SkillSchema {
    std::string name;
    int arity = 1;
    bool symmetric = false;  // grounding emits canonical (ascending) pairs only
    std::vector<Literal> preconditions;
    std::vector<Literal> add_effects;
    std::vector<Literal> delete_effects;
    // Slot whose supporting block, resolved from the state at application
    // time, loses its On edge and becomes OnTop (ReachOnTower).
    std::optional<int> expose_under_slot;
    enum class Source { learned, manual };
    Source source = Source::manual;

    bool operator==(const SkillSchema&) const = default;
};

struct Domain {
    std::vector<PredicateSchema> predicates;
    std::vector<SkillSchema> skills;

    bool operator==(const Domain&) const = default;
};

// The six built-in skills (Reach x2, Stack, Unstack, Pull, Singulate) over
// the standard predicates.
Domain standard_domain();

// Skill instantiated with concrete objects; templates pre-expanded into atom
// bitsets over the vocabulary. A precondition holds iff pre_pos is subsumed,
// pre_neg is disjoint, and every any_of group has at least one atom present.
struct GroundedSkill {
    int schema_index = -1;
    std::string name;  // schema name
    std::vector<ObjectId> args;
    Bitset pre_pos, pre_neg, add, del;
    std::vector<Bitset> pre_any_of;
    std::optional<ObjectId> expose_under;

    std::string text(const Vocabulary& v) const;
};

struct Plan {
    std::vector<GroundedSkill> steps;

    size_t size() const { return steps.size(); }
    bool empty() const { return steps.empty(); }
};

class GroundedDomain {
public:
    GroundedDomain(VocabularyPtr vocab, Domain domain);

    const VocabularyPtr& vocab() const { return vocab_; }
    const Domain& domain() const { return domain_; }
    const std::vector<GroundedSkill>& skills() const { return skills_; }

private:
    VocabularyPtr vocab_;
    Domain domain_;
    std::vector<GroundedSkill> skills_;
};

// All argument tuples of pairwise distinct objects, schema order first, then
// lexicographic tuples (symmetric skills: ascending tuples only).
std::vector<GroundedSkill> ground_skills(const Domain& domain, const Vocabulary& vocab);

bool preconditions_hold(const GroundedSkill& skill, const LogicalState& state);

// (state ∪ add) \ del, then the expose-under handoff if the skill has one.
// nullopt when the handoff cannot resolve a unique supporting block.
std::optional<LogicalState> apply_effects(const GroundedSkill& skill, const LogicalState& state);

}  // namespace relex
