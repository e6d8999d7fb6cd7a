#pragma once

#include <string>
#include <vector>

#include "relex/core/bitset.hpp"
#include "relex/core/vocabulary.hpp"

namespace relex {

// Set of atoms currently believed (or known) true. A sensed state may be
// physically impossible; consistency is only guaranteed for ground-truth
// projections.
class LogicalState {
public:
    LogicalState() = default;
    explicit LogicalState(VocabularyPtr vocab);
    LogicalState(VocabularyPtr vocab, Bitset bits);

    const VocabularyPtr& vocab() const { return vocab_; }
    const Bitset& bits() const { return bits_; }
    Bitset& bits() { return bits_; }

    bool contains(const Atom& atom) const;
    void insert(const Atom& atom);
    void erase(const Atom& atom);
    size_t count() const { return bits_.count(); }

    // Atoms in vocabulary (ground_all) order.
    std::vector<Atom> atoms() const;
    std::vector<std::string> atom_texts() const;

    bool operator==(const LogicalState& o) const { return bits_ == o.bits_; }

private:
    VocabularyPtr vocab_;
    Bitset bits_;
};

// Conjunction of atoms required true.
class GoalConditions {
public:
    GoalConditions() = default;
    explicit GoalConditions(VocabularyPtr vocab);
    GoalConditions(VocabularyPtr vocab, const std::vector<Atom>& atoms);

    const VocabularyPtr& vocab() const { return vocab_; }
    const Bitset& bits() const { return bits_; }
    void insert(const Atom& atom);
    bool empty() const { return bits_.none(); }
    std::vector<Atom> atoms() const;

private:
    VocabularyPtr vocab_;
    Bitset bits_;
};

// True iff every goal atom is in the state.
bool satisfies(const LogicalState& state, const GoalConditions& goal);

// Physical sanity for blocks-world states: On is functional both ways and
// acyclic, at most one block held, a held block has no support relations,
// and OnTop holds exactly for unheld blocks with nothing on them. States
// over vocabularies lacking On/InHand/OnTop skip the missing conditions.
bool is_consistent(const LogicalState& state);

}  // namespace relex
