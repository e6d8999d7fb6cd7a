#include "relex/core/state.hpp"

#include <stdexcept>

namespace relex {

LogicalState::LogicalState(VocabularyPtr vocab)
    : vocab_(std::move(vocab)), bits_(vocab_->num_atoms()) {}

LogicalState::LogicalState(VocabularyPtr vocab, Bitset bits)
    : vocab_(std::move(vocab)), bits_(std::move(bits)) {
    if (bits_.size() != vocab_->num_atoms())
        throw std::invalid_argument("LogicalState: bitset size mismatch");
}

bool LogicalState::contains(const Atom& atom) const { return bits_.test(vocab_->index_of(atom)); }
void LogicalState::insert(const Atom& atom) { bits_.set(vocab_->index_of(atom)); }
void LogicalState::erase(const Atom& atom) { bits_.reset(vocab_->index_of(atom)); }

std::vector<Atom> LogicalState::atoms() const {
    std::vector<Atom> out;
    for (size_t i = bits_.find_next(0); i < bits_.size(); i = bits_.find_next(i + 1))
        out.push_back(vocab_->atom_at(i));
    return out;
}

std::vector<std::string> LogicalState::atom_texts() const {
    std::vector<std::string> out;
    for (size_t i = bits_.find_next(0); i < bits_.size(); i = bits_.find_next(i + 1))
        out.push_back(vocab_->atom_text(i));
    return out;
}

GoalConditions::GoalConditions(VocabularyPtr vocab)
    : vocab_(std::move(vocab)), bits_(vocab_->num_atoms()) {}

GoalConditions::GoalConditions(VocabularyPtr vocab, const std::vector<Atom>& atoms)
    : GoalConditions(std::move(vocab)) {
    for (const auto& a : atoms) insert(a);
}

void GoalConditions::insert(const Atom& atom) { bits_.set(vocab_->index_of(atom)); }

std::vector<Atom> GoalConditions::atoms() const {
    std::vector<Atom> out;
    for (size_t i = bits_.find_next(0); i < bits_.size(); i = bits_.find_next(i + 1))
        out.push_back(vocab_->atom_at(i));
    return out;
}

bool satisfies(const LogicalState& state, const GoalConditions& goal) {
    return state.bits().contains_all(goal.bits());
}

bool is_consistent(const LogicalState& state) {
    const Vocabulary& v = *state.vocab();
    const int n = v.universe().size();
    const auto on = v.find_schema("On");
    const auto in_hand = v.find_schema("InHand");
    const auto on_top = v.find_schema("OnTop");

    // support[x] = unique y with On(x,y); above[y] = unique x with On(x,y)
    std::vector<int> support(static_cast<size_t>(n), -1), above(static_cast<size_t>(n), -1);
    if (on) {
        for (int x = 0; x < n; ++x) {
            for (int y = 0; y < n; ++y) {
                if (x == y) continue;
                if (!state.contains(v.make_atom(*on, ObjectId{x}, ObjectId{y}))) continue;
                if (support[static_cast<size_t>(x)] != -1) return false;  // (a) two supports
                if (above[static_cast<size_t>(y)] != -1) return false;    // (a) two blocks on y
                support[static_cast<size_t>(x)] = y;
                above[static_cast<size_t>(y)] = x;
            }
        }
        // (b) acyclic: follow support chains, each at most n long
        for (int x = 0; x < n; ++x) {
            int cur = x, steps = 0;
            while (cur != -1) {
                cur = support[static_cast<size_t>(cur)];
                if (++steps > n) return false;
            }
        }
    }

    int held = -1;
    if (in_hand) {
        for (int x = 0; x < n; ++x) {
            if (!state.contains(v.make_atom(*in_hand, ObjectId{x}))) continue;
            if (held != -1) return false;  // (c)
            held = x;
        }
        // (d) held block detached from the support graph
        if (held != -1 &&
            (support[static_cast<size_t>(held)] != -1 || above[static_cast<size_t>(held)] != -1))
            return false;
    }

    if (on_top) {
        for (int x = 0; x < n; ++x) {
            const bool top = state.contains(v.make_atom(*on_top, ObjectId{x}));
            const bool expected = (x != held) && above[static_cast<size_t>(x)] == -1;
            if (top != expected) return false;  // (d)+(e)
        }
    }
    return true;
}

}  // namespace relex
