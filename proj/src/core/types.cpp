#include "relex/core/types.hpp"

#include <unordered_set>

namespace relex {

Universe::Universe(std::vector<std::string> names) : names_(std::move(names)) {
    std::unordered_set<std::string_view> seen;
    for (const auto& n : names_) {
        if (n.empty()) throw std::invalid_argument("Universe: empty object name");
        if (!seen.insert(n).second)
            throw std::invalid_argument("Universe: duplicate object name '" + n + "'");
    }
}

std::optional<ObjectId> Universe::find(std::string_view name) const {
    for (size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return ObjectId{static_cast<int>(i)};
    return std::nullopt;
}

std::vector<PredicateSchema> standard_predicates() {
    return {
        {"On", 2, false},
        {"InHand", 1, false},
        {"OnTop", 1, false},
        {"InWorkspace", 1, false},
        {"Close", 2, true},
    };
}

}  // namespace relex
