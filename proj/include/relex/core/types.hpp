#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace relex {

struct ObjectId {
    int index = -1;
    auto operator<=>(const ObjectId&) const = default;
};

// Fixed set of named objects; ids are dense 0..N-1 in declaration order.
class Universe {
public:
    Universe() = default;
    explicit Universe(std::vector<std::string> names);

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(ObjectId id) const { return names_.at(static_cast<size_t>(id.index)); }
    std::optional<ObjectId> find(std::string_view name) const;
    const std::vector<std::string>& names() const { return names_; }

private:
    std::vector<std::string> names_;
};

struct PredicateSchema {
    std::string name;
    int arity = 1;           // 1 or 2
    bool symmetric = false;  // binary only; atoms stored with lower id first

    bool operator==(const PredicateSchema&) const = default;
};

// Grounded predicate. args beyond the schema arity are unused.
struct Atom {
    int schema = -1;
    ObjectId arg0;
    ObjectId arg1;

    auto operator<=>(const Atom&) const = default;
};

// On/2, InHand/1, OnTop/1, InWorkspace/1, Close/2 (symmetric).
std::vector<PredicateSchema> standard_predicates();

}  // namespace relex
