#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relex/core/types.hpp"

namespace relex {

// Every well-formed atom over a universe, in a deterministic order: schema
// declaration order, then lexicographic argument tuples. Binary schemas skip
// reflexive pairs; symmetric schemas emit only canonical (lower id first)
// pairs.
std::vector<Atom> ground_all(const Universe& universe,
                             const std::vector<PredicateSchema>& schemas);

// Immutable atom index shared by states, grounded skills, the planner and
// the simulator. Maps Atom <-> dense index in ground_all order.
class Vocabulary {
public:
    Vocabulary(Universe universe, std::vector<PredicateSchema> schemas);

    const Universe& universe() const { return universe_; }
    const std::vector<PredicateSchema>& schemas() const { return schemas_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    size_t num_atoms() const { return atoms_.size(); }

    std::optional<int> find_schema(std::string_view name) const;

    // Canonicalizes symmetric argument order.
    Atom make_atom(int schema, ObjectId a) const;
    Atom make_atom(int schema, ObjectId a, ObjectId b) const;

    // Dense index of an atom; throws on malformed atoms.
    size_t index_of(const Atom& atom) const;
    const Atom& atom_at(size_t index) const { return atoms_.at(index); }

    std::string atom_text(const Atom& atom) const;
    std::string atom_text(size_t index) const { return atom_text(atoms_.at(index)); }
    // Parses `Name(a)` / `Name(a,b)`; nullopt on unknown predicate/object or
    // malformed syntax.
    std::optional<Atom> parse_atom(std::string_view text) const;

private:
    Universe universe_;
    std::vector<PredicateSchema> schemas_;
    std::vector<Atom> atoms_;
    std::vector<size_t> schema_offset_;  // base index per schema
};

using VocabularyPtr = std::shared_ptr<const Vocabulary>;

VocabularyPtr make_vocabulary(std::vector<std::string> object_names,
                              std::vector<PredicateSchema> schemas = standard_predicates());

}  // namespace relex
