#include "relex/core/vocabulary.hpp"

#include <stdexcept>

namespace relex {

std::vector<Atom> ground_all(const Universe& universe,
                             const std::vector<PredicateSchema>& schemas) {
    std::vector<Atom> out;
    const int n = universe.size();
    for (size_t s = 0; s < schemas.size(); ++s) {
        const auto& schema = schemas[s];
        const int si = static_cast<int>(s);
        if (schema.arity == 1) {
            for (int a = 0; a < n; ++a) out.push_back(Atom{si, ObjectId{a}, ObjectId{}});
        } else if (schema.symmetric) {
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b) out.push_back(Atom{si, ObjectId{a}, ObjectId{b}});
        } else {
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    if (a != b) out.push_back(Atom{si, ObjectId{a}, ObjectId{b}});
        }
    }
    return out;
}

Vocabulary::Vocabulary(Universe universe, std::vector<PredicateSchema> schemas)
    : universe_(std::move(universe)), schemas_(std::move(schemas)) {
    for (const auto& s : schemas_) {
        if (s.arity != 1 && s.arity != 2)
            throw std::invalid_argument("Vocabulary: predicate arity must be 1 or 2");
        if (s.symmetric && s.arity != 2)
            throw std::invalid_argument("Vocabulary: symmetric predicate must be binary");
    }
    atoms_ = ground_all(universe_, schemas_);
    schema_offset_.resize(schemas_.size(), 0);
    size_t off = 0;
    const size_t n = static_cast<size_t>(universe_.size());
    for (size_t s = 0; s < schemas_.size(); ++s) {
        schema_offset_[s] = off;
        if (schemas_[s].arity == 1)
            off += n;
        else if (schemas_[s].symmetric)
            off += n * (n - 1) / 2;
        else
            off += n * (n - 1);
    }
}

std::optional<int> Vocabulary::find_schema(std::string_view name) const {
    for (size_t s = 0; s < schemas_.size(); ++s)
        if (schemas_[s].name == name) return static_cast<int>(s);
    return std::nullopt;
}

Atom Vocabulary::make_atom(int schema, ObjectId a) const {
    if (schemas_.at(static_cast<size_t>(schema)).arity != 1)
        throw std::invalid_argument("make_atom: schema is binary");
    return Atom{schema, a, ObjectId{}};
}

Atom Vocabulary::make_atom(int schema, ObjectId a, ObjectId b) const {
    const auto& s = schemas_.at(static_cast<size_t>(schema));
    if (s.arity != 2) throw std::invalid_argument("make_atom: schema is unary");
    if (a == b) throw std::invalid_argument("make_atom: reflexive binary atom");
    if (s.symmetric && b < a) std::swap(a, b);
    return Atom{schema, a, b};
}

size_t Vocabulary::index_of(const Atom& atom) const {
    const auto& s = schemas_.at(static_cast<size_t>(atom.schema));
    const size_t n = static_cast<size_t>(universe_.size());
    const size_t base = schema_offset_[static_cast<size_t>(atom.schema)];
    const size_t a = static_cast<size_t>(atom.arg0.index);
    if (atom.arg0.index < 0 || a >= n) throw std::out_of_range("index_of: bad arg0");
    if (s.arity == 1) return base + a;
    const size_t b = static_cast<size_t>(atom.arg1.index);
    if (atom.arg1.index < 0 || b >= n || a == b) throw std::out_of_range("index_of: bad arg1");
    if (s.symmetric) {
        if (b < a) throw std::out_of_range("index_of: non-canonical symmetric atom");
        // pairs (0,1)..(0,n-1), (1,2)..: offset of row a, then column
        return base + a * (2 * n - a - 1) / 2 + (b - a - 1);
    }
    return base + a * (n - 1) + (b > a ? b - 1 : b);
}

std::string Vocabulary::atom_text(const Atom& atom) const {
    const auto& s = schemas_.at(static_cast<size_t>(atom.schema));
    std::string out = s.name;
    out += '(';
    out += universe_.name(atom.arg0);
    if (s.arity == 2) {
        out += ',';
        out += universe_.name(atom.arg1);
    }
    out += ')';
    return out;
}

std::optional<Atom> Vocabulary::parse_atom(std::string_view text) const {
    const size_t lp = text.find('(');
    if (lp == std::string_view::npos || text.back() != ')') return std::nullopt;
    const auto schema = find_schema(text.substr(0, lp));
    if (!schema) return std::nullopt;
    std::string_view inner = text.substr(lp + 1, text.size() - lp - 2);
    const auto& s = schemas_[static_cast<size_t>(*schema)];
    const size_t comma = inner.find(',');
    if (s.arity == 1) {
        if (comma != std::string_view::npos) return std::nullopt;
        const auto a = universe_.find(inner);
        if (!a) return std::nullopt;
        return make_atom(*schema, *a);
    }
    if (comma == std::string_view::npos) return std::nullopt;
    const auto a = universe_.find(inner.substr(0, comma));
    const auto b = universe_.find(inner.substr(comma + 1));
    if (!a || !b || *a == *b) return std::nullopt;
    return make_atom(*schema, *a, *b);
}

VocabularyPtr make_vocabulary(std::vector<std::string> object_names,
                              std::vector<PredicateSchema> schemas) {
    return std::make_shared<const Vocabulary>(Universe(std::move(object_names)),
                                              std::move(schemas));
}

}  // namespace relex
