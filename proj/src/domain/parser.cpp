#include "relex/domain/parser.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <vector>

#include "internal/scan.hpp"

namespace relex {

ParseError::ParseError(const std::string& message, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + ":" + std::to_string(column) + ": " +
                         message),
      line(line),
      column(column) {}

namespace {

using scan::Cursor;
using scan::Line;
using scan::split_lines;

const PredicateSchema* find_predicate(const std::vector<PredicateSchema>& predicates,
                                      const std::string& name) {
    for (const auto& p : predicates)
        if (p.name == name) return &p;
    return nullptr;
}

Literal parse_literal(Cursor& c, int skill_arity, const std::vector<PredicateSchema>& predicates) {
    Literal lit;
    lit.negated = c.eat('!');
    const size_t name_pos = c.pos;
    const std::string name = c.ident("a predicate or derived-condition name");
    if (name == "hand-empty") {
        lit.kind = Literal::Kind::hand_empty;
        return lit;
    }
    if (name == "on-table" || name == "not-close") {
        lit.kind = name == "on-table" ? Literal::Kind::on_table : Literal::Kind::not_close;
        c.expect('(', "after '" + name + "'");
        lit.slot = c.slot(skill_arity);
        c.expect(')', "after parameter");
        return lit;
    }
    const PredicateSchema* schema = find_predicate(predicates, name);
    if (!schema) {
        c.pos = name_pos;
        c.fail("unknown predicate '" + name + "'");
    }
    lit.kind = Literal::Kind::atom;
    lit.predicate = name;
    c.expect('(', "after predicate name");
    for (int i = 0; i < schema->arity; ++i) {
        if (i) c.expect(',', "between arguments");
        c.skip_ws();
        if (c.peek() == '$')
            lit.args.push_back(LiteralArg::param(c.slot(skill_arity)));
        else
            lit.args.push_back(LiteralArg::object(c.ident("an argument")));
        c.skip_ws();
    }
    if (c.peek() == ',') c.fail("too many arguments for " + name + "/" +
                                std::to_string(schema->arity));
    c.expect(')', "after arguments");
    return lit;
}

std::vector<Literal> parse_literal_list(Cursor& c, int skill_arity,
                                        const std::vector<PredicateSchema>& predicates) {
    std::vector<Literal> out;
    c.skip_ws();
    if (c.at_end()) return out;
    for (;;) {
        out.push_back(parse_literal(c, skill_arity, predicates));
        c.skip_ws();
        if (c.at_end()) return out;
        c.expect(',', "between literals");
        c.skip_ws();
    }
}

void check_effects(const SkillSchema& skill, Cursor& c) {
    auto plain = [&](const std::vector<Literal>& effects, const char* which) {
        for (const auto& e : effects) {
            if (e.kind != Literal::Kind::atom)
                c.fail(std::string(which) + " effects must be plain atoms");
            if (e.negated) c.fail(std::string(which) + " effects may not be negated");
        }
    };
    plain(skill.add_effects, "add");
    plain(skill.delete_effects, "del");
    for (const auto& a : skill.add_effects)
        if (std::find(skill.delete_effects.begin(), skill.delete_effects.end(), a) !=
            skill.delete_effects.end())
            c.fail("literal appears in both add and del of skill '" + skill.name + "'");
}

std::string literal_text(const Literal& lit) {
    std::string s;
    if (lit.negated) s += '!';
    switch (lit.kind) {
        case Literal::Kind::hand_empty:
            return s + "hand-empty";
        case Literal::Kind::on_table:
            return s + "on-table($" + std::to_string(lit.slot) + ")";
        case Literal::Kind::not_close:
            return s + "not-close($" + std::to_string(lit.slot) + ")";
        case Literal::Kind::atom:
            break;
    }
    s += lit.predicate;
    s += '(';
    for (size_t i = 0; i < lit.args.size(); ++i) {
        if (i) s += ',';
        if (lit.args[i].slot >= 0)
            s += '$' + std::to_string(lit.args[i].slot);
        else
            s += lit.args[i].bound;
    }
    s += ')';
    return s;
}

}  // namespace

Domain parse_domain(std::string_view text) {
    const std::vector<Line> lines = split_lines(text);
    Domain domain;

    for (const Line& ln : lines) {
        Cursor c{ln.text, ln.number, 0};
        c.skip_ws();
        if (ln.indented) continue;
        if (c.ident("a directive") != "predicate") continue;
        c.skip_ws();
        PredicateSchema p;
        p.name = c.ident("a predicate name");
        c.expect('/', "after predicate name");
        p.arity = c.number("an arity");
        if (p.arity != 1 && p.arity != 2) c.fail("predicate arity must be 1 or 2");
        c.skip_ws();
        if (!c.at_end()) {
            if (c.ident("'symmetric'") != "symmetric") c.fail("unknown predicate marker");
            if (p.arity != 2) c.fail("only binary predicates can be symmetric");
            p.symmetric = true;
        }
        c.end_of_line("after predicate declaration");
        if (find_predicate(domain.predicates, p.name))
            c.fail("duplicate predicate '" + p.name + "'");
        domain.predicates.push_back(std::move(p));
    }
    if (domain.predicates.empty()) domain.predicates = standard_predicates();

    SkillSchema* current = nullptr;
    for (const Line& ln : lines) {
        Cursor c{ln.text, ln.number, 0};
        c.skip_ws();
        if (!ln.indented) {
            const std::string keyword = c.ident("'skill' or 'predicate'");
            if (keyword == "predicate") {
                current = nullptr;
                continue;
            }
            if (keyword != "skill") {
                c.pos = 0;
                c.fail("expected 'skill' or 'predicate', got '" + keyword + "'");
            }
            c.skip_ws();
            SkillSchema skill;
            skill.name = c.ident("a skill name");
            c.expect('/', "after skill name");
            skill.arity = c.number("an arity");
            if (skill.arity != 1 && skill.arity != 2) c.fail("skill arity must be 1 or 2");
            for (;;) {
                c.skip_ws();
                if (c.eat(':')) break;
                const size_t marker_pos = c.pos;
                const std::string marker = c.ident("a marker or ':'");
                if (marker == "symmetric") {
                    if (skill.arity != 2) {
                        c.pos = marker_pos;
                        c.fail("only binary skills can be symmetric");
                    }
                    skill.symmetric = true;
                } else if (marker == "learned") {
                    skill.source = SkillSchema::Source::learned;
                } else if (marker == "manual") {
                    skill.source = SkillSchema::Source::manual;
                } else {
                    c.pos = marker_pos;
                    c.fail("unknown skill marker '" + marker + "'");
                }
            }
            c.end_of_line("after skill header");
            for (const auto& s : domain.skills)
                if (s.name == skill.name) c.fail("duplicate skill '" + skill.name + "'");
            domain.skills.push_back(std::move(skill));
            current = &domain.skills.back();
            continue;
        }
        if (!current) c.fail("indented line outside a skill block");
        const std::string key = c.ident("'pre', 'add', 'del' or 'expose-under'");
        c.expect(':', "after '" + key + "'");
        if (key == "pre") {
            auto lits = parse_literal_list(c, current->arity, domain.predicates);
            current->preconditions.insert(current->preconditions.end(), lits.begin(), lits.end());
        } else if (key == "add") {
            auto lits = parse_literal_list(c, current->arity, domain.predicates);
            current->add_effects.insert(current->add_effects.end(), lits.begin(), lits.end());
        } else if (key == "del") {
            auto lits = parse_literal_list(c, current->arity, domain.predicates);
            current->delete_effects.insert(current->delete_effects.end(), lits.begin(), lits.end());
        } else if (key == "expose-under") {
            c.skip_ws();
            current->expose_under_slot = c.slot(current->arity);
            c.end_of_line("after expose-under");
        } else {
            c.pos = 0;
            c.skip_ws();
            c.fail("unknown skill field '" + key + "'");
        }
        Cursor at_header{ln.text, ln.number, 0};
        check_effects(*current, at_header);
    }
    return domain;
}

Domain parse_domain_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open domain file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_domain(buf.str());
}

std::string serialize_domain(const Domain& domain) {
    std::ostringstream out;
    for (const auto& p : domain.predicates) {
        out << "predicate " << p.name << '/' << p.arity;
        if (p.symmetric) out << " symmetric";
        out << '\n';
    }
    for (const auto& skill : domain.skills) {
        out << "\nskill " << skill.name << '/' << skill.arity;
        if (skill.symmetric) out << " symmetric";
        if (skill.source == SkillSchema::Source::learned) out << " learned";
        out << ":\n";
        auto emit = [&](const char* key, const std::vector<Literal>& lits) {
            if (lits.empty()) return;
            out << "  " << key << ": ";
            for (size_t i = 0; i < lits.size(); ++i) {
                if (i) out << ", ";
                out << literal_text(lits[i]);
            }
            out << '\n';
        };
        emit("pre", skill.preconditions);
        emit("add", skill.add_effects);
        emit("del", skill.delete_effects);
        if (skill.expose_under_slot) out << "  expose-under: $" << *skill.expose_under_slot << '\n';
    }
    return out.str();
}

}  // namespace relex
