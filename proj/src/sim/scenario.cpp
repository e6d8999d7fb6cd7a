#include "relex/sim/scenario.hpp"

#include <algorithm>
#include <set>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "internal/scan.hpp"

namespace relex {

namespace {

using scan::Cursor;
using scan::Line;
using scan::split_lines;

// Splits on commas outside parentheses.
std::vector<std::string> split_atom_list(Cursor& c) {
    std::vector<std::string> out;
    c.skip_ws();
    size_t start = c.pos;
    int depth = 0;
    auto flush = [&](size_t end) {
        while (start < end && (c.text[start] == ' ' || c.text[start] == '\t')) ++start;
        size_t stop = end;
        while (stop > start && (c.text[stop - 1] == ' ' || c.text[stop - 1] == '\t')) --stop;
        if (stop == start) c.fail("empty atom in list");
        out.push_back(std::string(c.text.substr(start, stop - start)));
    };
    for (; c.pos < c.text.size(); ++c.pos) {
        const char ch = c.text[c.pos];
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == ',' && depth == 0) {
            flush(c.pos);
            start = c.pos + 1;
        }
    }
    if (depth != 0) c.fail("unbalanced parentheses in atom list");
    flush(c.pos);
    return out;
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
    Scenario s;
    bool saw_blocks = false;
    for (const Line& ln : split_lines(text)) {
        Cursor c{ln.text, ln.number, 0};
        c.skip_ws();
        const std::string directive = c.ident("a scenario directive");
        c.skip_ws();
        if (directive == "blocks") {
            if (saw_blocks) c.fail("duplicate blocks line");
            saw_blocks = true;
            s.blocks.clear();
            while (!c.at_end()) {
                s.blocks.push_back(c.ident("a block name"));
                c.skip_ws();
            }
            if (s.blocks.empty()) c.fail("blocks line needs at least one name");
        } else if (directive == "layout") {
            const std::string kind = c.ident("a layout kind");
            if (kind == "all-on-table") {
                s.layout = Scenario::Layout::all_on_table;
            } else if (kind == "tower") {
                s.layout = Scenario::Layout::tower;
                c.skip_ws();
                while (!c.at_end()) {
                    s.tower.push_back(c.ident("a block name"));
                    c.skip_ws();
                }
                if (s.tower.size() < 2) c.fail("tower layout needs at least two blocks");
            } else if (kind == "custom") {
                s.layout = Scenario::Layout::custom;
            } else {
                c.fail("unknown layout '" + kind + "'");
            }
            c.end_of_line("after layout");
        } else if (directive == "support") {
            const std::string a = c.ident("a block name");
            c.skip_ws();
            const std::string b = c.ident("a block name or 'table'");
            c.end_of_line("after support pair");
            s.support.emplace_back(a, b);
        } else if (directive == "out") {
            while (!c.at_end()) {
                s.out.push_back(c.ident("a block name"));
                c.skip_ws();
            }
        } else if (directive == "unrecoverable") {
            while (!c.at_end()) {
                s.unrecoverable.push_back(c.ident("a block name"));
                c.skip_ws();
            }
        } else if (directive == "close") {
            const std::string a = c.ident("a block name");
            c.skip_ws();
            const std::string b = c.ident("a block name");
            c.end_of_line("after close pair");
            s.close.emplace_back(a, b);
        } else if (directive == "goal") {
            auto atoms = split_atom_list(c);
            s.goal.insert(s.goal.end(), atoms.begin(), atoms.end());
        } else {
            c.pos = 0;
            c.skip_ws();
            c.fail("unknown scenario directive '" + directive + "'");
        }
    }
    const std::set<std::string> declared(s.blocks.begin(), s.blocks.end());
    if (declared.size() != s.blocks.size())
        throw std::runtime_error("scenario declares a block twice");
    const auto known = [&](const std::string& name) {
        if (!declared.count(name))
            throw std::runtime_error("scenario names unknown block '" + name + "'");
    };
    for (const auto& b : s.tower) known(b);
    for (const auto& [a, b] : s.support) {
        known(a);
        if (b != "table") known(b);
    }
    for (const auto& b : s.out) known(b);
    for (const auto& b : s.unrecoverable) known(b);
    for (const auto& [a, b] : s.close) {
        known(a);
        known(b);
    }
    return s;
}

Scenario parse_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& s) {
    std::ostringstream out;
    out << "blocks";
    for (const auto& b : s.blocks) out << ' ' << b;
    out << '\n';
    switch (s.layout) {
        case Scenario::Layout::all_on_table:
            out << "layout all-on-table\n";
            break;
        case Scenario::Layout::tower:
            out << "layout tower";
            for (const auto& b : s.tower) out << ' ' << b;
            out << '\n';
            break;
        case Scenario::Layout::custom:
            out << "layout custom\n";
            break;
    }
    for (const auto& [a, b] : s.support) out << "support " << a << ' ' << b << '\n';
    for (const auto& b : s.out) out << "out " << b << '\n';
    for (const auto& b : s.unrecoverable) out << "unrecoverable " << b << '\n';
    for (const auto& [a, b] : s.close) out << "close " << a << ' ' << b << '\n';
    if (!s.goal.empty()) {
        out << "goal ";
        for (size_t i = 0; i < s.goal.size(); ++i) {
            if (i) out << ", ";
            out << s.goal[i];
        }
        out << '\n';
    }
    return out.str();
}

VocabularyPtr scenario_vocabulary(const Scenario& s,
                                  const std::vector<PredicateSchema>& predicates) {
    return make_vocabulary(s.blocks, predicates);
}

namespace {

int block_index(const VocabularyPtr& vocab, const std::string& name) {
    const auto id = vocab->universe().find(name);
    if (!id) throw std::runtime_error("scenario names unknown block '" + name + "'");
    return id->index;
}

}  // namespace

WorldState reset(const Scenario& s, VocabularyPtr vocab, uint64_t seed) {
    WorldState w(std::move(vocab), seed);
    const int n = w.num_blocks();
    switch (s.layout) {
        case Scenario::Layout::all_on_table:
            break;
        case Scenario::Layout::tower: {
            std::vector<uint8_t> used(static_cast<size_t>(n), 0);
            for (size_t i = 0; i < s.tower.size(); ++i) {
                const int b = block_index(w.vocab, s.tower[i]);
                if (used[b]) throw std::runtime_error("block '" + s.tower[i] + "' twice in tower");
                used[b] = 1;
                if (i + 1 < s.tower.size())
                    w.support[b] = block_index(w.vocab, s.tower[i + 1]);
            }
            break;
        }
        case Scenario::Layout::custom: {
            for (const auto& [a, b] : s.support) {
                const int ia = block_index(w.vocab, a);
                w.support[ia] = b == "table" ? -1 : block_index(w.vocab, b);
            }
            for (int b = 0; b < n; ++b) {
                int steps = 0;
                for (int at = b; at != -1; at = w.support[at])
                    if (++steps > n) throw std::runtime_error("cyclic support in scenario");
            }
            for (int b = 0; b < n; ++b) {
                int on_b = 0;
                for (int c = 0; c < n; ++c) on_b += w.support[c] == b;
                if (on_b > 1)
                    throw std::runtime_error("two blocks directly on '" +
                                             w.vocab->universe().name(ObjectId{b}) + "'");
            }
            break;
        }
    }
    for (const auto& name : s.out) w.in_workspace[block_index(w.vocab, name)] = 0;
    for (const auto& name : s.unrecoverable) {
        const int b = block_index(w.vocab, name);
        w.in_workspace[b] = 0;
        w.recoverable[b] = 0;
    }
    for (const auto& [a, b] : s.close) {
        const int ia = block_index(w.vocab, a);
        const int ib = block_index(w.vocab, b);
        if (ia == ib) throw std::runtime_error("close pair repeats block '" + a + "'");
        if (!w.on_table(ia) || !w.on_table(ib))
            throw std::runtime_error("close pair '" + a + "','" + b + "' needs table blocks");
        w.set_close(ia, ib, true);
    }
    return w;
}

GoalConditions scenario_goal(const Scenario& s, const VocabularyPtr& vocab) {
    GoalConditions goal(vocab);
    for (const auto& text : s.goal) {
        const auto atom = vocab->parse_atom(text);
        if (!atom) throw std::runtime_error("bad goal atom '" + text + "'");
        goal.insert(*atom);
    }
    return goal;
}

GoalConditions tower_goal(const std::vector<int>& top_down, const VocabularyPtr& vocab) {
    GoalConditions goal(vocab);
    const auto on = vocab->find_schema("On");
    if (!on) throw std::runtime_error("tower goal needs an On predicate");
    for (size_t i = 0; i + 1 < top_down.size(); ++i)
        goal.insert(vocab->make_atom(*on, ObjectId{top_down[i]}, ObjectId{top_down[i + 1]}));
    return goal;
}

std::optional<std::vector<int>> single_tower(const WorldState& w) {
    if (w.held != -1) return std::nullopt;
    int base = -1;
    for (int b = 0; b < w.num_blocks(); ++b)
        if (w.support[b] == -1) {
            if (base != -1) return std::nullopt;
            base = b;
        }
    if (base == -1) return std::nullopt;
    std::vector<int> bottom_up{base};
    for (int c = base; (c = w.block_on(c)) != -1;) bottom_up.push_back(c);
    if (static_cast<int>(bottom_up.size()) != w.num_blocks()) return std::nullopt;
    return std::vector<int>(bottom_up.rbegin(), bottom_up.rend());
}

std::vector<int> reorder_goal_order(const std::vector<int>& t, ReorderVariant v) {
    if (t.size() != 4) throw std::invalid_argument("reordering needs a 4-block tower");
    switch (v) {
        case ReorderVariant::actions12: return {t[2], t[0], t[1], t[3]};
        case ReorderVariant::actions10: return {t[3], t[1], t[2], t[0]};
        case ReorderVariant::actions8: return {t[1], t[0], t[2], t[3]};
    }
    throw std::invalid_argument("bad reorder variant");
}

Scenario stacking_scenario() {
    Scenario s;
    s.goal = {"On(red,green)", "On(green,blue)", "On(blue,yellow)"};
    return s;
}

Scenario reordering_scenario(ReorderVariant v) {
    Scenario s;
    s.layout = Scenario::Layout::tower;
    s.tower = {"green", "blue", "red", "yellow"};
    const std::vector<int> start{1, 2, 0, 3};  // indices of green,blue,red,yellow
    const auto order = reorder_goal_order(start, v);
    for (size_t i = 0; i + 1 < order.size(); ++i)
        s.goal.push_back("On(" + s.blocks[order[i]] + "," + s.blocks[order[i + 1]] + ")");
    return s;
}

}  // namespace relex
