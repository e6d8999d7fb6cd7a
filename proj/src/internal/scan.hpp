#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "relex/domain/parser.hpp"

// Shared line/token scanning for the domain and scenario text formats.
namespace relex::scan {

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

struct Cursor {
    std::string_view text;
    int line = 0;
    size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line, static_cast<int>(pos) + 1);
    }

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }
    bool at_end() const { return pos >= text.size(); }
    char peek() const { return pos < text.size() ? text[pos] : '\0'; }
    bool eat(char c) {
        if (peek() != c) return false;
        ++pos;
        return true;
    }
    void expect(char c, const std::string& what) {
        if (!eat(c)) fail("expected '" + std::string(1, c) + "' " + what);
    }

    std::string ident(const std::string& what) {
        if (!ident_start(peek())) fail("expected " + what);
        size_t start = pos;
        while (pos < text.size() && ident_char(text[pos])) ++pos;
        return std::string(text.substr(start, pos - start));
    }

    int number(const std::string& what) {
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected " + what);
        int v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            v = v * 10 + (text[pos++] - '0');
        return v;
    }

    int slot(int arity) {
        expect('$', "before parameter index");
        int k = number("parameter index after '$'");
        if (k >= arity) fail("parameter $" + std::to_string(k) + " out of range for arity " +
                             std::to_string(arity));
        return k;
    }

    void end_of_line(const std::string& what) {
        skip_ws();
        if (!at_end()) fail("unexpected trailing text " + what);
    }
};

struct Line {
    std::string_view text;
    int number;
    bool indented;
};

// Strips comments and blank lines; remembers indentation and 1-based numbers.
inline std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> lines;
    int number = 0;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(start, end - start);
        ++number;
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        if (size_t hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        const bool indented = !raw.empty() && (raw[0] == ' ' || raw[0] == '\t');
        if (raw.find_first_not_of(" \t") != std::string_view::npos)
            lines.push_back({raw, number, indented});
        if (end == text.size()) break;
        start = end + 1;
    }
    return lines;
}

}  // namespace relex::scan
