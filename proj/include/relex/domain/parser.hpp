#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "relex/domain/skills.hpp"

namespace relex {

struct ParseError : std::runtime_error {
    int line;    // 1-based
    int column;  // 1-based

    ParseError(const std::string& message, int line, int column);
};

// Line-oriented domain format:
//
//   predicate On/2
//   predicate Close/2 symmetric
//
//   skill Stack/2 learned:
//     pre: InHand($0), OnTop($1), InWorkspace($1)
//     add: On($0,$1), OnTop($0)
//     del: InHand($0), OnTop($1)
//
// `$k` is a parameter slot, a bare name binds an object, `!` negates, and
// `hand-empty` / `on-table($k)` / `not-close($k)` are the derived
// conditions. `expose-under: $k` marks the ReachOnTower-style handoff.
// Effects must be plain positive atoms. `#` starts a comment. Files with no
// predicate declarations get the standard predicate set.
Domain parse_domain(std::string_view text);
Domain parse_domain_file(const std::filesystem::path& path);

// parse_domain(serialize_domain(d)) == d
std::string serialize_domain(const Domain& domain);

}  // namespace relex
