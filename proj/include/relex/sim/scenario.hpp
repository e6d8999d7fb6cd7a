#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "relex/sim/world.hpp"

namespace relex {

// Declarative initial layout + goal. Blocks default to the four colors;
// `tower` lists blocks top..base; custom layouts give explicit support
// pairs plus workspace/closeness annotations.
struct Scenario {
    enum class Layout { all_on_table, tower, custom };

    std::vector<std::string> blocks{"red", "green", "blue", "yellow"};
    Layout layout = Layout::all_on_table;
    std::vector<std::string> tower;                            // top..base
    std::vector<std::pair<std::string, std::string>> support;  // block on block|"table"
    std::vector<std::string> out;                              // not in workspace
    std::vector<std::string> unrecoverable;                    // beyond Pull's reach
    std::vector<std::pair<std::string, std::string>> close;
    std::vector<std::string> goal;                             // atom texts
};

// Line format, same family as domain files:
//
//   blocks red green blue yellow
//   layout tower green blue red yellow
//   goal On(red,green), On(green,blue), On(blue,yellow)
//
// plus `layout all-on-table`, `layout custom` with `support x y|table`,
// `out x`, `unrecoverable x`, `close x y` lines.
Scenario parse_scenario(std::string_view text);
Scenario parse_scenario_file(const std::filesystem::path& path);
std::string serialize_scenario(const Scenario& s);

VocabularyPtr scenario_vocabulary(
    const Scenario& s, const std::vector<PredicateSchema>& predicates = standard_predicates());

// Deterministic world for (scenario, seed); rejects layouts that violate
// the support-graph invariants.
WorldState reset(const Scenario& s, VocabularyPtr vocab, uint64_t seed);

GoalConditions scenario_goal(const Scenario& s, const VocabularyPtr& vocab);

// Goal asking for one tower in the given top..base order.
GoalConditions tower_goal(const std::vector<int>& top_down, const VocabularyPtr& vocab);

// Block indices top..base when every block sits in one tower, else nullopt.
std::optional<std::vector<int>> single_tower(const WorldState& w);

// Reordering targets, as permutations of the current tower (top..base
// (a,b,c,d)). The names give the optimal plan length from a clean tower.
enum class ReorderVariant { actions12, actions10, actions8 };
std::vector<int> reorder_goal_order(const std::vector<int>& tower_top_down, ReorderVariant v);

// Four blocks on the table, goal: red-green-blue-yellow tower.
Scenario stacking_scenario();
// Start tower green,blue,red,yellow (top..base) with the chosen reorder goal.
Scenario reordering_scenario(ReorderVariant v = ReorderVariant::actions12);

}  // namespace relex
