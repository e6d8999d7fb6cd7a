#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "relex/arm/search.hpp"
#include "relex/core/rng.hpp"

namespace relex {

// One expert path through the grid, start..goal; consecutive cells are grid
// neighbors and the last cell is the goal. The terminal index is the last one.
struct Trajectory {
    int id = 0;
    std::vector<CellIndex> cells;
};

struct ExpertConfig {
    int trajectories = 1;
    CellIndex goal{0, 0, 0};
    int dense_samples = 0;      // extra terminal-positive cells per trajectory
    double dense_radius = 0.0;  // L-inf joint-space radius for those samples
    AraConfig search;
    uint64_t seed = 0;
    int max_start_tries = 100;
    int jobs = 0;  // 0 = hardware default
};

struct Dataset {
    std::vector<Trajectory> trajectories;
    std::vector<std::vector<CellIndex>> dense;  // parallel to trajectories
    int skipped = 0;                            // unreachable starts given up on

    size_t rows() const;
};

// Draws random valid start cells and plans each one to cfg.goal; trajectory i
// depends only on (seed, i), so runs are reproducible and order-independent.
// Unreachable starts are logged to stderr, counted, and resampled up to
// max_start_tries; an index that never finds a reachable start is dropped.
Dataset generate_trajectories(const CSpaceGrid& grid, const ExpertConfig& cfg);

// All valid cells within L-inf joint-space radius of the goal (the goal cell
// included), shuffled, truncated to k. May return fewer than k.
std::vector<CellIndex> dense_goal_samples(const CSpaceGrid& grid, const CellIndex& goal, int k,
                                          double radius, Rng& rng);

// One JSON object per line: trajectory states at t = 0..T, then that
// trajectory's dense samples at t = -1. terminal is true exactly for t = T
// and the dense rows; o carries the obstacle list and the goal cell.
void write_dataset_jsonl(std::ostream& out, const CSpaceGrid& grid, const Dataset& dataset);
void write_dataset_jsonl(const std::string& path, const CSpaceGrid& grid, const Dataset& dataset);

}  // namespace relex
