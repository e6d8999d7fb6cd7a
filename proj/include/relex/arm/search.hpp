#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "relex/arm/model.hpp"

namespace relex {

struct Circle {
    double x = 0.0, y = 0.0, r = 0.0;
};

using CellIndex = std::array<int, 3>;

// Regular joint-space grid over the arm's limit box. A cell is valid iff
// every link segment clears every obstacle; validity is precomputed.
// Neighbors are the 26 surrounding cells; moves cost their Euclidean
// index-space length, and straight-line index distance is the (consistent)
// heuristic.
class CSpaceGrid {
public:
    CSpaceGrid(ArmModel arm, std::array<double, 3> resolution, std::vector<Circle> obstacles);

    const ArmModel& arm() const { return arm_; }
    const std::vector<Circle>& obstacles() const { return obstacles_; }
    const std::array<double, 3>& resolution() const { return res_; }
    const std::array<int, 3>& dims() const { return dims_; }
    size_t num_cells() const { return validity_.size(); }

    bool in_bounds(const CellIndex& c) const;
    bool valid(const CellIndex& c) const;
    Joints q_at(const CellIndex& c) const;
    size_t flat(const CellIndex& c) const;
    CellIndex unflat(size_t i) const;

private:
    ArmModel arm_;
    std::array<double, 3> res_;
    std::array<int, 3> dims_;
    std::vector<Circle> obstacles_;
    std::vector<uint8_t> validity_;
};

double grid_step_cost(const CellIndex& a, const CellIndex& b);
double grid_heuristic(const CellIndex& a, const CellIndex& b);

struct AraConfig {
    double eps_init = 3.0;
    double eps_step = 0.5;
    double eps_final = 1.0;
};

struct AraIteration {
    double eps = 1.0;
    double cost = 0.0;
    std::vector<CellIndex> path;  // start..goal inclusive; empty iff start == goal
};

// One entry per inflation level, eps_init down to eps_final; costs are
// non-increasing and each satisfies cost <= eps * optimal. Empty
// `iterations` means the goal is unreachable.
struct AraResult {
    std::vector<AraIteration> iterations;
    int expansions = 0;

    bool found() const { return !iterations.empty(); }
};

// Anytime repairing A*: inflated-heuristic searches that reuse effort
// across shrinking eps, carrying over-inconsistent cells between rounds.
// Tie-breaks on (f, h, cell index), so results are deterministic.
AraResult ara_star(const CSpaceGrid& grid, const CellIndex& start, const CellIndex& goal,
                   const AraConfig& cfg = {});

}  // namespace relex
