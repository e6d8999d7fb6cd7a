#include "relex/arm/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>

namespace relex {

namespace {

double point_segment_dist(double px, double py, const Vec2& a, const Vec2& b) {
    const double abx = b[0] - a[0], aby = b[1] - a[1];
    const double len2 = abx * abx + aby * aby;
    double t = 0.0;
    if (len2 > 0.0) t = std::clamp(((px - a[0]) * abx + (py - a[1]) * aby) / len2, 0.0, 1.0);
    return std::hypot(px - (a[0] + t * abx), py - (a[1] + t * aby));
}

bool arm_collides(const ArmModel& arm, const Joints& q, const std::vector<Circle>& obstacles) {
    const auto p = joint_positions(arm, q);
    for (const Circle& o : obstacles)
        for (int link = 0; link < 3; ++link)
            if (point_segment_dist(o.x, o.y, p[link], p[link + 1]) < o.r) return true;
    return false;
}

}  // namespace

CSpaceGrid::CSpaceGrid(ArmModel arm, std::array<double, 3> resolution,
                       std::vector<Circle> obstacles)
    : arm_(arm), res_(resolution), obstacles_(std::move(obstacles)) {
    size_t total = 1;
    for (int j = 0; j < 3; ++j) {
        if (res_[j] <= 0.0) throw std::invalid_argument("grid resolution must be positive");
        const double span = arm_.joint_limits[j][1] - arm_.joint_limits[j][0];
        dims_[j] = static_cast<int>(span / res_[j] + 1e-9) + 1;
        total *= static_cast<size_t>(dims_[j]);
    }
    validity_.resize(total);
    for (size_t i = 0; i < total; ++i)
        validity_[i] = !arm_collides(arm_, q_at(unflat(i)), obstacles_);
}

bool CSpaceGrid::in_bounds(const CellIndex& c) const {
    for (int j = 0; j < 3; ++j)
        if (c[j] < 0 || c[j] >= dims_[j]) return false;
    return true;
}

bool CSpaceGrid::valid(const CellIndex& c) const { return in_bounds(c) && validity_[flat(c)]; }

Joints CSpaceGrid::q_at(const CellIndex& c) const {
    return {arm_.joint_limits[0][0] + c[0] * res_[0], arm_.joint_limits[1][0] + c[1] * res_[1],
            arm_.joint_limits[2][0] + c[2] * res_[2]};
}

size_t CSpaceGrid::flat(const CellIndex& c) const {
    return (static_cast<size_t>(c[0]) * dims_[1] + c[1]) * dims_[2] + c[2];
}

CellIndex CSpaceGrid::unflat(size_t i) const {
    const int k = static_cast<int>(i % dims_[2]);
    i /= dims_[2];
    return {static_cast<int>(i / dims_[1]), static_cast<int>(i % dims_[1]), k};
}

double grid_step_cost(const CellIndex& a, const CellIndex& b) {
    const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double grid_heuristic(const CellIndex& a, const CellIndex& b) { return grid_step_cost(a, b); }

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct HeapEntry {
    double f;
    double h;
    size_t cell;

    bool operator>(const HeapEntry& o) const {
        if (f != o.f) return f > o.f;
        if (h != o.h) return h > o.h;
        return cell > o.cell;
    }
};

struct Search {
    const CSpaceGrid& grid;
    CellIndex goal;
    std::vector<double> g;
    std::vector<size_t> parent;
    std::vector<uint8_t> closed;
    std::vector<uint8_t> incons;
    std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>> open;
    int expansions = 0;

    Search(const CSpaceGrid& grid_in, const CellIndex& goal_in)
        : grid(grid_in),
          goal(goal_in),
          g(grid.num_cells(), kInf),
          parent(grid.num_cells(), SIZE_MAX),
          closed(grid.num_cells(), 0),
          incons(grid.num_cells(), 0) {}

    double h(size_t cell) const { return grid_heuristic(grid.unflat(cell), goal); }

    void improve(double eps, size_t goal_flat) {
        while (!open.empty()) {
            const HeapEntry top = open.top();
            if (top.f >= g[goal_flat]) break;
            open.pop();
            if (top.f != g[top.cell] + eps * h(top.cell)) continue;  // stale
            if (closed[top.cell]) continue;
            closed[top.cell] = 1;
            ++expansions;
            const CellIndex c = grid.unflat(top.cell);
            for (int dx = -1; dx <= 1; ++dx)
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dz = -1; dz <= 1; ++dz) {
                        if (dx == 0 && dy == 0 && dz == 0) continue;
                        const CellIndex nb{c[0] + dx, c[1] + dy, c[2] + dz};
                        if (!grid.valid(nb)) continue;
                        const size_t nf = grid.flat(nb);
                        const double cand = g[top.cell] + grid_step_cost(c, nb);
                        if (cand >= g[nf]) continue;
                        g[nf] = cand;
                        parent[nf] = top.cell;
                        if (!closed[nf])
                            open.push({cand + eps * h(nf), h(nf), nf});
                        else
                            incons[nf] = 1;
                    }
        }
    }

    void reopen(double eps) {
        std::vector<uint8_t> queued(g.size(), 0);
        std::vector<size_t> cells;
        while (!open.empty()) {
            const size_t cell = open.top().cell;
            open.pop();
            if (!closed[cell] && g[cell] != kInf && !queued[cell]) {
                queued[cell] = 1;
                cells.push_back(cell);
            }
        }
        for (size_t cell = 0; cell < incons.size(); ++cell)
            if (incons[cell]) {
                incons[cell] = 0;
                if (!queued[cell]) {
                    queued[cell] = 1;
                    cells.push_back(cell);
                }
            }
        for (size_t cell : cells) open.push({g[cell] + eps * h(cell), h(cell), cell});
        std::fill(closed.begin(), closed.end(), 0);
    }

    std::vector<CellIndex> path_to(size_t goal_flat) const {
        std::vector<CellIndex> path;
        for (size_t at = goal_flat;; at = parent[at]) {
            path.push_back(grid.unflat(at));
            if (parent[at] == SIZE_MAX) break;
        }
        std::reverse(path.begin(), path.end());
        return path;
    }
};

}  // namespace

AraResult ara_star(const CSpaceGrid& grid, const CellIndex& start, const CellIndex& goal,
                   const AraConfig& cfg) {
    if (!grid.valid(start) || !grid.valid(goal))
        throw std::invalid_argument("search endpoints must be valid cells");
    if (cfg.eps_init < cfg.eps_final || cfg.eps_final < 1.0 || cfg.eps_step <= 0.0)
        throw std::invalid_argument("bad eps schedule");

    AraResult result;
    if (start == goal) {
        result.iterations.push_back({cfg.eps_final, 0.0, {}});
        return result;
    }

    Search s(grid, goal);
    const size_t start_flat = grid.flat(start), goal_flat = grid.flat(goal);
    s.g[start_flat] = 0.0;
    double eps = cfg.eps_init;
    s.open.push({eps * s.h(start_flat), s.h(start_flat), start_flat});

    for (;;) {
        s.improve(eps, goal_flat);
        if (s.g[goal_flat] == kInf) break;  // unreachable at eps_init => unreachable
        result.iterations.push_back({eps, s.g[goal_flat], s.path_to(goal_flat)});
        if (eps <= cfg.eps_final) break;
        eps = std::max(cfg.eps_final, eps - cfg.eps_step);
        s.reopen(eps);
    }
    result.expansions = s.expansions;
    return result;
}

}  // namespace relex
