#include "relex/arm/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <nlohmann/json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace relex {

namespace {

CellIndex random_cell(const CSpaceGrid& grid, Rng& rng) {
    const auto& d = grid.dims();
    return {static_cast<int>(rng.uniform_int(d[0])), static_cast<int>(rng.uniform_int(d[1])),
            static_cast<int>(rng.uniform_int(d[2]))};
}

}  // namespace

size_t Dataset::rows() const {
    size_t n = 0;
    for (const Trajectory& t : trajectories) n += t.cells.size();
    for (const auto& d : dense) n += d.size();
    return n;
}

Dataset generate_trajectories(const CSpaceGrid& grid, const ExpertConfig& cfg) {
    if (cfg.trajectories <= 0) throw std::invalid_argument("need at least one trajectory");
    if (!grid.valid(cfg.goal)) throw std::invalid_argument("goal cell is out of bounds or in collision");

    const int n = cfg.trajectories;
    std::vector<std::optional<Trajectory>> made(n);
    std::vector<std::vector<CellIndex>> dense(n);
    std::vector<int> skipped(n, 0);

#ifdef _OPENMP
    const int threads = cfg.jobs > 0 ? cfg.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (int i = 0; i < n; ++i) {
        Rng starts(derive_seed(cfg.seed, static_cast<uint64_t>(i), 0));
        for (int attempt = 0; attempt < cfg.max_start_tries; ++attempt) {
            const CellIndex c = random_cell(grid, starts);
            if (!grid.valid(c) || c == cfg.goal) continue;
            AraResult found = ara_star(grid, c, cfg.goal, cfg.search);
            if (!found.found()) {
                ++skipped[i];
                std::ostringstream msg;
                msg << "trajectory " << i << ": start (" << c[0] << "," << c[1] << "," << c[2]
                    << ") cannot reach the goal, resampling\n";
                std::cerr << msg.str();
                continue;
            }
            made[i] = Trajectory{i, std::move(found.iterations.back().path)};
            break;
        }
        if (made[i] && cfg.dense_samples > 0) {
            Rng sampler(derive_seed(cfg.seed, static_cast<uint64_t>(i), 1));
            dense[i] =
                dense_goal_samples(grid, cfg.goal, cfg.dense_samples, cfg.dense_radius, sampler);
        }
    }

    Dataset out;
    for (int i = 0; i < n; ++i) {
        out.skipped += skipped[i];
        if (!made[i]) {
            std::ostringstream msg;
            msg << "trajectory " << i << ": no reachable start in " << cfg.max_start_tries
                << " tries, dropping it\n";
            std::cerr << msg.str();
            continue;
        }
        out.trajectories.push_back(std::move(*made[i]));
        out.dense.push_back(std::move(dense[i]));
    }
    return out;
}

std::vector<CellIndex> dense_goal_samples(const CSpaceGrid& grid, const CellIndex& goal, int k,
                                          double radius, Rng& rng) {
    std::vector<CellIndex> found;
    if (k <= 0 || radius <= 0.0) return found;
    const auto& res = grid.resolution();
    std::array<int, 3> reach;
    for (int j = 0; j < 3; ++j) reach[j] = static_cast<int>(radius / res[j] + 1e-9);
    for (int a = -reach[0]; a <= reach[0]; ++a)
        for (int b = -reach[1]; b <= reach[1]; ++b)
            for (int c = -reach[2]; c <= reach[2]; ++c) {
                const CellIndex cand{goal[0] + a, goal[1] + b, goal[2] + c};
                if (grid.valid(cand)) found.push_back(cand);
            }
    for (size_t i = found.size(); i > 1; --i)
        std::swap(found[i - 1], found[rng.uniform_int(i)]);
    if (found.size() > static_cast<size_t>(k)) found.resize(static_cast<size_t>(k));
    return found;
}

namespace {

nlohmann::ordered_json q_json(const Joints& q) { return nlohmann::ordered_json::array({q[0], q[1], q[2]}); }

}  // namespace

void write_dataset_jsonl(std::ostream& out, const CSpaceGrid& grid, const Dataset& dataset) {
    using json = nlohmann::ordered_json;
    json obstacles = json::array();
    for (const Circle& o : grid.obstacles())
        obstacles.push_back(json{{"x", o.x}, {"y", o.y}, {"r", o.r}});

    for (size_t ti = 0; ti < dataset.trajectories.size(); ++ti) {
        const Trajectory& traj = dataset.trajectories[ti];
        if (traj.cells.empty()) continue;
        const CellIndex& goal_cell = traj.cells.back();
        const json final_q = q_json(grid.q_at(goal_cell));
        const json obs{{"obstacles", obstacles},
                       {"goal_cell", json::array({goal_cell[0], goal_cell[1], goal_cell[2]})}};
        const int last = static_cast<int>(traj.cells.size()) - 1;
        auto row = [&](int t, const CellIndex& cell, bool terminal) {
            const json r{{"traj_id", traj.id}, {"t", t},       {"q", q_json(grid.q_at(cell))},
                         {"o", obs},           {"terminal", terminal}, {"final_q", final_q}};
            out << r.dump() << '\n';
        };
        for (int t = 0; t <= last; ++t) row(t, traj.cells[t], t == last);
        if (ti < dataset.dense.size())
            for (const CellIndex& cell : dataset.dense[ti]) row(-1, cell, true);
    }
}

void write_dataset_jsonl(const std::string& path, const CSpaceGrid& grid, const Dataset& dataset) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_dataset_jsonl(out, grid, dataset);
}

}  // namespace relex
