#include <doctest.h>

#include <cmath>
#include <limits>
#include <map>
#include <nlohmann/json.hpp>
#include <numbers>
#include <queue>
#include <set>
#include <sstream>
#include <vector>

#include "relex/arm/dataset.hpp"
#include "relex/arm/model.hpp"
#include "relex/arm/search.hpp"
#include "relex/core/rng.hpp"

using namespace relex;

namespace {

constexpr double kPi = std::numbers::pi;

ArmModel unit_arm() {
    ArmModel a;
    a.link_lengths = {1.0, 1.0, 1.0};
    return a;
}

// 3x3 homogeneous transforms composed link by link.
using Mat3 = std::array<std::array<double, 3>, 3>;

Mat3 matmul(const Mat3& a, const Mat3& b) {
    Mat3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
    return r;
}

Mat3 rotation(double t) {
    return {{{std::cos(t), -std::sin(t), 0.0}, {std::sin(t), std::cos(t), 0.0}, {0.0, 0.0, 1.0}}};
}

Mat3 translation(double x, double y) {
    return {{{1.0, 0.0, x}, {0.0, 1.0, y}, {0.0, 0.0, 1.0}}};
}

Frame fk_by_matrices(const ArmModel& arm, const Joints& q) {
    Mat3 t = matmul(translation(arm.base[0], arm.base[1]), rotation(arm.base_heading));
    for (int j = 0; j < 3; ++j)
        t = matmul(t, matmul(rotation(q[j]), translation(arm.link_lengths[j], 0.0)));
    return {{t[0][2], t[1][2]}, arm.base_heading + q[0] + q[1] + q[2]};
}

constexpr double kInf = std::numeric_limits<double>::infinity();

// Distances from src over the 26-connected validity graph.
std::vector<double> dijkstra(const CSpaceGrid& g, const CellIndex& src) {
    std::vector<double> dist(g.num_cells(), kInf);
    using Entry = std::pair<double, size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> q;
    dist[g.flat(src)] = 0.0;
    q.push({0.0, g.flat(src)});
    while (!q.empty()) {
        const auto [dc, c] = q.top();
        q.pop();
        if (dc != dist[c]) continue;
        const CellIndex cc = g.unflat(c);
        for (int dx = -1; dx <= 1; ++dx)
            for (int dy = -1; dy <= 1; ++dy)
                for (int dz = -1; dz <= 1; ++dz) {
                    if (dx == 0 && dy == 0 && dz == 0) continue;
                    const CellIndex nb{cc[0] + dx, cc[1] + dy, cc[2] + dz};
                    if (!g.valid(nb)) continue;
                    const double nd = dc + std::sqrt(double(dx * dx + dy * dy + dz * dz));
                    if (nd < dist[g.flat(nb)]) {
                        dist[g.flat(nb)] = nd;
                        q.push({nd, g.flat(nb)});
                    }
                }
    }
    return dist;
}

double path_cost(const std::vector<CellIndex>& path) {
    double c = 0.0;
    for (size_t i = 1; i < path.size(); ++i) c += grid_step_cost(path[i - 1], path[i]);
    return c;
}

bool neighbors(const CellIndex& a, const CellIndex& b) {
    int cheb = 0;
    for (int j = 0; j < 3; ++j) cheb = std::max(cheb, std::abs(a[j] - b[j]));
    return cheb == 1;
}

Joints random_q(Rng& rng, double margin = 0.2) {
    return {rng.uniform(-kPi + margin, kPi - margin), rng.uniform(-kPi + margin, kPi - margin),
            rng.uniform(-kPi + margin, kPi - margin)};
}

}  // namespace

TEST_CASE("forward kinematics lands where geometry says") {
    const ArmModel arm = unit_arm();
    const Frame straight = forward_kinematics(arm, {0.0, 0.0, 0.0});
    CHECK(straight.position[0] == doctest::Approx(3.0));
    CHECK(straight.position[1] == doctest::Approx(0.0));
    CHECK(straight.heading == doctest::Approx(0.0));

    const Frame up = forward_kinematics(arm, {kPi / 2, 0.0, 0.0});
    CHECK(up.position[0] == doctest::Approx(0.0));
    CHECK(up.position[1] == doctest::Approx(3.0));
    CHECK(up.heading == doctest::Approx(kPi / 2));

    // elbow folded fully back: the last link retraces the second
    const Frame folded = forward_kinematics(ArmModel{}, {0.0, 0.0, kPi});
    CHECK(folded.position[0] == doctest::Approx(1.0 + 0.8 - 0.6));
    CHECK(folded.position[1] == doctest::Approx(0.0));

    CHECK_THROWS_AS(forward_kinematics(arm, {4.0, 0.0, 0.0}), std::domain_error);
}

TEST_CASE("forward kinematics agrees with a transform-matrix chain") {
    ArmModel arm;
    arm.link_lengths = {0.9, 0.7, 0.4};
    arm.base = {0.3, -0.2};
    arm.base_heading = 0.4;
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        const Joints q = random_q(rng);
        const Frame got = forward_kinematics(arm, q);
        const Frame want = fk_by_matrices(arm, q);
        CHECK(got.position[0] == doctest::Approx(want.position[0]).epsilon(1e-12));
        CHECK(got.position[1] == doctest::Approx(want.position[1]).epsilon(1e-12));
        CHECK(got.heading == doctest::Approx(want.heading).epsilon(1e-12));
    }
}

TEST_CASE("frame points sit on the frame's axes") {
    const auto at_origin = frame_points(Frame{{0.0, 0.0}, 0.0}, 0.1);
    CHECK(at_origin[0][0] == doctest::Approx(0.1));
    CHECK(at_origin[0][1] == doctest::Approx(0.0));
    CHECK(at_origin[1][0] == doctest::Approx(0.0));
    CHECK(at_origin[1][1] == doctest::Approx(0.1));

    const auto turned = frame_points(Frame{{1.0, 2.0}, kPi / 2}, 0.5);
    CHECK(turned[0][0] == doctest::Approx(1.0));
    CHECK(turned[0][1] == doctest::Approx(2.5));
    CHECK(turned[1][0] == doctest::Approx(0.5));
    CHECK(turned[1][1] == doctest::Approx(2.0));
}

TEST_CASE("losses reduce to pencil-and-paper values") {
    const Joints a{0.1, 0.2, 0.3}, b{0.4, 0.2, -0.1};
    CHECK(joint_space_loss(a, b) == doctest::Approx((0.09 + 0.0 + 0.16) / 3.0));
    CHECK(joint_space_loss(a, a) == 0.0);

    // same heading, tips offset by (-1, 1): both frame points shift together
    const ArmModel arm;  // links 1.0, 0.8, 0.6
    const Joints flat{0.0, 0.0, 0.0}, bent{kPi / 2, -kPi / 2, 0.0};
    CHECK(op_space_loss(flat, bent, arm, 0.1) ==
          doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(op_space_loss(flat, flat, arm, 0.1) == 0.0);

    const double js = joint_space_loss(flat, bent);
    const double os = op_space_loss(flat, bent, arm, 0.1);
    CHECK(combined_loss(flat, bent, arm, 0.1, 0.3) == doctest::Approx(0.3 * js + 0.7 * os));
    CHECK(combined_loss(flat, bent, arm, 0.1, 1.0) == doctest::Approx(js));
    CHECK(combined_loss(flat, bent, arm, 0.1, 0.0) == doctest::Approx(os));
}

TEST_CASE("the analytic gradient matches central differences") {
    const ArmModel arm;
    const double d = 0.1;
    Rng rng(21);
    for (int i = 0; i < 100; ++i) {
        const Joints pred = random_q(rng);
        const Joints expert = random_q(rng);
        const Joints grad = op_space_loss_gradient(pred, expert, arm, d);
        for (int k = 0; k < 3; ++k) {
            const double h = 1e-6;
            Joints lo = pred, hi = pred;
            lo[k] -= h;
            hi[k] += h;
            const double numeric =
                (op_space_loss(hi, expert, arm, d) - op_space_loss(lo, expert, arm, d)) / (2 * h);
            CHECK(std::abs(grad[k] - numeric) <= 1e-5 * std::max(1.0, std::abs(numeric)));
        }
    }
}

TEST_CASE("grid geometry: dimensions, lattice coordinates, validity") {
    ArmModel arm;
    arm.joint_limits = {{{-1.0, 1.0}, {-1.0, 1.0}, {0.0, 0.5}}};
    const CSpaceGrid grid(arm, {0.5, 1.0, 0.25}, {});
    CHECK(grid.dims() == std::array<int, 3>{5, 3, 3});
    CHECK(grid.num_cells() == 45);
    const Joints q = grid.q_at({1, 2, 3});
    CHECK(q[0] == doctest::Approx(-0.5));
    CHECK(q[1] == doctest::Approx(1.0));
    CHECK(q[2] == doctest::Approx(0.75));  // off the grid but well defined
    CHECK_FALSE(grid.in_bounds({1, 2, 3}));
    for (size_t i = 0; i < grid.num_cells(); ++i) {
        CHECK(grid.flat(grid.unflat(i)) == i);
        CHECK(grid.valid(grid.unflat(i)));  // no obstacles anywhere
    }
    CHECK_THROWS_AS(CSpaceGrid(arm, {0.0, 1.0, 1.0}, {}), std::invalid_argument);

    // a disc at the first link's reach blocks exactly the cells that touch it
    ArmModel tiny;
    tiny.link_lengths = {1.0, 0.1, 0.1};
    const CSpaceGrid blocked(tiny, {0.2, kPi, kPi}, {Circle{1.0, 0.0, 0.25}});
    int invalid = 0;
    for (size_t i = 0; i < blocked.num_cells(); ++i) invalid += !blocked.valid(blocked.unflat(i));
    CHECK(invalid > 0);
    CHECK(invalid < static_cast<int>(blocked.num_cells()));
}

TEST_CASE("step costs and the heuristic are plain index-space distances") {
    CHECK(grid_step_cost({0, 0, 0}, {1, 0, 0}) == doctest::Approx(1.0));
    CHECK(grid_step_cost({0, 0, 0}, {1, 1, 0}) == doctest::Approx(std::sqrt(2.0)));
    CHECK(grid_step_cost({0, 0, 0}, {1, 1, 1}) == doctest::Approx(std::sqrt(3.0)));
    CHECK(grid_heuristic({2, 3, 5}, {7, 3, 1}) == doctest::Approx(std::sqrt(25.0 + 16.0)));
}

TEST_CASE("the anytime search tightens to Dijkstra's answer") {
    ArmModel arm;
    arm.joint_limits = {{{-kPi, kPi}, {-kPi, kPi}, {-kPi, kPi}}};
    const CSpaceGrid grid(arm, {0.9, 0.9, 0.9}, {Circle{1.2, 0.4, 0.35}});
    const CellIndex start{3, 6, 6}, goal{0, 0, 0};
    REQUIRE(grid.valid(start));
    REQUIRE(grid.valid(goal));

    const AraResult res = ara_star(grid, start, goal);
    REQUIRE(res.found());
    REQUIRE(res.iterations.size() == 5);  // 3.0, 2.5, 2.0, 1.5, 1.0
    const double optimal = dijkstra(grid, start)[grid.flat(goal)];

    double prev = kInf;
    for (const AraIteration& it : res.iterations) {
        CHECK(it.cost <= it.eps * optimal + 1e-9);
        CHECK(it.cost <= prev + 1e-12);
        prev = it.cost;
        REQUIRE(!it.path.empty());
        CHECK(it.path.front() == start);
        CHECK(it.path.back() == goal);
        for (size_t i = 0; i < it.path.size(); ++i) {
            CHECK(grid.valid(it.path[i]));
            if (i) CHECK(neighbors(it.path[i - 1], it.path[i]));
        }
        CHECK(path_cost(it.path) == doctest::Approx(it.cost));
    }
    CHECK(res.iterations.front().eps == doctest::Approx(3.0));
    CHECK(res.iterations.back().eps == doctest::Approx(1.0));
    CHECK(res.iterations.back().cost == doctest::Approx(optimal));
    CHECK(res.expansions > 0);
}

TEST_CASE("random worlds: every inflation level honors its bound") {
    Rng rng(99);
    int solved = 0;
    for (int world = 0; world < 25; ++world) {
        ArmModel arm;
        const double res_step = rng.uniform(0.8, 1.3);
        std::vector<Circle> obstacles;
        const int n_obs = static_cast<int>(rng.uniform_int(4));
        for (int i = 0; i < n_obs; ++i)
            obstacles.push_back(
                {rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5), rng.uniform(0.1, 0.5)});
        const CSpaceGrid grid(arm, {res_step, res_step, res_step}, obstacles);

        std::vector<CellIndex> open_cells;
        for (size_t i = 0; i < grid.num_cells(); ++i)
            if (grid.valid(grid.unflat(i))) open_cells.push_back(grid.unflat(i));
        if (open_cells.size() < 2) continue;  // obstacles swallowed the whole grid
        const CellIndex start = open_cells[rng.uniform_int(open_cells.size())];
        const CellIndex goal = open_cells[rng.uniform_int(open_cells.size())];
        if (start == goal) continue;

        const AraResult res = ara_star(grid, start, goal);
        const double optimal = dijkstra(grid, start)[grid.flat(goal)];
        if (!res.found()) {
            CHECK(optimal == kInf);
            continue;
        }
        ++solved;
        REQUIRE(optimal < kInf);
        double prev = kInf;
        for (const AraIteration& it : res.iterations) {
            CHECK(it.cost <= it.eps * optimal + 1e-9);
            CHECK(it.cost <= prev + 1e-12);
            prev = it.cost;
            CHECK(path_cost(it.path) == doctest::Approx(it.cost));
        }
        CHECK(res.iterations.back().cost == doctest::Approx(optimal));
    }
    CHECK(solved >= 15);
}

TEST_CASE("search edge cases: trivial, severed, and malformed queries") {
    ArmModel arm;
    const CSpaceGrid grid(arm, {0.9, 0.9, 0.9}, {});

    SUBCASE("start equal to goal needs no motion") {
        const AraResult res = ara_star(grid, {2, 2, 2}, {2, 2, 2});
        REQUIRE(res.iterations.size() == 1);
        CHECK(res.iterations[0].eps == doctest::Approx(1.0));
        CHECK(res.iterations[0].cost == 0.0);
        CHECK(res.iterations[0].path.empty());
        CHECK(res.expansions == 0);
    }

    SUBCASE("a wall of invalid first-joint slices makes the goal unreachable") {
        // the disc blocks link 1 whenever |theta1| < ~0.3; those whole grid
        // slices go invalid, cutting left from right
        const CSpaceGrid cut(arm, {0.2, 0.9, 0.9}, {Circle{1.0, 0.0, 0.3}});
        const CellIndex start{8, 3, 3}, goal{24, 3, 3};
        REQUIRE(cut.valid(start));
        REQUIRE(cut.valid(goal));
        for (int slice = 15; slice <= 17; ++slice)
            for (int b = 0; b < cut.dims()[1]; ++b)
                for (int c = 0; c < cut.dims()[2]; ++c)
                    CHECK_FALSE(cut.valid({slice, b, c}));
        const AraResult res = ara_star(cut, start, goal);
        CHECK_FALSE(res.found());
        CHECK(res.iterations.empty());
        CHECK(res.expansions > 0);
    }

    SUBCASE("out-of-bounds or colliding endpoints are rejected") {
        CHECK_THROWS_AS(ara_star(grid, {-1, 0, 0}, {1, 1, 1}), std::invalid_argument);
        CHECK_THROWS_AS(ara_star(grid, {0, 0, 0}, {99, 0, 0}), std::invalid_argument);
        const CSpaceGrid cut(arm, {0.2, 0.9, 0.9}, {Circle{1.0, 0.0, 0.3}});
        CHECK_THROWS_AS(ara_star(cut, {16, 3, 3}, {24, 3, 3}), std::invalid_argument);
        AraConfig bad;
        bad.eps_step = 0.0;
        CHECK_THROWS_AS(ara_star(grid, {0, 0, 0}, {1, 1, 1}, bad), std::invalid_argument);
        bad = {};
        bad.eps_final = 2.0;
        bad.eps_init = 1.0;
        CHECK_THROWS_AS(ara_star(grid, {0, 0, 0}, {1, 1, 1}, bad), std::invalid_argument);
    }
}

TEST_CASE("expert trajectories walk the grid into the goal") {
    ArmModel arm;
    const CSpaceGrid grid(arm, {0.9, 0.9, 0.9}, {Circle{1.0, 0.5, 0.3}});
    ExpertConfig cfg;
    cfg.trajectories = 6;
    cfg.goal = {3, 3, 3};
    cfg.dense_samples = 5;
    cfg.dense_radius = 1.0;
    cfg.seed = 42;
    REQUIRE(grid.valid(cfg.goal));

    const Dataset ds = generate_trajectories(grid, cfg);
    REQUIRE(ds.trajectories.size() == 6);
    REQUIRE(ds.dense.size() == 6);
    for (size_t i = 0; i < ds.trajectories.size(); ++i) {
        const auto& cells = ds.trajectories[i].cells;
        REQUIRE(cells.size() >= 2);
        CHECK(cells.back() == cfg.goal);
        for (size_t t = 0; t < cells.size(); ++t) {
            CHECK(grid.valid(cells[t]));
            if (t) CHECK(neighbors(cells[t - 1], cells[t]));
        }
        // the recorded path carries the tightest bound: optimal at eps 1
        const double optimal = dijkstra(grid, cells.front())[grid.flat(cfg.goal)];
        CHECK(path_cost(cells) == doctest::Approx(optimal));

        CHECK(ds.dense[i].size() == 5);
        std::set<CellIndex> seen;
        for (const CellIndex& c : ds.dense[i]) {
            CHECK(grid.valid(c));
            const Joints q = grid.q_at(c), g = grid.q_at(cfg.goal);
            for (int j = 0; j < 3; ++j) CHECK(std::abs(q[j] - g[j]) <= cfg.dense_radius + 1e-9);
            CHECK(seen.insert(c).second);
        }
    }
    CHECK(ds.rows() > 0);

    SUBCASE("the same seed reproduces the dataset; jobs only change scheduling") {
        const Dataset again = generate_trajectories(grid, cfg);
        ExpertConfig serial = cfg;
        serial.jobs = 1;
        const Dataset one_thread = generate_trajectories(grid, serial);
        REQUIRE(again.trajectories.size() == ds.trajectories.size());
        for (size_t i = 0; i < ds.trajectories.size(); ++i) {
            CHECK(again.trajectories[i].cells == ds.trajectories[i].cells);
            CHECK(one_thread.trajectories[i].cells == ds.trajectories[i].cells);
            CHECK(again.dense[i] == ds.dense[i]);
            CHECK(one_thread.dense[i] == ds.dense[i]);
        }
    }

    SUBCASE("a radius below one cell keeps only the goal cell") {
        Rng rng(5);
        const auto only_goal = dense_goal_samples(grid, cfg.goal, 5, 1e-6, rng);
        REQUIRE(only_goal.size() == 1);
        CHECK(only_goal[0] == cfg.goal);
        CHECK(dense_goal_samples(grid, cfg.goal, 0, 1.0, rng).empty());
        CHECK(dense_goal_samples(grid, cfg.goal, 5, 0.0, rng).empty());
    }

    SUBCASE("bad configurations are rejected") {
        ExpertConfig bad = cfg;
        bad.trajectories = 0;
        CHECK_THROWS_AS(generate_trajectories(grid, bad), std::invalid_argument);
        bad = cfg;
        bad.goal = {999, 0, 0};
        CHECK_THROWS_AS(generate_trajectories(grid, bad), std::invalid_argument);
    }
}

TEST_CASE("unreachable start draws are skipped, logged, and resampled") {
    ArmModel arm;
    // severed grid again: indices 15..17 of joint 1 are a solid wall
    const CSpaceGrid cut(arm, {0.2, 0.9, 0.9}, {Circle{1.0, 0.0, 0.3}});
    ExpertConfig cfg;
    cfg.trajectories = 8;
    cfg.goal = {24, 3, 3};
    cfg.seed = 3;
    REQUIRE(cut.valid(cfg.goal));

    const Dataset ds = generate_trajectories(cut, cfg);
    CHECK(ds.skipped > 0);  // about half the board is on the wrong side
    CHECK(!ds.trajectories.empty());
    for (const auto& t : ds.trajectories) CHECK(t.cells.back() == cfg.goal);
}

TEST_CASE("dataset rows serialize with exact shape and labels") {
    ArmModel arm;
    const CSpaceGrid grid(arm, {0.9, 0.9, 0.9}, {Circle{0.7, -0.3, 0.2}});
    ExpertConfig cfg;
    cfg.trajectories = 4;
    cfg.goal = {2, 4, 3};
    cfg.dense_samples = 3;
    cfg.dense_radius = 1.0;
    cfg.seed = 11;
    const Dataset ds = generate_trajectories(grid, cfg);
    REQUIRE(ds.trajectories.size() == 4);

    std::ostringstream buf;
    write_dataset_jsonl(buf, grid, ds);
    std::istringstream in(buf.str());
    std::string line;
    size_t rows = 0;
    std::map<int, int> last_t;  // traj_id -> T
    std::map<int, int> step_rows, dense_rows;
    std::map<int, const Trajectory*> by_id;
    for (const auto& t : ds.trajectories) {
        last_t[t.id] = static_cast<int>(t.cells.size()) - 1;
        by_id[t.id] = &t;
    }

    while (std::getline(in, line)) {
        const auto row = nlohmann::json::parse(line);
        ++rows;
        const int id = row.at("traj_id").get<int>();
        const int t = row.at("t").get<int>();
        REQUIRE(last_t.count(id));
        const auto q = row.at("q").get<std::vector<double>>();
        REQUIRE(q.size() == 3);
        const auto goal_cell = row.at("o").at("goal_cell").get<std::vector<int>>();
        CHECK(goal_cell == std::vector<int>{2, 4, 3});
        CHECK(row.at("o").at("obstacles").size() == 1);
        CHECK(row.at("o").at("obstacles")[0].at("r").get<double>() == doctest::Approx(0.2));
        const auto final_q = row.at("final_q").get<std::vector<double>>();
        const Joints goal_q = grid.q_at(cfg.goal);
        for (int j = 0; j < 3; ++j) CHECK(final_q[j] == doctest::Approx(goal_q[j]));

        const bool terminal = row.at("terminal").get<bool>();
        CHECK(terminal == (t == last_t[id] || t == -1));
        if (t == -1) {
            ++dense_rows[id];
        } else {
            REQUIRE(t <= last_t[id]);
            ++step_rows[id];
            const Joints lattice = grid.q_at(by_id[id]->cells[static_cast<size_t>(t)]);
            for (int j = 0; j < 3; ++j) CHECK(q[j] == doctest::Approx(lattice[j]));
        }
    }
    CHECK(rows == ds.rows());
    for (const auto& t : ds.trajectories) {
        CHECK(step_rows[t.id] == static_cast<int>(t.cells.size()));
        CHECK(dense_rows[t.id] == 3);
    }
}
