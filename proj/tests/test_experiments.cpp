#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "ehmdp/experiments.hpp"

using namespace ehmdp;

namespace {

ExperimentConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

// small caps keep every grid point cheap
const char* kSmallModel = "e_max = 2\nd_max0 = 3\nd_max1 = 3\ngamma = 0.9\n";

} // namespace

TEST_CASE("a sweep without axes is a direct solve") {
    const ExperimentConfig cfg = parse(kSmallModel);
    const Table table = sweep(cfg);
    REQUIRE(table.rows.size() == 1);
    CHECK(table.header == std::vector<std::string>{"j_star_s0", "iterations", "residual_bound"});

    const StateSpace space(cfg.params);
    const Solution sol =
        value_iteration(build_kernel(space), cfg.params.discount, cfg.stop_tolerance());
    CHECK(table.rows[0][0] ==
          format_double(sol.values[space.index_of(cfg.start_state)], "%.6f"));
    CHECK(table.rows[0][1] == std::to_string(sol.report.iterations));
}

TEST_CASE("grid rows follow the axis order, outer axis first") {
    const ExperimentConfig cfg =
        parse(std::string(kSmallModel) + "sweep.pe = [0.3, 0.7]\nsweep.e_max = [1, 2]\n");
    const Table table = sweep(cfg);
    CHECK(table.header == std::vector<std::string>{"pe", "e_max", "j_star_s0", "iterations",
                                                   "residual_bound"});
    REQUIRE(table.rows.size() == 4);
    CHECK(table.rows[0][0] == "0.3");
    CHECK(table.rows[0][1] == "1");
    CHECK(table.rows[1][0] == "0.3");
    CHECK(table.rows[1][1] == "2");
    CHECK(table.rows[2][0] == "0.7");
    CHECK(table.rows[3][1] == "2");

    // a richer harvest can only help, at either buffer size
    for (int col = 0; col < 2; ++col)
        CHECK(std::stod(table.rows[2 + col][2]) <= std::stod(table.rows[col][2]) + 2e-4);
}

TEST_CASE("sweep output is reproducible byte for byte") {
    const ExperimentConfig cfg = parse(std::string(kSmallModel) + "sweep.pe = [0.2, 0.8]\n");
    CHECK(sweep(cfg).to_csv() == sweep(cfg).to_csv());
}

TEST_CASE("policy grids slice the solved policy on the in-sync plane") {
    const ExperimentConfig cfg = parse(kSmallModel);
    for (int z : {0, 1}) {
        const PolicyGrid grid = policy_grid(cfg.params, z, cfg.stop_tolerance());
        REQUIRE(grid.cells.size() == 3);                     // e in 0..2
        REQUIRE(grid.cells[0].size() == 3);                  // age in 1..3
        for (Action a : grid.cells[0]) CHECK(a == Action::withhold); // no energy, no choice

        const StateSpace space(cfg.params);
        const Solution sol =
            value_iteration(build_kernel(space), cfg.params.discount, cfg.stop_tolerance());
        for (int e = 0; e <= 2; ++e)
            for (int d = 1; d <= 3; ++d) {
                SystemState s{z, z, e, 0, 0};
                s.set_age(z, d);
                CHECK(grid.cells[e][d - 1] == sol.policy[space.index_of(s)]);
            }
    }
}

TEST_CASE("the policy grid table is indexed by energy and age") {
    const ExperimentConfig cfg = parse(kSmallModel);
    const Table table = policy_grid_table(policy_grid(cfg.params, 0, cfg.stop_tolerance()));
    CHECK(table.header == std::vector<std::string>{"e", "1", "2", "3"});
    REQUIRE(table.rows.size() == 3);
    CHECK(table.rows[0][0] == "0");
    CHECK(table.rows[0] == std::vector<std::string>{"0", "0", "0", "0"});
    CHECK(table.rows[2][0] == "2");
}

TEST_CASE("trace tables carry one row per slot") {
    const ExperimentConfig cfg = parse("trace.updates = [0:0:0]\ntrace.horizon = 4\n");
    const Table table = trace_table(*cfg.trace_log);
    CHECK(table.header == std::vector<std::string>{"k", "d0", "d1"});
    REQUIRE(table.rows.size() == 4);
    CHECK(table.rows[3] == std::vector<std::string>{"3", "3", "0"});
}

TEST_CASE("solve and simulate tables expose the pinned columns") {
    const ExperimentConfig cfg = parse(std::string(kSmallModel) +
                                       "episodes = 50\nhorizon = 120\nseed = 9\n");
    const Table solved = solve_table(cfg);
    CHECK(solved.header ==
          std::vector<std::string>{"j_star_s0", "iterations", "residual", "residual_bound"});
    REQUIRE(solved.rows.size() == 1);

    const Table simulated = simulate_table(cfg);
    CHECK(simulated.header ==
          std::vector<std::string>{"estimate", "stderr", "episodes", "horizon"});
    REQUIRE(simulated.rows.size() == 1);
    CHECK(simulated.rows[0][2] == "50");
    CHECK(simulated.rows[0][3] == "120");
}
