#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ehmdp/simulator.hpp"
#include "ehmdp/trace.hpp"

using namespace ehmdp;

namespace {

// a destination synced at deployment, one alarm onset reported with a
// one-slot delivery delay, and a later flip back
EventLog reference_log() {
    EventLog log;
    log.initial_process = 0;
    log.change_times = {5, 11};
    log.updates = {{0, 0, 0}, {7, 8, 1}};
    log.horizon = 16;
    return log;
}

ModelParams small_params() {
    ModelParams p;
    p.discount = 0.9;
    p.energy_cap = 2;
    p.age_cap_normal = 4;
    p.age_cap_alarm = 3;
    return p;
}

} // namespace

TEST_CASE("the replayed reference timeline carries the expected ages") {
    const auto series = aoi_trace(reference_log());
    REQUIRE(series.size() == 16);
    CHECK(series[0] == AgePoint{0, 0, 0});
    CHECK(series[5] == AgePoint{5, 5, 0});  // the alarm onset itself has age 0
    CHECK(series[6] == AgePoint{6, 6, 1});  // both trackers aging, alarm unreported
    CHECK(series[7] == AgePoint{7, 7, 2});
    CHECK(series[8] == AgePoint{8, 0, 1});  // delivery at 8 resets the off state
    CHECK(series[9] == AgePoint{9, 0, 2});
}

TEST_CASE("without state changes only the known tracker ages, clamped at its cap") {
    EventLog log;
    log.updates = {{0, 0, 0}};
    log.horizon = 15;
    const auto series = aoi_trace(log);
    for (long k = 0; k < 15; ++k) {
        CHECK(series[k].age_normal == std::min<long>(k, 10));
        CHECK(series[k].age_alarm == 0);
    }
}

TEST_CASE("malformed event logs are rejected") {
    EventLog log = reference_log();
    log.updates[1] = {9, 8, 1}; // delivered before generated
    CHECK_THROWS_AS(aoi_trace(log), std::invalid_argument);

    log = reference_log();
    log.change_times = {5, 5};
    CHECK_THROWS_AS(aoi_trace(log), std::invalid_argument);

    log = reference_log();
    log.horizon = 0;
    CHECK_THROWS_AS(aoi_trace(log), std::invalid_argument);

    log = reference_log();
    log.updates[1].reported = 2;
    CHECK_THROWS_AS(aoi_trace(log), std::invalid_argument);
}

TEST_CASE("replaying a recorded trajectory reproduces its age fields") {
    const ModelParams p = small_params();
    const StateSpace space(p);
    const Policy policy = value_iteration(build_kernel(space), p.discount,
                                          default_stop_tolerance(p.discount))
                              .policy;

    SECTION("from the canonical start") {
        const RolloutResult r = rollout(policy, space, {0, 0, 0, 1, 0}, 250, 17);
        const auto series = aoi_trace(event_log_from_trajectory(r.trajectory, p));
        REQUIRE(series.size() == r.trajectory.steps.size());
        for (std::size_t k = 0; k < series.size(); ++k) {
            const SystemState& s = r.trajectory.steps[k].state;
            REQUIRE(series[k] == AgePoint{static_cast<long>(k), s.age_normal, s.age_alarm});
        }
    }
    SECTION("from every reachable start state") {
        for (std::size_t i : reachable_states(space, {0, 0, 0, 1, 0})) {
            const SystemState start = space.state_at(i);
            const RolloutResult r = rollout(policy, space, start, 40, 1000 + i);
            const auto series = aoi_trace(event_log_from_trajectory(r.trajectory, p));
            for (std::size_t k = 0; k < series.size(); ++k) {
                const SystemState& s = r.trajectory.steps[k].state;
                REQUIRE(series[k] == AgePoint{static_cast<long>(k), s.age_normal, s.age_alarm});
            }
        }
    }
}

TEST_CASE("trajectories that start with inconsistent ages cannot be converted") {
    const ModelParams p = small_params();
    Trajectory t;
    t.initial = {0, 0, 1, 0, 0}; // in-sync state must carry a positive known age
    t.seed = 0;
    CHECK_THROWS_AS(event_log_from_trajectory(t, p), std::invalid_argument);
}
