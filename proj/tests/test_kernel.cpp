#include <catch2/catch_amalgamated.hpp>

#include "ehmdp/kernel.hpp"

using namespace ehmdp;

namespace {

ModelParams tiny_params() {
    ModelParams p;
    p.energy_cap = 2;
    p.age_cap_normal = 3;
    p.age_cap_alarm = 3;
    return p;
}

} // namespace

TEST_CASE("disturbance outcomes carry product probabilities") {
    ModelParams p; // pe = ps = 0.8, p01 = 0.1
    const SystemState s{0, 0, 2, 1, 0};

    SECTION("joint outcome under a transmission") {
        const auto outcomes = disturbance_distribution(s, Action::transmit, p);
        CHECK(outcomes.size() == 8);
        double found = -1.0;
        for (const auto& [w, q] : outcomes)
            if (w == Disturbance{true, true, 0}) found = q;
        CHECK(found == Catch::Approx(0.8 * 0.8 * 0.9).margin(1e-15));
    }
    SECTION("withholding forces the no-delivery half") {
        double total = 0.0;
        for (const auto& [w, q] : disturbance_distribution(s, Action::withhold, p)) {
            CHECK_FALSE(w.delivered);
            total += q;
        }
        CHECK(total == Catch::Approx(1.0).margin(1e-15));
    }
    SECTION("probabilities always sum to one") {
        for (Action a : {Action::withhold, Action::transmit}) {
            double total = 0.0;
            for (const auto& [w, q] : disturbance_distribution(s, a, p)) total += q;
            CHECK(total == Catch::Approx(1.0).margin(1e-15));
        }
    }
    SECTION("transmit from an empty buffer is rejected") {
        CHECK_THROWS_AS(disturbance_distribution({0, 0, 0, 1, 0}, Action::transmit, p),
                        std::invalid_argument);
    }
}

TEST_CASE("kernel rows are stochastic, merged, and ordered") {
    const ModelParams p = tiny_params();
    const StateSpace space(p);
    const TransitionKernel kernel = build_kernel(space);

    REQUIRE(kernel.size() == space.size());
    for (std::size_t i = 0; i < kernel.size(); ++i) {
        const SystemState s = space.state_at(i);
        CHECK(kernel.stage_costs[i] == stage_cost(s));
        CHECK(kernel.transmit_admissible(i) == (s.energy >= 1));
        for (Action a : admissible_actions(s)) {
            const auto& row = kernel.row(i, a);
            REQUIRE(row.size() >= 1);
            REQUIRE(row.size() <= 8);
            double total = 0.0;
            for (std::size_t k = 0; k < row.size(); ++k) {
                CHECK(row[k].prob >= 0.0);
                total += row[k].prob;
                if (k > 0) CHECK(row[k - 1].next < row[k].next); // merged and ascending
            }
            CHECK(std::abs(total - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("clamped ages at the buffer cap collapse outcomes into merged entries") {
    ModelParams p = tiny_params();
    p.age_cap_normal = 10;
    p.age_cap_alarm = 10;
    const StateSpace space(p);
    const TransitionKernel kernel = build_kernel(space);
    // full buffer, saturated age: harvest cannot change energy, aging cannot
    // move the clamped tracker, so only the process draw distinguishes outcomes
    const SystemState s{0, 0, 2, 10, 0};
    const auto& row = kernel.row(space.index_of(s), Action::withhold);
    REQUIRE(row.size() == 2);
    CHECK(row[0].next == space.index_of({0, 0, 2, 10, 0}));
    CHECK(row[0].prob == Catch::Approx(0.9).margin(1e-15)); // (1-pe)*p00 + pe*p00
    CHECK(row[1].next == space.index_of({1, 0, 2, 10, 0}));
    CHECK(row[1].prob == Catch::Approx(0.1).margin(1e-15));
}

TEST_CASE("kernel construction is deterministic") {
    const StateSpace space(tiny_params());
    const TransitionKernel first = build_kernel(space);
    const TransitionKernel second = build_kernel(space);
    REQUIRE(first.size() == second.size());
    CHECK(first.stage_costs == second.stage_costs);
    CHECK(first.rows == second.rows);
}

TEST_CASE("marginal process-state distribution matches the chain row") {
    const ModelParams p = tiny_params();
    const StateSpace space(p);
    const TransitionKernel kernel = build_kernel(space);
    for (std::size_t i = 0; i < kernel.size(); ++i) {
        const SystemState s = space.state_at(i);
        for (Action a : admissible_actions(s)) {
            double to_alarm = 0.0;
            for (const TransitionEntry& t : kernel.row(i, a))
                if (space.state_at(t.next).process == 1) to_alarm += t.prob;
            CHECK(to_alarm == Catch::Approx(p.alarm_prob_from(s.process)).margin(1e-12));
        }
    }
}
