#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "ehmdp/model.hpp"
#include "ehmdp/solver.hpp"

namespace ehmdp {

struct TrajectoryStep {
    int slot;
    SystemState state;
    Action action;
    Disturbance outcome;
    double cost; ///< stage cost of `state`
};

/// Recorded episode: consecutive steps are linked by the one-step dynamics.
struct Trajectory {
    SystemState initial;
    std::uint64_t seed;
    std::vector<TrajectoryStep> steps;
};

struct RolloutResult {
    double discounted_cost;
    Trajectory trajectory;
};

struct ValueEstimate {
    double mean;
    double std_error;
    int episodes;
    int horizon;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Uniform double in [0,1) from the top 53 bits, identical on every platform.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace detail

/// Random stream of episode `episode` under master seed `seed`.
inline std::uint64_t episode_seed(std::uint64_t seed, int episode) {
    return detail::splitmix64(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(episode));
}

/**
Draws the slot's joint outcome. Three uniforms are consumed per slot, always
in the order (delivery, harvest, next process state); the delivery draw is
made even when the sensor withholds, in which case it is ignored.
*/
inline Disturbance sample_disturbance(const SystemState& s, Action a, const ModelParams& p,
                                      std::mt19937_64& rng) {
    const double u_deliver = detail::uniform01(rng);
    const double u_harvest = detail::uniform01(rng);
    const double u_process = detail::uniform01(rng);
    Disturbance w;
    w.delivered = (a == Action::transmit) && u_deliver < p.tx_success_prob;
    w.harvested = u_harvest < p.harvest_prob;
    w.next_process = u_process < p.alarm_prob_from(s.process) ? 1 : 0;
    return w;
}

namespace detail {

inline double run_episode(const Policy& policy, const StateSpace& space, const SystemState& start,
                          int horizon, std::uint64_t seed, Trajectory* record) {
    const ModelParams& p = space.params();
    std::mt19937_64 rng(seed);
    SystemState s = start;
    double total = 0.0;
    double weight = 1.0;
    for (int k = 0; k < horizon; ++k) {
        const Action a = policy[space.index_of(s)];
        if (a == Action::transmit && s.energy == 0)
            throw std::invalid_argument("rollout: policy transmits from an empty buffer at " +
                                        s.to_string());
        const double g = stage_cost(s);
        total += weight * g;
        weight *= p.discount;
        const Disturbance w = sample_disturbance(s, a, p, rng);
        if (record) record->steps.push_back({k, s, a, w, g});
        s = next_state(s, a, w, p);
    }
    return total;
}

} // namespace detail

/**
Simulates `horizon` slots of `policy` from `start`, accumulating the
discounted cost sum over the visited states. Deterministic in `seed`.
*/
inline RolloutResult rollout(const Policy& policy, const StateSpace& space,
                             const SystemState& start, int horizon, std::uint64_t seed) {
    if (horizon < 1) throw std::invalid_argument("rollout: horizon must be >= 1");
    RolloutResult result;
    result.trajectory.initial = start;
    result.trajectory.seed = seed;
    result.trajectory.steps.reserve(static_cast<std::size_t>(horizon));
    result.discounted_cost =
        detail::run_episode(policy, space, start, horizon, seed, &result.trajectory);
    return result;
}

/**
Mean and standard error of the truncated discounted cost over independent
episodes; episode e runs on the stream episode_seed(seed, e). Uses a
streaming mean/variance update, so aggregation does not lose precision over
many episodes.
*/
inline ValueEstimate estimate_value(const Policy& policy, const StateSpace& space,
                                    const SystemState& start, int episodes, int horizon,
                                    std::uint64_t seed) {
    if (episodes < 2) throw std::invalid_argument("estimate_value: episodes must be >= 2");
    if (horizon < 1) throw std::invalid_argument("estimate_value: horizon must be >= 1");
    double mean = 0.0;
    double m2 = 0.0;
    for (int e = 0; e < episodes; ++e) {
        const double ret =
            detail::run_episode(policy, space, start, horizon, episode_seed(seed, e), nullptr);
        const double delta = ret - mean;
        mean += delta / (e + 1);
        m2 += delta * (ret - mean);
    }
    const double sample_var = m2 / (episodes - 1);
    return {mean, std::sqrt(sample_var / episodes), episodes, horizon};
}

} // namespace ehmdp
