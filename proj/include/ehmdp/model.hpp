#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace ehmdp {

/**
Exogenous parameters of the status-update model: per-slot event
probabilities, buffer and age caps, and the discount factor.

Process state 0 is the normal operating mode, state 1 the alarm mode.
*/
struct ModelParams {
    double harvest_prob = 0.8;     ///< P(one energy unit arrives in a slot)
    double tx_success_prob = 0.8;  ///< P(a transmission attempt is delivered)
    double alarm_entry_prob = 0.1; ///< P(normal -> alarm at the slot boundary)
    double alarm_exit_prob = 0.2;  ///< P(alarm -> normal at the slot boundary)
    int energy_cap = 5;            ///< buffer capacity in energy units, >= 1
    int age_cap_normal = 10;       ///< cap on the age tracked for state 0
    int age_cap_alarm = 10;        ///< cap on the age tracked for state 1
    double discount = 0.99;        ///< in (0,1)

    int age_cap(int state) const { return state == 0 ? age_cap_normal : age_cap_alarm; }

    /// P(next process state is alarm | current process state).
    double alarm_prob_from(int state) const {
        return state == 0 ? alarm_entry_prob : 1.0 - alarm_exit_prob;
    }

    /// Throws std::invalid_argument naming the offending field.
    void validate() const {
        auto check_prob = [](double v, const char* name) {
            if (!(v >= 0.0 && v <= 1.0))
                throw std::invalid_argument(std::string(name) + " must lie in [0,1], got " +
                                            std::to_string(v));
        };
        check_prob(harvest_prob, "harvest_prob");
        check_prob(tx_success_prob, "tx_success_prob");
        check_prob(alarm_entry_prob, "alarm_entry_prob");
        check_prob(alarm_exit_prob, "alarm_exit_prob");
        if (!(discount > 0.0 && discount < 1.0))
            throw std::invalid_argument("discount must lie strictly inside (0,1), got " +
                                        std::to_string(discount));
        if (energy_cap < 1)
            throw std::invalid_argument("energy_cap must be >= 1, got " + std::to_string(energy_cap));
        if (age_cap_normal < 1)
            throw std::invalid_argument("age_cap_normal must be >= 1, got " +
                                        std::to_string(age_cap_normal));
        if (age_cap_alarm < 1)
            throw std::invalid_argument("age_cap_alarm must be >= 1, got " +
                                        std::to_string(age_cap_alarm));
    }
};

enum class Action : std::uint8_t {
    withhold = 0, ///< keep the fresh update, spend nothing
    transmit = 1, ///< send the fresh update, spend one energy unit
};

inline std::size_t action_index(Action a) { return static_cast<std::size_t>(a); }

/// Joint random outcome of one slot.
struct Disturbance {
    bool delivered;   ///< the transmitted update reached the destination
    bool harvested;   ///< an energy unit arrived
    int next_process; ///< process state at the start of the next slot

    bool operator==(const Disturbance&) const = default;
};

/**
Sensor-side system state at the start of a slot.

`age_normal` / `age_alarm` track, per process state, the slots elapsed
since the destination's knowledge of that state was fresh; whichever
state is neither current nor destination-known carries age 0.
*/
struct SystemState {
    int process;    ///< current process state (0 normal, 1 alarm)
    int known;      ///< process state carried by the last delivered update
    int energy;     ///< stored energy units
    int age_normal; ///< age tracked for state 0
    int age_alarm;  ///< age tracked for state 1

    int age(int state) const { return state == 0 ? age_normal : age_alarm; }
    void set_age(int state, int v) { (state == 0 ? age_normal : age_alarm) = v; }

    bool operator==(const SystemState&) const = default;

    bool in_bounds(const ModelParams& p) const {
        return (process == 0 || process == 1) && (known == 0 || known == 1) &&
               energy >= 0 && energy <= p.energy_cap && age_normal >= 0 &&
               age_normal <= p.age_cap_normal && age_alarm >= 0 && age_alarm <= p.age_cap_alarm;
    }

    std::string to_string() const {
        return "[" + std::to_string(process) + "," + std::to_string(known) + "," +
               std::to_string(energy) + "," + std::to_string(age_normal) + "," +
               std::to_string(age_alarm) + "]";
    }
};

/// Actions available in `s`: transmission requires a stored energy unit.
inline std::vector<Action> admissible_actions(const SystemState& s) {
    if (s.energy == 0) return {Action::withhold};
    return {Action::withhold, Action::transmit};
}

/// Per-slot penalty: linear in the normal-state age, quadratic in the alarm-state age.
inline double stage_cost(const SystemState& s) {
    return s.process == 0 ? static_cast<double>(s.age_normal)
                          : static_cast<double>(s.age_alarm) * s.age_alarm;
}

/**
Deterministic one-step dynamics: applies action `a` and disturbance `w` to `s`.

The destination-known state switches to the current process state exactly on a
delivered update; energy moves by the harvest/spend net, saturating at the cap.
The per-state ages update as follows (primes denote next-slot values):
  - a state that is neither the next process state nor the next known state
    resets to 0;
  - the next known state reads 1 after a delivery, otherwise increments with
    clamping at its cap;
  - the next process state, when it differs from the next known state,
    increments with clamping if the process was already there, and reads 0 if
    the process just moved there.

Throws std::invalid_argument when `a` is not admissible in `s`, when `w`
reports a delivery without a transmission, or when a field is out of bounds.
*/
inline SystemState next_state(const SystemState& s, Action a, const Disturbance& w,
                              const ModelParams& p) {
    if (!s.in_bounds(p))
        throw std::invalid_argument("next_state: state " + s.to_string() + " out of bounds");
    if (w.next_process != 0 && w.next_process != 1)
        throw std::invalid_argument("next_state: disturbance next_process must be 0 or 1");
    const bool transmitting = a == Action::transmit;
    if (transmitting && s.energy == 0)
        throw std::invalid_argument("next_state: transmit inadmissible with an empty buffer");
    if (w.delivered && !transmitting)
        throw std::invalid_argument("next_state: delivery reported without a transmission");

    SystemState n;
    n.process = w.next_process;
    n.known = w.delivered ? s.process : s.known;
    n.energy = std::min(s.energy + (w.harvested ? 1 : 0) - (transmitting ? 1 : 0), p.energy_cap);
    for (int z = 0; z < 2; ++z) {
        int v;
        if (z != n.process && z != n.known)
            v = 0;
        else if (z == n.known)
            v = w.delivered ? 1 : std::min(s.age(z) + 1, p.age_cap(z));
        else // z == n.process != n.known
            v = (s.process == z) ? std::min(s.age(z) + 1, p.age_cap(z)) : 0;
        n.set_age(z, v);
    }
    return n;
}

/**
Probability of the joint outcome `w` under action `a` in state `s`:
the product of the three independent component probabilities. A delivery
is impossible (probability 0) unless the sensor transmits.
*/
inline double disturbance_probability(const SystemState& s, Action a, const Disturbance& w,
                                      const ModelParams& p) {
    const double p_deliver = (a == Action::transmit) ? p.tx_success_prob : 0.0;
    const double p_alarm = p.alarm_prob_from(s.process);
    double q = w.delivered ? p_deliver : 1.0 - p_deliver;
    q *= w.harvested ? p.harvest_prob : 1.0 - p.harvest_prob;
    q *= (w.next_process == 1) ? p_alarm : 1.0 - p_alarm;
    return q;
}

/**
Fixed mixed-radix enumeration of all states within the parameter bounds,
with mutually inverse encode/decode. The alarm-state age varies fastest,
then the normal-state age, energy, known state, process state.

Unreachable combinations (e.g. both ages positive while process and known
state agree) are deliberately retained; they make indexing a pure radix
computation and are harmless to solve over.
*/
class StateSpace {
public:
    explicit StateSpace(const ModelParams& params) : params_(params) {
        params_.validate();
        size_ = std::size_t{4} * (params_.energy_cap + 1) * (params_.age_cap_normal + 1) *
                (params_.age_cap_alarm + 1);
    }

    std::size_t size() const { return size_; }
    const ModelParams& params() const { return params_; }

    std::size_t index_of(const SystemState& s) const {
        if (!s.in_bounds(params_))
            throw std::out_of_range("index_of: state " + s.to_string() + " out of bounds");
        std::size_t i = static_cast<std::size_t>(s.process) * 2 + s.known;
        i = i * (params_.energy_cap + 1) + s.energy;
        i = i * (params_.age_cap_normal + 1) + s.age_normal;
        i = i * (params_.age_cap_alarm + 1) + s.age_alarm;
        return i;
    }

    SystemState state_at(std::size_t index) const {
        if (index >= size_) throw std::out_of_range("state_at: index beyond state count");
        SystemState s;
        s.age_alarm = static_cast<int>(index % (params_.age_cap_alarm + 1));
        index /= params_.age_cap_alarm + 1;
        s.age_normal = static_cast<int>(index % (params_.age_cap_normal + 1));
        index /= params_.age_cap_normal + 1;
        s.energy = static_cast<int>(index % (params_.energy_cap + 1));
        index /= params_.energy_cap + 1;
        s.known = static_cast<int>(index % 2);
        s.process = static_cast<int>(index / 2);
        return s;
    }

private:
    ModelParams params_;
    std::size_t size_;
};

/// The eight joint outcomes, restricted to those with nonzero probability.
inline std::vector<std::pair<Disturbance, double>>
disturbance_distribution(const SystemState& s, Action a, const ModelParams& p) {
    if (a == Action::transmit && s.energy == 0)
        throw std::invalid_argument("disturbance_distribution: transmit inadmissible with an "
                                    "empty buffer");
    std::vector<std::pair<Disturbance, double>> out;
    out.reserve(8);
    for (int delivered = 0; delivered < 2; ++delivered)
        for (int harvested = 0; harvested < 2; ++harvested)
            for (int next = 0; next < 2; ++next) {
                const Disturbance w{delivered != 0, harvested != 0, next};
                const double q = disturbance_probability(s, a, w, p);
                if (q > 0.0) out.emplace_back(w, q);
            }
    return out;
}

/**
Breadth-first closure of `start` under the dynamics, over all admissible
actions and all disturbances of nonzero probability. Returns sorted state
indices.
*/
inline std::vector<std::size_t> reachable_states(const StateSpace& space,
                                                 const SystemState& start) {
    const ModelParams& p = space.params();
    std::vector<char> seen(space.size(), 0);
    std::queue<std::size_t> frontier;
    const std::size_t start_index = space.index_of(start);
    seen[start_index] = 1;
    frontier.push(start_index);
    while (!frontier.empty()) {
        const SystemState s = space.state_at(frontier.front());
        frontier.pop();
        for (Action a : admissible_actions(s))
            for (const auto& [w, prob] : disturbance_distribution(s, a, p)) {
                const std::size_t j = space.index_of(next_state(s, a, w, p));
                if (!seen[j]) {
                    seen[j] = 1;
                    frontier.push(j);
                }
            }
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (seen[i]) out.push_back(i);
    return out;
}

} // namespace ehmdp
