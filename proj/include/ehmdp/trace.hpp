#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "ehmdp/model.hpp"
#include "ehmdp/simulator.hpp"

namespace ehmdp {

struct UpdateEvent {
    long generated; ///< slot the update was generated (its timestamp)
    long delivered; ///< slot from which the destination knows it
    int reported;   ///< process state the update carries
};

/**
Explicit timeline of a monitored episode: when the process changed state and
which updates reached the destination. Times may be negative to encode
history from before slot 0. `initial_process` is the process state before
the first listed change. Before the first delivery the destination is
treated as knowing `initial_process` with timestamp 0.
*/
struct EventLog {
    int initial_process = 0;
    std::vector<long> change_times;      ///< strictly increasing
    std::vector<UpdateEvent> updates;    ///< strictly increasing in both time fields
    long horizon = 0;                    ///< slots 0 .. horizon-1 are evaluated
    int age_cap_normal = 10;
    int age_cap_alarm = 10;

    int age_cap(int state) const { return state == 0 ? age_cap_normal : age_cap_alarm; }

    /// Throws std::invalid_argument on a malformed log.
    void validate() const {
        if (initial_process != 0 && initial_process != 1)
            throw std::invalid_argument("event log: initial_process must be 0 or 1");
        if (horizon < 1) throw std::invalid_argument("event log: horizon must be >= 1");
        if (age_cap_normal < 1 || age_cap_alarm < 1)
            throw std::invalid_argument("event log: age caps must be >= 1");
        for (std::size_t i = 0; i + 1 < change_times.size(); ++i)
            if (change_times[i] >= change_times[i + 1])
                throw std::invalid_argument("event log: change times must be strictly increasing");
        for (const UpdateEvent& u : updates) {
            if (u.delivered < u.generated)
                throw std::invalid_argument("event log: update delivered at " +
                                            std::to_string(u.delivered) +
                                            " before its generation at " +
                                            std::to_string(u.generated));
            if (u.reported != 0 && u.reported != 1)
                throw std::invalid_argument("event log: reported state must be 0 or 1");
        }
        for (std::size_t i = 0; i + 1 < updates.size(); ++i)
            if (updates[i].delivered >= updates[i + 1].delivered ||
                updates[i].generated >= updates[i + 1].generated)
                throw std::invalid_argument("event log: update times must be strictly increasing");
    }
};

struct AgePoint {
    long slot;
    int age_normal;
    int age_alarm;

    bool operator==(const AgePoint&) const = default;
};

/**
Replays the ages slot by slot, straight from the timeline definition:

  - the destination-known state ages as slots elapsed since the timestamp of
    the last delivered update;
  - the current process state, while the destination believes otherwise, ages
    as slots elapsed since the latest state change at or before the slot;
  - a state that is neither current nor destination-known reads 0.

All ages clamp at their caps. A state change is in effect from its listed
slot onward (the new state has age 0 there); a delivered update informs the
destination from its delivery slot onward.
*/
inline std::vector<AgePoint> aoi_trace(const EventLog& log) {
    log.validate();
    std::vector<AgePoint> series;
    series.reserve(static_cast<std::size_t>(log.horizon));
    std::size_t next_change = 0;
    std::size_t next_update = 0;
    int process = log.initial_process;
    long last_change = 0;
    bool changed_once = false;
    int known = log.initial_process;
    long known_timestamp = 0;
    // consume history events (times < 0) up front
    auto advance_to = [&](long k) {
        while (next_change < log.change_times.size() && log.change_times[next_change] <= k) {
            process = 1 - process;
            last_change = log.change_times[next_change];
            changed_once = true;
            ++next_change;
        }
        while (next_update < log.updates.size() && log.updates[next_update].delivered <= k) {
            known = log.updates[next_update].reported;
            known_timestamp = log.updates[next_update].generated;
            ++next_update;
        }
    };
    advance_to(-1);
    for (long k = 0; k < log.horizon; ++k) {
        advance_to(k);
        AgePoint point{k, 0, 0};
        for (int z = 0; z < 2; ++z) {
            long age = 0;
            if (z == known)
                age = k - known_timestamp;
            else if (z == process)
                age = changed_once ? k - last_change : k;
            else
                age = 0;
            age = std::min(age, static_cast<long>(log.age_cap(z)));
            (z == 0 ? point.age_normal : point.age_alarm) = static_cast<int>(age);
        }
        series.push_back(point);
    }
    return series;
}

/**
Converts a recorded trajectory into its event log under the one-slot
delivery convention: an update transmitted in slot k carries timestamp k and
informs the destination from slot k+1; a process move in slot k is a state
change listed at slot k+1. The initial state's ages are encoded as synthetic
history events at negative times (at the clamp boundary when an age sits at
its cap, which replays identically from slot 0 on).
*/
inline EventLog event_log_from_trajectory(const Trajectory& trajectory, const ModelParams& p) {
    const SystemState& s0 = trajectory.initial;
    EventLog log;
    log.age_cap_normal = p.age_cap_normal;
    log.age_cap_alarm = p.age_cap_alarm;
    log.horizon = static_cast<long>(trajectory.steps.size());

    const long known_age = s0.age(s0.known);
    if (known_age < 1)
        throw std::invalid_argument("event_log_from_trajectory: the destination-known state must "
                                    "carry age >= 1 at the start");
    log.initial_process = s0.known;
    log.updates.push_back({-known_age, -known_age + 1, s0.known});
    if (s0.process != s0.known) {
        // the process left the reported state at some point; place the move so
        // that the current state's age comes out right at slot 0
        log.change_times.push_back(-s0.age(s0.process));
    } else if (s0.age(1 - s0.known) != 0) {
        throw std::invalid_argument("event_log_from_trajectory: the off state must carry age 0 "
                                    "when process and known state agree");
    }

    for (const TrajectoryStep& step : trajectory.steps) {
        if (step.outcome.delivered)
            log.updates.push_back({step.slot, step.slot + 1, step.state.process});
        if (step.outcome.next_process != step.state.process)
            log.change_times.push_back(step.slot + 1);
    }
    log.validate();
    return log;
}

} // namespace ehmdp
