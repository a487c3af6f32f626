#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ehmdp/model.hpp"
#include "ehmdp/solver.hpp"
#include "ehmdp/trace.hpp"

namespace ehmdp {

/// Raised on any malformed, unknown, or out-of-range configuration input.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SweepAxis {
    std::string key;            ///< one of pe, ps, e_max, p01, p10
    std::vector<double> values; ///< grid values along this axis
};

/**
One experiment description: model parameters, solver tolerance, simulation
settings, the start state, and up to two sweep axes. `trace_log` is present
when the file carries trace.* keys.
*/
struct ExperimentConfig {
    ModelParams params;
    std::optional<double> tol;
    std::uint64_t seed = 1;
    int episodes = 10000;
    int horizon = 1200;
    SystemState start_state{0, 0, 0, 1, 0};
    int grid_z = 0;
    std::vector<SweepAxis> sweep_axes; ///< held in canonical order pe, ps, e_max, p01, p10
    std::optional<EventLog> trace_log;

    double stop_tolerance() const {
        return tol ? *tol : default_stop_tolerance(params.discount);
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

inline double parse_double(const std::string& key, const std::string& token) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(token, &pos);
        if (pos != token.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not a number: '" + token + "'");
    }
}

inline long long parse_int(const std::string& key, const std::string& token) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(token, &pos);
        if (pos != token.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not an integer: '" + token + "'");
    }
}

inline std::vector<std::string> parse_list(const std::string& key, const std::string& value) {
    const std::string body = trim(value);
    if (body.size() < 2 || body.front() != '[' || body.back() != ']')
        throw ConfigError("config key '" + key + "': expected a [..] list, got '" + value + "'");
    std::vector<std::string> items;
    std::string inner = body.substr(1, body.size() - 2);
    std::stringstream stream(inner);
    std::string item;
    while (std::getline(stream, item, ',')) {
        item = trim(item);
        if (item.empty())
            throw ConfigError("config key '" + key + "': empty list element");
        items.push_back(item);
    }
    if (items.empty()) throw ConfigError("config key '" + key + "': list must not be empty");
    return items;
}

inline void check_probability(const std::string& key, double v) {
    if (!(v >= 0.0 && v <= 1.0))
        throw ConfigError("config key '" + key + "': must lie in [0,1], got " + std::to_string(v));
}

} // namespace detail

/**
Parses the flat key = value format. Lines are `key = value` with `#`
comments; list values are bracketed and comma-separated. Unknown keys,
duplicate keys, and out-of-range values are errors that name the key.
*/
inline ExperimentConfig parse_config(std::istream& in) {
    using detail::parse_double;
    using detail::parse_int;
    using detail::parse_list;
    using detail::trim;

    std::map<std::string, std::string> entries;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": empty key or value");
        if (!entries.emplace(key, value).second)
            throw ConfigError("duplicate config key '" + key + "'");
    }

    static const std::vector<std::string> known = {
        "pe",         "ps",          "p01",          "p10",        "e_max",
        "d_max0",     "d_max1",      "gamma",        "tol",        "seed",
        "episodes",   "horizon",     "start_state",  "grid_z",     "sweep.pe",
        "sweep.ps",   "sweep.e_max", "sweep.p01",    "sweep.p10",  "trace.changes",
        "trace.updates", "trace.horizon", "trace.z0"};
    for (const auto& [key, value] : entries)
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ConfigError("unknown config key '" + key + "'");

    auto get = [&](const char* key) -> const std::string* {
        const auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second;
    };

    ExperimentConfig cfg;
    if (const auto* v = get("pe")) {
        cfg.params.harvest_prob = parse_double("pe", *v);
        detail::check_probability("pe", cfg.params.harvest_prob);
    }
    if (const auto* v = get("ps")) {
        cfg.params.tx_success_prob = parse_double("ps", *v);
        detail::check_probability("ps", cfg.params.tx_success_prob);
    }
    if (const auto* v = get("p01")) {
        cfg.params.alarm_entry_prob = parse_double("p01", *v);
        detail::check_probability("p01", cfg.params.alarm_entry_prob);
    }
    if (const auto* v = get("p10")) {
        cfg.params.alarm_exit_prob = parse_double("p10", *v);
        detail::check_probability("p10", cfg.params.alarm_exit_prob);
    }
    if (const auto* v = get("e_max")) {
        const long long n = parse_int("e_max", *v);
        if (n < 1) throw ConfigError("config key 'e_max': must be >= 1, got " + *v);
        cfg.params.energy_cap = static_cast<int>(n);
    }
    if (const auto* v = get("d_max0")) {
        const long long n = parse_int("d_max0", *v);
        if (n < 1) throw ConfigError("config key 'd_max0': must be >= 1, got " + *v);
        cfg.params.age_cap_normal = static_cast<int>(n);
    }
    if (const auto* v = get("d_max1")) {
        const long long n = parse_int("d_max1", *v);
        if (n < 1) throw ConfigError("config key 'd_max1': must be >= 1, got " + *v);
        cfg.params.age_cap_alarm = static_cast<int>(n);
    }
    if (const auto* v = get("gamma")) {
        cfg.params.discount = parse_double("gamma", *v);
        if (!(cfg.params.discount > 0.0 && cfg.params.discount < 1.0))
            throw ConfigError("config key 'gamma': must lie strictly inside (0,1), got " + *v);
    }
    if (const auto* v = get("tol")) {
        const double t = parse_double("tol", *v);
        if (!(t > 0.0)) throw ConfigError("config key 'tol': must be positive, got " + *v);
        cfg.tol = t;
    }
    if (const auto* v = get("seed")) {
        if (!v->empty() && v->front() == '-')
            throw ConfigError("config key 'seed': must be non-negative, got " + *v);
        try {
            std::size_t pos = 0;
            cfg.seed = std::stoull(*v, &pos);
            if (pos != v->size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw ConfigError("config key 'seed': not an unsigned integer: '" + *v + "'");
        }
    }
    if (const auto* v = get("episodes")) {
        const long long n = parse_int("episodes", *v);
        if (n < 2) throw ConfigError("config key 'episodes': must be >= 2, got " + *v);
        cfg.episodes = static_cast<int>(n);
    }
    if (const auto* v = get("horizon")) {
        const long long n = parse_int("horizon", *v);
        if (n < 1) throw ConfigError("config key 'horizon': must be >= 1, got " + *v);
        cfg.horizon = static_cast<int>(n);
    }
    if (const auto* v = get("grid_z")) {
        const long long n = parse_int("grid_z", *v);
        if (n != 0 && n != 1) throw ConfigError("config key 'grid_z': must be 0 or 1, got " + *v);
        cfg.grid_z = static_cast<int>(n);
    }
    if (const auto* v = get("start_state")) {
        const auto items = parse_list("start_state", *v);
        if (items.size() != 5)
            throw ConfigError("config key 'start_state': expected 5 entries, got " +
                              std::to_string(items.size()));
        cfg.start_state.process = static_cast<int>(parse_int("start_state", items[0]));
        cfg.start_state.known = static_cast<int>(parse_int("start_state", items[1]));
        cfg.start_state.energy = static_cast<int>(parse_int("start_state", items[2]));
        cfg.start_state.age_normal = static_cast<int>(parse_int("start_state", items[3]));
        cfg.start_state.age_alarm = static_cast<int>(parse_int("start_state", items[4]));
    }
    if (!cfg.start_state.in_bounds(cfg.params))
        throw ConfigError("config key 'start_state': state " + cfg.start_state.to_string() +
                          " out of bounds for the given parameters");

    // sweep axes, collected in canonical order
    for (const char* axis_key : {"pe", "ps", "e_max", "p01", "p10"}) {
        const std::string full = std::string("sweep.") + axis_key;
        const auto* v = get(full.c_str());
        if (!v) continue;
        SweepAxis axis;
        axis.key = axis_key;
        for (const std::string& item : parse_list(full, *v)) {
            const double x = parse_double(full, item);
            if (axis.key == "e_max") {
                if (x != static_cast<long long>(x) || x < 1)
                    throw ConfigError("config key '" + full +
                                      "': values must be integers >= 1, got " + item);
            } else {
                detail::check_probability(full, x);
            }
            axis.values.push_back(x);
        }
        cfg.sweep_axes.push_back(std::move(axis));
    }
    if (cfg.sweep_axes.size() > 2)
        throw ConfigError("at most two sweep axes per run, got " +
                          std::to_string(cfg.sweep_axes.size()));

    const bool any_trace = get("trace.changes") || get("trace.updates") ||
                           get("trace.horizon") || get("trace.z0");
    if (any_trace) {
        EventLog log;
        log.age_cap_normal = cfg.params.age_cap_normal;
        log.age_cap_alarm = cfg.params.age_cap_alarm;
        if (const auto* v = get("trace.z0")) {
            const long long n = parse_int("trace.z0", *v);
            if (n != 0 && n != 1)
                throw ConfigError("config key 'trace.z0': must be 0 or 1, got " + *v);
            log.initial_process = static_cast<int>(n);
        }
        if (const auto* v = get("trace.horizon"))
            log.horizon = parse_int("trace.horizon", *v);
        else
            throw ConfigError("config key 'trace.horizon' is required for a trace");
        if (const auto* v = get("trace.changes"))
            for (const std::string& item : parse_list("trace.changes", *v))
                log.change_times.push_back(parse_int("trace.changes", item));
        if (const auto* v = get("trace.updates"))
            for (const std::string& item : parse_list("trace.updates", *v)) {
                // each update is generation:delivery:state
                const auto c1 = item.find(':');
                const auto c2 = item.find(':', c1 == std::string::npos ? c1 : c1 + 1);
                if (c1 == std::string::npos || c2 == std::string::npos)
                    throw ConfigError("config key 'trace.updates': expected "
                                      "generation:delivery:state, got '" + item + "'");
                UpdateEvent u;
                u.generated = parse_int("trace.updates", item.substr(0, c1));
                u.delivered = parse_int("trace.updates", item.substr(c1 + 1, c2 - c1 - 1));
                u.reported = static_cast<int>(parse_int("trace.updates", item.substr(c2 + 1)));
                log.updates.push_back(u);
            }
        try {
            log.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("config key 'trace': ") + e.what());
        }
        cfg.trace_log = std::move(log);
    }
    return cfg;
}

inline ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    return parse_config(in);
}

} // namespace ehmdp
