#pragma once

#include <string>
#include <vector>

#include "ehmdp/config.hpp"
#include "ehmdp/kernel.hpp"
#include "ehmdp/model.hpp"
#include "ehmdp/simulator.hpp"
#include "ehmdp/solver.hpp"
#include "ehmdp/table.hpp"
#include "ehmdp/trace.hpp"

namespace ehmdp {

inline ModelParams apply_axis_value(ModelParams p, const std::string& key, double value) {
    if (key == "pe")
        p.harvest_prob = value;
    else if (key == "ps")
        p.tx_success_prob = value;
    else if (key == "e_max")
        p.energy_cap = static_cast<int>(value);
    else if (key == "p01")
        p.alarm_entry_prob = value;
    else if (key == "p10")
        p.alarm_exit_prob = value;
    else
        throw ConfigError("unknown sweep axis '" + key + "'");
    return p;
}

/**
Solves every point of the configured parameter grid and tabulates the
optimal start-state cost with the solver statistics, one row per grid point
in row-major order over the axes (first axis outermost).
*/
inline Table sweep(const ExperimentConfig& cfg) {
    Table table;
    for (const SweepAxis& axis : cfg.sweep_axes) table.header.push_back(axis.key);
    table.header.insert(table.header.end(), {"j_star_s0", "iterations", "residual_bound"});

    std::size_t total = 1;
    for (const SweepAxis& axis : cfg.sweep_axes) total *= axis.values.size();
    for (std::size_t linear = 0; linear < total; ++linear) {
        std::vector<double> point;
        std::size_t rest = linear;
        for (std::size_t a = cfg.sweep_axes.size(); a-- > 0;) {
            point.insert(point.begin(),
                         cfg.sweep_axes[a].values[rest % cfg.sweep_axes[a].values.size()]);
            rest /= cfg.sweep_axes[a].values.size();
        }
        ModelParams p = cfg.params;
        for (std::size_t a = 0; a < cfg.sweep_axes.size(); ++a)
            p = apply_axis_value(p, cfg.sweep_axes[a].key, point[a]);
        if (!cfg.start_state.in_bounds(p))
            throw ConfigError("start_state " + cfg.start_state.to_string() +
                              " out of bounds at a sweep grid point");
        const StateSpace space(p);
        const Solution sol =
            value_iteration(build_kernel(space), p.discount, cfg.stop_tolerance());
        std::vector<std::string> row;
        for (double v : point) row.push_back(format_double(v));
        row.push_back(format_double(sol.values[space.index_of(cfg.start_state)], "%.6f"));
        row.push_back(std::to_string(sol.report.iterations));
        row.push_back(format_double(sol.report.error_bound, "%.6e"));
        table.rows.push_back(std::move(row));
    }
    return table;
}

/**
Optimal actions over the (energy, age) plane for one process state, read off
the solved policy on the in-sync slice: destination-known state equal to the
process state and the other state's age at 0. The own-state age starts at 1,
the smallest value the slice admits.
*/
struct PolicyGrid {
    int z;
    int energy_cap;
    int age_cap;
    std::vector<std::vector<Action>> cells; ///< cells[e][d-1], e in 0..cap, d in 1..age cap
};

inline PolicyGrid policy_grid(const ModelParams& params, int z, double stop_tol) {
    if (z != 0 && z != 1) throw std::invalid_argument("policy_grid: z must be 0 or 1");
    const StateSpace space(params);
    const Solution sol = value_iteration(build_kernel(space), params.discount, stop_tol);
    PolicyGrid grid{z, params.energy_cap, params.age_cap(z), {}};
    grid.cells.resize(params.energy_cap + 1);
    for (int e = 0; e <= params.energy_cap; ++e) {
        grid.cells[e].reserve(grid.age_cap);
        for (int d = 1; d <= grid.age_cap; ++d) {
            SystemState s{z, z, e, 0, 0};
            s.set_age(z, d);
            grid.cells[e].push_back(sol.policy[space.index_of(s)]);
        }
    }
    return grid;
}

inline Table policy_grid_table(const PolicyGrid& grid) {
    Table table;
    table.comments.push_back("optimal actions for process state z=" + std::to_string(grid.z) +
                             " on the in-sync slice (known state = z, other-state age = 0)");
    table.comments.push_back("rows: stored energy; columns: age of state z; cell: 0 withhold, "
                             "1 transmit");
    table.header.push_back("e");
    for (int d = 1; d <= grid.age_cap; ++d) table.header.push_back(std::to_string(d));
    for (int e = 0; e <= grid.energy_cap; ++e) {
        std::vector<std::string> row{std::to_string(e)};
        for (Action a : grid.cells[e]) row.push_back(std::to_string(static_cast<int>(a)));
        table.rows.push_back(std::move(row));
    }
    return table;
}

inline Table trace_table(const EventLog& log) {
    Table table;
    table.header = {"k", "d0", "d1"};
    for (const AgePoint& point : aoi_trace(log))
        table.rows.push_back({std::to_string(point.slot), std::to_string(point.age_normal),
                              std::to_string(point.age_alarm)});
    return table;
}

inline Table solve_table(const ExperimentConfig& cfg) {
    const StateSpace space(cfg.params);
    const Solution sol =
        value_iteration(build_kernel(space), cfg.params.discount, cfg.stop_tolerance());
    Table table;
    table.header = {"j_star_s0", "iterations", "residual", "residual_bound"};
    table.rows.push_back({format_double(sol.values[space.index_of(cfg.start_state)], "%.6f"),
                          std::to_string(sol.report.iterations),
                          format_double(sol.report.residual, "%.6e"),
                          format_double(sol.report.error_bound, "%.6e")});
    return table;
}

/// Solves for the optimal policy, then Monte Carlo estimates its start-state cost.
inline Table simulate_table(const ExperimentConfig& cfg) {
    const StateSpace space(cfg.params);
    const Solution sol =
        value_iteration(build_kernel(space), cfg.params.discount, cfg.stop_tolerance());
    const ValueEstimate est = estimate_value(sol.policy, space, cfg.start_state, cfg.episodes,
                                             cfg.horizon, cfg.seed);
    Table table;
    table.header = {"estimate", "stderr", "episodes", "horizon"};
    table.rows.push_back({format_double(est.mean, "%.6f"), format_double(est.std_error, "%.6f"),
                          std::to_string(est.episodes), std::to_string(est.horizon)});
    return table;
}

} // namespace ehmdp
