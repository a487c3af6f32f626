#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ehmdp/model.hpp"

namespace ehmdp {

struct TransitionEntry {
    std::uint32_t next; ///< next-state index
    double prob;

    bool operator==(const TransitionEntry&) const = default;
};

/**
Explicit transition kernel: for every (state, admissible action) a merged,
ascending-index list of (next state, probability) pairs, plus the per-state
stage cost. Rows for the transmit action are empty exactly where the energy
buffer is empty.
*/
struct TransitionKernel {
    std::vector<std::array<std::vector<TransitionEntry>, 2>> rows;
    std::vector<double> stage_costs;

    std::size_t size() const { return rows.size(); }

    const std::vector<TransitionEntry>& row(std::size_t state, Action a) const {
        return rows[state][action_index(a)];
    }

    bool transmit_admissible(std::size_t state) const {
        return !rows[state][action_index(Action::transmit)].empty();
    }
};

/**
Builds the kernel by pushing every nonzero-probability disturbance outcome
through the one-step dynamics and merging outcomes that land on the same
next state. Row entries are sorted by next-state index, so identical
parameters always produce identical kernels.
*/
inline TransitionKernel build_kernel(const StateSpace& space) {
    const ModelParams& p = space.params();
    TransitionKernel kernel;
    kernel.rows.resize(space.size());
    kernel.stage_costs.resize(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) {
        const SystemState s = space.state_at(i);
        kernel.stage_costs[i] = stage_cost(s);
        for (Action a : admissible_actions(s)) {
            std::vector<TransitionEntry>& row = kernel.rows[i][action_index(a)];
            for (const auto& [w, prob] : disturbance_distribution(s, a, p)) {
                const auto j = static_cast<std::uint32_t>(space.index_of(next_state(s, a, w, p)));
                row.push_back({j, prob});
            }
            std::sort(row.begin(), row.end(),
                      [](const TransitionEntry& x, const TransitionEntry& y) { return x.next < y.next; });
            // merge duplicates in place
            std::size_t out = 0;
            for (std::size_t k = 0; k < row.size(); ++k) {
                if (out > 0 && row[out - 1].next == row[k].next)
                    row[out - 1].prob += row[k].prob;
                else
                    row[out++] = row[k];
            }
            row.resize(out);
        }
    }
    return kernel;
}

} // namespace ehmdp
