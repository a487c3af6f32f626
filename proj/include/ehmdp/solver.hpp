#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ehmdp/kernel.hpp"

namespace ehmdp {

using ValueFunction = std::vector<double>;
using Policy = std::vector<Action>;

/// Raised when an iterative solve hits its iteration cap before converging.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SolveReport {
    std::size_t iterations = 0;
    double residual = 0.0;    ///< final sup-norm difference between iterates
    double error_bound = 0.0; ///< a-posteriori bound discount/(1-discount) * residual
};

struct Solution {
    ValueFunction values;
    Policy policy;
    SolveReport report;
};

/**
Default stopping tolerance: with the a-posteriori contraction bound
discount/(1-discount) * tol, this guarantees the returned values are within
1e-4 of the fixed point in sup-norm.
*/
inline double default_stop_tolerance(double discount) {
    return 1e-4 * (1.0 - discount) / discount;
}

/**
One synchronous optimality backup: for every state,
new value = stage cost + discount * min over admissible actions of the
expected old value. The stage cost is action-independent, so it sits outside
the minimization. Also returns the minimizing action per state; exact ties go
to withhold, which keeps extracted policy grids reproducible.
*/
inline std::pair<ValueFunction, Policy>
bellman_backup(const ValueFunction& values, const TransitionKernel& kernel, double discount) {
    if (values.size() != kernel.size())
        throw std::invalid_argument("bellman_backup: value vector size mismatch");
    ValueFunction updated(kernel.size());
    Policy greedy(kernel.size());
    for (std::size_t i = 0; i < kernel.size(); ++i) {
        double best = 0.0;
        for (const TransitionEntry& t : kernel.row(i, Action::withhold)) best += t.prob * values[t.next];
        Action choice = Action::withhold;
        if (kernel.transmit_admissible(i)) {
            double q = 0.0;
            for (const TransitionEntry& t : kernel.row(i, Action::transmit)) q += t.prob * values[t.next];
            if (q < best) {
                best = q;
                choice = Action::transmit;
            }
        }
        updated[i] = kernel.stage_costs[i] + discount * best;
        greedy[i] = choice;
    }
    return {std::move(updated), std::move(greedy)};
}

/**
Value iteration from the zero vector with synchronous backups, stopping once
the sup-norm difference between consecutive iterates falls below `stop_tol`.
The returned values are then within discount/(1-discount) * stop_tol of the
optimal values, and the returned policy is greedy with respect to them.

Throws ConvergenceError if `max_iterations` sweeps do not reach the tolerance.
*/
inline Solution value_iteration(const TransitionKernel& kernel, double discount, double stop_tol,
                                std::size_t max_iterations = 1000000) {
    if (!(discount > 0.0 && discount < 1.0))
        throw std::invalid_argument("value_iteration: discount must lie in (0,1)");
    if (!(stop_tol > 0.0))
        throw std::invalid_argument("value_iteration: stop_tol must be positive");
    ValueFunction values(kernel.size(), 0.0);
    for (std::size_t m = 1; m <= max_iterations; ++m) {
        auto [updated, greedy] = bellman_backup(values, kernel, discount);
        double residual = 0.0;
        for (std::size_t i = 0; i < updated.size(); ++i)
            residual = std::max(residual, std::abs(updated[i] - values[i]));
        values = std::move(updated);
        if (residual < stop_tol) {
            SolveReport report{m, residual, discount / (1.0 - discount) * residual};
            return {std::move(values), std::move(greedy), report};
        }
    }
    throw ConvergenceError("value_iteration: no convergence within " +
                           std::to_string(max_iterations) + " iterations");
}

/**
Exact discounted cost of a fixed policy, via fixed-point iteration on
J = g + discount * P J down to a sup-norm step below 1e-10 (so the Bellman
residual of the result is below 1e-10 as well).
*/
inline ValueFunction evaluate_policy(const Policy& policy, const TransitionKernel& kernel,
                                     double discount, std::size_t max_iterations = 10000000) {
    if (policy.size() != kernel.size())
        throw std::invalid_argument("evaluate_policy: policy size mismatch");
    for (std::size_t i = 0; i < policy.size(); ++i)
        if (policy[i] == Action::transmit && !kernel.transmit_admissible(i))
            throw std::invalid_argument("evaluate_policy: policy transmits from an empty buffer at state " +
                                        std::to_string(i));
    constexpr double kStepTol = 1e-10;
    ValueFunction values(kernel.size(), 0.0);
    ValueFunction updated(kernel.size());
    for (std::size_t m = 1; m <= max_iterations; ++m) {
        double residual = 0.0;
        for (std::size_t i = 0; i < kernel.size(); ++i) {
            double expected = 0.0;
            for (const TransitionEntry& t : kernel.row(i, policy[i]))
                expected += t.prob * values[t.next];
            updated[i] = kernel.stage_costs[i] + discount * expected;
            residual = std::max(residual, std::abs(updated[i] - values[i]));
        }
        values.swap(updated);
        if (residual < kStepTol) return values;
    }
    throw ConvergenceError("evaluate_policy: no convergence within " +
                           std::to_string(max_iterations) + " iterations");
}

} // namespace ehmdp
