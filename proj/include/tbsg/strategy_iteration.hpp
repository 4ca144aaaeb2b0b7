#pragma once

#include "tbsg/optimality.hpp"
#include "tbsg/value_iteration.hpp"

#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tbsg {

/// log_{1/gamma}(n^2 / (1 - gamma))
inline double elimination_window(std::size_t n, double gamma) {
    const double nn = static_cast<double>(n);
    return std::log(nn * nn / (1.0 - gamma)) / std::log(1.0 / gamma);
}

/// (m + 1)(1 + L): the cap on strategy-iteration rounds from any start.
inline double iteration_bound(std::size_t n, std::size_t m, double gamma) {
    return static_cast<double>(m + 1) * (1.0 + elimination_window(n, gamma));
}

template <class T>
struct SIStep {
    Strategy sigma;  // player 1
    Strategy tau;    // player 2, an optimal counter-strategy to sigma
    ValueVector<T> values;

    StrategyProfile profile() const { return combine(sigma, tau); }
};

/// steps[k] holds (sigma^k, tau^k, v^k) for k = 0..N. The last step repeats
/// step N-1: sigma^N = sigma^{N-1}, which is what stops the loop.
template <class T>
struct SITrace {
    std::vector<SIStep<T>> steps;
    std::size_t iterations = 0;
    bool terminated_optimal = false;
    /// Linear solves spent inside counter-strategy computations.
    std::size_t counter_evaluations = 0;

    StrategyProfile final_profile() const { return steps.back().profile(); }
    const ValueVector<T>& final_values() const { return steps.back().values; }
};

/// Floating-point rounding prevented strict improvement (or cycling was
/// detected). Exact arithmetic never raises this.
class NumericalStall : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <class T>
class StrategyIterationStall : public NumericalStall {
public:
    StrategyIterationStall(const std::string& what, SITrace<T> trace)
        : NumericalStall(what), trace_(std::move(trace)) {}
    const SITrace<T>& trace() const { return trace_; }

private:
    SITrace<T> trace_;
};

template <class T>
struct CounterStrategy {
    Strategy strategy;
    ValueVector<T> values;  // value of the combined profile
    std::size_t evaluations = 0;
};

inline Player opponent(Player p) { return p == Player::min ? Player::max : Player::min; }

/// Optimal counter-strategy of `against` to the fixed strategy of the other
/// player: policy iteration on the game restricted to `fixed`.
///
/// `start` warm-starts the iteration; smallest-id actions otherwise.
template <class T>
CounterStrategy<T> optimal_counter_strategy(const BasicGame<T>& game, const Strategy& fixed,
                                            Player against,
                                            const std::optional<Strategy>& start = std::nullopt) {
    if (fixed.player == against)
        throw PreconditionError("fixed strategy must belong to the other player");
    require_strategy(game, fixed);
    Strategy current = start ? *start : first_strategy(game, against);
    require_strategy(game, current);
    if (current.player != against) throw PreconditionError("warm start belongs to the wrong player");

    const auto free_states = game.states_of(against);
    CounterStrategy<T> out;
    std::set<std::vector<ActionId>> seen;
    for (;;) {
        const auto profile = combine(fixed.player == Player::min ? fixed : current,
                                     fixed.player == Player::min ? current : fixed);
        auto values = value_vector(game, profile);
        ++out.evaluations;
        if (free_states.empty()) {
            out.strategy = std::move(current);
            out.values = std::move(values);
            return out;
        }
        const T slack = Num<T>::slack(kRelativeSlack, sup_norm(values));
        Strategy next = current;
        for (StateId i : free_states)
            next.choice[i] = best_response_at(game, i, values, current.choice[i], slack);
        if (next == current) {
            out.strategy = std::move(current);
            out.values = std::move(values);
            return out;
        }
        if (!seen.insert(current.choice).second)
            throw NumericalStall("counter-strategy iteration revisited a strategy");
        current = std::move(next);
    }
}

struct SIOptions {
    /// Initial counter-strategy for the first round; later rounds warm-start
    /// from the previous round's counter-strategy.
    std::optional<Strategy> tau0;
    /// Abort after this many rounds; 0 selects 4 * bound + 16.
    std::size_t max_iterations = 0;
};

namespace detail {

// v^k must not be worse than v^{k-1} anywhere (up to the float slack) and
// must be strictly better somewhere. Returns an explanation otherwise.
template <class T>
std::optional<std::string> improvement_failure(const ValueVector<T>& before, const ValueVector<T>& after,
                                               bool minimize = true) {
    const T slack = Num<T>::slack(kRelativeSlack, sup_norm(before));
    bool dropped = false;
    for (std::size_t i = 0; i < before.size(); ++i) {
        T gain = minimize ? T(before[i] - after[i]) : T(after[i] - before[i]);
        if (gain < T(-slack)) return "value got worse at state " + std::to_string(i);
        if (gain > T(0)) dropped = true;
    }
    if (!dropped) return std::string("no state improved");
    return std::nullopt;
}

template <class T>
std::size_t iteration_guard(const BasicGame<T>& game, const SIOptions& options) {
    if (options.max_iterations != 0) return options.max_iterations;
    double bound = iteration_bound(game.num_states(), game.num_actions(),
                                   Num<T>::to_double(game.gamma()));
    return static_cast<std::size_t>(4.0 * std::ceil(bound)) + 16;
}

template <class T>
[[noreturn]] void stall(const std::string& what, SITrace<T> trace) {
    if constexpr (Num<T>::exact) {
        throw InternalError("strategy iteration: " + what + " under exact arithmetic");
    } else {
        throw StrategyIterationStall<T>("strategy iteration stalled: " + what, std::move(trace));
    }
}

}  // namespace detail

/// Strategy iteration for player 1 from sigma0. Each round computes an
/// optimal counter-strategy, evaluates the profile and switches every
/// player-1 state to its best action against v^k, keeping the incumbent
/// whenever it is still optimal (within the float slack).
template <class T>
std::pair<StrategyProfile, SITrace<T>> strategy_iteration(const BasicGame<T>& game, const Strategy& sigma0,
                                                           const SIOptions& options = {}) {
    if (sigma0.player != Player::min) throw PreconditionError("sigma0 must be a player-1 strategy");
    require_strategy(game, sigma0);
    const auto p1_states = game.states_of(Player::min);
    const std::size_t guard = detail::iteration_guard(game, options);

    SITrace<T> trace;
    std::set<std::vector<ActionId>> seen;
    Strategy sigma = sigma0;
    std::optional<Strategy> tau_start = options.tau0;
    for (;;) {
        auto counter = optimal_counter_strategy(game, sigma, Player::max, tau_start);
        trace.counter_evaluations += counter.evaluations;
        if (!trace.steps.empty()) {
            if (auto why = detail::improvement_failure(trace.steps.back().values, counter.values))
                detail::stall(*why + " at round " + std::to_string(trace.steps.size()), std::move(trace));
        }
        if (!seen.insert(sigma.choice).second) detail::stall("strategy repeated", std::move(trace));
        trace.steps.push_back({sigma, counter.strategy, counter.values});

        const auto& v = trace.steps.back().values;
        const T slack = Num<T>::slack(kRelativeSlack, sup_norm(v));
        Strategy next = sigma;
        for (StateId i : p1_states) next.choice[i] = best_response_at(game, i, v, sigma.choice[i], slack);

        if (next == sigma) {
            trace.steps.push_back(trace.steps.back());
            break;
        }
        if (trace.steps.size() >= guard) detail::stall("iteration guard exceeded", std::move(trace));
        sigma = std::move(next);
        tau_start = counter.strategy;
    }
    trace.iterations = trace.steps.size() - 1;
    trace.terminated_optimal = optimality_from_values(game, trace.final_values()).optimal;
    return {trace.final_profile(), std::move(trace)};
}

/// Howard's policy iteration on a one-player game. For a player-1 MDP the
/// trace coincides with strategy_iteration on the same game.
template <class T>
std::pair<StrategyProfile, SITrace<T>> howard_policy_iteration(const BasicGame<T>& game,
                                                                const StrategyProfile& pi0,
                                                                std::size_t max_iterations = 0) {
    if (!game.is_mdp()) throw PreconditionError("policy iteration needs a one-player game");
    require_profile(game, pi0);
    const Player player = game.owner(0);
    const std::size_t guard = detail::iteration_guard(game, SIOptions{std::nullopt, max_iterations});

    auto split = [&](const StrategyProfile& p) {
        SIStep<T> step;
        step.sigma = strategy_of(game, p, Player::min);
        step.tau = strategy_of(game, p, Player::max);
        return step;
    };

    SITrace<T> trace;
    std::set<StrategyProfile> seen;
    StrategyProfile pi = pi0;
    for (;;) {
        auto values = value_vector(game, pi);
        ++trace.counter_evaluations;
        if (!trace.steps.empty()) {
            if (auto why = detail::improvement_failure(trace.steps.back().values, values,
                                                       player == Player::min))
                detail::stall(*why + " at round " + std::to_string(trace.steps.size()), std::move(trace));
        }
        if (!seen.insert(pi).second) detail::stall("policy repeated", std::move(trace));
        SIStep<T> step = split(pi);
        step.values = std::move(values);
        trace.steps.push_back(std::move(step));

        const auto& v = trace.steps.back().values;
        const T slack = Num<T>::slack(kRelativeSlack, sup_norm(v));
        StrategyProfile next(pi.size());
        for (StateId i = 0; i < pi.size(); ++i) next[i] = best_response_at(game, i, v, pi[i], slack);
        if (next == pi) {
            trace.steps.push_back(trace.steps.back());
            break;
        }
        if (trace.steps.size() >= guard) detail::stall("iteration guard exceeded", std::move(trace));
        pi = std::move(next);
    }
    trace.iterations = trace.steps.size() - 1;
    trace.terminated_optimal = optimality_from_values(game, trace.final_values()).optimal;
    return {trace.final_profile(), std::move(trace)};
}

}  // namespace tbsg
