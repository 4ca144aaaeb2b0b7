#pragma once

#include "tbsg/evaluation.hpp"

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

namespace tbsg {

/// (T v)_i = min over A_i of c_a + gamma P_a v at player-1 states, max at
/// player-2 states.
template <class T>
ValueVector<T> apply_T(const BasicGame<T>& game, const ValueVector<T>& v) {
    if (v.size() != game.num_states())
        throw PreconditionError("value vector length does not match the state count");
    ValueVector<T> out(game.num_states());
    for (StateId i = 0; i < game.num_states(); ++i) {
        const auto& set = game.actions_at(i);
        const bool minimize = game.owner(i) == Player::min;
        T best = game.action(set.front()).backup(game.gamma(), v);
        for (std::size_t k = 1; k < set.size(); ++k) {
            T q = game.action(set[k]).backup(game.gamma(), v);
            if (minimize ? q < best : q > best) best = std::move(q);
        }
        out[i] = std::move(best);
    }
    return out;
}

/// Best action at state i against v for the state's owner.
///
/// Without an incumbent, the first attaining action in A_i order wins. With
/// one, the incumbent is kept unless some action beats it by more than
/// `slack` (zero means exact comparison).
template <class T>
ActionId best_response_at(const BasicGame<T>& game, StateId i, const ValueVector<T>& v,
                          ActionId incumbent = kNoAction, const T& slack = T(0)) {
    const auto& set = game.actions_at(i);
    const bool minimize = game.owner(i) == Player::min;
    ActionId best = set.front();
    T best_q = game.action(best).backup(game.gamma(), v);
    for (std::size_t k = 1; k < set.size(); ++k) {
        T q = game.action(set[k]).backup(game.gamma(), v);
        if (minimize ? q < best_q : q > best_q) {
            best = set[k];
            best_q = std::move(q);
        }
    }
    if (incumbent == kNoAction || incumbent == best) return best;
    if (!is_valid_choice(game, i, incumbent))
        throw PreconditionError("incumbent action is not available at state " + std::to_string(i));
    T inc_q = game.action(incumbent).backup(game.gamma(), v);
    bool keep = minimize ? inc_q <= best_q + slack : inc_q >= best_q - slack;
    return keep ? incumbent : best;
}

/// Strategy extraction: argmin at player-1 states, argmax at player-2
/// states, ties resolved in favour of the incumbent when it attains the
/// optimum and otherwise by smallest action id.
template <class T>
StrategyProfile extract_profile(const BasicGame<T>& game, const ValueVector<T>& v,
                                const std::optional<StrategyProfile>& incumbent = std::nullopt) {
    if (v.size() != game.num_states())
        throw PreconditionError("value vector length does not match the state count");
    if (incumbent && incumbent->size() != game.num_states())
        throw PreconditionError("incumbent profile has the wrong length");
    StrategyProfile out(game.num_states());
    for (StateId i = 0; i < game.num_states(); ++i)
        out[i] = best_response_at(game, i, v, incumbent ? (*incumbent)[i] : kNoAction);
    return out;
}

template <class T>
struct VIResult {
    ValueVector<T> final_values;
    /// u^0 .. u^N when retention was requested, else empty.
    std::vector<ValueVector<T>> iterates;
    std::size_t iterations = 0;
    /// ||u^{N-1} - u^N||_inf
    T last_delta{};
    bool converged = false;
};

/// Iteration cap that guarantees the epsilon stop: with
/// R = ||u0||_inf + ||c||_inf / (1 - gamma) >= ||u0 - v*||_inf, successive
/// iterates differ by at most 2 R gamma^(k-1).
template <class T>
std::size_t default_max_iterations(const BasicGame<T>& game, const ValueVector<T>& u0, double epsilon) {
    const double gamma = Num<T>::to_double(game.gamma());
    const double radius = Num<T>::to_double(sup_norm(u0)) +
                          Num<T>::to_double(game.max_abs_cost()) / (1.0 - gamma);
    if (radius == 0.0 || epsilon <= 0.0) return 1;
    double x = std::log(epsilon / (2.0 * radius)) / std::log(gamma);
    if (!(x > 0.0)) return 1;
    return static_cast<std::size_t>(std::floor(x)) + 2;
}

/// Repeats u <- T u until ||u^{k-1} - u^k||_inf < epsilon or `max_iters`
/// applications. epsilon == 0 requires an explicit cap and never reports
/// convergence.
template <class T>
VIResult<T> value_iteration(const BasicGame<T>& game, const ValueVector<T>& u0, double epsilon,
                            std::optional<std::size_t> max_iters = std::nullopt,
                            bool retain_iterates = false) {
    if (!(epsilon >= 0.0)) throw PreconditionError("epsilon must be non-negative");
    if (epsilon == 0.0 && !max_iters)
        throw PreconditionError("epsilon = 0 needs a finite iteration cap");
    if (u0.size() != game.num_states())
        throw PreconditionError("initial vector length does not match the state count");
    const std::size_t cap = max_iters ? *max_iters : default_max_iterations(game, u0, epsilon);
    const T eps(epsilon);

    VIResult<T> result;
    result.final_values = u0;
    if (retain_iterates) result.iterates.push_back(u0);
    while (result.iterations < cap) {
        ValueVector<T> next = apply_T(game, result.final_values);
        result.last_delta = sup_distance(result.final_values, next);
        result.final_values = std::move(next);
        ++result.iterations;
        if (retain_iterates) result.iterates.push_back(result.final_values);
        if (result.last_delta < eps) {
            result.converged = true;
            break;
        }
    }
    return result;
}

}  // namespace tbsg
