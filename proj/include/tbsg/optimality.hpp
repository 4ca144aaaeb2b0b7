#pragma once

#include "tbsg/evaluation.hpp"

#include <optional>

namespace tbsg {

/// Relative tolerance for float-mode optimality and improvement decisions.
inline constexpr double kRelativeSlack = 1e-9;

struct OptimalityResult {
    bool optimal = true;
    /// A profitable switch when not optimal.
    std::optional<ActionId> witness;
};

/// Optimality test for a profile whose value vector is `values`.
template <class T>
OptimalityResult optimality_from_values(const BasicGame<T>& game, const ValueVector<T>& values) {
    const T slack = Num<T>::slack(kRelativeSlack, sup_norm(values));
    const auto reduced = modified_costs(game, values);
    OptimalityResult result;
    T worst(0);
    for (ActionId a = 0; a < game.num_actions(); ++a) {
        const bool minimizer = game.owner(game.action(a).source) == Player::min;
        // Positive excess means a profitable switch for the state's owner.
        T excess = minimizer ? T(-reduced[a]) : reduced[a];
        if (excess > slack && excess > worst) {
            worst = excess;
            result.optimal = false;
            result.witness = a;
        }
    }
    return result;
}

/// pi is optimal iff c^pi >= 0 on every player-1 action and c^pi <= 0 on
/// every player-2 action. Float mode ignores violations below
/// 1e-9 (1 + ||v_pi||_inf); exact mode compares exactly.
template <class T>
OptimalityResult check_optimality(const BasicGame<T>& game, const StrategyProfile& profile) {
    return optimality_from_values(game, value_vector(game, profile));
}

}  // namespace tbsg
