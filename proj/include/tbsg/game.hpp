#pragma once

#include "tbsg/numeric.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tbsg {

using StateId = std::size_t;
using ActionId = std::size_t;

inline constexpr ActionId kNoAction = static_cast<ActionId>(-1);

/// Player 1 minimizes total discounted cost, player 2 maximizes it.
enum class Player : std::uint8_t { min = 1, max = 2 };

inline int player_number(Player p) { return static_cast<int>(p); }

/// A precondition of an operation was not met by its arguments.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An internal invariant was broken, e.g. a singular (I - gamma P) matrix.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

template <class T>
struct Transition {
    StateId target;
    T probability;

    bool operator==(const Transition&) const = default;
};

template <class T>
struct Action {
    StateId source = 0;
    T cost{};
    /// Sparse distribution over successor states, sorted by target.
    std::vector<Transition<T>> transition;

    bool operator==(const Action&) const = default;

    /// c_a + gamma * (P_a . v)
    T backup(const T& gamma, const std::vector<T>& v) const {
        T expected(0);
        for (const auto& t : transition) expected += t.probability * v[t.target];
        return T(cost + gamma * expected);
    }
};

/// Discounted two-player turn-based stochastic game.
///
/// Actions carry global ids 0..m-1 in construction order; the per-state sets
/// A_i list those ids in the same order, which is the canonical order used
/// for every tie-break. The game is never mutated after construction.
template <class T>
class BasicGame {
public:
    BasicGame() = default;

    /// Does not validate; see validate(). Actions whose source is out of
    /// range are kept but belong to no A_i.
    BasicGame(std::size_t n, T gamma, std::vector<int> owner, std::vector<Action<T>> actions)
        : n_(n), gamma_(std::move(gamma)), owner_(std::move(owner)), actions_(std::move(actions)),
          by_state_(n) {
        for (ActionId a = 0; a < actions_.size(); ++a) {
            auto& tr = actions_[a].transition;
            std::stable_sort(tr.begin(), tr.end(),
                             [](const auto& x, const auto& y) { return x.target < y.target; });
            if (actions_[a].source < n_) by_state_[actions_[a].source].push_back(a);
        }
    }

    std::size_t num_states() const { return n_; }
    std::size_t num_actions() const { return actions_.size(); }
    const T& gamma() const { return gamma_; }
    /// Raw owner entries as read (1 or 2 when valid).
    const std::vector<int>& owners() const { return owner_; }
    Player owner(StateId i) const { return owner_[i] == 2 ? Player::max : Player::min; }
    const std::vector<Action<T>>& actions() const { return actions_; }
    const Action<T>& action(ActionId a) const { return actions_[a]; }
    const std::vector<ActionId>& actions_at(StateId i) const { return by_state_[i]; }

    /// Every state belongs to the same player.
    bool is_mdp() const {
        return std::all_of(owner_.begin(), owner_.end(), [&](int p) { return p == owner_.front(); });
    }

    std::vector<StateId> states_of(Player p) const {
        std::vector<StateId> out;
        for (StateId i = 0; i < n_; ++i)
            if (owner(i) == p) out.push_back(i);
        return out;
    }

    /// Number of strategy profiles, saturating at `cap`.
    std::uint64_t profile_count(std::uint64_t cap = UINT64_MAX) const {
        std::uint64_t count = 1;
        for (const auto& set : by_state_) {
            if (set.empty()) return 0;
            if (count > cap / set.size()) return cap;
            count *= set.size();
        }
        return count;
    }

    T max_abs_cost() const {
        T best(0);
        for (const auto& a : actions_)
            if (Num<T>::abs(a.cost) > best) best = Num<T>::abs(a.cost);
        return best;
    }

    bool operator==(const BasicGame& other) const {
        return n_ == other.n_ && gamma_ == other.gamma_ && owner_ == other.owner_ &&
               actions_ == other.actions_;
    }

private:
    std::size_t n_ = 0;
    T gamma_{};
    std::vector<int> owner_;
    std::vector<Action<T>> actions_;
    std::vector<std::vector<ActionId>> by_state_;
};

using Game = BasicGame<double>;
using ExactGame = BasicGame<Rational>;

/// One chosen action per state (pi_1 and pi_2 together).
using StrategyProfile = std::vector<ActionId>;

/// A positional strategy of one player: choice[i] is set for the player's
/// own states and kNoAction elsewhere.
struct Strategy {
    Player player = Player::min;
    std::vector<ActionId> choice;

    bool operator==(const Strategy&) const = default;
};

/// Combines a player-1 and a player-2 strategy into a profile.
StrategyProfile combine(const Strategy& sigma, const Strategy& tau);

/// The part of `profile` that belongs to `player`.
template <class T>
Strategy strategy_of(const BasicGame<T>& game, const StrategyProfile& profile, Player player) {
    Strategy s{player, std::vector<ActionId>(game.num_states(), kNoAction)};
    for (StateId i = 0; i < game.num_states(); ++i)
        if (game.owner(i) == player) s.choice[i] = profile[i];
    return s;
}

/// Smallest-id action at every state owned by `player`.
template <class T>
Strategy first_strategy(const BasicGame<T>& game, Player player) {
    Strategy s{player, std::vector<ActionId>(game.num_states(), kNoAction)};
    for (StateId i = 0; i < game.num_states(); ++i)
        if (game.owner(i) == player) s.choice[i] = game.actions_at(i).front();
    return s;
}

template <class T>
bool is_valid_choice(const BasicGame<T>& game, StateId i, ActionId a) {
    return a < game.num_actions() && game.action(a).source == i;
}

template <class T>
void require_profile(const BasicGame<T>& game, const StrategyProfile& profile) {
    if (profile.size() != game.num_states())
        throw PreconditionError("profile has " + std::to_string(profile.size()) +
                                " entries, game has " + std::to_string(game.num_states()) +
                                " states");
    for (StateId i = 0; i < profile.size(); ++i)
        if (!is_valid_choice(game, i, profile[i]))
            throw PreconditionError("profile chooses action " + std::to_string(profile[i]) +
                                    " which is not available at state " + std::to_string(i));
}

template <class T>
void require_strategy(const BasicGame<T>& game, const Strategy& s) {
    if (s.choice.size() != game.num_states())
        throw PreconditionError("strategy has wrong length");
    for (StateId i = 0; i < game.num_states(); ++i) {
        bool owned = game.owner(i) == s.player;
        if (owned && !is_valid_choice(game, i, s.choice[i]))
            throw PreconditionError("player " + std::to_string(player_number(s.player)) +
                                    " strategy has no valid action at state " + std::to_string(i));
        if (!owned && s.choice[i] != kNoAction)
            throw PreconditionError("strategy assigns an action to state " + std::to_string(i) +
                                    " owned by the other player");
    }
}

struct Violation {
    enum class Kind {
        bad_state_count,
        bad_gamma,
        owner_not_total,
        bad_owner,
        empty_action_set,
        bad_source,
        bad_target,
        negative_probability,
        not_stochastic,
        non_finite,
    };
    Kind kind;
    std::string message;
};

using ValidationReport = std::vector<Violation>;

/// Float-mode tolerance on |sum of probabilities - 1|.
inline constexpr double kStochasticTolerance = 1e-12;

/// Lists every broken game invariant; empty iff the game is well formed.
template <class T>
ValidationReport validate(const BasicGame<T>& game) {
    using K = Violation::Kind;
    ValidationReport report;
    const std::size_t n = game.num_states();
    if (n == 0) report.push_back({K::bad_state_count, "state count must be positive"});
    if (!(game.gamma() > T(0) && game.gamma() < T(1)))
        report.push_back({K::bad_gamma, "gamma out of range: must satisfy 0 < gamma < 1, got " +
                                            Num<T>::format(game.gamma())});
    if (game.owners().size() != n)
        report.push_back({K::owner_not_total, "owner map not total: " +
                                                  std::to_string(game.owners().size()) +
                                                  " owners for " + std::to_string(n) + " states"});
    for (std::size_t i = 0; i < game.owners().size(); ++i)
        if (game.owners()[i] != 1 && game.owners()[i] != 2)
            report.push_back({K::bad_owner, "owner of state " + std::to_string(i) + " must be 1 or 2"});
    for (StateId i = 0; i < n; ++i)
        if (game.actions_at(i).empty())
            report.push_back({K::empty_action_set, "empty action set at state " + std::to_string(i)});

    for (ActionId a = 0; a < game.num_actions(); ++a) {
        const auto& act = game.action(a);
        const std::string tag = "action " + std::to_string(a);
        if (act.source >= n)
            report.push_back({K::bad_source, tag + ": source state " + std::to_string(act.source) +
                                                 " out of range"});
        if (!Num<T>::is_finite(act.cost)) report.push_back({K::non_finite, tag + ": cost is not finite"});
        T sum(0);
        for (const auto& t : act.transition) {
            if (t.target >= n)
                report.push_back({K::bad_target, tag + ": transition target " +
                                                     std::to_string(t.target) + " out of range"});
            if (!Num<T>::is_finite(t.probability))
                report.push_back({K::non_finite, tag + ": probability is not finite"});
            else if (t.probability < T(0))
                report.push_back({K::negative_probability,
                                  tag + ": negative probability to state " + std::to_string(t.target)});
            sum += t.probability;
        }
        bool stochastic = Num<T>::exact
                              ? sum == T(1)
                              : Num<T>::to_double(Num<T>::abs(T(sum - T(1)))) <= kStochasticTolerance;
        if (!stochastic)
            report.push_back({K::not_stochastic, tag + ": transition probabilities sum to " +
                                                     Num<T>::format(sum) + ", expected 1"});
    }
    return report;
}

/// Dense row-major square matrix.
template <class T>
struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<T> data;

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, T(0)) {}

    T& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

template <class T>
struct RestrictedSystem {
    DenseMatrix<T> transitions;  // P_pi, n x n row-stochastic
    std::vector<T> costs;        // c_pi
};

/// Selects the rows of P and c chosen by `profile`.
template <class T>
RestrictedSystem<T> restrict_to(const BasicGame<T>& game, const StrategyProfile& profile) {
    require_profile(game, profile);
    const std::size_t n = game.num_states();
    RestrictedSystem<T> out{DenseMatrix<T>(n, n), std::vector<T>(n)};
    for (StateId i = 0; i < n; ++i) {
        const auto& act = game.action(profile[i]);
        out.costs[i] = act.cost;
        for (const auto& t : act.transition) out.transitions(i, t.target) += t.probability;
    }
    return out;
}

/// Converts between scalar types through the decimal form, so that an exact
/// game and the float game parsed from the same file coincide.
template <class To, class From>
BasicGame<To> convert_game(const BasicGame<From>& game) {
    auto conv = [](const From& x) { return Num<To>::parse(Num<From>::format(x)); };
    std::vector<Action<To>> actions;
    actions.reserve(game.num_actions());
    for (const auto& a : game.actions()) {
        Action<To> out{a.source, conv(a.cost), {}};
        for (const auto& t : a.transition) out.transition.push_back({t.target, conv(t.probability)});
        actions.push_back(std::move(out));
    }
    return BasicGame<To>(game.num_states(), conv(game.gamma()), game.owners(), std::move(actions));
}

}  // namespace tbsg
