#pragma once

// Fixtures and independent oracles shared by the unit and acceptance tests.
// The oracles deliberately avoid the library's solvers: they work from the
// raw action list with their own elimination / series / enumeration code.

#include "tbsg/game_io.hpp"
#include "tbsg/generators.hpp"
#include "tbsg/verification.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace tbsg::testing {

inline std::string data_path(const std::string& name) { return std::string(TBSG_TEST_DATA) + "/" + name; }

/// State 0 (player 1): a2 = id 0, self-loop cost 3; a1 = id 1, to state 1
/// at cost 0. State 1 (player 2): b = id 2, self-loop cost 1. gamma = 1/2.
template <class T>
BasicGame<T> two_state() {
    std::vector<Action<T>> actions{
        {0, T(3), {{0, T(1)}}},
        {0, T(0), {{1, T(1)}}},
        {1, T(1), {{1, T(1)}}},
    };
    return BasicGame<T>(2, Num<T>::parse("0.5"), {1, 2}, std::move(actions));
}
inline constexpr ActionId kA2 = 0;
inline constexpr ActionId kA1 = 1;
inline constexpr ActionId kB = 2;

/// One state, one self-loop of cost 1, gamma = 1/2.
template <class T>
BasicGame<T> one_state() {
    return BasicGame<T>(1, Num<T>::parse("0.5"), {1}, {{0, T(1), {{0, T(1)}}}});
}

inline GenSpec random_spec(std::size_t n, std::size_t actions, const std::string& gamma, std::uint64_t seed,
                           OwnerRule rule = OwnerRule::alternate) {
    GenSpec spec;
    spec.n = n;
    spec.actions_per_state = {actions, actions};
    spec.support_size = {1, std::min<std::size_t>(n, 3)};
    spec.owner_rule = rule;
    spec.gamma = gamma;
    spec.seed = seed;
    return spec;
}

template <class T>
BasicGame<T> random_game(const GenSpec& spec) {
    auto exact = generate(spec);
    if constexpr (Num<T>::exact)
        return exact;
    else
        return convert_game<double>(exact);
}

/// Solves a x = b by Gauss-Jordan elimination with row swaps on nonzero
/// pivots (largest magnitude for doubles).
template <class T>
std::vector<T> gauss_jordan(std::vector<std::vector<T>> a, std::vector<T> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col; r < n; ++r) {
            if constexpr (Num<T>::exact) {
                if (a[r][col] != 0) {
                    piv = r;
                    break;
                }
            } else if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) {
                piv = r;
            }
        }
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == T(0)) continue;
            T f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
    return b;
}

/// v = (I - gamma P_pi)^{-1} c_pi, built straight from the action list.
template <class T>
std::vector<T> oracle_values(const BasicGame<T>& g, const StrategyProfile& pi) {
    const std::size_t n = g.num_states();
    std::vector<std::vector<T>> a(n, std::vector<T>(n, T(0)));
    std::vector<T> c(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i][i] += T(1);
        const auto& act = g.actions()[pi[i]];
        c[i] = act.cost;
        for (const auto& t : act.transition) a[i][t.target] -= g.gamma() * t.probability;
    }
    return gauss_jordan(std::move(a), std::move(c));
}

/// Truncated Neumann series sum_{k <= K} (gamma P_pi)^k c_pi.
inline std::vector<double> neumann_values(const Game& g, const StrategyProfile& pi, int terms) {
    const std::size_t n = g.num_states();
    std::vector<double> term(n), total(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) term[i] = g.action(pi[i]).cost;
    for (int k = 0; k <= terms; ++k) {
        for (std::size_t i = 0; i < n; ++i) total[i] += term[i];
        std::vector<double> next(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& t : g.action(pi[i]).transition) next[i] += g.gamma() * t.probability * term[t.target];
        term = std::move(next);
    }
    return total;
}

/// Calls f on every profile in mixed-radix order.
template <class T>
void for_each_profile(const BasicGame<T>& g, const std::function<void(const StrategyProfile&)>& f) {
    const std::size_t n = g.num_states();
    std::vector<std::size_t> digit(n, 0);
    StrategyProfile p(n);
    for (;;) {
        for (std::size_t i = 0; i < n; ++i) p[i] = g.actions_at(i)[digit[i]];
        f(p);
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (++digit[i] < g.actions_at(i).size()) break;
            digit[i] = 0;
            if (i == 0) return;
        }
        if (n == 0) return;
    }
}

/// v* as the min-max over profiles: player 1 picks a strategy minimizing,
/// player 2 best-responds per state by maximizing every coordinate. For
/// turn-based games a single counter-strategy maximizes all coordinates at
/// once, so the componentwise max over player-2 strategies is attained.
template <class T>
std::vector<T> oracle_game_value(const BasicGame<T>& g) {
    const std::size_t n = g.num_states();
    std::map<std::vector<ActionId>, std::vector<T>> best_reply;  // sigma part -> componentwise max
    for_each_profile<T>(g, [&](const StrategyProfile& p) {
        std::vector<ActionId> sigma(n, kNoAction);
        for (std::size_t i = 0; i < n; ++i)
            if (g.owner(i) == Player::min) sigma[i] = p[i];
        auto v = oracle_values(g, p);
        auto [it, fresh] = best_reply.try_emplace(sigma, v);
        if (!fresh)
            for (std::size_t i = 0; i < n; ++i)
                if (v[i] > it->second[i]) it->second[i] = v[i];
    });
    std::vector<T> best;
    for (const auto& [sigma, v] : best_reply) {
        if (best.empty()) {
            best = v;
            continue;
        }
        for (std::size_t i = 0; i < n; ++i)
            if (v[i] < best[i]) best[i] = v[i];
    }
    return best;
}

inline double float_slack(const std::vector<double>& v) { return 1e-9 * (1.0 + sup_norm(v)); }

}  // namespace tbsg::testing
