#pragma once

// Evaluation of a fixed strategy profile pi:
//
//   value vector         v_pi   solves (I - gamma P_pi) v = c_pi
//   modified costs       c^pi   = c - (J - gamma P) v_pi          (length m)
//   flux vector          x_pi   solves x (I - gamma P_pi) = e^T
//
// Values are expected total discounted costs from each start state.

#include "tbsg/game.hpp"
#include "tbsg/linalg.hpp"

#include <vector>

namespace tbsg {

template <class T>
using ValueVector = std::vector<T>;
template <class T>
using ModifiedCostVector = std::vector<T>;
template <class T>
using FluxVector = std::vector<T>;

/// I - gamma P_pi
template <class T>
DenseMatrix<T> evaluation_matrix(const BasicGame<T>& game, const StrategyProfile& profile) {
    auto sys = restrict_to(game, profile);
    DenseMatrix<T> a(std::move(sys.transitions));
    for (auto& x : a.data) x = T(-game.gamma() * x);
    for (std::size_t i = 0; i < a.rows; ++i) a(i, i) += T(1);
    return a;
}

/// Value of `profile` when action a costs costs[a] instead of c_a.
template <class T>
ValueVector<T> value_vector_for_costs(const BasicGame<T>& game, const StrategyProfile& profile,
                                      const std::vector<T>& costs) {
    if (costs.size() != game.num_actions())
        throw PreconditionError("cost vector length does not match the action count");
    auto a = evaluation_matrix(game, profile);
    std::vector<T> rhs(game.num_states());
    for (StateId i = 0; i < game.num_states(); ++i) rhs[i] = costs[profile[i]];
    return LuFactorization<T>(std::move(a)).solve(rhs);
}

template <class T>
ValueVector<T> value_vector(const BasicGame<T>& game, const StrategyProfile& profile) {
    auto a = evaluation_matrix(game, profile);
    std::vector<T> rhs(game.num_states());
    for (StateId i = 0; i < game.num_states(); ++i) rhs[i] = game.action(profile[i]).cost;
    return LuFactorization<T>(std::move(a)).solve(rhs);
}

/// (c^v)_a = c_a - v_{s(a)} + gamma P_a v, for any potential v.
template <class T>
ModifiedCostVector<T> modified_costs(const BasicGame<T>& game, const ValueVector<T>& v) {
    if (v.size() != game.num_states())
        throw PreconditionError("value vector length does not match the state count");
    ModifiedCostVector<T> out(game.num_actions());
    for (ActionId a = 0; a < game.num_actions(); ++a) {
        const auto& act = game.action(a);
        out[a] = act.backup(game.gamma(), v) - v[act.source];
    }
    return out;
}

/// v_other - v_base, by direct subtraction.
template <class T>
ValueVector<T> modified_value_vector(const BasicGame<T>& game, const StrategyProfile& base,
                                     const StrategyProfile& other) {
    auto v_other = value_vector(game, other);
    auto v_base = value_vector(game, base);
    for (std::size_t i = 0; i < v_other.size(); ++i) v_other[i] -= v_base[i];
    return v_other;
}

/// v_other - v_base, as the value of `other` under the modified costs c^base.
template <class T>
ValueVector<T> modified_value_vector_via_costs(const BasicGame<T>& game, const StrategyProfile& base,
                                               const StrategyProfile& other) {
    auto reduced = modified_costs(game, value_vector(game, base));
    return value_vector_for_costs(game, other, reduced);
}

template <class T>
FluxVector<T> flux_vector(const BasicGame<T>& game, const StrategyProfile& profile) {
    LuFactorization<T> lu(evaluation_matrix(game, profile));
    return lu.solve_transposed(std::vector<T>(game.num_states(), T(1)));
}

/// || (I - gamma P_pi) v - c_pi ||_inf
template <class T>
T evaluation_residual(const BasicGame<T>& game, const StrategyProfile& profile,
                      const ValueVector<T>& v) {
    auto lhs = multiply(evaluation_matrix(game, profile), v);
    T worst(0);
    for (StateId i = 0; i < game.num_states(); ++i) {
        T r = Num<T>::abs(T(lhs[i] - game.action(profile[i]).cost));
        if (r > worst) worst = r;
    }
    return worst;
}

template <class T>
T dot(const std::vector<T>& x, const std::vector<T>& y) {
    T sum(0);
    for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * y[i];
    return sum;
}

template <>
inline double dot<double>(const std::vector<double>& x, const std::vector<double>& y) {
    return kernels::dot(x, y);
}

template <class T>
T sum(const std::vector<T>& x) {
    T s(0);
    for (const auto& e : x) s += e;
    return s;
}

/// Entries of a length-m vector at the actions chosen by `profile`.
template <class T>
std::vector<T> select(const std::vector<T>& per_action, const StrategyProfile& profile) {
    std::vector<T> out;
    out.reserve(profile.size());
    for (ActionId a : profile) out.push_back(per_action[a]);
    return out;
}

}  // namespace tbsg
