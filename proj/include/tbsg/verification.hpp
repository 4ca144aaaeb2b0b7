#pragma once

// Certificates and theorem checks over solved games and traces.

#include "tbsg/strategy_iteration.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tbsg {

// ---------------------------------------------------------------------------
// Exhaustive oracle

class GuardExceeded : public std::runtime_error {
public:
    GuardExceeded(std::uint64_t profiles, std::uint64_t guard)
        : std::runtime_error("brute force refused: " +
                             (profiles == UINT64_MAX ? std::string("more than 2^64")
                                                     : std::to_string(profiles)) +
                             " profiles exceed the guard of " + std::to_string(guard)),
          profiles_(profiles) {}
    std::uint64_t profiles() const { return profiles_; }

private:
    std::uint64_t profiles_;
};

inline constexpr std::uint64_t kBruteForceGuard = 1'000'000;

template <class T>
struct BruteForceResult {
    StrategyProfile profile;  // first optimal profile in enumeration order
    ValueVector<T> values;
    std::uint64_t enumerated = 0;
    std::uint64_t optimal_profiles = 0;
};

/// Enumerates every profile (state 0 varies slowest, A_i order within a
/// state) and keeps those passing the optimality condition. All of them must
/// share one value vector.
template <class T>
BruteForceResult<T> brute_force_solve(const BasicGame<T>& game, std::uint64_t guard = kBruteForceGuard) {
    const std::uint64_t count = game.profile_count(guard + 1);
    if (count > guard) throw GuardExceeded(game.profile_count(), guard);
    const std::size_t n = game.num_states();

    BruteForceResult<T> out;
    std::vector<std::size_t> digit(n, 0);
    StrategyProfile profile(n);
    for (;;) {
        for (StateId i = 0; i < n; ++i) profile[i] = game.actions_at(i)[digit[i]];
        ++out.enumerated;
        auto values = value_vector(game, profile);
        if (optimality_from_values(game, values).optimal) {
            if (out.optimal_profiles == 0) {
                out.profile = profile;
                out.values = values;
            } else {
                const T slack = Num<T>::slack(kRelativeSlack, sup_norm(out.values));
                if (sup_distance(values, out.values) > slack)
                    throw InternalError("two optimal profiles have different value vectors");
            }
            ++out.optimal_profiles;
        }
        bool done = true;
        for (std::size_t i = n; i-- > 0;) {
            if (++digit[i] < game.actions_at(i).size()) {
                done = false;
                break;
            }
            digit[i] = 0;
        }
        if (done) break;
    }
    if (out.optimal_profiles == 0)
        throw InternalError("no profile passed the optimality check (float tolerance pathology?)");
    return out;
}

// ---------------------------------------------------------------------------
// Evaluation identities

template <class T>
struct IdentityCheck {
    std::string name;
    T residual;
    bool holds;
};

template <class T>
struct IdentityReport {
    std::vector<IdentityCheck<T>> checks;

    bool all_hold() const {
        for (const auto& c : checks)
            if (!c.holds) return false;
        return true;
    }
    T worst_residual() const {
        T worst(0);
        for (const auto& c : checks)
            if (c.residual > worst) worst = c.residual;
        return worst;
    }
};

/// Float-mode residual tolerance for the identity suite.
inline constexpr double kIdentityTolerance = 1e-9;

/// Checks, for profiles pi and pi':
///   reduced-costs-vanish  (c^pi)_pi = 0
///   flux-sum              x_pi e = n / (1 - gamma)
///   flux-lower-bound      x_pi >= 1 entrywise
///   cost-pairing          e^T v_pi = x_pi c_pi
///   gap-pairing           e^T (v_pi' - v_pi) = x_pi' (c^pi)_pi'
/// Residuals are |lhs - rhs| / max(1, |rhs|); exact mode demands zero.
template <class T>
IdentityReport<T> check_identities(const BasicGame<T>& game, const StrategyProfile& pi,
                                   const StrategyProfile& pi_prime) {
    require_profile(game, pi);
    require_profile(game, pi_prime);
    const std::size_t n = game.num_states();
    const auto v = value_vector(game, pi);
    const auto v_prime = value_vector(game, pi_prime);
    const auto x = flux_vector(game, pi);
    const auto x_prime = flux_vector(game, pi_prime);
    const auto reduced = modified_costs(game, v);

    const T tol(Num<T>::exact ? 0.0 : kIdentityTolerance);
    IdentityReport<T> report;
    auto add = [&](std::string name, const T& lhs, const T& rhs) {
        T scale = Num<T>::abs(rhs);
        if (scale < T(1)) scale = T(1);
        T residual = Num<T>::abs(T(lhs - rhs)) / scale;
        report.checks.push_back({std::move(name), residual, residual <= tol});
    };

    add("reduced-costs-vanish", sup_norm(select(reduced, pi)), T(0));
    add("flux-sum", sum(x), T(T(static_cast<long>(n)) / (T(1) - game.gamma())));
    T flux_deficit(0);
    for (const auto& xi : x)
        if (T(1) - xi > flux_deficit) flux_deficit = T(1) - xi;
    add("flux-lower-bound", flux_deficit, T(0));
    std::vector<T> costs;
    costs.reserve(game.num_actions());
    for (const auto& a : game.actions()) costs.push_back(a.cost);
    add("cost-pairing", sum(v), dot(x, select(costs, pi)));
    ValueVector<T> diff(n);
    for (std::size_t i = 0; i < n; ++i) diff[i] = v_prime[i] - v[i];
    add("gap-pairing", sum(diff), dot(x_prime, select(reduced, pi_prime)));
    return report;
}

// ---------------------------------------------------------------------------
// Value-gap lemmas

enum class LemmaStatus { holds, violated, skipped };

inline const char* status_name(LemmaStatus s) {
    switch (s) {
        case LemmaStatus::holds: return "holds";
        case LemmaStatus::violated: return "violated";
        case LemmaStatus::skipped: return "skipped";
    }
    return "?";
}

template <class T>
struct LemmaCheck {
    std::string name;
    LemmaStatus status;
    T lhs{};  // the side claimed to be larger
    T rhs{};
    std::string note;
};

template <class T>
struct GapLemmaReport {
    std::vector<LemmaCheck<T>> checks;

    bool any_violated() const {
        for (const auto& c : checks)
            if (c.status == LemmaStatus::violated) return true;
        return false;
    }
};

namespace detail {

template <class T>
bool dominates(const ValueVector<T>& hi, const ValueVector<T>& lo, const T& slack) {
    for (std::size_t i = 0; i < hi.size(); ++i)
        if (hi[i] < lo[i] - slack) return false;
    return true;
}

}  // namespace detail

/// Value-gap inequalities for profiles pi'' (pi2), pi' (pi1), pi (pi0):
///   gap-lower   v_pi' >= v_pi:  (v_pi' - v_pi)_i >= (c^pi)_{pi'(i)} for all i
///   gap-upper   v_pi'' >= v_pi: ||v_pi'' - v_pi||_1 <= n/(1-gamma) max_{pi''} c^pi
///   gap-ratio   v_pi'' >= v_pi' >= v_pi and the maximizing action of
///               c^pi over pi'' also lies in pi':
///               ||v_pi' - v_pi||_1 >= (1-gamma)/n ||v_pi'' - v_pi||_1
/// Lemmas whose hypotheses fail are reported as skipped.
template <class T>
GapLemmaReport<T> check_gap_lemmas(const BasicGame<T>& game, const StrategyProfile& pi2,
                                   const StrategyProfile& pi1, const StrategyProfile& pi0) {
    const std::size_t n = game.num_states();
    const auto v2 = value_vector(game, pi2);
    const auto v1 = value_vector(game, pi1);
    const auto v0 = value_vector(game, pi0);
    const auto reduced = modified_costs(game, v0);
    const T scale = std::max({sup_norm(v0), sup_norm(v1), sup_norm(v2)});
    const T slack = Num<T>::slack(kRelativeSlack, scale);
    const T n_t(static_cast<long>(n));
    const T one_minus_gamma = T(1) - game.gamma();

    GapLemmaReport<T> report;
    auto judge = [&](std::string name, T lhs, T rhs) {
        T tol = Num<T>::slack(kRelativeSlack, std::max(Num<T>::abs(lhs), Num<T>::abs(rhs)) + scale);
        report.checks.push_back({std::move(name),
                                 lhs >= rhs - tol ? LemmaStatus::holds : LemmaStatus::violated, lhs,
                                 rhs, ""});
    };
    auto skip = [&](std::string name, std::string why) {
        report.checks.push_back({std::move(name), LemmaStatus::skipped, T(0), T(0), std::move(why)});
    };

    if (detail::dominates(v1, v0, slack)) {
        // Report the tightest state.
        std::optional<std::pair<T, T>> worst;
        for (StateId i = 0; i < n; ++i) {
            T lhs = v1[i] - v0[i];
            const T& rhs = reduced[pi1[i]];
            if (!worst || lhs - rhs < worst->first - worst->second) worst = std::pair<T, T>(lhs, rhs);
        }
        judge("gap-lower", worst->first, worst->second);
    } else {
        skip("gap-lower", "v_pi' >= v_pi does not hold");
    }

    // argmax of c^pi over pi'', preferring an action that pi' shares.
    T top = reduced[pi2.front()];
    for (ActionId a : pi2)
        if (reduced[a] > top) top = reduced[a];
    ActionId arg = kNoAction;
    for (StateId i = 0; i < n; ++i) {
        if (reduced[pi2[i]] != top) continue;
        if (arg == kNoAction) arg = pi2[i];
        if (pi1[i] == pi2[i]) {
            arg = pi2[i];
            break;
        }
    }
    const T l1_20 = l1_distance(v2, v0);

    if (detail::dominates(v2, v0, slack))
        judge("gap-upper", T(n_t / one_minus_gamma * reduced[arg]), l1_20);
    else
        skip("gap-upper", "v_pi'' >= v_pi does not hold");

    if (!detail::dominates(v2, v1, slack) || !detail::dominates(v1, v0, slack))
        skip("gap-ratio", "v_pi'' >= v_pi' >= v_pi does not hold");
    else if (pi1[game.action(arg).source] != arg)
        skip("gap-ratio", "maximizing action of c^pi over pi'' is not in pi'");
    else
        judge("gap-ratio", l1_distance(v1, v0), T(one_minus_gamma / n_t * l1_20));
    return report;
}

// ---------------------------------------------------------------------------
// Action elimination and the iteration bound

struct EliminationEntry {
    enum class Status { witnessed, vacuous, exempt, violated };
    std::size_t k = 0;
    /// First round l with l > k + L.
    std::size_t window_start = 0;
    Status status = Status::vacuous;
    std::optional<ActionId> witness;
};

inline const char* status_name(EliminationEntry::Status s) {
    switch (s) {
        case EliminationEntry::Status::witnessed: return "witnessed";
        case EliminationEntry::Status::vacuous: return "vacuous";
        case EliminationEntry::Status::exempt: return "exempt";
        case EliminationEntry::Status::violated: return "violated";
    }
    return "?";
}

struct EliminationReport {
    double window = 0.0;  // L
    std::vector<EliminationEntry> entries;

    std::size_t violations() const {
        std::size_t count = 0;
        for (const auto& e : entries)
            if (e.status == EliminationEntry::Status::violated) ++count;
        return count;
    }
};

/// For every round k, looks for an action of sigma^k that no sigma^l with
/// k + L < l <= N uses again. Rounds whose window is empty are vacuous.
/// Rounds already at the optimal value (k >= N-1) are exempt: the
/// elimination argument needs v^k != v*, and when L < 1 the final repeat
/// sigma^N = sigma^{N-1} would otherwise count against it.
template <class T>
EliminationReport check_action_elimination(const SITrace<T>& trace, const BasicGame<T>& game) {
    EliminationReport report;
    report.window = elimination_window(game.num_states(), Num<T>::to_double(game.gamma()));
    const std::size_t N = trace.iterations;
    const auto p1_states = game.states_of(Player::min);
    for (std::size_t k = 0; k <= N; ++k) {
        EliminationEntry entry;
        entry.k = k;
        entry.window_start = static_cast<std::size_t>(std::floor(static_cast<double>(k) + report.window)) + 1;
        if (entry.window_start > N) {
            entry.status = EliminationEntry::Status::vacuous;
        } else if (k + 1 >= N) {
            entry.status = EliminationEntry::Status::exempt;
        } else {
            entry.status = EliminationEntry::Status::violated;
            for (StateId i : p1_states) {
                ActionId a = trace.steps[k].sigma.choice[i];
                bool reappears = false;
                for (std::size_t l = entry.window_start; l <= N && !reappears; ++l)
                    reappears = trace.steps[l].sigma.choice[i] == a;
                if (!reappears) {
                    entry.status = EliminationEntry::Status::witnessed;
                    entry.witness = a;
                    break;
                }
            }
        }
        report.entries.push_back(entry);
    }
    return report;
}

struct BoundReport {
    std::size_t n = 0;
    std::size_t m = 0;
    double gamma = 0.0;
    double window = 0.0;  // L = log_{1/gamma}(n^2 / (1 - gamma))
    double theoretical_bound = 0.0;
    std::size_t observed_iterations = 0;
    bool satisfied = false;

    double ratio() const { return static_cast<double>(observed_iterations) / theoretical_bound; }
};

inline BoundReport bound_report(std::size_t n, std::size_t m, double gamma, std::size_t observed) {
    BoundReport r;
    r.n = n;
    r.m = m;
    r.gamma = gamma;
    r.window = elimination_window(n, gamma);
    r.theoretical_bound = iteration_bound(n, m, gamma);
    r.observed_iterations = observed;
    r.satisfied = static_cast<double>(observed) <= r.theoretical_bound;
    return r;
}

template <class T>
BoundReport bound_report(const SITrace<T>& trace, const BasicGame<T>& game) {
    return bound_report(game.num_states(), game.num_actions(), Num<T>::to_double(game.gamma()),
                        trace.iterations);
}

// ---------------------------------------------------------------------------
// Trace-level checks

template <class T>
struct TraceAudit {
    std::size_t gap_triples = 0;
    std::size_t gap_checks_applied = 0;
    std::size_t gap_violations = 0;
    EliminationReport elimination;
    BoundReport bound;
    bool monotone = true;
    bool geometric = true;
    bool optimal = true;

    bool passed() const {
        return gap_violations == 0 && elimination.violations() == 0 && bound.satisfied && monotone &&
               geometric && optimal;
    }
};

/// Runs every trace-level property: monotone strict improvement with no
/// repeated strategy, ||v^k - v*|| <= gamma^k ||v^0 - v*||, the gap lemmas
/// on (pi^k, pi^l, pi*) for k < l, action elimination and the bound.
template <class T>
TraceAudit<T> audit_trace(const SITrace<T>& trace, const BasicGame<T>& game) {
    TraceAudit<T> audit;
    const std::size_t N = trace.iterations;
    const auto& v_star = trace.final_values();
    const auto pi_star = trace.final_profile();

    std::set<std::vector<ActionId>> seen;
    for (std::size_t k = 0; k < N; ++k) {
        if (!seen.insert(trace.steps[k].sigma.choice).second) audit.monotone = false;
        if (k + 1 < N && detail::improvement_failure(trace.steps[k].values, trace.steps[k + 1].values))
            audit.monotone = false;
    }

    const double gamma = Num<T>::to_double(game.gamma());
    const double initial = Num<T>::to_double(sup_distance(trace.steps[0].values, v_star));
    for (std::size_t k = 0; k <= N; ++k) {
        double gap = Num<T>::to_double(sup_distance(trace.steps[k].values, v_star));
        if (Num<T>::exact) {
            T lhs = sup_distance(trace.steps[k].values, v_star);
            T rhs = sup_distance(trace.steps[0].values, v_star);
            for (std::size_t j = 0; j < k; ++j) rhs *= game.gamma();
            if (lhs > rhs) audit.geometric = false;
        } else if (gap > std::pow(gamma, static_cast<double>(k)) * initial * (1.0 + 1e-9)) {
            audit.geometric = false;
        }
    }

    for (std::size_t k = 0; k < N; ++k)
        for (std::size_t l = k + 1; l < N; ++l) {
            auto rep = check_gap_lemmas(game, trace.steps[k].profile(), trace.steps[l].profile(), pi_star);
            ++audit.gap_triples;
            for (const auto& c : rep.checks) {
                if (c.status != LemmaStatus::skipped) ++audit.gap_checks_applied;
                if (c.status == LemmaStatus::violated) ++audit.gap_violations;
            }
        }

    audit.elimination = check_action_elimination(trace, game);
    audit.bound = bound_report(trace, game);
    audit.optimal = check_optimality(game, pi_star).optimal;
    return audit;
}

}  // namespace tbsg
