#include "support.hpp"

#include <doctest.h>

using namespace tbsg;
using namespace tbsg::testing;

namespace {

/// Best counter-strategy by enumeration: among all player-2 strategies the
/// one whose profile value is componentwise maximal.
template <class T>
std::vector<T> oracle_counter_values(const BasicGame<T>& g, const Strategy& sigma) {
    std::vector<T> best;
    for_each_profile<T>(g, [&](const StrategyProfile& p) {
        for (StateId i = 0; i < g.num_states(); ++i)
            if (g.owner(i) == Player::min && p[i] != sigma.choice[i]) return;
        auto v = oracle_values(g, p);
        if (best.empty()) best = v;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] > best[i]) best[i] = v[i];
    });
    return best;
}

}  // namespace

TEST_CASE("bound arithmetic") {
    CHECK(elimination_window(2, 0.5) == doctest::Approx(3.0));
    CHECK(iteration_bound(2, 3, 0.5) == doctest::Approx(16.0));
    CHECK(elimination_window(10, 0.9) == doctest::Approx(65.5625).epsilon(1e-4));
    CHECK(iteration_bound(10, 30, 0.9) == doctest::Approx(2063.44).epsilon(1e-4));
}

TEST_CASE("counter-strategy on the two-state game") {
    auto g = two_state<Rational>();
    auto c = optimal_counter_strategy(g, Strategy{Player::min, {kA1, kNoAction}}, Player::max);
    CHECK(c.strategy.choice == std::vector<ActionId>{kNoAction, kB});
    CHECK(c.values == std::vector<Rational>{1, 2});
    CHECK_THROWS_AS(optimal_counter_strategy(g, Strategy{Player::min, {kA1, kNoAction}}, Player::min),
                    PreconditionError);
}

TEST_CASE("counter-strategies match enumeration") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto g = random_game<Rational>(random_spec(5, 2, "0.9", seed, OwnerRule::random));
        Strategy sigma = first_strategy(g, Player::min);
        for (StateId i : g.states_of(Player::min)) sigma.choice[i] = g.actions_at(i)[seed % 2];
        auto c = optimal_counter_strategy(g, sigma, Player::max);
        CHECK(c.values == oracle_counter_values(g, sigma));
    }
}

TEST_CASE("hand trace of strategy iteration from a2") {
    auto g = two_state<Rational>();
    auto [profile, trace] = strategy_iteration(g, first_strategy(g, Player::min));
    CHECK(profile == StrategyProfile{kA1, kB});
    CHECK(trace.iterations == 2);
    REQUIRE(trace.steps.size() == 3);
    CHECK(trace.steps[0].sigma.choice[0] == kA2);
    CHECK(trace.steps[0].values == std::vector<Rational>{6, 2});
    CHECK(trace.steps[1].sigma.choice[0] == kA1);
    CHECK(trace.steps[1].values == std::vector<Rational>{1, 2});
    CHECK(trace.steps[2].sigma == trace.steps[1].sigma);
    CHECK(trace.terminated_optimal);

    auto [fp, ft] = strategy_iteration(two_state<double>(), Strategy{Player::min, {kA1, kNoAction}});
    CHECK(fp == StrategyProfile{kA1, kB});
    CHECK(ft.iterations == 1);
}

TEST_CASE("strategy iteration reaches v* from every start") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto g = random_game<Rational>(random_spec(4, 2, "0.8", seed, OwnerRule::random));
        auto v_star = oracle_game_value(g);
        const auto p1 = g.states_of(Player::min);
        // Every player-1 start strategy.
        std::size_t starts = std::size_t{1} << p1.size();
        for (std::size_t mask = 0; mask < starts; ++mask) {
            Strategy s0 = first_strategy(g, Player::min);
            for (std::size_t k = 0; k < p1.size(); ++k) s0.choice[p1[k]] = g.actions_at(p1[k])[(mask >> k) & 1];
            auto [profile, trace] = strategy_iteration(g, s0);
            CHECK(trace.final_values() == v_star);
            CHECK(check_optimality(g, profile).optimal);
            CHECK(static_cast<double>(trace.iterations) <=
                  iteration_bound(4, g.num_actions(), Num<Rational>::to_double(g.gamma())));
        }
    }
}

TEST_CASE("float and exact strategy iteration agree") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto spec = random_spec(6, 3, "0.95", seed);
        auto eg = random_game<Rational>(spec);
        auto fg = random_game<double>(spec);
        auto [ep, et] = strategy_iteration(eg, first_strategy(eg, Player::min));
        auto [fp, ft] = strategy_iteration(fg, first_strategy(fg, Player::min));
        auto ev = to_doubles(et.final_values());
        CHECK(sup_distance(ev, ft.final_values()) <= float_slack(ev));
    }
}

TEST_CASE("iteration guard and bad starts") {
    auto g = two_state<Rational>();
    CHECK_THROWS_AS(strategy_iteration(g, Strategy{Player::max, {kNoAction, kB}}), PreconditionError);
    CHECK_THROWS_AS(strategy_iteration(g, first_strategy(g, Player::min), SIOptions{std::nullopt, 1}),
                    InternalError);
    auto fg = two_state<double>();
    CHECK_THROWS_AS(strategy_iteration(fg, first_strategy(fg, Player::min), SIOptions{std::nullopt, 1}),
                    NumericalStall);
}

TEST_CASE("Howard's algorithm matches strategy iteration on player-1 MDPs") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto g = random_game<Rational>(random_spec(5, 3, "0.9", seed, OwnerRule::mdp));
        auto sigma0 = first_strategy(g, Player::min);
        auto [sp, st] = strategy_iteration(g, sigma0);
        auto [hp, ht] = howard_policy_iteration(g, sigma0.choice);
        CHECK(sp == hp);
        REQUIRE(st.steps.size() == ht.steps.size());
        for (std::size_t k = 0; k < st.steps.size(); ++k) {
            CHECK(st.steps[k].sigma == ht.steps[k].sigma);
            CHECK(st.steps[k].values == ht.steps[k].values);
        }
    }
    auto small = BasicGame<Rational>(2, Rational(1, 2), {1, 1},
                                     {{0, Rational(3), {{0, Rational(1)}}},
                                      {0, Rational(0), {{1, Rational(1)}}},
                                      {1, Rational(1), {{1, Rational(1)}}}});
    auto [hp, ht] = howard_policy_iteration(small, {0, 2});
    CHECK(hp == StrategyProfile{1, 2});
    CHECK(ht.iterations == 2);
}

TEST_CASE("Howard's algorithm on a maximizing MDP") {
    auto g = BasicGame<Rational>(1, Rational(1, 2), {2},
                                 {{0, Rational(1), {{0, Rational(1)}}}, {0, Rational(2), {{0, Rational(1)}}}});
    auto [p, t] = howard_policy_iteration(g, {0});
    CHECK(p == StrategyProfile{1});
    CHECK(t.final_values() == std::vector<Rational>{4});
    CHECK_THROWS_AS(howard_policy_iteration(two_state<Rational>(), {kA1, kB}), PreconditionError);
}
