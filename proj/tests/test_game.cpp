#include "support.hpp"

#include <doctest.h>

using namespace tbsg;
using namespace tbsg::testing;

namespace {

bool has_kind(const ValidationReport& r, Violation::Kind k) {
    for (const auto& v : r)
        if (v.kind == k) return true;
    return false;
}

bool mentions(const ValidationReport& r, const std::string& text) {
    for (const auto& v : r)
        if (v.message.find(text) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("well-formed games validate cleanly") {
    CHECK(validate(one_state<double>()).empty());
    CHECK(validate(two_state<double>()).empty());
    CHECK(validate(two_state<Rational>()).empty());
}

TEST_CASE("actions are grouped by source in file order") {
    auto g = two_state<double>();
    CHECK(g.num_actions() == 3);
    CHECK(g.actions_at(0) == std::vector<ActionId>{kA2, kA1});
    CHECK(g.actions_at(1) == std::vector<ActionId>{kB});
    CHECK(g.profile_count() == 2);
    CHECK(g.states_of(Player::min) == std::vector<StateId>{0});
    CHECK(!g.is_mdp());
}

TEST_CASE("single-fault injection reports exactly the broken invariant") {
    using K = Violation::Kind;
    const std::vector<Action<double>> base{{0, 1.0, {{0, 0.5}, {1, 0.5}}}, {1, 2.0, {{0, 1.0}}}};
    const std::vector<int> owners{1, 2};
    REQUIRE(validate(Game(2, 0.5, owners, base)).empty());

    auto single = [](const ValidationReport& r, K k) { return r.size() == 1 && r.front().kind == k; };

    CHECK(single(validate(Game(2, 1.0, owners, base)), K::bad_gamma));
    CHECK(single(validate(Game(2, 0.0, owners, base)), K::bad_gamma));
    CHECK(single(validate(Game(2, 0.5, {1}, base)), K::owner_not_total));
    CHECK(single(validate(Game(2, 0.5, {1, 3}, base)), K::bad_owner));

    auto no_state1 = base;
    no_state1.pop_back();
    auto r = validate(Game(2, 0.5, owners, no_state1));
    CHECK(single(r, K::empty_action_set));
    CHECK(mentions(r, "empty action set at state 1"));

    auto short_row = base;
    short_row[0].transition = {{0, 0.5}, {1, 0.4}};
    r = validate(Game(2, 0.5, owners, short_row));
    CHECK(single(r, K::not_stochastic));
    CHECK(mentions(r, "action 0"));

    auto bad_target = base;
    bad_target[1].transition = {{2, 1.0}};
    CHECK(single(validate(Game(2, 0.5, owners, bad_target)), K::bad_target));

    auto negative = base;
    negative[0].transition = {{0, 1.5}, {1, -0.5}};
    CHECK(single(validate(Game(2, 0.5, owners, negative)), K::negative_probability));

    auto bad_source = base;
    bad_source.push_back({5, 0.0, {{0, 1.0}}});
    CHECK(single(validate(Game(2, 0.5, owners, bad_source)), K::bad_source));

    auto inf_cost = base;
    inf_cost[0].cost = std::numeric_limits<double>::infinity();
    CHECK(single(validate(Game(2, 0.5, owners, inf_cost)), K::non_finite));

    CHECK(has_kind(validate(Game(0, 0.5, {}, {})), K::bad_state_count));
}

TEST_CASE("stochasticity tolerance is 1e-12 in float mode and exact in rational mode") {
    std::vector<Action<double>> near{{0, 1.0, {{0, 1.0 - 5e-13}}}};
    CHECK(validate(Game(1, 0.5, {1}, near)).empty());
    std::vector<Action<double>> far{{0, 1.0, {{0, 1.0 - 5e-12}}}};
    CHECK(!validate(Game(1, 0.5, {1}, far)).empty());

    std::vector<Action<Rational>> tiny{{0, Rational(1), {{0, Rational(1) - Rational(1, 1000000000000000)}}}};
    CHECK(!validate(ExactGame(1, Rational(1, 2), {1}, tiny)).empty());
}

TEST_CASE("restrict selects rows and costs") {
    auto g = two_state<double>();
    auto sys = restrict_to(g, {kA1, kB});
    CHECK(sys.transitions(0, 0) == 0.0);
    CHECK(sys.transitions(0, 1) == 1.0);
    CHECK(sys.transitions(1, 0) == 0.0);
    CHECK(sys.transitions(1, 1) == 1.0);
    CHECK(sys.costs == std::vector<double>{0.0, 1.0});

    auto one = restrict_to(one_state<double>(), {0});
    CHECK(one.transitions(0, 0) == 1.0);
    CHECK(one.costs == std::vector<double>{1.0});

    CHECK_THROWS_AS(restrict_to(g, {kB, kB}), PreconditionError);
    CHECK_THROWS_AS(restrict_to(g, {kA1}), PreconditionError);
}

TEST_CASE("restricted rows are stochastic on generated games") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto g = random_game<double>(random_spec(5, 3, "0.9", seed));
        StrategyProfile p(5);
        for (StateId i = 0; i < 5; ++i) p[i] = g.actions_at(i)[seed % 3];
        auto sys = restrict_to(g, p);
        for (std::size_t r = 0; r < 5; ++r) {
            double s = 0.0;
            for (std::size_t c = 0; c < 5; ++c) {
                CHECK(sys.transitions(r, c) >= 0.0);
                s += sys.transitions(r, c);
            }
            CHECK(std::fabs(s - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("strategies and profiles") {
    auto g = two_state<double>();
    auto sigma = first_strategy(g, Player::min);
    auto tau = first_strategy(g, Player::max);
    CHECK(sigma.choice == std::vector<ActionId>{kA2, kNoAction});
    CHECK(combine(sigma, tau) == StrategyProfile{kA2, kB});
    CHECK(strategy_of(g, {kA1, kB}, Player::min).choice == std::vector<ActionId>{kA1, kNoAction});
    CHECK_THROWS_AS(require_strategy(g, Strategy{Player::min, {kB, kNoAction}}), PreconditionError);
    CHECK_THROWS_AS(require_strategy(g, Strategy{Player::min, {kA1, kB}}), PreconditionError);
}

TEST_CASE("game file round trip") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto exact = generate(random_spec(4, 2, "0.95", seed, OwnerRule::random));
        auto text = serialize_game(exact);
        CHECK(parse_game<Rational>(text) == exact);
        auto as_float = parse_game<double>(text);
        CHECK(as_float == convert_game<double>(exact));
        CHECK(serialize_game(as_float) == text);
    }
    auto g = one_state<Rational>();
    CHECK(parse_game<Rational>(serialize_game(g)) == g);
}

TEST_CASE("parse errors distinguish syntax from semantics") {
    auto kind_of = [](const std::string& text) {
        try {
            parse_game<double>(text);
        } catch (const GameParseError& e) {
            return std::pair(e.kind(), std::string(e.what()));
        }
        return std::pair(GameParseError::Kind::syntax, std::string("no error"));
    };
    auto [k1, m1] = kind_of("{\"n\": 1, ");
    CHECK(k1 == GameParseError::Kind::syntax);
    CHECK(m1 != "no error");
    auto [k2, m2] = kind_of(R"({"n": 1, "gamma": "1.0", "owner": [1],
        "actions": [{"source": 0, "cost": "1", "transition": {"0": "1"}}]})");
    CHECK(k2 == GameParseError::Kind::semantic);
    CHECK(m2.find("gamma out of range") != std::string::npos);
    auto [k3, m3] = kind_of(R"({"n": 2, "gamma": "0.5", "owner": [1],
        "actions": [{"source": 0, "cost": "1", "transition": {"0": "1"}},
                    {"source": 1, "cost": "1", "transition": {"1": "1"}}]})");
    CHECK(k3 == GameParseError::Kind::semantic);
    CHECK(m3.find("owner map not total") != std::string::npos);
    auto [k4, m4] = kind_of(R"({"n": 1, "gamma": "0.5", "owner": [1],
        "actions": [{"source": 0, "cost": "x", "transition": {"0": "1"}}]})");
    CHECK(k4 == GameParseError::Kind::syntax);
}

TEST_CASE("fractions are exact in rational mode") {
    auto g = parse_game<Rational>(R"({"n": 2, "gamma": "2/3", "owner": [1, 1],
        "actions": [{"source": 0, "cost": "1/3", "transition": {"0": "1/3", "1": "2/3"}},
                    {"source": 1, "cost": "0", "transition": {"1": "1"}}]})");
    CHECK(g.gamma() == Rational(2, 3));
    CHECK(g.action(0).transition[0].probability == Rational(1, 3));
}

TEST_CASE("profile files") {
    CHECK(parse_action_list("[1, 2]") == std::vector<ActionId>{1, 2});
    CHECK(parse_action_list("[null, 2]") == std::vector<ActionId>{kNoAction, 2});
    CHECK(parse_action_list(R"({"profile": [0]})") == std::vector<ActionId>{0});
    CHECK_THROWS(parse_action_list("[-1]"));
    CHECK_THROWS(parse_action_list("nope"));
}

TEST_CASE("fixture files match the in-code fixtures") {
    CHECK(load_game<Rational>(data_path("two_state.json")) == two_state<Rational>());
    CHECK(load_game<Rational>(data_path("one_state.json")) == one_state<Rational>());
}
