#include "tbsg/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tbsg {
namespace {

std::uint64_t uniform_in(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
    return lo + uniform_below(rng, hi - lo + 1);
}

mpz_class probability_scale() {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, kProbabilityDigits);
    return scale;
}

/// Splits one unit over the weights on a 10^-9 grid, every share positive.
std::vector<Rational> normalize(const std::vector<std::uint64_t>& weights) {
    const std::uint64_t units = probability_scale().get_ui();
    const std::uint64_t total = std::accumulate(weights.begin(), weights.end(), std::uint64_t{0});
    std::vector<std::uint64_t> share(weights.size());
    std::uint64_t assigned = 0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        share[k] = std::max<std::uint64_t>(1, weights[k] * units / total);
        assigned += share[k];
    }
    // Rounding leftovers go to the heaviest entry (first on ties).
    auto heaviest = static_cast<std::size_t>(
        std::distance(weights.begin(), std::max_element(weights.begin(), weights.end())));
    share[heaviest] += units - assigned;
    std::vector<Rational> out;
    for (auto s : share) {
        Rational p(mpz_class(static_cast<unsigned long>(s)), probability_scale());
        p.canonicalize();
        out.push_back(p);
    }
    return out;
}

Rational grid_cost(long long thousandths) {
    Rational c(mpz_class(static_cast<long>(thousandths)), mpz_class(1000));
    c.canonicalize();
    return c;
}

Rational parse_gamma(const std::string& text) {
    Rational g;
    try {
        g = Num<Rational>::parse(text);
    } catch (const NumberFormatError& e) {
        throw PreconditionError(std::string("gamma: ") + e.what());
    }
    if (!(g > 0 && g < 1)) throw PreconditionError("gamma out of range: must satisfy 0 < gamma < 1, got " + text);
    return g;
}

std::vector<int> alternating_owners(std::size_t n) {
    std::vector<int> owner(n);
    for (std::size_t i = 0; i < n; ++i) owner[i] = i % 2 == 0 ? 1 : 2;
    return owner;
}

}  // namespace

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound <= 1) return 0;
    // Draws at or above the largest multiple of bound below 2^64 are rejected.
    const std::uint64_t excess = (UINT64_MAX % bound + 1) % bound;  // 2^64 mod bound
    const std::uint64_t limit = std::uint64_t{0} - excess;
    for (;;) {
        std::uint64_t x = rng();
        if (excess == 0 || x < limit) return x % bound;
    }
}

void validate_spec(const GenSpec& spec) {
    if (spec.n == 0) throw PreconditionError("n must be at least 1");
    if (spec.actions_per_state.lo == 0 || spec.actions_per_state.lo > spec.actions_per_state.hi)
        throw PreconditionError("actions per state must satisfy 1 <= lo <= hi");
    if (spec.support_size.lo == 0 || spec.support_size.lo > spec.support_size.hi)
        throw PreconditionError("support size must satisfy 1 <= lo <= hi");
    if (spec.support_size.hi > spec.n)
        throw PreconditionError("support size " + std::to_string(spec.support_size.hi) +
                                " exceeds the state count " + std::to_string(spec.n));
    if (spec.support_size.hi > 1'000'000) throw PreconditionError("support size too large");
    parse_gamma(spec.gamma);
    if (!(spec.cost_lo <= spec.cost_hi) || !std::isfinite(spec.cost_lo) || !std::isfinite(spec.cost_hi))
        throw PreconditionError("cost range must satisfy lo <= hi");
    if (std::fabs(spec.cost_lo) > 1e12 || std::fabs(spec.cost_hi) > 1e12)
        throw PreconditionError("cost range too wide");
    if (spec.owner_rule == OwnerRule::random &&
        !(spec.player2_probability >= 0.0 && spec.player2_probability <= 1.0))
        throw PreconditionError("player-2 probability must lie in [0, 1]");
}

ExactGame generate(const GenSpec& spec) {
    validate_spec(spec);
    std::mt19937_64 rng(spec.seed);
    const std::size_t n = spec.n;

    std::vector<int> owner;
    switch (spec.owner_rule) {
        case OwnerRule::alternate: owner = alternating_owners(n); break;
        case OwnerRule::mdp: owner.assign(n, 1); break;
        case OwnerRule::random:
            owner.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                // 53 random bits as a uniform double in [0, 1).
                double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
                owner[i] = u < spec.player2_probability ? 2 : 1;
            }
            break;
    }

    const auto cost_lo = static_cast<long long>(std::llround(spec.cost_lo * 1000.0));
    const auto cost_hi = static_cast<long long>(std::llround(spec.cost_hi * 1000.0));
    std::vector<Action<Rational>> actions;
    std::vector<std::size_t> pool(n);
    for (StateId i = 0; i < n; ++i) {
        auto count = uniform_in(rng, spec.actions_per_state.lo, spec.actions_per_state.hi);
        for (std::uint64_t k = 0; k < count; ++k) {
            Action<Rational> act;
            act.source = i;
            act.cost = grid_cost(cost_lo + static_cast<long long>(uniform_below(
                                               rng, static_cast<std::uint64_t>(cost_hi - cost_lo) + 1)));
            auto support = uniform_in(rng, spec.support_size.lo, spec.support_size.hi);
            std::iota(pool.begin(), pool.end(), std::size_t{0});
            for (std::size_t s = 0; s < support; ++s) {
                auto pick = s + uniform_below(rng, n - s);
                std::swap(pool[s], pool[pick]);
            }
            std::vector<std::size_t> targets(pool.begin(), pool.begin() + static_cast<long>(support));
            std::sort(targets.begin(), targets.end());
            std::vector<std::uint64_t> weights(support);
            for (auto& w : weights) w = uniform_in(rng, 1, 1000);
            auto probs = normalize(weights);
            for (std::size_t s = 0; s < support; ++s) act.transition.push_back({targets[s], probs[s]});
            actions.push_back(std::move(act));
        }
    }
    return ExactGame(n, parse_gamma(spec.gamma), std::move(owner), std::move(actions));
}

ExactGame family(const std::string& name, const FamilyParams& params) {
    const Rational gamma = parse_gamma(params.gamma);
    std::vector<Action<Rational>> actions;

    if (name == "chain") {
        const std::size_t n = params.n;
        if (n == 0) throw PreconditionError("chain needs at least one state");
        for (StateId i = 0; i + 1 < n; ++i) {
            actions.push_back({i, Rational(1), {{i, Rational(1, 2)}, {i + 1, Rational(1, 2)}}});
            actions.push_back({i, Rational(2), {{i, Rational(1, 4)}, {i + 1, Rational(3, 4)}}});
        }
        actions.push_back({n - 1, Rational(0), {{n - 1, Rational(1)}}});
        return ExactGame(n, gamma, alternating_owners(n), std::move(actions));
    }

    if (name == "complete") {
        const std::size_t n = params.n;
        if (n == 0 || params.actions == 0) throw PreconditionError("complete needs n >= 1 and actions >= 1");
        std::mt19937_64 rng(params.seed);
        for (StateId i = 0; i < n; ++i)
            for (std::size_t k = 0; k < params.actions; ++k) {
                Action<Rational> act{i, grid_cost(static_cast<long long>(uniform_below(rng, 10001))), {}};
                std::vector<std::uint64_t> weights(n);
                for (auto& w : weights) w = uniform_in(rng, 1, 1000);
                auto probs = normalize(weights);
                for (StateId j = 0; j < n; ++j) act.transition.push_back({j, probs[j]});
                actions.push_back(std::move(act));
            }
        return ExactGame(n, gamma, alternating_owners(n), std::move(actions));
    }

    if (name == "mdp-grid") {
        const std::size_t w = params.width;
        const std::size_t h = params.height;
        if (w == 0 || h == 0) throw PreconditionError("mdp-grid needs positive width and height");
        const std::size_t n = w * h;
        const StateId goal = n - 1;
        for (StateId s = 0; s < n; ++s) {
            if (s == goal) {
                actions.push_back({s, Rational(0), {{s, Rational(1)}}});
                continue;
            }
            const std::size_t r = s / w;
            const std::size_t c = s % w;
            std::vector<StateId> moves;
            if (r > 0) moves.push_back(s - w);
            if (r + 1 < h) moves.push_back(s + w);
            if (c > 0) moves.push_back(s - 1);
            if (c + 1 < w) moves.push_back(s + 1);
            for (StateId t : moves)
                actions.push_back({s, Rational(1), {{s, Rational(1, 5)}, {t, Rational(4, 5)}}});
        }
        return ExactGame(n, gamma, std::vector<int>(n, 1), std::move(actions));
    }

    throw PreconditionError("unknown family '" + name + "' (expected chain, complete or mdp-grid)");
}

}  // namespace tbsg
