#pragma once

// Seeded instance generation.
//
// Randomness comes from std::mt19937_64 (the 64-bit Mersenne Twister, whose
// output sequence is fixed by the C++ standard) and is mapped to integer
// ranges by rejection sampling, never through <random> distributions, so
// the same GenSpec yields byte-identical games on every platform.
//
// Draw order for generate(): owners of states 0..n-1 (only for the random
// rule), then for each state in order: its action count, and per action the
// cost, the support size, the support targets and the support weights.

#include "tbsg/game.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace tbsg {

struct CountRange {
    std::size_t lo = 1;
    std::size_t hi = 1;
};

enum class OwnerRule { alternate, random, mdp };

struct GenSpec {
    std::size_t n = 1;
    CountRange actions_per_state{1, 1};
    CountRange support_size{1, 1};
    OwnerRule owner_rule = OwnerRule::alternate;
    /// Probability that a state belongs to player 2 under OwnerRule::random.
    double player2_probability = 0.5;
    /// Decimal string, kept textual so that exact mode sees the literal value.
    std::string gamma = "0.9";
    /// Costs are drawn uniformly from the 0.001 grid inside [cost_lo, cost_hi].
    double cost_lo = 0.0;
    double cost_hi = 10.0;
    std::uint64_t seed = 0;
};

/// Probabilities are emitted with this many decimal places and sum to 1
/// exactly at that precision.
inline constexpr int kProbabilityDigits = 9;

/// Throws PreconditionError on an infeasible spec.
void validate_spec(const GenSpec& spec);

ExactGame generate(const GenSpec& spec);

struct FamilyParams {
    std::size_t n = 3;
    std::size_t actions = 2;  // complete only
    std::size_t width = 3;    // mdp-grid only
    std::size_t height = 3;
    std::string gamma = "0.9";
    std::uint64_t seed = 0;  // complete only
};

/// chain:    state i < n-1 has two actions, {i: 1/2, i+1: 1/2} at cost 1 and
///           {i: 1/4, i+1: 3/4} at cost 2; the last state loops at cost 0.
///           Owners alternate starting with player 1.
/// complete: every action of every state spreads over all n states with
///           seeded weights; seeded costs in [0, 10]; owners alternate.
/// mdp-grid: width x height grid, all player 1. The last cell is an
///           absorbing goal at cost 0; every other cell can try to move to
///           each in-bounds neighbour (N, S, W, E order), reaching it with
///           probability 0.8 and staying put otherwise, at cost 1.
ExactGame family(const std::string& name, const FamilyParams& params);

/// Portable uniform integer in [0, bound).
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

}  // namespace tbsg
