#pragma once

// Game file format (JSON):
//
//   {"n": 2, "gamma": "0.5", "owner": [1, 2],
//    "actions": [{"source": 0, "cost": "0", "transition": {"1": "1"}}, ...]}
//
// Costs, probabilities and gamma are strings holding a decimal ("0.25",
// "-3", "1e-3") or a fraction ("1/3"). Indices are 0-based. Action ids are
// positions in "actions".

#include "tbsg/game.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace tbsg {

class GameParseError : public std::runtime_error {
public:
    enum class Kind { syntax, semantic };

    GameParseError(Kind kind, const std::string& what, ValidationReport violations = {})
        : std::runtime_error(what), kind_(kind), violations_(std::move(violations)) {}

    Kind kind() const { return kind_; }
    const ValidationReport& violations() const { return violations_; }

private:
    Kind kind_;
    ValidationReport violations_;
};

/// Builds the game without validating it. Throws only syntax errors.
template <class T>
BasicGame<T> parse_game_unchecked(std::string_view text);

/// Parses and validates; semantic errors carry the violation list.
template <class T>
BasicGame<T> parse_game(std::string_view text) {
    auto game = parse_game_unchecked<T>(text);
    auto report = validate(game);
    if (!report.empty()) {
        std::string what = "invalid game: " + report.front().message;
        if (report.size() > 1) what += " (and " + std::to_string(report.size() - 1) + " more)";
        throw GameParseError(GameParseError::Kind::semantic, what, std::move(report));
    }
    return game;
}

template <class T>
std::string serialize_game(const BasicGame<T>& game);

template <class T>
BasicGame<T> load_game(const std::string& path);

void write_text_file(const std::string& path, std::string_view content);
std::string read_text_file(const std::string& path);

/// Profile files are JSON arrays of global action ids, one per state.
/// Entries may be null for states the caller does not care about.
std::vector<ActionId> parse_action_list(std::string_view text);

extern template BasicGame<double> parse_game_unchecked<double>(std::string_view);
extern template BasicGame<Rational> parse_game_unchecked<Rational>(std::string_view);
extern template std::string serialize_game<double>(const BasicGame<double>&);
extern template std::string serialize_game<Rational>(const BasicGame<Rational>&);
extern template BasicGame<double> load_game<double>(const std::string&);
extern template BasicGame<Rational> load_game<Rational>(const std::string&);

}  // namespace tbsg
