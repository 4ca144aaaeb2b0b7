#include "tbsg/game_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace tbsg {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void syntax(const std::string& what) {
    throw GameParseError(GameParseError::Kind::syntax, what);
}

const json& field(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) syntax(where + ": missing field \"" + key + "\"");
    return *it;
}

std::size_t index_of(const json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<long long>() < 0)
        syntax(where + ": expected a non-negative integer");
    return j.get<std::size_t>();
}

template <class T>
T number_of(const json& j, const std::string& where) {
    // Strings are the documented form; bare JSON numbers are tolerated.
    std::string text;
    if (j.is_string())
        text = j.get<std::string>();
    else if (j.is_number())
        text = j.dump();
    else
        syntax(where + ": expected a decimal string");
    try {
        return Num<T>::parse(text);
    } catch (const NumberFormatError& e) {
        syntax(where + ": " + e.what());
    }
}

}  // namespace

template <class T>
BasicGame<T> parse_game_unchecked(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        syntax(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) syntax("game document must be a JSON object");

    std::size_t n = index_of(field(doc, "n", "game"), "n");
    T gamma = number_of<T>(field(doc, "gamma", "game"), "gamma");

    const json& owner_json = field(doc, "owner", "game");
    if (!owner_json.is_array()) syntax("owner: expected an array");
    std::vector<int> owner;
    for (const auto& o : owner_json) {
        if (!o.is_number_integer()) syntax("owner: entries must be integers 1 or 2");
        owner.push_back(o.get<int>());
    }

    const json& actions_json = field(doc, "actions", "game");
    if (!actions_json.is_array()) syntax("actions: expected an array");
    std::vector<Action<T>> actions;
    for (std::size_t a = 0; a < actions_json.size(); ++a) {
        const json& aj = actions_json[a];
        const std::string where = "actions[" + std::to_string(a) + "]";
        if (!aj.is_object()) syntax(where + ": expected an object");
        Action<T> act;
        act.source = index_of(field(aj, "source", where), where + ".source");
        act.cost = number_of<T>(field(aj, "cost", where), where + ".cost");
        const json& tj = field(aj, "transition", where);
        if (!tj.is_object()) syntax(where + ".transition: expected an object");
        for (const auto& [key, value] : tj.items()) {
            std::size_t target = 0;
            try {
                std::size_t used = 0;
                target = std::stoul(key, &used);
                if (used != key.size()) throw std::invalid_argument(key);
            } catch (const std::exception&) {
                syntax(where + ".transition: state key '" + key + "' is not an index");
            }
            act.transition.push_back({target, number_of<T>(value, where + ".transition." + key)});
        }
        actions.push_back(std::move(act));
    }
    return BasicGame<T>(n, std::move(gamma), std::move(owner), std::move(actions));
}

template <class T>
std::string serialize_game(const BasicGame<T>& game) {
    ordered_json doc;
    doc["n"] = game.num_states();
    doc["gamma"] = Num<T>::format(game.gamma());
    doc["owner"] = game.owners();
    ordered_json actions = ordered_json::array();
    for (const auto& a : game.actions()) {
        ordered_json aj;
        aj["source"] = a.source;
        aj["cost"] = Num<T>::format(a.cost);
        ordered_json tj = ordered_json::object();
        for (const auto& t : a.transition) tj[std::to_string(t.target)] = Num<T>::format(t.probability);
        aj["transition"] = std::move(tj);
        actions.push_back(std::move(aj));
    }
    doc["actions"] = std::move(actions);

    // One action per line keeps generated files diffable.
    std::ostringstream out;
    out << "{\n  \"n\": " << doc["n"].dump() << ",\n  \"gamma\": " << doc["gamma"].dump()
        << ",\n  \"owner\": " << doc["owner"].dump() << ",\n  \"actions\": [";
    for (std::size_t a = 0; a < doc["actions"].size(); ++a)
        out << (a == 0 ? "\n    " : ",\n    ") << doc["actions"][a].dump();
    out << (doc["actions"].empty() ? "]\n}\n" : "\n  ]\n}\n");
    return out.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

template <class T>
BasicGame<T> load_game(const std::string& path) {
    return parse_game<T>(read_text_file(path));
}

std::vector<ActionId> parse_action_list(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("malformed profile: ") + e.what());
    }
    if (doc.is_object() && doc.contains("profile")) doc = doc["profile"];
    if (!doc.is_array()) throw std::runtime_error("malformed profile: expected an array of action ids");
    std::vector<ActionId> out;
    for (const auto& e : doc) {
        if (e.is_null())
            out.push_back(kNoAction);
        else if (e.is_number_integer() && e.get<long long>() >= 0)
            out.push_back(e.get<ActionId>());
        else
            throw std::runtime_error("malformed profile: entries must be action ids or null");
    }
    return out;
}

template BasicGame<double> parse_game_unchecked<double>(std::string_view);
template BasicGame<Rational> parse_game_unchecked<Rational>(std::string_view);
template std::string serialize_game<double>(const BasicGame<double>&);
template std::string serialize_game<Rational>(const BasicGame<Rational>&);
template BasicGame<double> load_game<double>(const std::string&);
template BasicGame<Rational> load_game<Rational>(const std::string&);

}  // namespace tbsg
