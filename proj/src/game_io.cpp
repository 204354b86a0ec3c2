#include "magt/game_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "magt/errors.hpp"

namespace magt {

namespace {

using nlohmann::json;

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("game file is not valid JSON: ") + e.what());
  }
}

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open game file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

std::vector<std::string> string_list(const json& j, const std::string& field) {
  if (!j.is_array()) throw ConfigError("field '" + field + "' must be an array");
  std::vector<std::string> out;
  for (const auto& item : j) {
    if (!item.is_string()) {
      throw ConfigError("field '" + field + "' must contain strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

Game game_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("game document must be a JSON object");
  if (!doc.contains("players")) throw ConfigError("missing field 'players'");
  if (!doc.contains("actions")) throw ConfigError("missing field 'actions'");
  if (!doc.contains("payoffs")) throw ConfigError("missing field 'payoffs'");

  std::vector<std::string> players = string_list(doc.at("players"), "players");
  if (!doc.at("actions").is_array() || doc.at("actions").size() != players.size()) {
    throw ConfigError("'actions' must list one action array per player");
  }
  std::vector<std::vector<std::string>> actions;
  for (const auto& a : doc.at("actions")) actions.push_back(string_list(a, "actions"));

  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (actions[i].empty()) {
      throw ConfigError("player '" + players[i] + "' has an empty action list");
    }
  }

  std::size_t num_profiles = 1;
  for (const auto& a : actions) num_profiles *= a.size();

  // Build an index skeleton so we can name missing profiles in errors.
  std::vector<double> payoffs(num_profiles * players.size(), 0.0);
  std::vector<bool> seen(num_profiles, false);

  Game skeleton(players, actions, payoffs);

  if (!doc.at("payoffs").is_array()) throw ConfigError("'payoffs' must be an array");
  for (const auto& rec : doc.at("payoffs")) {
    if (!rec.is_object() || !rec.contains("profile") || !rec.contains("u")) {
      throw ConfigError("each payoff record needs 'profile' and 'u'");
    }
    std::vector<std::string> names = string_list(rec.at("profile"), "profile");
    if (names.size() != players.size()) {
      throw ConfigError("payoff profile has wrong length: " + rec.dump());
    }
    PureProfile profile(players.size());
    for (std::size_t i = 0; i < names.size(); ++i) {
      int idx = skeleton.action_index(static_cast<int>(i), names[i]);
      if (idx < 0) {
        throw ConfigError("unknown action '" + names[i] + "' for player '" +
                          players[i] + "'");
      }
      profile[i] = idx;
    }
    const auto& u = rec.at("u");
    if (!u.is_array() || u.size() != players.size()) {
      throw ConfigError("payoff vector 'u' must have one entry per player");
    }
    std::size_t flat = skeleton.profile_index(profile);
    if (seen[flat]) throw ConfigError("duplicate payoff record for profile " + rec.at("profile").dump());
    seen[flat] = true;
    for (std::size_t i = 0; i < players.size(); ++i) {
      if (!u[i].is_number()) throw ConfigError("payoffs must be numbers");
      payoffs[flat * players.size() + i] = u[i].get<double>();
    }
  }

  std::string missing;
  int missing_count = 0;
  for (std::size_t idx = 0; idx < num_profiles; ++idx) {
    if (seen[idx]) continue;
    ++missing_count;
    if (missing_count <= 8) {
      PureProfile p = skeleton.profile_at(idx);
      missing += " (";
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) missing += ",";
        missing += actions[i][static_cast<std::size_t>(p[i])];
      }
      missing += ")";
    }
  }
  if (missing_count > 0) {
    throw ConfigError("payoff tensor incomplete, " + std::to_string(missing_count) +
                      " profile(s) missing:" + missing +
                      (missing_count > 8 ? " ..." : ""));
  }

  return Game(std::move(players), std::move(actions), std::move(payoffs));
}

SymmetricGame symmetric_from_json(const json& doc) {
  if (!doc.is_object() || !doc.value("symmetric", false)) {
    throw ConfigError("document is not a symmetric game (needs \"symmetric\": true)");
  }
  if (!doc.contains("actions")) throw ConfigError("missing field 'actions'");
  if (!doc.contains("payoffs")) throw ConfigError("missing field 'payoffs'");
  std::vector<std::string> actions = string_list(doc.at("actions"), "actions");
  if (actions.empty()) throw ConfigError("symmetric game has an empty action list");

  const std::size_t n = actions.size();
  std::vector<double> payoffs(n * n, 0.0);
  std::vector<bool> seen(n * n, false);

  auto index_of = [&](const std::string& name) {
    for (std::size_t a = 0; a < n; ++a) {
      if (actions[a] == name) return static_cast<int>(a);
    }
    throw ConfigError("unknown action '" + name + "' in symmetric game");
  };

  if (!doc.at("payoffs").is_array()) throw ConfigError("'payoffs' must be an array");
  for (const auto& rec : doc.at("payoffs")) {
    if (!rec.is_object() || !rec.contains("row") || !rec.contains("col") ||
        !rec.contains("u")) {
      throw ConfigError("each symmetric payoff record needs 'row', 'col', 'u'");
    }
    int r = index_of(rec.at("row").get<std::string>());
    int c = index_of(rec.at("col").get<std::string>());
    if (!rec.at("u").is_number()) throw ConfigError("payoffs must be numbers");
    std::size_t flat = static_cast<std::size_t>(r) * n + static_cast<std::size_t>(c);
    if (seen[flat]) {
      throw ConfigError("duplicate payoff record for (" + actions[static_cast<std::size_t>(r)] +
                        "," + actions[static_cast<std::size_t>(c)] + ")");
    }
    seen[flat] = true;
    payoffs[flat] = rec.at("u").get<double>();
  }

  std::string missing;
  int missing_count = 0;
  for (std::size_t idx = 0; idx < n * n; ++idx) {
    if (seen[idx]) continue;
    ++missing_count;
    if (missing_count <= 8) {
      missing += " (" + actions[idx / n] + "," + actions[idx % n] + ")";
    }
  }
  if (missing_count > 0) {
    throw ConfigError("symmetric payoff matrix incomplete, " +
                      std::to_string(missing_count) + " pair(s) missing:" + missing +
                      (missing_count > 8 ? " ..." : ""));
  }

  return SymmetricGame(std::move(actions), std::move(payoffs));
}

}  // namespace

Game load_game(const std::string& text) {
  json doc = parse_document(text);
  if (doc.is_object() && doc.value("symmetric", false)) {
    return embed_symmetric(symmetric_from_json(doc));
  }
  return game_from_json(doc);
}

Game load_game_file(const std::string& path) {
  json doc = parse_file(path);
  if (doc.is_object() && doc.value("symmetric", false)) {
    return embed_symmetric(symmetric_from_json(doc));
  }
  return game_from_json(doc);
}

SymmetricGame load_symmetric_game(const std::string& text) {
  return symmetric_from_json(parse_document(text));
}

SymmetricGame load_symmetric_game_file(const std::string& path) {
  return symmetric_from_json(parse_file(path));
}

bool is_symmetric_document(const std::string& text) {
  json doc = parse_document(text);
  return doc.is_object() && doc.value("symmetric", false);
}

std::string save_game(const Game& game) {
  json doc;
  doc["players"] = game.player_names();
  json actions = json::array();
  for (int i = 0; i < game.num_players(); ++i) actions.push_back(game.action_names(i));
  doc["actions"] = actions;
  json payoffs = json::array();
  for (std::size_t idx = 0; idx < game.num_profiles(); ++idx) {
    PureProfile p = game.profile_at(idx);
    json rec;
    json names = json::array();
    for (int i = 0; i < game.num_players(); ++i) {
      names.push_back(game.action_name(i, p[static_cast<std::size_t>(i)]));
    }
    rec["profile"] = names;
    std::span<const double> u = game.utility(p);
    rec["u"] = std::vector<double>(u.begin(), u.end());
    payoffs.push_back(rec);
  }
  doc["payoffs"] = payoffs;
  return doc.dump(2) + "\n";
}

std::string save_symmetric_game(const SymmetricGame& sym) {
  json doc;
  doc["symmetric"] = true;
  doc["actions"] = sym.action_names();
  json payoffs = json::array();
  for (int r = 0; r < sym.num_actions(); ++r) {
    for (int c = 0; c < sym.num_actions(); ++c) {
      payoffs.push_back({{"row", sym.action_name(r)},
                         {"col", sym.action_name(c)},
                         {"u", sym.payoff(r, c)}});
    }
  }
  doc["payoffs"] = payoffs;
  return doc.dump(2) + "\n";
}

}  // namespace magt
