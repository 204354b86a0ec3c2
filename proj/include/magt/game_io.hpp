#pragma once

#include <iosfwd>
#include <string>

#include "magt/game.hpp"

namespace magt {

// Game files are JSON documents:
//   { "players": ["p1","p2"],
//     "actions": [["A","B"],["A","B"]],
//     "payoffs": [ {"profile": ["A","B"], "u": [3,4]}, ... ] }
// A symmetric variant supplies the action list once:
//   { "symmetric": true, "actions": ["A","B"],
//     "payoffs": [ {"row":"A", "col":"B", "u": 1}, ... ] }
// load_game embeds symmetric documents into the 2-player form.
// Malformed documents and incomplete payoff tensors raise ConfigError.

Game load_game(const std::string& text);
Game load_game_file(const std::string& path);

SymmetricGame load_symmetric_game(const std::string& text);
SymmetricGame load_symmetric_game_file(const std::string& path);

bool is_symmetric_document(const std::string& text);

std::string save_game(const Game& game);
std::string save_symmetric_game(const SymmetricGame& sym);

}  // namespace magt
