#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "subshift/errors.hpp"
#include "subshift/substitution.hpp"

namespace subshift {

// Substitution definition file:
//   { "alphabet": ["a","b"], "dim": 1, "rules": { "a": "ab", "b": "a" } }
// or for blocks, rows top to bottom:
//   { "alphabet": [...], "dim": 2, "rules": { "a": [["b","a"],["d","a"]], ... } }
// Unknown keys are rejected.
inline Substitution substitution_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("substitution file: expected an object");
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (key != "alphabet" && key != "dim" && key != "rules")
      throw ConfigError("substitution file: unknown key '" + key + "'");
  }
  if (!doc.contains("alphabet") || !doc.contains("dim") || !doc.contains("rules"))
    throw ConfigError("substitution file: needs alphabet, dim and rules");
  if (!doc["alphabet"].is_array()) throw ConfigError("substitution file: alphabet must be a list");
  std::vector<std::string> names;
  for (const auto& n : doc["alphabet"]) {
    if (!n.is_string()) throw ConfigError("substitution file: letters must be strings");
    names.push_back(n.get<std::string>());
  }
  Alphabet alphabet(names);
  if (!doc["dim"].is_number_integer()) throw ConfigError("substitution file: dim must be an integer");
  const int dim = doc["dim"].get<int>();
  if (dim < 1) throw ConfigError("substitution file: dim must be positive");
  if (!doc["rules"].is_object()) throw ConfigError("substitution file: rules must be an object");
  if (doc["rules"].size() != alphabet.size())
    throw ConfigError("substitution file: one rule per letter");

  std::vector<BlockPattern> images(alphabet.size(), BlockPattern({1}, {0}));
  for (const auto& [letter, rule] : doc["rules"].items()) {
    if (!alphabet.has(letter)) throw ConfigError("substitution file: rule for unknown letter " + letter);
    const Letter idx = alphabet.index(letter);
    if (dim == 1) {
      if (!rule.is_string()) throw ConfigError("substitution file: 1D rules are strings");
      try {
        images[idx] = BlockPattern::from_word(parse_word(alphabet, rule.get<std::string>()));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("substitution file: ") + e.what());
      }
    } else {
      if (!rule.is_array() || rule.empty())
        throw ConfigError("substitution file: block rules are row lists");
      const int ny = static_cast<int>(rule.size());
      int nx = -1;
      std::vector<std::vector<Letter>> rows;
      for (const auto& row : rule) {
        if (!row.is_array()) throw ConfigError("substitution file: block rows are letter lists");
        if (nx < 0) nx = static_cast<int>(row.size());
        if (static_cast<int>(row.size()) != nx)
          throw ConfigError("substitution file: ragged block rule");
        std::vector<Letter> letters;
        for (const auto& cell : row) {
          if (!cell.is_string()) throw ConfigError("substitution file: cells must be letters");
          if (!alphabet.has(cell.get<std::string>()))
            throw ConfigError("substitution file: unknown letter " + cell.get<std::string>());
          letters.push_back(alphabet.index(cell.get<std::string>()));
        }
        rows.push_back(std::move(letters));
      }
      std::vector<Letter> cells(static_cast<std::size_t>(nx) * ny);
      for (int r = 0; r < ny; ++r) {
        const int y = ny - 1 - r;  // first row in the file is the top row
        for (int x = 0; x < nx; ++x) cells[static_cast<std::size_t>(y) * nx + x] = rows[r][x];
      }
      if (dim != 2) throw ConfigError("substitution file: only dim 1 and 2 are supported");
      images[idx] = BlockPattern({nx, ny}, std::move(cells));
    }
  }
  try {
    return Substitution(alphabet, dim, std::move(images));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("substitution file: ") + e.what());
  }
}

inline Substitution load_substitution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open substitution file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("substitution file: ") + e.what());
  }
  return substitution_from_json(doc);
}

}  // namespace subshift
