#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace subshift {

using Letter = std::uint8_t;

// Finite ordered set of symbol names. Letters are referred to by index
// everywhere else; the names only matter for I/O.
class Alphabet {
 public:
  Alphabet() = default;

  explicit Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw std::invalid_argument("alphabet must be non-empty");
    if (names_.size() > 255) throw std::invalid_argument("alphabet too large");
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i].empty()) throw std::invalid_argument("empty letter name");
      auto [it, fresh] = index_.emplace(names_[i], static_cast<Letter>(i));
      if (!fresh) throw std::invalid_argument("duplicate letter name: " + names_[i]);
    }
  }

  // Convenience for single-character alphabets: "ab" -> {a, b}.
  static Alphabet from_letters(const std::string& letters) {
    std::vector<std::string> names;
    names.reserve(letters.size());
    for (char c : letters) names.emplace_back(1, c);
    return Alphabet(std::move(names));
  }

  std::size_t size() const { return names_.size(); }
  const std::string& name(Letter i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }

  bool has(const std::string& name) const { return index_.count(name) > 0; }

  Letter index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw std::invalid_argument("unknown letter: " + name);
    return it->second;
  }

  // Text serialization requires unambiguous concatenation.
  bool single_char_names() const {
    for (const auto& n : names_)
      if (n.size() != 1) return false;
    return true;
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.names_ == b.names_; }
  friend bool operator!=(const Alphabet& a, const Alphabet& b) { return !(a == b); }

 private:
  std::vector<std::string> names_;
  std::map<std::string, Letter> index_;
};

}  // namespace subshift
