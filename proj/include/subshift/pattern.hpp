#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "subshift/alphabet.hpp"

namespace subshift {

// A finite word is a sequence of letter indices. Lexicographic order on
// the index sequence is the canonical order used for all deterministic
// enumerations.
using Word = std::vector<Letter>;

// Pattern on a block ∏ [0, dims[j]). Cells are stored row-major with axis 0
// fastest, so cell (x0, x1, ...) sits at x0 + dims[0]*(x1 + dims[1]*(...)).
// For d = 1 this is exactly a Word.
struct BlockPattern {
  std::vector<int> dims;
  std::vector<Letter> cells;

  BlockPattern() = default;
  BlockPattern(std::vector<int> d, std::vector<Letter> c) : dims(std::move(d)), cells(std::move(c)) {
    if (dims.empty()) throw std::invalid_argument("pattern needs at least one axis");
    long long n = 1;
    for (int e : dims) {
      if (e <= 0) throw std::invalid_argument("pattern extents must be positive");
      n *= e;
    }
    if (static_cast<long long>(cells.size()) != n)
      throw std::invalid_argument("cell count does not match extents");
  }

  static BlockPattern from_word(const Word& w) {
    if (w.empty()) throw std::invalid_argument("empty word is not a pattern");
    return BlockPattern({static_cast<int>(w.size())}, w);
  }

  int dim() const { return static_cast<int>(dims.size()); }
  std::size_t size() const { return cells.size(); }

  Word to_word() const {
    if (dim() != 1) throw std::invalid_argument("not a one-dimensional pattern");
    return cells;
  }

  std::size_t offset_of(const std::vector<int>& coords) const {
    std::size_t off = 0, stride = 1;
    for (std::size_t j = 0; j < dims.size(); ++j) {
      if (coords[j] < 0 || coords[j] >= dims[j]) throw std::out_of_range("pattern coordinate");
      off += static_cast<std::size_t>(coords[j]) * stride;
      stride *= static_cast<std::size_t>(dims[j]);
    }
    return off;
  }

  Letter at(const std::vector<int>& coords) const { return cells[offset_of(coords)]; }
  Letter at(int x) const { return cells[offset_of({x})]; }
  Letter at(int x, int y) const { return cells[offset_of({x, y})]; }

  // Sub-block of the given shape anchored at offset (componentwise).
  BlockPattern sub_block(const std::vector<int>& offset, const std::vector<int>& shape) const {
    std::vector<Letter> out;
    long long n = 1;
    for (std::size_t j = 0; j < dims.size(); ++j) {
      if (offset[j] < 0 || offset[j] + shape[j] > dims[j]) throw std::out_of_range("sub-block");
      n *= shape[j];
    }
    out.reserve(static_cast<std::size_t>(n));
    std::vector<int> c(dims.size(), 0);
    for (;;) {
      std::vector<int> abs(dims.size());
      for (std::size_t j = 0; j < dims.size(); ++j) abs[j] = offset[j] + c[j];
      out.push_back(at(abs));
      std::size_t j = 0;
      while (j < c.size() && ++c[j] == shape[j]) c[j++] = 0;
      if (j == c.size()) break;
    }
    return BlockPattern(shape, std::move(out));
  }

  friend bool operator==(const BlockPattern& a, const BlockPattern& b) {
    return a.dims == b.dims && a.cells == b.cells;
  }
  friend bool operator<(const BlockPattern& a, const BlockPattern& b) {
    if (a.dims != b.dims) return a.dims < b.dims;
    return a.cells < b.cells;
  }
};

// Reading-order key: rows top to bottom for d = 2 (highest last axis first),
// plain left-to-right for d = 1. Used wherever an enumeration should match
// how patterns are written down.
inline std::vector<Letter> display_key(const BlockPattern& p) {
  if (p.dim() == 1) return p.cells;
  std::vector<Letter> key;
  key.reserve(p.cells.size());
  std::vector<int> c(p.dims.size(), 0);
  // iterate axes 1..d-1 from top (max) to bottom, axis 0 left to right
  std::vector<int> row(p.dims.size(), 0);
  std::size_t rows = p.cells.size() / static_cast<std::size_t>(p.dims[0]);
  for (std::size_t r = 0; r < rows; ++r) {
    std::size_t rem = rows - 1 - r;
    for (std::size_t j = 1; j < p.dims.size(); ++j) {
      row[j] = static_cast<int>(rem % p.dims[j]);
      rem /= p.dims[j];
    }
    for (int x = 0; x < p.dims[0]; ++x) {
      row[0] = x;
      key.push_back(p.at(row));
    }
  }
  return key;
}

// Strongly periodic configuration: the tile repeated over the whole lattice,
// tile cell (i mod dims) at site i.
struct PeriodicConfiguration {
  BlockPattern tile;

  explicit PeriodicConfiguration(BlockPattern t) : tile(std::move(t)) {}

  int dim() const { return tile.dim(); }

  Letter at(const std::vector<long>& site) const {
    std::vector<int> c(tile.dims.size());
    for (std::size_t j = 0; j < tile.dims.size(); ++j) {
      long m = site[j] % tile.dims[j];
      if (m < 0) m += tile.dims[j];
      c[j] = static_cast<int>(m);
    }
    return tile.at(c);
  }

  Letter at(long x) const { return at(std::vector<long>{x}); }

  // Window [lo, lo+shape) sampled from the periodic extension.
  BlockPattern window(const std::vector<long>& lo, const std::vector<int>& shape) const {
    std::vector<Letter> out;
    long long n = 1;
    for (int e : shape) n *= e;
    out.reserve(static_cast<std::size_t>(n));
    std::vector<int> c(shape.size(), 0);
    for (;;) {
      std::vector<long> site(shape.size());
      for (std::size_t j = 0; j < shape.size(); ++j) site[j] = lo[j] + c[j];
      out.push_back(at(site));
      std::size_t j = 0;
      while (j < c.size() && ++c[j] == shape[j]) c[j++] = 0;
      if (j == c.size()) break;
    }
    return BlockPattern(shape, std::move(out));
  }
};

// --- text helpers -----------------------------------------------------------

inline std::string format_word(const Alphabet& a, const Word& w) {
  std::string out;
  for (Letter l : w) out += a.name(l);
  return out;
}

inline Word parse_word(const Alphabet& a, const std::string& text) {
  if (!a.single_char_names())
    throw std::invalid_argument("text form needs single-character letter names");
  Word w;
  w.reserve(text.size());
  for (char c : text) w.push_back(a.index(std::string(1, c)));
  return w;
}

// d = 1: the word itself; d = 2: rows top to bottom separated by '/'.
inline std::string format_pattern(const Alphabet& a, const BlockPattern& p) {
  if (p.dim() == 1) return format_word(a, p.cells);
  if (p.dim() != 2) throw std::invalid_argument("text form supports d <= 2");
  std::string out;
  for (int y = p.dims[1] - 1; y >= 0; --y) {
    if (y != p.dims[1] - 1) out += '/';
    for (int x = 0; x < p.dims[0]; ++x) out += a.name(p.at(x, y));
  }
  return out;
}

inline BlockPattern parse_pattern(const Alphabet& a, const std::string& text) {
  if (text.find('/') == std::string::npos) return BlockPattern::from_word(parse_word(a, text));
  std::vector<std::string> rows;
  std::string cur;
  for (char c : text) {
    if (c == '/') {
      rows.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  rows.push_back(cur);
  const int ny = static_cast<int>(rows.size());
  const int nx = static_cast<int>(rows.front().size());
  for (const auto& r : rows)
    if (static_cast<int>(r.size()) != nx) throw std::invalid_argument("ragged pattern rows");
  std::vector<Letter> cells(static_cast<std::size_t>(nx) * ny);
  for (int r = 0; r < ny; ++r) {
    const int y = ny - 1 - r;  // first row in the text is the top row
    for (int x = 0; x < nx; ++x)
      cells[static_cast<std::size_t>(y) * nx + x] = a.index(std::string(1, rows[r][x]));
  }
  return BlockPattern({nx, ny}, std::move(cells));
}

}  // namespace subshift
