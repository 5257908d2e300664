#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "subshift/debruijn.hpp"
#include "subshift/dictionary.hpp"
#include "subshift/errors.hpp"

namespace subshift {

// Letter-to-pattern map. For d = 1 image lengths may differ; for d >= 2 the
// images must share one block shape with every extent >= 2, which is what
// makes the letterwise action on configurations well defined.
struct Substitution {
  Alphabet alphabet;
  int dim = 1;
  std::vector<BlockPattern> images;  // indexed by letter

  Substitution() = default;
  Substitution(Alphabet a, int d, std::vector<BlockPattern> imgs)
      : alphabet(std::move(a)), dim(d), images(std::move(imgs)) {
    if (images.size() != alphabet.size()) throw std::invalid_argument("one image per letter");
    for (const auto& img : images) {
      if (img.dim() != dim) throw std::invalid_argument("image dimension mismatch");
      if (img.size() == 0) throw std::invalid_argument("empty image");
      for (Letter l : img.cells)
        if (l >= alphabet.size()) throw std::invalid_argument("image letter outside alphabet");
    }
    if (dim >= 2) {
      for (const auto& img : images) {
        if (img.dims != images[0].dims)
          throw std::invalid_argument("block substitution images must share one shape");
        for (int e : img.dims)
          if (e < 2) throw std::invalid_argument("block extents must be at least 2");
      }
    }
  }

  bool is_block() const {
    for (const auto& img : images)
      if (img.dims != images[0].dims) return false;
    return true;
  }

  const std::vector<int>& block_dims() const { return images[0].dims; }

  Word apply(const Word& w) const {
    Word out;
    for (Letter l : w) {
      const Word& img = images.at(l).cells;
      out.insert(out.end(), img.begin(), img.end());
    }
    return out;
  }

  // Letterwise action: cell i of the input owns the block at i*n in the output.
  BlockPattern apply(const BlockPattern& p) const {
    if (p.dim() != dim) throw std::invalid_argument("pattern dimension mismatch");
    for (Letter l : p.cells)
      if (l >= alphabet.size()) throw std::invalid_argument("pattern letter outside alphabet");
    if (dim == 1) return BlockPattern::from_word(apply(p.cells));
    if (!is_block()) throw std::invalid_argument("d >= 2 needs a block substitution");
    const auto& n = block_dims();
    std::vector<int> dims(p.dims.size());
    for (std::size_t j = 0; j < dims.size(); ++j) dims[j] = p.dims[j] * n[j];
    long long total = 1;
    for (int e : dims) total *= e;
    BlockPattern out(dims, std::vector<Letter>(static_cast<std::size_t>(total), 0));
    std::vector<int> c(p.dims.size(), 0);
    for (;;) {
      const BlockPattern& img = images[p.at(c)];
      std::vector<int> k(p.dims.size(), 0);
      for (;;) {
        std::vector<int> abs(p.dims.size());
        for (std::size_t j = 0; j < abs.size(); ++j) abs[j] = c[j] * n[j] + k[j];
        out.cells[out.offset_of(abs)] = img.at(k);
        std::size_t j = 0;
        while (j < k.size() && ++k[j] == n[j]) k[j++] = 0;
        if (j == k.size()) break;
      }
      std::size_t j = 0;
      while (j < c.size() && ++c[j] == p.dims[j]) c[j++] = 0;
      if (j == c.size()) break;
    }
    return out;
  }

  Word iterate(Word w, int n) const {
    for (int i = 0; i < n; ++i) w = apply(w);
    return w;
  }

  BlockPattern iterate(BlockPattern p, int n) const {
    for (int i = 0; i < n; ++i) p = apply(p);
    return p;
  }
};

// 1D convenience constructor from letter -> word strings.
inline Substitution make_substitution(const Alphabet& a,
                                      const std::vector<std::string>& rules) {
  std::vector<BlockPattern> images;
  for (const auto& r : rules) images.push_back(BlockPattern::from_word(parse_word(a, r)));
  return Substitution(a, 1, std::move(images));
}

// Injective rules are a sufficient condition for the associated subshift to
// be aperiodic (no decision procedure is attempted beyond this).
inline bool is_injective(const Substitution& s) {
  std::set<std::pair<std::vector<int>, std::vector<Letter>>> seen;
  for (const auto& img : s.images)
    if (!seen.insert({img.dims, img.cells}).second) return false;
  return true;
}

// --- primitivity ----------------------------------------------------------------

struct PrimitivityReport {
  bool primitive = false;
  std::optional<int> l0;  // smallest exponent with full letter coverage
};

// Boolean letter-occurrence closure: row a of B^k is the letter set of S^k(a).
inline PrimitivityReport primitivity(const Substitution& s, int kmax = 64) {
  if (kmax < 1) throw std::invalid_argument("kmax must be positive");
  const std::size_t n = s.alphabet.size();
  std::vector<std::vector<char>> base(n, std::vector<char>(n, 0));
  for (std::size_t a = 0; a < n; ++a)
    for (Letter l : s.images[a].cells) base[a][l] = 1;
  auto full = [&](const std::vector<std::vector<char>>& m) {
    for (const auto& row : m)
      for (char c : row)
        if (!c) return false;
    return true;
  };
  std::vector<std::vector<std::vector<char>>> seen;
  std::vector<std::vector<char>> power = base;
  for (int k = 1; k <= kmax; ++k) {
    if (full(power)) return {true, k};
    if (std::find(seen.begin(), seen.end(), power) != seen.end()) return {false, std::nullopt};
    seen.push_back(power);
    std::vector<std::vector<char>> next(n, std::vector<char>(n, 0));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (power[a][b])
          for (std::size_t c = 0; c < n; ++c) next[a][c] = next[a][c] | base[b][c];
    power = std::move(next);
  }
  return {false, std::nullopt};
}

// --- associated dictionary --------------------------------------------------------

namespace detail {

inline void insert_subpatterns(DictionarySlice& slice, const BlockPattern& p) {
  for (auto& [shape, set] : slice.entries) {
    bool fits = true;
    for (std::size_t j = 0; j < shape.size(); ++j) fits &= shape[j] <= p.dims[j];
    if (!fits) continue;
    std::vector<int> off(shape.size(), 0);
    for (;;) {
      set.insert(p.sub_block(off, shape).cells);
      std::size_t j = 0;
      while (j < off.size() && ++off[j] > p.dims[j] - shape[j]) off[j++] = 0;
      if (j == off.size()) break;
    }
  }
}

}  // namespace detail

// Cumulative union over letters and exponents of the sub-patterns of S^m(a),
// iterated until unchanged for two consecutive exponents past the primitivity
// parameter (or past the cap for non-primitive rules). Non-primitive results
// are gated on (D1)/(D2) validity.
inline DictionarySlice substitution_dictionary(const Substitution& s, std::vector<int> cap) {
  if (static_cast<int>(cap.size()) != s.dim) throw std::invalid_argument("cap dimension mismatch");
  PrimitivityReport prim = primitivity(s);
  int floor = prim.primitive ? *prim.l0 : *std::max_element(cap.begin(), cap.end());
  DictionarySlice slice(s.alphabet, cap);
  std::vector<BlockPattern> powers = s.images;
  int stable = 0;
  const int hard_cap = floor + 64;
  for (int m = 1; m <= hard_cap; ++m) {
    std::size_t before = 0;
    for (const auto& [shape, set] : slice.entries) before += set.size();
    for (const auto& p : powers) detail::insert_subpatterns(slice, p);
    std::size_t after = 0;
    for (const auto& [shape, set] : slice.entries) after += set.size();
    stable = (after == before) ? stable + 1 : 0;
    if (m >= floor && stable >= 2) break;
    for (auto& p : powers) p = s.apply(p);
  }
  if (!prim.primitive) {
    ValidationReport v = validate_slice(slice);
    if (!v.ok())
      throw GateError("substitution does not define a dictionary: " +
                      describe(s.alphabet, v.violations.front()));
  }
  return slice;
}

// --- fixed seeds and fixed-point windows --------------------------------------------

// Seed pattern on the 2^d cells adjacent to the origin, stored as a block of
// extent 2 per axis; pattern cell c corresponds to lattice cell c - 1.
struct FixedSeed {
  BlockPattern pattern;
  int exponent;  // minimal k with S^k-invariance of the corner restriction
};

struct SeedSearch {
  std::vector<FixedSeed> seeds;  // ordered by (exponent, reading order)

  const FixedSeed& primary() const {
    if (seeds.empty()) throw SearchExhaustedError("no fixed seed found");
    return seeds.front();
  }

  std::optional<FixedSeed> find(const BlockPattern& pattern) const {
    for (const auto& s : seeds)
      if (s.pattern == pattern) return s;
    return std::nullopt;
  }
};

namespace detail {

// Letter maps x -> corner(S(x)) compose under iteration, so the corner of
// S^k(x) never needs the full image. corner[j] = 0 takes the low corner of
// the image along axis j, 1 the high corner.
inline Letter image_corner(const Substitution& s, Letter x, const std::vector<int>& corner) {
  const BlockPattern& img = s.images[x];
  std::vector<int> c(img.dims.size());
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = corner[j] ? img.dims[j] - 1 : 0;
  return img.at(c);
}

}  // namespace detail

// All legal corner patterns invariant under some S^k, k <= kmax, each with its
// minimal exponent. Legality means the 2^d-cell pattern is admissible for the
// substitution dictionary.
inline SeedSearch fixed_seed(const Substitution& s, int kmax = 8) {
  if (s.dim == 1 && s.alphabet.size() < 2)
    throw std::invalid_argument("1D seed search needs at least two letters");
  const int d = s.dim;
  const std::size_t cells = static_cast<std::size_t>(1) << d;
  DictionarySlice legal = substitution_dictionary(s, std::vector<int>(d, 2));
  const std::vector<int> seed_shape(d, 2);

  // Per cell: the corner of the image adjacent to the origin. A cell on the
  // negative side of axis j needs the high corner of its image there.
  std::vector<std::vector<int>> corner(cells, std::vector<int>(d, 0));
  for (std::size_t idx = 0; idx < cells; ++idx)
    for (int j = 0; j < d; ++j) corner[idx][j] = ((idx >> j) & 1) ? 0 : 1;

  std::vector<FixedSeed> found;
  std::vector<Letter> assign(cells, 0);
  for (;;) {
    BlockPattern pattern(seed_shape, assign);
    if (legal.contains(pattern)) {
      for (int k = 1; k <= kmax; ++k) {
        bool invariant = true;
        for (std::size_t idx = 0; idx < cells && invariant; ++idx) {
          Letter x = assign[idx];
          for (int step = 0; step < k; ++step) x = detail::image_corner(s, x, corner[idx]);
          invariant = (x == assign[idx]);
        }
        if (invariant) {
          found.push_back({pattern, k});
          break;
        }
      }
    }
    std::size_t j = 0;
    while (j < cells && ++assign[j] == s.alphabet.size()) assign[j++] = 0;
    if (j == cells) break;
  }
  std::sort(found.begin(), found.end(), [](const FixedSeed& a, const FixedSeed& b) {
    if (a.exponent != b.exponent) return a.exponent < b.exponent;
    return display_key(a.pattern) < display_key(b.pattern);
  });
  if (found.empty()) {
    std::size_t tried = 1;
    for (std::size_t i = 0; i < cells; ++i) tried *= s.alphabet.size();
    std::ostringstream os;
    os << "no S^k-invariant legal corner pattern for k <= " << kmax << " (tried " << tried
       << " assignments)";
    throw SearchExhaustedError(os.str());
  }
  return SeedSearch{found};
}

// Window [-R, R]^d of the k-periodic point grown from the seed. Quadrant
// contents are suffix/prefix-stable iterated images of the corner letters.
inline BlockPattern fixed_point_window(const Substitution& s, const FixedSeed& seed, int radius,
                                       int iteration_cap = 64) {
  const int d = s.dim;
  const std::size_t cells = static_cast<std::size_t>(1) << d;
  std::vector<BlockPattern> quadrant(cells);
  for (std::size_t idx = 0; idx < cells; ++idx) {
    std::vector<int> c(d);
    for (int j = 0; j < d; ++j) c[j] = (idx >> j) & 1;
    BlockPattern q(std::vector<int>(d, 1), {seed.pattern.at(c)});
    int applications = 0;
    for (;;) {
      bool big = true;
      for (int j = 0; j < d; ++j) big &= q.dims[j] >= radius + 1;
      if (big) break;
      if (applications >= iteration_cap)
        throw IterationCapError("seed letter does not grow to the requested radius");
      q = s.iterate(q, seed.exponent);
      applications += seed.exponent;
    }
    quadrant[idx] = std::move(q);
  }
  std::vector<int> dims(d, 2 * radius + 1);
  long long total = 1;
  for (int e : dims) total *= e;
  BlockPattern out(dims, std::vector<Letter>(static_cast<std::size_t>(total), 0));
  std::vector<int> c(d, 0);
  for (;;) {
    std::size_t idx = 0;
    for (int j = 0; j < d; ++j)
      if (c[j] - radius >= 0) idx |= static_cast<std::size_t>(1) << j;
    std::vector<int> inner(d);
    for (int j = 0; j < d; ++j) {
      int site = c[j] - radius;
      inner[j] = site >= 0 ? site : quadrant[idx].dims[j] + site;
    }
    out.cells[out.offset_of(c)] = quadrant[idx].at(inner);
    std::size_t j = 0;
    while (j < c.size() && ++c[j] == dims[j]) c[j++] = 0;
    if (j == c.size()) break;
  }
  return out;
}

// --- 2x2 symmetry search --------------------------------------------------------

// All 2x2 tiles whose row-swap/column-swap orbit lies inside the slice; tiling
// the plane with such a tile only ever produces the four orbit patterns, so
// the periodic extension is admissible at the 2x2 level.
inline std::vector<BlockPattern> symmetry_2x2_search(const DictionarySlice& slice) {
  if (slice.dim() != 2) throw std::invalid_argument("symmetry search is two-dimensional");
  if (slice.cap[0] < 2 || slice.cap[1] < 2) throw std::invalid_argument("slice cap below 2x2");
  const std::size_t n = slice.alphabet.size();
  std::vector<BlockPattern> out;
  // display rows (a b / c d); cells row-major bottom row first: [c d a b]
  auto make = [](Letter a, Letter b, Letter c, Letter d) {
    return BlockPattern({2, 2}, {c, d, a, b});
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) {
          Letter A = static_cast<Letter>(a), B = static_cast<Letter>(b);
          Letter C = static_cast<Letter>(c), D = static_cast<Letter>(d);
          bool ok = slice.contains(make(A, B, C, D)) && slice.contains(make(C, D, A, B)) &&
                    slice.contains(make(B, A, D, C)) && slice.contains(make(D, C, B, A));
          if (ok) out.push_back(make(A, B, C, D));
        }
  std::sort(out.begin(), out.end(), [](const BlockPattern& x, const BlockPattern& y) {
    return display_key(x) < display_key(y);
  });
  return out;
}

// Gate for 2D approximant seeds: the symmetry orbit of v must be admissible.
inline bool approximant_gate(const DictionarySlice& slice, const BlockPattern& v) {
  if (v.dims != std::vector<int>{2, 2}) return false;
  auto tiles = symmetry_2x2_search(slice);
  return std::find(tiles.begin(), tiles.end(), v) != tiles.end();
}

// S^n applied to the tile; the extension commutes with the substitution, so
// this is the n-th strongly periodic approximant.
inline PeriodicConfiguration periodic_approximant(const Substitution& s, const BlockPattern& v,
                                                  int n) {
  return PeriodicConfiguration(s.iterate(v, n));
}

// --- dictionary convergence of approximants -----------------------------------------

struct ConvergenceRow {
  int n;
  std::vector<int> tile_dims;
  unsigned containment_level;  // one-sided: patterns of the approximant inside W_S
  unsigned agreement_level;    // two-sided agreement level
};

inline std::vector<ConvergenceRow> convergence_table(const Substitution& s, const BlockPattern& v,
                                                     int n_max, const std::vector<int>& cap) {
  DictionarySlice reference = substitution_dictionary(s, cap);
  std::vector<ConvergenceRow> rows;
  BlockPattern tile = v;
  for (int n = 0; n <= n_max; ++n) {
    DictionarySlice approx = periodic_dictionary(s.alphabet, PeriodicConfiguration(tile), cap);
    rows.push_back({n, tile.dims, containment_index(approx, reference),
                    proximity_index(approx, reference)});
    if (n < n_max) tile = s.apply(tile);
  }
  return rows;
}

}  // namespace subshift
