#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "subshift/pattern.hpp"

namespace subshift {

// All admissible patterns of a subshift up to a finite block-shape cap,
// stored modulo translation (a pattern is just its cell array). All block
// shapes s with 1 <= s[j] <= cap[j] are present as keys.
struct DictionarySlice {
  Alphabet alphabet;
  std::vector<int> cap;
  std::map<std::vector<int>, std::set<std::vector<Letter>>> entries;

  DictionarySlice() = default;
  DictionarySlice(Alphabet a, std::vector<int> c) : alphabet(std::move(a)), cap(std::move(c)) {
    for (int e : cap)
      if (e <= 0) throw std::invalid_argument("cap extents must be positive");
    for (const auto& s : shapes_up_to(cap)) entries[s];
  }

  int dim() const { return static_cast<int>(cap.size()); }

  static std::vector<std::vector<int>> shapes_up_to(const std::vector<int>& cap) {
    std::vector<std::vector<int>> out;
    std::vector<int> s(cap.size(), 1);
    for (;;) {
      out.push_back(s);
      std::size_t j = 0;
      while (j < s.size() && ++s[j] > cap[j]) s[j++] = 1;
      if (j == s.size()) break;
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  void insert(const BlockPattern& p) {
    auto it = entries.find(p.dims);
    if (it == entries.end()) throw std::invalid_argument("pattern shape beyond cap");
    it->second.insert(p.cells);
  }

  bool contains(const BlockPattern& p) const {
    auto it = entries.find(p.dims);
    return it != entries.end() && it->second.count(p.cells) > 0;
  }

  // d = 1 convenience: set of words of the given length.
  const std::set<Word>& words(int k) const {
    auto it = entries.find(std::vector<int>{k});
    if (it == entries.end()) throw std::invalid_argument("length beyond cap");
    return it->second;
  }

  friend bool operator==(const DictionarySlice& a, const DictionarySlice& b) {
    return a.alphabet == b.alphabet && a.cap == b.cap && a.entries == b.entries;
  }
};

// All length-k factors of w. k exceeding |w| is an empty result, not an error.
inline std::set<Word> subwords(const Word& w, int k) {
  if (k <= 0) throw std::invalid_argument("subword length must be positive");
  std::set<Word> out;
  if (static_cast<std::size_t>(k) > w.size()) return out;
  for (std::size_t i = 0; i + k <= w.size(); ++i) out.insert(Word(w.begin() + i, w.begin() + i + k));
  return out;
}

// Exact slice of a strongly periodic configuration: sampling offsets over one
// period reaches every pattern of the extension.
inline DictionarySlice periodic_dictionary(const Alphabet& a, const PeriodicConfiguration& cfg,
                                           std::vector<int> cap) {
  if (static_cast<int>(cap.size()) != cfg.dim())
    throw std::invalid_argument("cap dimension mismatch");
  DictionarySlice result(a, cap);
  const auto& dims = cfg.tile.dims;
  for (auto& [shape, set] : result.entries) {
    std::vector<int> off(dims.size(), 0);
    for (;;) {
      std::vector<long> lo(off.begin(), off.end());
      set.insert(cfg.window(lo, shape).cells);
      std::size_t j = 0;
      while (j < off.size() && ++off[j] == dims[j]) off[j++] = 0;
      if (j == off.size()) break;
    }
  }
  return result;
}

// 1D convenience.
inline DictionarySlice periodic_dictionary(const Alphabet& a, const Word& tile, int cap) {
  return periodic_dictionary(a, PeriodicConfiguration(BlockPattern::from_word(tile)), {cap});
}

// --- validation --------------------------------------------------------------

struct SliceViolation {
  enum Kind { Heredity, Extensibility } kind;
  std::vector<int> shape;
  std::vector<Letter> pattern;
  int axis;
  // Heredity: which of the two one-step sub-blocks is missing (0 = low side
  // kept, 1 = high side kept). Extensibility: which direction lacks an
  // extension (0 = low, 1 = high).
  int side;
};

struct ValidationReport {
  std::vector<SliceViolation> violations;
  bool ok() const { return violations.empty(); }
};

inline std::string describe(const Alphabet& a, const SliceViolation& v) {
  std::ostringstream os;
  os << (v.kind == SliceViolation::Heredity ? "(D1)" : "(D2)") << " at "
     << format_pattern(a, BlockPattern(v.shape, v.pattern)) << " axis " << v.axis
     << (v.kind == SliceViolation::Heredity
             ? (v.side == 0 ? " (low sub-block missing)" : " (high sub-block missing)")
             : (v.side == 0 ? " (no low extension)" : " (no high extension)"));
  return os.str();
}

// One-step finite shadow of (D1)/(D2): dropping one layer from any axis stays
// admissible, and every pattern of non-maximal extent extends one step to
// both sides of every axis.
inline ValidationReport validate_slice(const DictionarySlice& s) {
  ValidationReport report;
  const int d = s.dim();
  for (const auto& [shape, patterns] : s.entries) {
    for (int j = 0; j < d; ++j) {
      // heredity one step down along axis j
      if (shape[j] > 1) {
        std::vector<int> sub = shape;
        sub[j] -= 1;
        const auto& subset = s.entries.at(sub);
        for (const auto& cells : patterns) {
          BlockPattern p(shape, cells);
          for (int side = 0; side < 2; ++side) {
            std::vector<int> off(d, 0);
            off[j] = side;
            if (!subset.count(p.sub_block(off, sub).cells))
              report.violations.push_back({SliceViolation::Heredity, shape, cells, j, side});
          }
        }
      }
      // extensibility one step up along axis j
      if (shape[j] < s.cap[j]) {
        std::vector<int> sup = shape;
        sup[j] += 1;
        std::set<std::vector<Letter>> low, high;
        std::vector<int> off0(d, 0), off1(d, 0);
        off1[j] = 1;
        for (const auto& cells : s.entries.at(sup)) {
          BlockPattern p(sup, cells);
          low.insert(p.sub_block(off1, shape).cells);   // pattern sits on the high side
          high.insert(p.sub_block(off0, shape).cells);  // pattern sits on the low side
        }
        for (const auto& cells : patterns) {
          if (!low.count(cells))
            report.violations.push_back({SliceViolation::Extensibility, shape, cells, j, 0});
          if (!high.count(cells))
            report.violations.push_back({SliceViolation::Extensibility, shape, cells, j, 1});
        }
      }
    }
  }
  return report;
}

// --- complexity ---------------------------------------------------------------

struct ComplexityTable {
  std::map<std::vector<int>, std::size_t> counts;

  std::size_t at_length(int k) const { return counts.at(std::vector<int>{k}); }
};

inline ComplexityTable complexity(const DictionarySlice& s) {
  ComplexityTable t;
  for (const auto& [shape, patterns] : s.entries) t.counts[shape] = patterns.size();
  return t;
}

// --- local pattern proximity ---------------------------------------------------

// Sentinel: the slices agree on every shape up to the full common cap.
inline constexpr unsigned kAgreeToCap = std::numeric_limits<unsigned>::max();

// Largest n such that the two slices coincide on all shapes of extent <= n per
// axis; kAgreeToCap when they agree through the whole common cap.
inline unsigned proximity_index(const DictionarySlice& a, const DictionarySlice& b) {
  if (a.alphabet != b.alphabet) throw std::invalid_argument("alphabet mismatch");
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  int ncap = std::numeric_limits<int>::max();
  for (int j = 0; j < a.dim(); ++j) ncap = std::min({ncap, a.cap[j], b.cap[j]});
  unsigned agree = 0;
  for (int n = 1; n <= ncap; ++n) {
    bool same = true;
    std::vector<int> bound(a.dim(), n);
    for (const auto& shape : DictionarySlice::shapes_up_to(bound)) {
      bool at_level = false;
      for (std::size_t j = 0; j < shape.size(); ++j) at_level |= shape[j] == n;
      if (!at_level) continue;  // smaller shapes were checked at earlier n
      if (a.entries.at(shape) != b.entries.at(shape)) {
        same = false;
        break;
      }
    }
    if (!same) break;
    agree = static_cast<unsigned>(n);
  }
  return agree == static_cast<unsigned>(ncap) ? kAgreeToCap : agree;
}

// One-sided variant: largest n with every pattern of a (extent <= n per axis)
// contained in b.
inline unsigned containment_index(const DictionarySlice& a, const DictionarySlice& b) {
  if (a.alphabet != b.alphabet) throw std::invalid_argument("alphabet mismatch");
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  int ncap = std::numeric_limits<int>::max();
  for (int j = 0; j < a.dim(); ++j) ncap = std::min({ncap, a.cap[j], b.cap[j]});
  unsigned level = 0;
  for (int n = 1; n <= ncap; ++n) {
    bool inside = true;
    std::vector<int> bound(a.dim(), n);
    for (const auto& shape : DictionarySlice::shapes_up_to(bound)) {
      bool at_level = false;
      for (std::size_t j = 0; j < shape.size(); ++j) at_level |= shape[j] == n;
      if (!at_level) continue;
      const auto& sa = a.entries.at(shape);
      const auto& sb = b.entries.at(shape);
      for (const auto& cells : sa)
        if (!sb.count(cells)) {
          inside = false;
          break;
        }
      if (!inside) break;
    }
    if (!inside) break;
    level = static_cast<unsigned>(n);
  }
  return level == static_cast<unsigned>(ncap) ? kAgreeToCap : level;
}

// --- canonical text form --------------------------------------------------------

// One pattern per line, lexicographically sorted within '#shape' sections.
inline std::string to_text(const DictionarySlice& s) {
  if (!s.alphabet.single_char_names())
    throw std::invalid_argument("text form needs single-character letter names");
  std::ostringstream os;
  os << "#alphabet";
  for (const auto& n : s.alphabet.names()) os << ' ' << n;
  os << '\n' << "#dim " << s.dim() << '\n';
  os << "#cap ";
  for (std::size_t j = 0; j < s.cap.size(); ++j) os << (j ? "x" : "") << s.cap[j];
  os << '\n';
  for (const auto& [shape, patterns] : s.entries) {
    os << "#shape ";
    for (std::size_t j = 0; j < shape.size(); ++j) os << (j ? "x" : "") << shape[j];
    os << '\n';
    for (const auto& cells : patterns) os << format_pattern(s.alphabet, BlockPattern(shape, cells)) << '\n';
  }
  return os.str();
}

inline std::vector<int> parse_extents(const std::string& text) {
  std::vector<int> out;
  std::string cur;
  for (char c : text + "x") {
    if (c == 'x') {
      out.push_back(std::stoi(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

inline DictionarySlice from_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  Alphabet alphabet;
  std::vector<int> cap;
  std::vector<int> shape;
  DictionarySlice out;
  bool have_header = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line.rfind("#alphabet", 0) == 0) {
      std::istringstream ls(line.substr(9));
      std::vector<std::string> names;
      std::string n;
      while (ls >> n) names.push_back(n);
      alphabet = Alphabet(names);
    } else if (line.rfind("#dim", 0) == 0) {
      // dimension is implied by cap; accepted for readability
    } else if (line.rfind("#cap", 0) == 0) {
      cap = parse_extents(line.substr(5));
      out = DictionarySlice(alphabet, cap);
      have_header = true;
    } else if (line.rfind("#shape", 0) == 0) {
      shape = parse_extents(line.substr(7));
    } else {
      if (!have_header || shape.empty()) throw std::invalid_argument("slice file: pattern before headers");
      BlockPattern p = parse_pattern(alphabet, line);
      // single-row patterns serialize without '/' and parse one-dimensional
      bool single_row = p.dim() == 1 && shape[0] == p.dims[0];
      for (std::size_t j = 1; j < shape.size() && single_row; ++j) single_row &= shape[j] == 1;
      if (!single_row && p.dims != shape)
        throw std::invalid_argument("slice file: pattern shape mismatch");
      out.insert(BlockPattern(shape, p.cells));
    }
  }
  if (!have_header) throw std::invalid_argument("slice file: missing #cap header");
  return out;
}

}  // namespace subshift
