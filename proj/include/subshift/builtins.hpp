#pragma once

#include <string>
#include <vector>

#include "subshift/substitution.hpp"

namespace subshift {

// Built-in example subshifts. Substitution rules are embedded verbatim so
// acceptance runs cannot drift from the published definitions.
enum class Builtin {
  Fibonacci,
  SilverMean,
  ThueMorse,
  PeriodDoubling,
  RudinShapiro,
  OneDefect,
  FullShift,
  Table,
  Sierpinski,
};

inline const std::vector<std::pair<std::string, Builtin>>& builtin_names() {
  static const std::vector<std::pair<std::string, Builtin>> names = {
      {"fibonacci", Builtin::Fibonacci},
      {"silver-mean", Builtin::SilverMean},
      {"thue-morse", Builtin::ThueMorse},
      {"period-doubling", Builtin::PeriodDoubling},
      {"rudin-shapiro", Builtin::RudinShapiro},
      {"one-defect", Builtin::OneDefect},
      {"full-shift", Builtin::FullShift},
      {"table", Builtin::Table},
      {"sierpinski", Builtin::Sierpinski},
  };
  return names;
}

inline Builtin builtin_from_name(const std::string& name) {
  for (const auto& [n, b] : builtin_names())
    if (n == name) return b;
  throw ConfigError("unknown builtin: " + name);
}

inline bool builtin_has_substitution(Builtin b) {
  return b != Builtin::OneDefect && b != Builtin::FullShift;
}

inline int builtin_dim(Builtin b) {
  return (b == Builtin::Table || b == Builtin::Sierpinski) ? 2 : 1;
}

// Rows are written top to bottom, as the rules are usually displayed.
inline BlockPattern pattern_from_rows(const Alphabet& a, const std::vector<std::string>& rows) {
  std::string text;
  for (std::size_t i = 0; i < rows.size(); ++i) text += (i ? "/" : "") + rows[i];
  return parse_pattern(a, text);
}

inline Substitution builtin_substitution(Builtin b) {
  switch (b) {
    case Builtin::Fibonacci:
      return make_substitution(Alphabet::from_letters("ab"), {"ab", "a"});
    case Builtin::SilverMean:
      return make_substitution(Alphabet::from_letters("ab"), {"aab", "a"});
    case Builtin::ThueMorse:
      return make_substitution(Alphabet::from_letters("ab"), {"ab", "ba"});
    case Builtin::PeriodDoubling:
      return make_substitution(Alphabet::from_letters("ab"), {"ab", "aa"});
    case Builtin::RudinShapiro:
      return make_substitution(Alphabet::from_letters("ABCD"), {"AB", "AC", "DB", "DC"});
    case Builtin::Table: {
      Alphabet a = Alphabet::from_letters("abcd");
      std::vector<BlockPattern> images = {
          pattern_from_rows(a, {"ba", "da"}),
          pattern_from_rows(a, {"ac", "bb"}),
          pattern_from_rows(a, {"cb", "cd"}),
          pattern_from_rows(a, {"dd", "ac"}),
      };
      return Substitution(a, 2, std::move(images));
    }
    case Builtin::Sierpinski: {
      Alphabet a = Alphabet::from_letters("ab");
      std::vector<BlockPattern> images = {
          pattern_from_rows(a, {"aaa", "aaa", "aaa"}),
          pattern_from_rows(a, {"bbb", "bab", "bbb"}),
      };
      return Substitution(a, 2, std::move(images));
    }
    default:
      throw std::invalid_argument("builtin is not substitution generated");
  }
}

inline Alphabet builtin_alphabet(Builtin b) {
  switch (b) {
    case Builtin::RudinShapiro:
      return Alphabet::from_letters("ABCD");
    case Builtin::Table:
      return Alphabet::from_letters("abcd");
    default:
      return Alphabet::from_letters("ab");
  }
}

// Dictionary slice up to the cap (1D cap L, or per-axis cap for d = 2).
inline DictionarySlice builtin_slice(Builtin b, const std::vector<int>& cap) {
  Alphabet a = builtin_alphabet(b);
  switch (b) {
    case Builtin::OneDefect: {
      // factors of ...aaabaaa...: a^k plus every word with exactly one b
      DictionarySlice s(a, cap);
      const Letter la = a.index("a"), lb = a.index("b");
      for (int k = 1; k <= cap[0]; ++k) {
        Word w(k, la);
        s.insert(BlockPattern::from_word(w));
        for (int i = 0; i < k; ++i) {
          Word one = w;
          one[i] = lb;
          s.insert(BlockPattern::from_word(one));
        }
      }
      return s;
    }
    case Builtin::FullShift: {
      DictionarySlice s(a, cap);
      for (int k = 1; k <= cap[0]; ++k) {
        Word w(k, 0);
        for (;;) {
          s.insert(BlockPattern::from_word(w));
          int j = 0;
          while (j < k && ++w[j] == a.size()) w[j++] = 0;
          if (j == k) break;
        }
      }
      return s;
    }
    default:
      return substitution_dictionary(builtin_substitution(b), cap);
  }
}

inline DictionarySlice builtin_slice(Builtin b, int cap) {
  return builtin_slice(b, std::vector<int>(builtin_dim(b), cap));
}

// Strongly periodic approximant tile at level n (1D builtins).
//  - substitution sources: S^n applied to the word of the shortest closed
//    path in the order-1 de Bruijn graph (a letter loop when one exists);
//  - one-defect: b a^n, the defect plus n clean sites;
//  - full shift: the Euler circuit word of the order-n graph.
inline Word builtin_approximant_tile(Builtin b, int n) {
  if (builtin_dim(b) != 1) throw std::invalid_argument("2D builtins have no word approximants");
  switch (b) {
    case Builtin::OneDefect: {
      Alphabet a = builtin_alphabet(b);
      Word w(static_cast<std::size_t>(n) + 1, a.index("a"));
      w[0] = a.index("b");
      return w;
    }
    case Builtin::FullShift: {
      DictionarySlice s = builtin_slice(b, n + 1);
      DeBruijnGraph g = build_graph(s, n);
      return periodic_word_from_path(g, global_closed_path(g, PathMode::EdgeCover));
    }
    default: {
      Substitution sub = builtin_substitution(b);
      DictionarySlice s = substitution_dictionary(sub, {2});
      DeBruijnGraph g = build_graph(s, 1);
      Word seed = periodic_word_from_path(g, shortest_closed_path(g));
      return sub.iterate(seed, n);
    }
  }
}

}  // namespace subshift
