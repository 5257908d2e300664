#include <catch2/catch_amalgamated.hpp>

#include "subshift/builtins.hpp"
#include "subshift/debruijn.hpp"

using namespace subshift;

namespace {

const Alphabet kAB = Alphabet::from_letters("ab");

Word w(const std::string& text) { return parse_word(kAB, text); }

// Slice of an explicit two-sided word given by a letter-at-site map; the tails
// are eventually constant so a finite window catches every factor.
template <class F>
DictionarySlice slice_of_word(const Alphabet& a, F letter_at, int cap) {
  DictionarySlice s(a, {cap});
  const long extent = 4L * cap + 8;
  for (int k = 1; k <= cap; ++k)
    for (long i = -extent; i + k <= extent; ++i) {
      Word word;
      for (long j = i; j < i + k; ++j) word.push_back(letter_at(j));
      s.insert(BlockPattern::from_word(word));
    }
  return s;
}

DictionarySlice half_plane_slice(int cap) {  // ...aaa|bbb...
  return slice_of_word(kAB, [](long j) { return Letter(j < 0 ? 0 : 1); }, cap);
}

DictionarySlice kink_slice(int cap) {  // ...aaab|abbb...
  return slice_of_word(kAB, [](long j) { return Letter((j == 0 || j <= -2) ? 0 : 1); }, cap);
}

std::set<Word> edge_words(const DeBruijnGraph& g, const ClosedPath& p) {
  std::set<Word> out;
  for (int e : p.edge_ids) out.insert(g.edges[e]);
  return out;
}

std::set<Word> vertex_words(const DeBruijnGraph& g, const ClosedPath& p) {
  std::set<Word> out;
  for (int e : p.edge_ids) out.insert(g.vertices[g.tail[e]]);
  return out;
}

std::vector<Builtin> corpus() {
  return {Builtin::Fibonacci, Builtin::SilverMean, Builtin::ThueMorse, Builtin::PeriodDoubling,
          Builtin::RudinShapiro, Builtin::OneDefect, Builtin::FullShift};
}

}  // namespace

TEST_CASE("graph construction") {
  DictionarySlice fib = builtin_slice(Builtin::Fibonacci, 4);
  DeBruijnGraph g1 = build_graph(fib, 1);
  CHECK(g1.vertices == std::vector<Word>{w("a"), w("b")});
  CHECK(g1.edges == std::vector<Word>{w("aa"), w("ab"), w("ba")});

  DeBruijnGraph full2 = build_graph(builtin_slice(Builtin::FullShift, 4), 2);
  CHECK(full2.vertices.size() == 4);
  CHECK(full2.edges.size() == 8);

  DeBruijnGraph od2 = build_graph(builtin_slice(Builtin::OneDefect, 4), 2);
  CHECK(od2.vertices == std::vector<Word>{w("aa"), w("ab"), w("ba")});
  CHECK(od2.edges == std::vector<Word>{w("aaa"), w("aab"), w("aba"), w("baa")});

  CHECK_THROWS_AS(build_graph(fib, 4), std::invalid_argument);  // cap too small
  CHECK_THROWS_AS(build_graph(builtin_slice(Builtin::Table, 2), 1), std::invalid_argument);
}

TEST_CASE("graphs are semi-simple with no dandling vertices") {
  for (Builtin b : corpus()) {
    DictionarySlice s = builtin_slice(b, 6);
    for (int k = 1; k <= 5; ++k) {
      DeBruijnGraph g = build_graph(s, k);
      for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        CHECK_FALSE(g.out_edges[v].empty());
        CHECK_FALSE(g.in_edges[v].empty());
      }
      // at most one edge between any ordered vertex pair
      std::set<std::pair<int, int>> pairs;
      for (std::size_t e = 0; e < g.edges.size(); ++e)
        CHECK(pairs.insert({g.tail[e], g.head[e]}).second);
    }
  }
}

TEST_CASE("strong connectivity over the corpus and the two counterexamples") {
  for (Builtin b : corpus()) {
    DictionarySlice s = builtin_slice(b, 11);
    for (int k = 1; k <= 10; ++k) {
      INFO("builtin " << static_cast<int>(b) << " order " << k);
      CHECK(is_strongly_connected(build_graph(s, k)));
    }
  }
  DictionarySlice half = half_plane_slice(4);
  CHECK(validate_slice(half).ok());
  CHECK_FALSE(is_strongly_connected(build_graph(half, 1)));

  DictionarySlice kink = kink_slice(4);
  CHECK(validate_slice(kink).ok());
  CHECK(is_strongly_connected(build_graph(kink, 1)));
  CHECK_FALSE(is_strongly_connected(build_graph(kink, 2)));
}

TEST_CASE("strong connectivity is hereditary downward") {
  std::vector<DictionarySlice> slices;
  for (Builtin b : corpus()) slices.push_back(builtin_slice(b, 9));
  slices.push_back(half_plane_slice(9));
  slices.push_back(kink_slice(9));
  for (const auto& s : slices) {
    std::vector<bool> connected;
    for (int k = 1; k <= 8; ++k) connected.push_back(is_strongly_connected(build_graph(s, k)));
    for (std::size_t k0 = 0; k0 < connected.size(); ++k0)
      if (connected[k0])
        for (std::size_t k = 0; k < k0; ++k) CHECK(connected[k]);
  }
}

TEST_CASE("branching counts") {
  DictionarySlice fib = builtin_slice(Builtin::Fibonacci, 5);
  CHECK(branching_count(build_graph(fib, 2)) == 2);
  CHECK(branching_count(build_graph(fib, 3)) == 1);

  DictionarySlice ab = periodic_dictionary(kAB, w("ab"), 4);
  CHECK(branching_count(build_graph(ab, 2)) == 0);

  CHECK(branching_count(build_graph(builtin_slice(Builtin::FullShift, 3), 1)) == 2);
}

TEST_CASE("branching bounds from the complexity increments") {
  for (Builtin b : corpus()) {
    DictionarySlice s = builtin_slice(b, 9);
    ComplexityTable t = complexity(s);
    const double letters = static_cast<double>(s.alphabet.size());
    for (int k = 1; k <= 8; ++k) {
      const double increment =
          static_cast<double>(t.at_length(k + 1)) - static_cast<double>(t.at_length(k));
      const double nub = branching_count(build_graph(s, k));
      INFO("builtin " << static_cast<int>(b) << " order " << k);
      CHECK(increment / (letters - 1) <= nub);
      CHECK(nub <= 2 * increment);
    }
  }
}

TEST_CASE("global closed paths cover what they promise") {
  DictionarySlice fib = builtin_slice(Builtin::Fibonacci, 3);
  DeBruijnGraph g1 = build_graph(fib, 1);
  ClosedPath edge_cover = global_closed_path(g1, PathMode::EdgeCover);
  CHECK(is_closed_path(g1, edge_cover));
  CHECK(edge_words(g1, edge_cover) == std::set<Word>{w("aa"), w("ab"), w("ba")});
  CHECK(edge_cover.length() == 3);  // Eulerian here, so minimal

  // cycle graph of (ab)^inf at order 2: the 2-cycle itself
  DictionarySlice ab = periodic_dictionary(kAB, w("ab"), 4);
  DeBruijnGraph g2 = build_graph(ab, 2);
  ClosedPath cycle = global_closed_path(g2, PathMode::EdgeCover);
  CHECK(cycle.length() == 2);

  DeBruijnGraph od2 = build_graph(builtin_slice(Builtin::OneDefect, 4), 2);
  ClosedPath od_cover = global_closed_path(od2, PathMode::EdgeCover);
  CHECK(od_cover.length() >= 4);
  CHECK(edge_words(od2, od_cover) ==
        std::set<Word>{w("aaa"), w("aab"), w("aba"), w("baa")});

  ClosedPath vertex_cover = global_closed_path(od2, PathMode::VertexCover);
  CHECK(vertex_words(od2, vertex_cover) == std::set<Word>{w("aa"), w("ab"), w("ba")});

  CHECK_THROWS_AS(global_closed_path(build_graph(half_plane_slice(3), 1), PathMode::EdgeCover),
                  NoGlobalPathError);
}

TEST_CASE("periodic word from a closed path") {
  DictionarySlice fib = builtin_slice(Builtin::Fibonacci, 3);
  DeBruijnGraph g1 = build_graph(fib, 1);
  ClosedPath path{{g1.edge_id(w("ab")), g1.edge_id(w("ba")), g1.edge_id(w("aa"))}};
  REQUIRE(is_closed_path(g1, path));
  Word eta = periodic_word_from_path(g1, path);
  CHECK(eta == w("aba"));
  DictionarySlice eta_slice = periodic_dictionary(kAB, eta, 2);
  CHECK(eta_slice.words(2) == std::set<Word>{w("ab"), w("ba"), w("aa")});

  ClosedPath loop{{g1.edge_id(w("aa"))}};
  CHECK(periodic_word_from_path(g1, loop) == w("a"));

  // Rudin-Shapiro order-2 path from the worked example
  Alphabet rs = Alphabet::from_letters("ABCD");
  DictionarySlice ws = builtin_slice(Builtin::RudinShapiro, 4);
  DeBruijnGraph g2 = build_graph(ws, 2);
  std::vector<int> ids;
  for (const char* e : {"DCA", "CAB", "ABA", "BAC", "ACD", "CDB", "DBD", "BDC"})
    ids.push_back(g2.edge_id(parse_word(rs, e)));
  ClosedPath rs_path{ids};
  REQUIRE(is_closed_path(g2, rs_path));
  CHECK(periodic_word_from_path(g2, rs_path) == parse_word(rs, "DCABACDB"));
}

TEST_CASE("closed paths reproduce their vertex and edge sets exactly") {
  // Lemma-level exactness: the factor sets of the associated periodic word
  // are the boundary-vertex set and the edge set of the path.
  for (Builtin b : corpus()) {
    DictionarySlice s = builtin_slice(b, 5);
    for (int k = 1; k <= 3; ++k) {
      DeBruijnGraph g = build_graph(s, k);
      for (PathMode mode : {PathMode::EdgeCover, PathMode::VertexCover}) {
        ClosedPath p = global_closed_path(g, mode);
        Word eta = periodic_word_from_path(g, p);
        DictionarySlice eta_slice = periodic_dictionary(s.alphabet, eta, k + 1);
        CHECK(eta_slice.words(k) == vertex_words(g, p));
        CHECK(eta_slice.words(k + 1) == edge_words(g, p));
      }
    }
  }
}

TEST_CASE("periodic words make cycle graphs") {
  // minimal period p: G_p is a single cycle with <= p vertices, no branching
  for (const char* tile : {"ab", "aab", "abaab", "baab"}) {
    Word t = w(tile);
    std::size_t p = minimal_period(t);
    DictionarySlice s = periodic_dictionary(kAB, t, static_cast<int>(p) + 1);
    DeBruijnGraph g = build_graph(s, static_cast<int>(p));
    CHECK(g.vertices.size() <= p);
    CHECK(g.edges.size() == g.vertices.size());
    CHECK(branching_count(g) == 0);
    CHECK(is_strongly_connected(g));
  }
}

TEST_CASE("a period-p element yields closed paths of length p at every order") {
  Word tile = w("abaab");
  const std::size_t p = minimal_period(tile);
  PeriodicConfiguration cfg(BlockPattern::from_word(tile));
  for (int k = 1; k <= 6; ++k) {
    DictionarySlice s = periodic_dictionary(kAB, tile, k + 1);
    DeBruijnGraph g = build_graph(s, k);
    std::vector<int> ids;
    for (std::size_t j = 0; j < p; ++j)
      ids.push_back(g.edge_id(cfg.window({static_cast<long>(j)}, {k + 1}).cells));
    ClosedPath path{ids};
    CHECK(is_closed_path(g, path));
    CHECK(path.length() == p);
  }
}

TEST_CASE("per-growth check") {
  DictionarySlice fib = builtin_slice(Builtin::Fibonacci, 7);
  std::vector<std::pair<int, ClosedPath>> paths;
  for (int k = 1; k <= 6; ++k)
    paths.emplace_back(k, global_closed_path(build_graph(fib, k), PathMode::VertexCover));
  PerGrowthReport report = check_per_growth(fib, paths);
  CHECK(report.ok());
  for (const auto& row : report.rows)
    CHECK(row.period >= static_cast<std::size_t>(row.order) + 1);  // comp(k) = k+1

  // periodic case passes with equality: (ab)^inf at order 2
  DictionarySlice ab = periodic_dictionary(kAB, w("ab"), 4);
  auto path2 = global_closed_path(build_graph(ab, 2), PathMode::VertexCover);
  PerGrowthReport eq = check_per_growth(ab, {{2, path2}});
  CHECK(eq.ok());
  CHECK(eq.rows[0].period == 2);
  CHECK(eq.rows[0].complexity == 2);
}

TEST_CASE("edge cover upgrades the agreement level past the order") {
  for (Builtin b : corpus()) {
    DictionarySlice s = builtin_slice(b, 6);
    for (int k = 1; k <= 4; ++k) {
      DeBruijnGraph g = build_graph(s, k);
      Word eta = periodic_word_from_path(g, global_closed_path(g, PathMode::EdgeCover));
      DictionarySlice eta_slice = periodic_dictionary(s.alphabet, eta, 6);
      unsigned prox = proximity_index(eta_slice, s);
      INFO("builtin " << static_cast<int>(b) << " order " << k);
      CHECK((prox == kAgreeToCap || prox >= static_cast<unsigned>(k) + 1));
    }
  }
}

TEST_CASE("DOT output is deterministic and annotated") {
  DictionarySlice od = builtin_slice(Builtin::OneDefect, 3);
  DeBruijnGraph g = build_graph(od, 2);
  std::string dot = to_dot(g);
  CHECK(dot == to_dot(g));
  CHECK(dot.find("\"aa\" -> \"ab\" [label=\"aab\"]") != std::string::npos);
  CHECK(dot.find("color") == std::string::npos);

  ClosedPath p = global_closed_path(g, PathMode::EdgeCover);
  std::string highlighted = to_dot(g, &p);
  CHECK(highlighted.find("color=\"red\"") != std::string::npos);
}
