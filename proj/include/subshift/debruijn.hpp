#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "subshift/dictionary.hpp"
#include "subshift/errors.hpp"

namespace subshift {

// Vertices are the admissible words of length k, edges the admissible words
// of length k+1; an edge w joins its prefix to its suffix. Vertex and edge
// lists are sorted lexicographically, which fixes every enumeration below.
struct DeBruijnGraph {
  Alphabet alphabet;
  int order = 0;
  std::vector<Word> vertices;
  std::vector<Word> edges;
  std::vector<int> tail;                  // per edge: vertex index of the prefix
  std::vector<int> head;                  // per edge: vertex index of the suffix
  std::vector<std::vector<int>> out_edges;  // per vertex, edge ids ascending
  std::vector<std::vector<int>> in_edges;

  int vertex_id(const Word& w) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), w);
    if (it == vertices.end() || *it != w) return -1;
    return static_cast<int>(it - vertices.begin());
  }

  int edge_id(const Word& w) const {
    auto it = std::lower_bound(edges.begin(), edges.end(), w);
    if (it == edges.end() || *it != w) return -1;
    return static_cast<int>(it - edges.begin());
  }

  std::size_t degree(int v) const { return out_edges[v].size() + in_edges[v].size(); }
};

inline DeBruijnGraph build_graph(const DictionarySlice& slice, int order) {
  if (slice.dim() != 1) throw std::invalid_argument("de Bruijn graphs need a one-dimensional slice");
  if (order < 1) throw std::invalid_argument("order must be positive");
  if (slice.cap[0] < order + 1) throw std::invalid_argument("slice cap too small for this order");
  DeBruijnGraph g;
  g.alphabet = slice.alphabet;
  g.order = order;
  g.vertices.assign(slice.words(order).begin(), slice.words(order).end());
  g.edges.assign(slice.words(order + 1).begin(), slice.words(order + 1).end());
  g.out_edges.resize(g.vertices.size());
  g.in_edges.resize(g.vertices.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const Word& w = g.edges[e];
    int t = g.vertex_id(Word(w.begin(), w.end() - 1));
    int h = g.vertex_id(Word(w.begin() + 1, w.end()));
    if (t < 0 || h < 0) throw GateError("edge boundary not a vertex: heredity violated");
    g.tail.push_back(t);
    g.head.push_back(h);
    g.out_edges[t].push_back(static_cast<int>(e));
    g.in_edges[h].push_back(static_cast<int>(e));
  }
  return g;
}

// Single strongly connected component covering every vertex (Kosaraju).
inline bool is_strongly_connected(const DeBruijnGraph& g) {
  const std::size_t n = g.vertices.size();
  if (n == 0) return false;
  if (n == 1) return true;
  auto reach_all = [&](bool forward) {
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      const auto& adj = forward ? g.out_edges[v] : g.in_edges[v];
      for (int e : adj) {
        int w = forward ? g.head[e] : g.tail[e];
        if (!seen[w]) {
          seen[w] = 1;
          ++count;
          stack.push_back(w);
        }
      }
    }
    return count == n;
  };
  return reach_all(true) && reach_all(false);
}

// Non-dandling vertices of degree > 2.
inline int branching_count(const DeBruijnGraph& g) {
  int count = 0;
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    bool dandling = g.out_edges[v].empty() || g.in_edges[v].empty();
    if (!dandling && g.degree(static_cast<int>(v)) > 2) ++count;
  }
  return count;
}

struct ClosedPath {
  std::vector<int> edge_ids;

  std::size_t length() const { return edge_ids.size(); }
};

inline bool is_closed_path(const DeBruijnGraph& g, const ClosedPath& p) {
  if (p.edge_ids.empty()) return false;
  for (std::size_t i = 0; i < p.edge_ids.size(); ++i) {
    int e = p.edge_ids[i];
    int f = p.edge_ids[(i + 1) % p.edge_ids.size()];
    if (g.head[e] != g.tail[f]) return false;
  }
  return true;
}

namespace detail {

// Deterministic BFS shortest edge-path from u to v (possibly empty if u == v).
inline std::vector<int> bfs_path(const DeBruijnGraph& g, int u, int v) {
  if (u == v) return {};
  std::vector<int> via(g.vertices.size(), -1);
  std::vector<char> seen(g.vertices.size(), 0);
  std::deque<int> queue{u};
  seen[u] = 1;
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (int e : g.out_edges[x]) {
      int y = g.head[e];
      if (seen[y]) continue;
      seen[y] = 1;
      via[y] = e;
      if (y == v) {
        std::vector<int> path;
        int c = v;
        while (c != u) {
          path.push_back(via[c]);
          c = g.tail[via[c]];
        }
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(y);
    }
  }
  throw NoGlobalPathError("graph is not strongly connected");
}

// Shortest closed path with at least one edge through vertex u.
inline std::vector<int> bfs_cycle(const DeBruijnGraph& g, int u) {
  std::vector<int> best;
  for (int e : g.out_edges[u]) {
    std::vector<int> back = bfs_path(g, g.head[e], u);
    std::vector<int> cycle{e};
    cycle.insert(cycle.end(), back.begin(), back.end());
    if (best.empty() || cycle.size() < best.size()) best = cycle;
  }
  if (best.empty()) throw NoGlobalPathError("vertex has no outgoing edge");
  return best;
}

inline bool eulerian(const DeBruijnGraph& g) {
  for (std::size_t v = 0; v < g.vertices.size(); ++v)
    if (g.out_edges[v].size() != g.in_edges[v].size()) return false;
  return true;
}

// Hierholzer circuit from the lexicographically smallest vertex, edges taken
// in lexicographic order. Visits each edge exactly once.
inline ClosedPath euler_circuit(const DeBruijnGraph& g) {
  std::vector<std::size_t> cursor(g.vertices.size(), 0);
  std::vector<int> vstack{0}, estack, circuit;
  while (!vstack.empty()) {
    int v = vstack.back();
    if (cursor[v] < g.out_edges[v].size()) {
      int e = g.out_edges[v][cursor[v]++];
      vstack.push_back(g.head[e]);
      estack.push_back(e);
    } else {
      vstack.pop_back();
      if (!estack.empty()) {
        circuit.push_back(estack.back());
        estack.pop_back();
      }
    }
  }
  std::reverse(circuit.begin(), circuit.end());
  if (circuit.size() != g.edges.size())
    throw NoGlobalPathError("graph has no Euler circuit");
  return ClosedPath{circuit};
}

}  // namespace detail

enum class PathMode { VertexCover, EdgeCover };

// Global closed path: visits every vertex (VertexCover) or traverses every
// edge (EdgeCover). Targets are walked in lexicographic order and stitched
// with BFS shortest paths; when every vertex balances in/out degree the
// Euler circuit is used instead, which is the shortest edge cover.
inline ClosedPath global_closed_path(const DeBruijnGraph& g, PathMode mode) {
  if (g.vertices.empty()) throw NoGlobalPathError("empty graph");
  if (!is_strongly_connected(g)) throw NoGlobalPathError("graph is not strongly connected");
  if (mode == PathMode::EdgeCover && detail::eulerian(g)) return detail::euler_circuit(g);
  std::vector<int> path;
  if (mode == PathMode::VertexCover) {
    if (g.vertices.size() == 1) return ClosedPath{detail::bfs_cycle(g, 0)};
    int current = 0;
    for (std::size_t v = 1; v < g.vertices.size(); ++v) {
      auto hop = detail::bfs_path(g, current, static_cast<int>(v));
      path.insert(path.end(), hop.begin(), hop.end());
      current = static_cast<int>(v);
    }
    auto hop = detail::bfs_path(g, current, 0);
    path.insert(path.end(), hop.begin(), hop.end());
    if (path.empty()) path = detail::bfs_cycle(g, 0);
  } else {
    int current = g.tail[0];
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      auto hop = detail::bfs_path(g, current, g.tail[e]);
      path.insert(path.end(), hop.begin(), hop.end());
      path.push_back(static_cast<int>(e));
      current = g.head[e];
    }
    auto hop = detail::bfs_path(g, current, g.tail[0]);
    path.insert(path.end(), hop.begin(), hop.end());
  }
  return ClosedPath{path};
}

// Shortest closed path overall, lexicographically earliest among the
// shortest. Used to pick substitution approximant seeds.
inline ClosedPath shortest_closed_path(const DeBruijnGraph& g) {
  std::optional<ClosedPath> best;
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    if (g.out_edges[v].empty()) continue;
    ClosedPath c{detail::bfs_cycle(g, static_cast<int>(v))};
    if (!best || c.length() < best->length()) best = c;
  }
  if (!best) throw NoGlobalPathError("graph has no closed path");
  return *best;
}

// First letters of the edge words; the extension of this word realizes the
// path, so its length-k and length-(k+1) factor sets are exactly the visited
// vertices and traversed edges.
inline Word periodic_word_from_path(const DeBruijnGraph& g, const ClosedPath& p) {
  if (!is_closed_path(g, p)) throw std::invalid_argument("not a closed path");
  Word w;
  w.reserve(p.edge_ids.size());
  for (int e : p.edge_ids) w.push_back(g.edges[e][0]);
  return w;
}

// Minimal period of the two-sided extension of w; always divides |w|.
inline std::size_t minimal_period(const Word& w) {
  for (std::size_t p = 1; p <= w.size(); ++p) {
    if (w.size() % p != 0) continue;
    bool ok = true;
    for (std::size_t i = p; i < w.size() && ok; ++i) ok = w[i] == w[i % p];
    if (ok) return p;
  }
  return w.size();
}

struct PerGrowthRow {
  int order;
  std::size_t period;
  std::size_t complexity;
  bool pass;
};

struct PerGrowthReport {
  std::vector<PerGrowthRow> rows;
  bool ok() const {
    for (const auto& r : rows)
      if (!r.pass) return false;
    return true;
  }
};

// period(eta_k) >= comp(k) for global paths.
inline PerGrowthReport check_per_growth(const DictionarySlice& slice,
                                        const std::vector<std::pair<int, ClosedPath>>& paths) {
  PerGrowthReport report;
  ComplexityTable table = complexity(slice);
  for (const auto& [order, path] : paths) {
    DeBruijnGraph g = build_graph(slice, order);
    Word w = periodic_word_from_path(g, path);
    std::size_t period = minimal_period(w);
    std::size_t comp = table.at_length(order);
    report.rows.push_back({order, period, comp, period >= comp});
  }
  return report;
}

// --- DOT emission -------------------------------------------------------------

inline std::string to_dot(const DeBruijnGraph& g, const ClosedPath* highlight = nullptr) {
  std::set<int> marked;
  if (highlight)
    for (int e : highlight->edge_ids) marked.insert(e);
  std::ostringstream os;
  os << "digraph debruijn {\n";
  for (const auto& v : g.vertices) os << "  \"" << format_word(g.alphabet, v) << "\";\n";
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    os << "  \"" << format_word(g.alphabet, g.vertices[g.tail[e]]) << "\" -> \""
       << format_word(g.alphabet, g.vertices[g.head[e]]) << "\" [label=\""
       << format_word(g.alphabet, g.edges[e]) << "\"";
    if (marked.count(static_cast<int>(e))) os << ", color=\"red\"";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace subshift
