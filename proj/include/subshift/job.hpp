#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "subshift/builtins.hpp"
#include "subshift/convergence.hpp"
#include "subshift/errors.hpp"
#include "subshift/probes.hpp"
#include "subshift/subst_io.hpp"

namespace subshift {

// One pipeline invocation. Exactly one source; task parameters beyond the
// ones a task reads are ignored by it but still validated.
struct JobConfig {
  enum class Task { Dict, Graph, Approx, Spectrum, Converge, Probe };

  Task task = Task::Dict;

  std::optional<std::string> builtin;
  std::optional<std::string> subst_file;
  std::optional<std::string> tile;        // pattern text, rows '/' for d = 2
  std::optional<std::string> slice_file;  // canonical slice text

  int order = 1;             // de Bruijn order for graph/approx
  std::string mode = "edge"; // global path mode: edge | vertex
  int n = 0;                 // approximant level
  int n_max = 6;
  int cap = 0;               // slice cap; 0 picks a task default
  double lambda = 1.0;
  double tol = 1e-10;
  int trials = 500;
  std::optional<std::string> seed_tile;  // 2D approximant seed, e.g. "bd/db"
  std::string out;           // "" writes to stdout
  std::string dot;
  bool highlight = false;
};

inline JobConfig::Task task_from_name(const std::string& name) {
  if (name == "dict") return JobConfig::Task::Dict;
  if (name == "graph") return JobConfig::Task::Graph;
  if (name == "approx") return JobConfig::Task::Approx;
  if (name == "spectrum") return JobConfig::Task::Spectrum;
  if (name == "converge") return JobConfig::Task::Converge;
  if (name == "probe") return JobConfig::Task::Probe;
  throw ConfigError("unknown task: " + name);
}

inline void validate(const JobConfig& cfg) {
  int sources = 0;
  sources += cfg.builtin.has_value();
  sources += cfg.subst_file.has_value();
  sources += cfg.tile.has_value();
  sources += cfg.slice_file.has_value();
  if (cfg.task == JobConfig::Task::Probe) {
    if (sources != 0) throw ConfigError("probe task takes no source");
  } else if (sources != 1) {
    throw ConfigError("exactly one of builtin/subst-file/tile/slice-file is required");
  }
  if (cfg.builtin) builtin_from_name(*cfg.builtin);  // throws on unknown names
  if (cfg.order < 1) throw ConfigError("order must be positive");
  if (cfg.mode != "edge" && cfg.mode != "vertex") throw ConfigError("mode must be edge or vertex");
  if (cfg.n < 0) throw ConfigError("n must be nonnegative");
  if (cfg.n_max < 1) throw ConfigError("n-max must be positive");
  if (cfg.cap < 0) throw ConfigError("cap must be nonnegative");
  if (cfg.tol <= 0) throw ConfigError("tol must be positive");
  if (cfg.trials < 1) throw ConfigError("trials must be positive");
}

inline JobConfig job_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("config: expected an object");
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (key != "task" && key != "source" && key != "params")
      throw ConfigError("config: unknown key '" + key + "'");
  }
  if (!doc.contains("task") || !doc["task"].is_string())
    throw ConfigError("config: task name required");
  JobConfig cfg;
  cfg.task = task_from_name(doc["task"].get<std::string>());
  if (doc.contains("source")) {
    const auto& src = doc["source"];
    if (!src.is_object()) throw ConfigError("config: source must be an object");
    for (const auto& [key, value] : src.items()) {
      if (!value.is_string()) throw ConfigError("config: source values are strings");
      if (key == "builtin") {
        cfg.builtin = value.get<std::string>();
      } else if (key == "subst_file") {
        cfg.subst_file = value.get<std::string>();
      } else if (key == "tile") {
        cfg.tile = value.get<std::string>();
      } else if (key == "slice_file") {
        cfg.slice_file = value.get<std::string>();
      } else {
        throw ConfigError("config: unknown source key '" + key + "'");
      }
    }
  }
  if (doc.contains("params")) {
    const auto& par = doc["params"];
    if (!par.is_object()) throw ConfigError("config: params must be an object");
    for (const auto& [key, value] : par.items()) {
      if (key == "order") {
        cfg.order = value.get<int>();
      } else if (key == "mode") {
        cfg.mode = value.get<std::string>();
      } else if (key == "n") {
        cfg.n = value.get<int>();
      } else if (key == "n_max") {
        cfg.n_max = value.get<int>();
      } else if (key == "cap") {
        cfg.cap = value.get<int>();
      } else if (key == "lambda") {
        cfg.lambda = value.get<double>();
      } else if (key == "tol") {
        cfg.tol = value.get<double>();
      } else if (key == "trials") {
        cfg.trials = value.get<int>();
      } else if (key == "seed_tile") {
        cfg.seed_tile = value.get<std::string>();
      } else if (key == "out") {
        cfg.out = value.get<std::string>();
      } else if (key == "dot") {
        cfg.dot = value.get<std::string>();
      } else if (key == "highlight") {
        cfg.highlight = value.get<bool>();
      } else {
        throw ConfigError("config: unknown param '" + key + "'");
      }
    }
  }
  validate(cfg);
  return cfg;
}

namespace detail {

struct ResolvedSource {
  std::optional<Substitution> subst;
  std::optional<DictionarySlice> fixed_slice;  // tile and slice-file sources
  std::optional<BlockPattern> tile;
  std::optional<Builtin> builtin;
  Alphabet alphabet;
  int dim = 1;
};

inline Alphabet alphabet_from_tile_text(const std::string& text) {
  std::string letters;
  for (char c : text)
    if (c != '/' && letters.find(c) == std::string::npos) letters += c;
  std::sort(letters.begin(), letters.end());
  return Alphabet::from_letters(letters);
}

inline ResolvedSource resolve_source(const JobConfig& cfg) {
  ResolvedSource src;
  if (cfg.builtin) {
    src.builtin = builtin_from_name(*cfg.builtin);
    src.alphabet = builtin_alphabet(*src.builtin);
    src.dim = builtin_dim(*src.builtin);
    if (builtin_has_substitution(*src.builtin)) src.subst = builtin_substitution(*src.builtin);
  } else if (cfg.subst_file) {
    src.subst = load_substitution(*cfg.subst_file);
    src.alphabet = src.subst->alphabet;
    src.dim = src.subst->dim;
  } else if (cfg.tile) {
    src.alphabet = alphabet_from_tile_text(*cfg.tile);
    src.tile = parse_pattern(src.alphabet, *cfg.tile);
    src.dim = src.tile->dim();
  } else if (cfg.slice_file) {
    std::ifstream in(*cfg.slice_file);
    if (!in) throw ConfigError("cannot open slice file: " + *cfg.slice_file);
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
      src.fixed_slice = from_text(buffer.str());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    src.alphabet = src.fixed_slice->alphabet;
    src.dim = src.fixed_slice->dim();
  }
  return src;
}

inline DictionarySlice source_slice(const ResolvedSource& src, int cap) {
  std::vector<int> cap_vec(src.dim, cap);
  if (src.builtin) return builtin_slice(*src.builtin, cap_vec);
  if (src.subst) return substitution_dictionary(*src.subst, cap_vec);
  if (src.tile) return periodic_dictionary(src.alphabet, PeriodicConfiguration(*src.tile), cap_vec);
  if (src.fixed_slice) {
    for (int e : src.fixed_slice->cap)
      if (e < cap) throw ConfigError("slice file cap is below the requested cap");
    DictionarySlice out(src.alphabet, cap_vec);
    for (auto& [shape, set] : out.entries) set = src.fixed_slice->entries.at(shape);
    return out;
  }
  throw ConfigError("task needs a source");
}

// 1D strongly periodic approximant at level n for the source.
inline Word approximant_word(const ResolvedSource& src, int n) {
  if (src.dim != 1) throw ConfigError("word approximants need a one-dimensional source");
  if (src.builtin) return builtin_approximant_tile(*src.builtin, n);
  if (src.subst) {
    DictionarySlice s = substitution_dictionary(*src.subst, {2});
    DeBruijnGraph g = build_graph(s, 1);
    Word seed = periodic_word_from_path(g, shortest_closed_path(g));
    return src.subst->iterate(seed, n);
  }
  if (src.tile) return src.tile->to_word();  // already periodic; level ignored
  throw ConfigError("source has no periodic approximants");
}

inline void write_output(const std::string& path, const std::string& payload) {
  if (path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write output file: " + path);
  out << payload;
}

inline int run_probe_suite(const JobConfig& cfg, std::ostream& os) {
  std::mt19937 rng(2026);
  std::uniform_real_distribution<double> entry(-2.0, 2.0);
  std::uniform_int_distribution<int> dimension(1, 8);
  int failures = 0;

  for (int trial = 0; trial < cfg.trials; ++trial) {
    const int n = dimension(rng);
    std::vector<double> diag(n);
    for (auto& d : diag) d = entry(rng);
    FiniteSelfAdjoint a = FiniteSelfAdjoint::diagonal(diag);
    const double x = entry(rng);
    const double m = a.shifted_norm(x) + std::abs(entry(rng)) + 0.1;
    const double r = std::uniform_real_distribution<double>(1e-3, m - 1e-3)(rng);
    bool truth = false;
    for (double l : diag) truth |= std::abs(l - x) < r;
    if (presence_probe(a, x, m, r) != truth) ++failures;
  }
  os << "presence probe: " << cfg.trials - failures << "/" << cfg.trials << " matched\n";

  int unitary_failures = 0;
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const int n = dimension(rng);
    std::vector<std::complex<double>> diag(n);
    for (auto& d : diag) {
      double t = angle(rng);
      d = {std::cos(t), std::sin(t)};
    }
    FiniteUnitary u = FiniteUnitary::diagonal(diag);
    double t = angle(rng);
    std::complex<double> e(std::cos(t), std::sin(t));
    const double r = std::uniform_real_distribution<double>(1e-3, 1.999)(rng);
    bool truth = false;
    for (const auto& l : diag) truth |= std::abs(l - e) < r;
    if (unitary_probe(u, e, r) != truth) ++unitary_failures;
  }
  os << "unitary probe: " << cfg.trials - unitary_failures << "/" << cfg.trials << " matched\n";

  FiniteSelfAdjoint an = FiniteSelfAdjoint::diagonal({-1.0, 0.0, 1.0});
  FiniteSelfAdjoint ainf = FiniteSelfAdjoint::diagonal({-1.0, 0.5, 1.0});
  const double separation = p2_norm(an, 1, 0, -1) - p2_norm(ainf, 1, 0, -1);
  os << "degree-2 separation: " << format_real(separation) << "\n";

  if (failures || unitary_failures || separation != 0.25)
    throw NumericError("probe suite found a mismatch");
  return 0;
}

}  // namespace detail

// Runs one job. Throws ConfigError / NoGlobalPathError / NumericError /
// GateError; the CLI maps those to exit codes 2 / 3 / 4 / 5.
inline int run(const JobConfig& cfg) {
  validate(cfg);
  using Task = JobConfig::Task;
  if (cfg.task == Task::Probe) {
    std::ostringstream os;
    detail::run_probe_suite(cfg, os);
    detail::write_output(cfg.out, os.str());
    return 0;
  }

  detail::ResolvedSource src = detail::resolve_source(cfg);
  switch (cfg.task) {
    case Task::Dict: {
      const int cap = cfg.cap ? cfg.cap : (src.dim == 1 ? 6 : 3);
      detail::write_output(cfg.out, to_text(detail::source_slice(src, cap)));
      return 0;
    }
    case Task::Graph: {
      const int cap = std::max(cfg.cap, cfg.order + 1);
      DictionarySlice slice = detail::source_slice(src, cap);
      DeBruijnGraph g = build_graph(slice, cfg.order);
      std::string payload;
      if (cfg.highlight) {
        ClosedPath path = global_closed_path(
            g, cfg.mode == "edge" ? PathMode::EdgeCover : PathMode::VertexCover);
        payload = to_dot(g, &path);
      } else {
        payload = to_dot(g);
      }
      detail::write_output(cfg.dot.empty() ? cfg.out : cfg.dot, payload);
      return 0;
    }
    case Task::Approx: {
      if (src.dim == 1) {
        const int cap = std::max(cfg.cap, cfg.order + 1);
        DictionarySlice slice = detail::source_slice(src, cap);
        DeBruijnGraph g = build_graph(slice, cfg.order);
        ClosedPath path = global_closed_path(
            g, cfg.mode == "edge" ? PathMode::EdgeCover : PathMode::VertexCover);
        Word w = periodic_word_from_path(g, path);
        detail::write_output(cfg.out, format_word(src.alphabet, w) + "\n");
        return 0;
      }
      if (!src.subst) throw ConfigError("2D approximants need a substitution source");
      DictionarySlice gate_slice = substitution_dictionary(*src.subst, std::vector<int>(2, 2));
      BlockPattern v({1}, {0});
      if (cfg.seed_tile) {
        v = parse_pattern(src.alphabet, *cfg.seed_tile);
        if (!approximant_gate(gate_slice, v)) throw GateError("tile fails the 2x2 symmetry gate");
      } else {
        auto tiles = symmetry_2x2_search(gate_slice);
        if (tiles.empty()) throw GateError("no admissible symmetric 2x2 tile");
        v = tiles.front();
      }
      PeriodicConfiguration approx = periodic_approximant(*src.subst, v, cfg.n);
      detail::write_output(cfg.out, format_pattern(src.alphabet, approx.tile) + "\n");
      return 0;
    }
    case Task::Spectrum: {
      Word tile = detail::approximant_word(src, cfg.n);
      JacobiSpec spec = JacobiSpec::letter_potential(0, cfg.lambda);
      PeriodicJacobi op = sample(spec, PeriodicConfiguration(BlockPattern::from_word(tile)));
      BandComputation bands = band_set(op, cfg.tol);
      detail::write_output(cfg.out, band_table_csv(cfg.n, op.period(), bands.bands));
      return 0;
    }
    case Task::Converge: {
      const int cap = cfg.cap ? cfg.cap : 8;
      DictionarySlice reference = detail::source_slice(src, cap);
      std::vector<Word> tiles;
      for (int n = 1; n <= cfg.n_max; ++n) tiles.push_back(detail::approximant_word(src, n));
      JacobiSpec spec = JacobiSpec::letter_potential(0, cfg.lambda);
      auto rows = convergence_experiment(src.alphabet, tiles, 1, spec, reference, cfg.tol);
      detail::write_output(cfg.out, convergence_csv(rows));
      return 0;
    }
    default:
      throw ConfigError("unhandled task");
  }
}

}  // namespace subshift
