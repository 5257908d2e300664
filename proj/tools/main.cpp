#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "subshift/job.hpp"

namespace {

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const subshift::ConfigError*>(&e)) return 2;
  if (dynamic_cast<const subshift::NoGlobalPathError*>(&e)) return 3;
  if (dynamic_cast<const subshift::GateError*>(&e)) return 5;
  if (dynamic_cast<const subshift::NumericError*>(&e)) return 4;
  if (dynamic_cast<const std::invalid_argument*>(&e)) return 2;
  return 4;
}

void add_source_flags(CLI::App* cmd, subshift::JobConfig& cfg) {
  cmd->add_option_function<std::string>(
      "--builtin", [&cfg](const std::string& v) { cfg.builtin = v; },
      "built-in subshift name");
  cmd->add_option_function<std::string>(
      "--subst", [&cfg](const std::string& v) { cfg.subst_file = v; },
      "substitution definition file (JSON)");
  cmd->add_option_function<std::string>(
      "--tile", [&cfg](const std::string& v) { cfg.tile = v; },
      "periodic tile, rows separated by '/' for d = 2");
  cmd->add_option_function<std::string>(
      "--slice-file", [&cfg](const std::string& v) { cfg.slice_file = v; },
      "canonical slice file");
}

void add_seed_rejection(CLI::App* cmd) {
  cmd->add_option_function<std::string>(
      "--seed",
      [](const std::string&) {
        throw subshift::ConfigError("--seed is reserved: all algorithms are deterministic");
      },
      "reserved");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"periodic approximations of subshifts and their band spectra"};
  app.require_subcommand(1);

  subshift::JobConfig cfg;
  std::string config_path;

  auto wire = [&](CLI::App* cmd, subshift::JobConfig::Task task) {
    cmd->parse_complete_callback([&cfg, task]() { cfg.task = task; });
    add_seed_rejection(cmd);
    cmd->add_option("--config", config_path, "JSON job configuration file");
    cmd->add_option("--out", cfg.out, "output file (default stdout)");
    return cmd;
  };

  using Task = subshift::JobConfig::Task;

  CLI::App* dict = wire(app.add_subcommand("dict", "emit a dictionary slice"), Task::Dict);
  add_source_flags(dict, cfg);
  dict->add_option("--cap", cfg.cap, "slice cap (per axis)");

  CLI::App* graph = wire(app.add_subcommand("graph", "emit a de Bruijn graph as DOT"), Task::Graph);
  add_source_flags(graph, cfg);
  graph->add_option("--order", cfg.order, "de Bruijn order k");
  graph->add_option("--dot", cfg.dot, "DOT output file");
  graph->add_flag("--highlight-path", cfg.highlight, "color a global closed path");
  graph->add_option("--mode", cfg.mode, "highlighted path mode: edge | vertex");

  CLI::App* approx = wire(app.add_subcommand("approx", "emit a strongly periodic approximant"),
                          Task::Approx);
  add_source_flags(approx, cfg);
  approx->add_option("--order", cfg.order, "de Bruijn order k (1D)");
  approx->add_option("--mode", cfg.mode, "global path mode: edge | vertex");
  approx->add_option("--n", cfg.n, "substitution iterations (2D)");
  approx->add_option_function<std::string>(
      "--seed-tile", [&cfg](const std::string& v) { cfg.seed_tile = v; },
      "2D seed tile, rows separated by '/'");

  CLI::App* spectrum = wire(app.add_subcommand("spectrum", "band table of a periodic operator"),
                            Task::Spectrum);
  add_source_flags(spectrum, cfg);
  spectrum->add_option("--n", cfg.n, "approximant level");
  spectrum->add_option("--lambda", cfg.lambda, "potential coupling");
  spectrum->add_option("--tol", cfg.tol, "band edge tolerance");

  CLI::App* converge = wire(app.add_subcommand("converge", "spectral convergence table"),
                            Task::Converge);
  add_source_flags(converge, cfg);
  converge->add_option("--n-max", cfg.n_max, "largest approximant level (reference)");
  converge->add_option("--lambda", cfg.lambda, "potential coupling");
  converge->add_option("--cap", cfg.cap, "slice cap for the proximity column");
  converge->add_option("--tol", cfg.tol, "band edge tolerance");

  CLI::App* probe = wire(app.add_subcommand("probe", "run the operator-norm probe suite"),
                         Task::Probe);
  probe->add_option("--trials", cfg.trials, "random instances per probe");

  try {
    app.parse(argc, argv);
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw subshift::ConfigError("cannot open config file: " + config_path);
      nlohmann::json doc;
      in >> doc;
      cfg = subshift::job_from_json(doc);
    }
    return subshift::run(cfg);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}
