// dicke-herald: simulate, design and classify heralded symmetric states.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "dicke/commands.hpp"

namespace {

struct Flags {
  std::string config;
  std::string out;
  std::string edges;
  std::string csv;
  std::string sweep;
  bool degrees = false;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "Experiment configuration (JSON)")->required();
  cmd->add_option("--out", f.out, "Write the result here instead of stdout");
  cmd->add_flag("--degrees", f.degrees, "Config angles are in degrees");
  cmd->add_option("--samples", f.samples, "Override the Monte-Carlo sample count");
  cmd->add_option("--seed", f.seed, "Override the random seed");
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw dicke::Error(dicke::ErrorKind::ConfigParse, "cannot write " + path);
  out << text;
}

std::string dump(const dicke::io::json& record) { return record.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heralded symmetric-state generation by polarized photodetection"};
  app.require_subcommand(1);
  Flags f;

  auto* simulate = app.add_subcommand("simulate", "Final state for a polarizer configuration");
  auto* synthesize = app.add_subcommand("synthesize", "Polarizer settings for a target state");
  auto* classify = app.add_subcommand("classify", "Three-qubit S/W/GHZ class from settings and from the state");
  auto* pyramid = app.add_subcommand("pyramid", "Intermediate states and quantum paths");
  auto* fidelity = app.add_subcommand("fidelity", "Monte-Carlo fidelity with a finite detection window");
  for (auto* cmd : {simulate, synthesize, classify, pyramid, fidelity}) add_common(cmd, f);
  pyramid->add_option("--edges", f.edges, "Write the edge list CSV here (default: after the tree)");
  fidelity->add_option("--sweep", f.sweep, "Window sweep: 'window' or 'window:START:STOP:STEPS'");
  fidelity->add_option("--csv", f.csv, "Write the sweep CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    dicke::io::ParseOptions options;
    options.degrees = f.degrees;
    options.samples_override = f.samples;
    options.seed_override = f.seed;
    const auto cfg = dicke::io::load_config(f.config, options);

    if (simulate->parsed()) {
      emit(dump(dicke::cli::simulate(cfg)), f.out);
    } else if (synthesize->parsed()) {
      emit(dump(dicke::cli::synthesize(cfg)), f.out);
    } else if (classify->parsed()) {
      emit(dump(dicke::cli::classify(cfg)), f.out);
    } else if (pyramid->parsed()) {
      const auto result = dicke::cli::pyramid(cfg);
      if (f.edges.empty()) {
        emit(result.text + "\nedges:\n" + result.edges_csv, f.out);
      } else {
        emit(result.text, f.out);
        emit(result.edges_csv, f.edges);
      }
    } else if (fidelity->parsed()) {
      std::optional<dicke::cli::SweepSpec> sweep;
      if (!f.sweep.empty()) sweep = dicke::cli::parse_sweep(f.sweep, cfg, f.degrees);
      const auto result = dicke::cli::fidelity(cfg, sweep);
      emit(dump(result.record), f.out);
      if (!f.csv.empty() && !result.sweep_csv.empty()) emit(result.sweep_csv, f.csv);
    }
  } catch (const dicke::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return dicke::cli::exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
