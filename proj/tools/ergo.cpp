// ergo: batch front end.  Prints one JSON verdict line on stdout and exits
// with 0 ok, 1 failed check or invariant, 2 invalid config, 3 budget, 4 I/O.

#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ergo/runner.hpp"

namespace {

// Each flag writes into `flags`; after parsing, only flags that were given
// are copied over the base config (defaults or --config).
struct Binder {
  CLI::App& app;
  ergo::RunConfig& flags;
  std::vector<std::pair<CLI::Option*, std::function<void(ergo::RunConfig&)>>> setters;

  template <typename T>
  void add(const std::string& name, T ergo::RunConfig::*field, const std::string& help) {
    auto* opt = app.add_option(name, flags.*field, help);
    setters.emplace_back(opt, [this, field](ergo::RunConfig& c) { c.*field = flags.*field; });
  }
  void flag(const std::string& name, bool ergo::RunConfig::*field, const std::string& help) {
    auto* opt = app.add_flag(name, flags.*field, help);
    setters.emplace_back(opt, [this, field](ergo::RunConfig& c) { c.*field = flags.*field; });
  }
  void apply(ergo::RunConfig& c) const {
    for (const auto& [opt, set] : setters)
      if (opt->count() > 0) set(c);
  }
};

int report(const ergo::RunResult& res) {
  std::cout << res.verdict.dump() << std::endl;
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Erdos-Rogers workbench: constructions, containers, spectra and pipelines"};
  app.set_version_flag("--version", "ergo 0.1.0");

  ergo::RunConfig flags;
  Binder b{app, flags, {}};
  std::string config_path, save_path;

  b.add("command", &ergo::RunConfig::command,
        "construct | spectrum | certify-density | container | goodness | js-params | sparsify | mv-pipeline | "
        "alpha | random-turan | c4-bounds | exponents");
  b.add("sub", &ergo::RunConfig::sub, "subcommand, e.g. unital, batch-verify, targets");
  app.add_option("--config", config_path, "replay a saved config (explicit flags still override)");
  app.add_option("--save-config", save_path, "write the effective config as JSON before running");

  b.add("--graph,--name", &ergo::RunConfig::graph, "graph source: gnp, mv, file or a named graph (petersen, k5, c7, ...)");
  b.add("--input,-i", &ergo::RunConfig::input, "input file (graph, or fit points)");
  b.add("--output,-o", &ergo::RunConfig::output, "artifact path");
  b.add("--cert", &ergo::RunConfig::cert, "container certificate to reconstruct from");
  b.add("--seed", &ergo::RunConfig::seed, "master seed");
  b.add("--threads", &ergo::RunConfig::threads, "worker count (default: ERGO_THREADS or 1)");
  b.add("--budget", &ergo::RunConfig::budget, "search node budget (0: operation default)");
  b.add("--samples", &ergo::RunConfig::samples, "sample count for sampled checks (0: operation default)");
  b.add("--n", &ergo::RunConfig::n, "vertex count");
  b.add("--p", &ergo::RunConfig::p, "probability");
  b.add("--pattern", &ergo::RunConfig::pattern, "forbidden pattern: K3, C4, K2,2, edge, ...");
  b.add("--q", &ergo::RunConfig::q, "prime field order");
  b.add("--r", &ergo::RunConfig::r, "number of parts of the overlay");
  app.add_option("--sig", flags.sig, "multipartite signature, e.g. 2,2")->delimiter(',');
  b.setters.emplace_back(app.get_option("--sig"), [&flags](ergo::RunConfig& c) { c.sig = flags.sig; });
  b.add("--s", &ergo::RunConfig::s, "set size s");
  b.add("--trials", &ergo::RunConfig::trials, "trial count");
  b.add("--d", &ergo::RunConfig::d, "container density coefficient d (0: drawn)");
  b.add("--threshold", &ergo::RunConfig::threshold, "container size threshold r (negative: drawn)");
  app.add_option("--set", flags.set, "container S as a comma-separated vertex list")->delimiter(',');
  b.setters.emplace_back(app.get_option("--set"), [&flags](ergo::RunConfig& c) { c.set = flags.set; });
  b.add("--u-size", &ergo::RunConfig::u_size, "goodness |U| (0: all of X)");
  b.add("--mode", &ergo::RunConfig::mode, "operation mode (exact/falsify, exhaustive/sampled, dense/iterative)");
  b.add("--family", &ergo::RunConfig::family, "exponent family: k3, k4, kt, multipartite, general");
  b.add("--preset", &ergo::RunConfig::preset, "beta/theta preset: k3, k4, kt");
  b.add("--alpha", &ergo::RunConfig::alpha, "Turan exponent alpha (exact rational, e.g. 1/3)");
  b.add("--beta", &ergo::RunConfig::beta, "beta (exact rational)");
  b.add("--theta", &ergo::RunConfig::theta, "theta (exact rational)");
  b.add("--t", &ergo::RunConfig::t, "clique size t of the host family");
  b.add("--c", &ergo::RunConfig::c, "sample-and-delete constant c");
  b.add("--C", &ergo::RunConfig::big_c, "first-moment constant C");
  b.add("--T", &ergo::RunConfig::big_t, "edge count T for the counting bound");
  b.add("--delta", &ergo::RunConfig::density_delta, "local density coefficient");
  b.add("--density-beta", &ergo::RunConfig::density_beta, "local density exponent beta");
  b.add("--density-theta", &ergo::RunConfig::density_theta, "local density size exponent theta");
  b.add("--gamma", &ergo::RunConfig::density_gamma, "local density size coefficient gamma");
  b.add("--tol", &ergo::RunConfig::tol, "eigenvalue tolerance (0: default)");
  b.flag("--record-timing", &ergo::RunConfig::record_timing, "include wall-clock micros in reports");
  b.add("--format", &ergo::RunConfig::format, "report format: json or csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return report(ergo::detail::failure(ergo::kExitInvalid, "invalid-config", e.what()));
  }

  ergo::RunConfig cfg;
  if (!config_path.empty()) {
    try {
      cfg = ergo::RunConfig::from_json(nlohmann::json::parse(ergo::read_file(config_path)));
    } catch (const ergo::IoError& e) {
      return report(ergo::detail::failure(ergo::kExitIo, "io", e.what()));
    } catch (const nlohmann::json::exception& e) {
      return report(ergo::detail::failure(ergo::kExitInvalid, "format", e.what()));
    } catch (const ergo::Error& e) {
      return report(ergo::detail::failure(ergo::kExitInvalid, "invalid-config", e.what()));
    }
  }
  b.apply(cfg);
  if (cfg.command.empty()) {
    std::cerr << app.help();
    return report(ergo::detail::failure(ergo::kExitInvalid, "invalid-config", "no command given"));
  }
  if (!save_path.empty()) {
    try {
      ergo::write_file_atomic(save_path, cfg.to_json().dump(2) + "\n");
    } catch (const ergo::IoError& e) {
      return report(ergo::detail::failure(ergo::kExitIo, "io", e.what()));
    }
  }
  return report(ergo::execute(cfg));
}
