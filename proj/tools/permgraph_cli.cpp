// permgraph: permutation-entropy metrics for time series, graph signals and
// multichannel signals on Cartesian product graphs.
//
// Exit codes: 0 success, 1 usage error, 2 computation error, 3 I/O error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "permgraph/dynamics.hpp"
#include "permgraph/errors.hpp"
#include "permgraph/harness.hpp"
#include "permgraph/io.hpp"

namespace {

enum ExitCode : int { kOk = 0, kUsage = 1, kCompute = 2, kIo = 3 };

struct Options {
  // compute
  std::string input;
  std::string graph;
  std::size_t channel = 0;
  std::size_t dimension = 3;
  std::size_t delay = 1;
  // shared output path; "-" or empty means stdout
  std::string output;
  unsigned threads = 0;

  permgraph::HenonParams henon;
  permgraph::LorenzParams lorenz;
  permgraph::HenonSweepOptions sweep;
  permgraph::LorenzTableOptions table;
};

// Writes through a file when a path is given, stdout otherwise.
template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw permgraph::IoError("cannot open '" + path + "' for writing");
  fn(out);
  out.flush();
  if (!out) throw permgraph::IoError("failed writing '" + path + "'");
}

void add_entropy_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("-m,--dimension", opt.dimension, "Embedding dimension m")
      ->capture_default_str();
  cmd->add_option("-L,--delay", opt.delay, "Delay L")->capture_default_str();
}

void add_lorenz_flags(CLI::App* cmd, permgraph::LorenzParams& p, bool with_rho) {
  cmd->add_option("--sigma", p.sigma)->capture_default_str();
  if (with_rho) cmd->add_option("--rho", p.rho)->capture_default_str();
  cmd->add_option("--beta", p.beta)->capture_default_str();
  cmd->add_option("--x0", p.init[0])->capture_default_str();
  cmd->add_option("--y0", p.init[1])->capture_default_str();
  cmd->add_option("--z0", p.init[2])->capture_default_str();
  cmd->add_option("--dt", p.dt)->capture_default_str();
  cmd->add_option("--steps", p.steps)->capture_default_str();
  cmd->add_option("--transient", p.transient)->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Permutation entropy for time series, graph signals and multichannel signals"};
  app.require_subcommand(1);
  Options opt;

  auto* compute = app.add_subcommand("compute", "Evaluate one metric on a signal CSV");
  compute->require_subcommand(1);
  std::optional<permgraph::Metric> metric;
  CLI::Option* channel_opt = nullptr;
  for (auto m : {permgraph::Metric::Pe, permgraph::Metric::Peg, permgraph::Metric::Mmspe,
                 permgraph::Metric::Mpeg}) {
    auto* sub = compute->add_subcommand(std::string(permgraph::metric_name(m)));
    sub->add_option("--input", opt.input, "Signal CSV")->required();
    if (m != permgraph::Metric::Mmspe && m != permgraph::Metric::Pe) {
      auto* g = sub->add_option("--graph", opt.graph, "Adjacency CSV");
      if (m == permgraph::Metric::Peg) g->required();
    }
    if (m == permgraph::Metric::Pe) {
      channel_opt =
          sub->add_option("--channel", opt.channel, "1-based channel (required for p > 1)");
    }
    add_entropy_flags(sub, opt);
    sub->callback([&metric, m] { metric = m; });
  }

  auto* gen = app.add_subcommand("gen", "Generate a synthetic multichannel signal CSV");
  gen->require_subcommand(1);
  auto* gen_henon = gen->add_subcommand("henon", "Henon map orbit (channels x, y)");
  gen_henon->add_option("--a", opt.henon.a)->capture_default_str();
  gen_henon->add_option("--b", opt.henon.b)->capture_default_str();
  gen_henon->add_option("--x0", opt.henon.x0)->capture_default_str();
  gen_henon->add_option("--y0", opt.henon.y0)->capture_default_str();
  gen_henon->add_option("-n,--samples", opt.henon.n)->capture_default_str();
  gen_henon->add_option("--output", opt.output, "Output CSV (default stdout)");
  auto* gen_lorenz = gen->add_subcommand("lorenz", "Lorenz trajectory, RK4 (channels x, y, z)");
  add_lorenz_flags(gen_lorenz, opt.lorenz, true);
  gen_lorenz->add_option("--output", opt.output, "Output CSV (default stdout)");

  auto* repro = app.add_subcommand("repro", "Run a reproduction experiment");
  repro->require_subcommand(1);
  auto* henon_sweep = repro->add_subcommand("henon-sweep", "Entropy over the Henon a-grid");
  henon_sweep->add_option("--a-min", opt.sweep.a_min)->capture_default_str();
  henon_sweep->add_option("--a-max", opt.sweep.a_max)->capture_default_str();
  henon_sweep->add_option("--step", opt.sweep.step)->capture_default_str();
  henon_sweep->add_option("--b", opt.sweep.b)->capture_default_str();
  henon_sweep->add_option("--x0", opt.sweep.x0)->capture_default_str();
  henon_sweep->add_option("--y0", opt.sweep.y0)->capture_default_str();
  henon_sweep->add_option("-n,--samples", opt.sweep.n)->capture_default_str();
  henon_sweep->add_option("--transient", opt.sweep.transient)->capture_default_str();
  henon_sweep->add_option("-m,--dimension", opt.sweep.params.dimension)->capture_default_str();
  henon_sweep->add_option("-L,--delay", opt.sweep.params.delay)->capture_default_str();
  henon_sweep->add_option("--threads", opt.threads, "Worker threads (0 = all cores)");
  henon_sweep->add_option("--output", opt.output, "Output CSV (default stdout)");

  auto* lorenz_table = repro->add_subcommand("lorenz-table", "MPE_G table over rho and m");
  lorenz_table->add_option("--rho", opt.table.rhos, "Rho values")->capture_default_str();
  lorenz_table->add_option("-m,--dimension", opt.table.dimensions, "Embedding dimensions")
      ->capture_default_str();
  lorenz_table->add_option("-L,--delay", opt.table.delay)->capture_default_str();
  add_lorenz_flags(lorenz_table, opt.table.base, false);
  lorenz_table->add_option("--threads", opt.threads, "Worker threads (0 = all cores)");
  lorenz_table->add_option("--output", opt.output, "Output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (metric) {
      permgraph::ComputeRequest request;
      request.metric = *metric;
      request.input = opt.input;
      if (!opt.graph.empty()) request.graph = opt.graph;
      if (channel_opt->count() > 0) request.channel = opt.channel;
      request.params = {opt.dimension, opt.delay};
      const auto result = permgraph::run_compute(request);
      std::cout << permgraph::to_json(result) << '\n';
    } else if (gen_henon->parsed()) {
      const auto u = permgraph::henon(opt.henon);
      with_output(opt.output, [&](std::ostream& out) { permgraph::write_signal_csv(out, u); });
    } else if (gen_lorenz->parsed()) {
      const auto u = permgraph::lorenz(opt.lorenz);
      with_output(opt.output, [&](std::ostream& out) { permgraph::write_signal_csv(out, u); });
    } else if (henon_sweep->parsed()) {
      opt.sweep.threads = opt.threads;
      const auto rows = permgraph::henon_sweep(opt.sweep);
      with_output(opt.output,
                  [&](std::ostream& out) { permgraph::write_henon_sweep_csv(out, rows); });
    } else if (lorenz_table->parsed()) {
      opt.table.threads = opt.threads;
      const auto table = permgraph::lorenz_table(opt.table);
      with_output(opt.output,
                  [&](std::ostream& out) { permgraph::write_lorenz_table_csv(out, table); });
    }
  } catch (const permgraph::IoError& e) {
    std::cerr << "permgraph: " << e.what() << '\n';
    return kIo;
  } catch (const permgraph::ParseError& e) {
    std::cerr << "permgraph: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "permgraph: " << e.what() << '\n';
    return kCompute;
  }
  return kOk;
}
