#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "permgraph/dynamics.hpp"
#include "permgraph/entropy.hpp"
#include "permgraph/graph.hpp"
#include "permgraph/signal.hpp"

namespace permgraph {

enum class Metric { Pe, Peg, Mmspe, Mpeg };

std::string_view metric_name(Metric metric);
/// Accepts "pe", "peg", "mmspe", "mpeg".
Metric parse_metric(std::string_view name);

struct RunResult {
  Metric metric = Metric::Pe;
  std::size_t dimension = 0;
  std::size_t delay = 0;
  double value = 0.0;
  std::uint64_t pattern_count = 0;
  std::map<std::string, std::string> metadata;
};

/// One-line JSON object with keys in the fixed order metric, m, L, value,
/// pattern_count, metadata. The value carries 17 significant digits.
std::string to_json(const RunResult& r);

/// In-memory metric evaluation.
///
/// - pe: classical PE of `channel` (1-based); required when the signal has
///   more than one channel.
/// - peg: PE_G of the time-major flattened signal on `graph`, which must
///   cover all n*p samples.
/// - mmspe: pooled per-channel patterns; `graph` is ignored.
/// - mpeg: MPE_G with `graph` as interaction graph, complete_graph(p) when
///   absent.
RunResult compute_metric(Metric metric, const MultivariateSignal& u,
                         const std::optional<Graph>& graph, std::optional<std::size_t> channel,
                         const EntropyParams& params);

struct ComputeRequest {
  Metric metric = Metric::Mpeg;
  std::string input;
  std::optional<std::string> graph;
  std::optional<std::size_t> channel;
  EntropyParams params;
};

/// Loads the files named in the request, runs compute_metric and records the
/// inputs in the result metadata.
RunResult run_compute(const ComputeRequest& request);

/// Runs fn(0..count-1) on up to `threads` workers (0 = hardware concurrency).
/// The first exception thrown by any call is rethrown after all workers stop.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

/// a_min, a_min + step, ... up to a_max (inclusive within round-off).
std::vector<double> sweep_grid(double a_min, double a_max, double step);

struct HenonSweepOptions {
  double a_min = 1.0;
  double a_max = 1.4;
  double step = 0.0001;
  double b = 0.3;
  double x0 = 0.5;
  double y0 = 0.1;
  std::size_t n = 100;
  std::size_t transient = 0;
  EntropyParams params{3, 1};
  unsigned threads = 0;
};

struct HenonSweepRow {
  double a = 0.0;
  bool diverged = false;
  double mpeg = 0.0;
  double pe_x = 0.0;
  double pe_y = 0.0;
  double mmspe = 0.0;
};

/// Fresh orbit from (x0, y0) at every grid point. Divergent orbits yield a
/// row with `diverged` set instead of an error.
std::vector<HenonSweepRow> henon_sweep(const HenonSweepOptions& options);

/// Header `a,mpeg,pe_x,pe_y,mmspe,diverged`; metrics with 6 decimals, empty
/// for diverged rows.
void write_henon_sweep_csv(std::ostream& out, const std::vector<HenonSweepRow>& rows);

struct LorenzTableOptions {
  std::vector<double> rhos = {0.8, 0.9, 1.2, 1.3};
  std::vector<std::size_t> dimensions = {3, 4, 5, 6, 7};
  std::size_t delay = 1;
  LorenzParams base;  // rho is overwritten per row
  unsigned threads = 0;
};

struct LorenzTable {
  std::vector<double> rhos;
  std::vector<std::size_t> dimensions;
  std::vector<std::vector<double>> values;  // values[row][column]
};

/// MPE_G with complete_graph(3) for every (rho, m).
LorenzTable lorenz_table(const LorenzTableOptions& options);

/// Header `rho,m=3,...`; one row per rho, 6 decimals.
void write_lorenz_table_csv(std::ostream& out, const LorenzTable& table);

}  // namespace permgraph
