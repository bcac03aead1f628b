#include "permgraph/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "permgraph/errors.hpp"
#include "permgraph/io.hpp"

namespace permgraph {

namespace {

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

}  // namespace

std::string_view metric_name(Metric metric) {
  switch (metric) {
    case Metric::Pe: return "pe";
    case Metric::Peg: return "peg";
    case Metric::Mmspe: return "mmspe";
    case Metric::Mpeg: return "mpeg";
  }
  return "unknown";
}

Metric parse_metric(std::string_view name) {
  for (auto m : {Metric::Pe, Metric::Peg, Metric::Mmspe, Metric::Mpeg}) {
    if (metric_name(m) == name) return m;
  }
  throw InvalidArgument("unknown metric '" + std::string(name) + "'");
}

std::string to_json(const RunResult& r) {
  std::ostringstream out;
  out << "{\"metric\":" << json_string(std::string(metric_name(r.metric)))
      << ",\"m\":" << r.dimension << ",\"L\":" << r.delay
      << ",\"value\":" << format_significant(r.value, 17)
      << ",\"pattern_count\":" << r.pattern_count << ",\"metadata\":{";
  bool first = true;
  for (const auto& [key, value] : r.metadata) {
    out << (first ? "" : ",") << json_string(key) << ':' << json_string(value);
    first = false;
  }
  out << "}}";
  return out.str();
}

RunResult compute_metric(Metric metric, const MultivariateSignal& u,
                         const std::optional<Graph>& graph, std::optional<std::size_t> channel,
                         const EntropyParams& params) {
  params.validate();
  RunResult result;
  result.metric = metric;
  result.dimension = params.dimension;
  result.delay = params.delay;
  result.metadata["channels"] = std::to_string(u.channels());
  result.metadata["samples"] = std::to_string(u.length());

  auto finish = [&](const PatternDistribution& d) {
    result.value = normalized_shannon(d);
    result.pattern_count = d.total();
    return result;
  };

  switch (metric) {
    case Metric::Pe: {
      if (!channel && u.channels() > 1) {
        throw InvalidArgument("pe on a " + std::to_string(u.channels()) +
                              "-channel signal needs a channel selector");
      }
      const std::size_t selected = channel.value_or(1);
      if (selected < 1 || selected > u.channels()) {
        throw InvalidArgument("channel " + std::to_string(selected) + " out of range 1.." +
                              std::to_string(u.channels()));
      }
      result.metadata["channel"] = std::to_string(selected);
      return finish(pattern_distribution(u.channel(selected - 1), params));
    }
    case Metric::Peg: {
      if (!graph) throw InvalidArgument("peg requires a graph over every sample");
      const std::size_t samples = u.channels() * u.length();
      if (graph->num_vertices() != samples) {
        throw InvalidArgument("peg graph has " + std::to_string(graph->num_vertices()) +
                              " vertices but the signal has " + std::to_string(samples) +
                              " samples");
      }
      return finish(graph_pattern_distribution(*graph, u.time_major(), params));
    }
    case Metric::Mmspe:
      return finish(mmspe_distribution(u, params));
    case Metric::Mpeg: {
      if (!graph) result.metadata["graph"] = "complete(" + std::to_string(u.channels()) + ")";
      const Graph interaction = graph ? *graph : complete_graph(u.channels());
      return finish(mpe_graph_distribution(u, interaction, params));
    }
  }
  throw InvalidArgument("unknown metric");
}

RunResult run_compute(const ComputeRequest& request) {
  const auto u = load_signal(request.input);
  std::optional<Graph> graph;
  if (request.graph) {
    graph = request.metric == Metric::Mpeg ? load_interaction_graph(*request.graph, u.channels())
                                           : load_adjacency(*request.graph);
  }
  auto result = compute_metric(request.metric, u, graph, request.channel, request.params);
  result.metadata["input"] = request.input;
  if (request.graph) result.metadata["graph"] = *request.graph;
  return result;
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < count && !failed; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
            failed = true;
          }
        }
      });
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

std::vector<double> sweep_grid(double a_min, double a_max, double step) {
  if (!std::isfinite(a_min) || !std::isfinite(a_max)) {
    throw InvalidArgument("sweep bounds must be finite");
  }
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidArgument("sweep step must be > 0");
  if (a_min > a_max) throw InvalidArgument("sweep requires a_min <= a_max");
  // Absorb round-off so that e.g. 0.4 / 0.0001 yields 4000 intervals.
  const double intervals = std::floor((a_max - a_min) / step + 1e-9);
  std::vector<double> grid(static_cast<std::size_t>(intervals) + 1);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = a_min + static_cast<double>(i) * step;
  return grid;
}

std::vector<HenonSweepRow> henon_sweep(const HenonSweepOptions& options) {
  options.params.validate();
  const auto grid = sweep_grid(options.a_min, options.a_max, options.step);
  std::vector<HenonSweepRow> rows(grid.size());
  const Graph interaction = complete_graph(2);

  parallel_for(grid.size(), options.threads, [&](std::size_t i) {
    HenonSweepRow& row = rows[i];
    row.a = grid[i];
    HenonParams hp{grid[i], options.b, options.x0, options.y0, options.n + options.transient};
    std::optional<MultivariateSignal> u;
    try {
      u = henon(hp);
    } catch (const DivergenceError&) {
      row.diverged = true;
      return;
    }
    if (options.transient > 0) u = u->drop_leading(options.transient);
    row.mpeg = mpe_graph(*u, interaction, options.params);
    row.pe_x = permutation_entropy(u->channel(0), options.params);
    row.pe_y = permutation_entropy(u->channel(1), options.params);
    row.mmspe = mmspe(*u, options.params);
  });
  return rows;
}

void write_henon_sweep_csv(std::ostream& out, const std::vector<HenonSweepRow>& rows) {
  out << "a,mpeg,pe_x,pe_y,mmspe,diverged\n";
  for (const auto& row : rows) {
    out << format_significant(row.a, 10) << ',';
    if (row.diverged) {
      out << ",,,,1\n";
    } else {
      out << format_fixed(row.mpeg, 6) << ',' << format_fixed(row.pe_x, 6) << ','
          << format_fixed(row.pe_y, 6) << ',' << format_fixed(row.mmspe, 6) << ",0\n";
    }
  }
}

LorenzTable lorenz_table(const LorenzTableOptions& options) {
  if (options.rhos.empty() || options.dimensions.empty()) {
    throw InvalidArgument("lorenz table needs at least one rho and one m");
  }
  for (auto m : options.dimensions) EntropyParams{m, options.delay}.validate();

  LorenzTable table{options.rhos, options.dimensions, {}};
  table.values.assign(options.rhos.size(), std::vector<double>(options.dimensions.size()));
  const Graph interaction = complete_graph(3);

  parallel_for(options.rhos.size(), options.threads, [&](std::size_t r) {
    LorenzParams lp = options.base;
    lp.rho = options.rhos[r];
    const auto u = lorenz(lp);
    const Graph g = signal_graph(u.length(), interaction);
    const auto flat = u.time_major();
    for (std::size_t c = 0; c < options.dimensions.size(); ++c) {
      table.values[r][c] = pe_graph(g, flat, {options.dimensions[c], options.delay});
    }
  });
  return table;
}

void write_lorenz_table_csv(std::ostream& out, const LorenzTable& table) {
  out << "rho";
  for (auto m : table.dimensions) out << ",m=" << m;
  out << '\n';
  for (std::size_t r = 0; r < table.rhos.size(); ++r) {
    out << format_significant(table.rhos[r], 10);
    for (double v : table.values[r]) out << ',' << format_fixed(v, 6);
    out << '\n';
  }
}

}  // namespace permgraph
