#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "permgraph/graph.hpp"
#include "permgraph/signal.hpp"

namespace permgraph {

/// Signal CSV: optional header row of channel names, then one row per time
/// sample with column s holding channel s. Blank lines are ignored.
/// Throws ParseError (with 1-based line) on ragged rows, non-numeric cells
/// or an empty input.
MultivariateSignal parse_signal_csv(std::istream& in);
MultivariateSignal load_signal(const std::string& path);

/// Adjacency CSV: p rows of p nonnegative reals, no header; row i column j
/// is the weight of arc i -> j.
Graph parse_adjacency_csv(std::istream& in);
Graph load_adjacency(const std::string& path);

/// load_adjacency plus a check that the graph has exactly `channels` vertices.
Graph load_interaction_graph(const std::string& path, std::size_t channels);

/// Writes the signal in the loader's format with 17 significant digits, so a
/// reload reproduces every sample bit for bit. The header row is emitted only
/// when the signal has channel names.
void write_signal_csv(std::ostream& out, const MultivariateSignal& u);
void write_adjacency_csv(std::ostream& out, const Graph& g);

/// printf-style "%.<digits>g".
std::string format_significant(double value, int digits = 17);
/// printf-style "%.<decimals>f".
std::string format_fixed(double value, int decimals);

}  // namespace permgraph
