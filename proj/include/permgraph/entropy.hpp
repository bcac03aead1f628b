#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "permgraph/graph.hpp"
#include "permgraph/signal.hpp"

namespace permgraph {

/// Largest supported embedding dimension; 12! still fits comfortably in the
/// 64-bit pattern codes.
inline constexpr std::size_t kMaxDimension = 12;

/// Embedding dimension m and delay L shared by every metric.
struct EntropyParams {
  std::size_t dimension = 3;
  std::size_t delay = 1;

  /// Throws InvalidArgument unless 2 <= dimension <= kMaxDimension and delay >= 1.
  void validate() const;

  /// (m - 1) * L, the time span covered by one embedding vector.
  std::size_t span() const noexcept { return (dimension - 1) * delay; }
};

/// Rank order (k_1..k_m) of an embedding vector: 1-based positions listed in
/// order of increasing value.
class OrdinalPattern {
 public:
  /// Throws InvalidArgument unless `ranks` is a permutation of {1..m}.
  explicit OrdinalPattern(std::vector<std::size_t> ranks);

  static OrdinalPattern from_code(std::uint64_t code, std::size_t dimension);

  const std::vector<std::size_t>& ranks() const noexcept { return ranks_; }
  std::size_t dimension() const noexcept { return ranks_.size(); }

  /// Lehmer code in [0, m!).
  std::uint64_t code() const;

  friend bool operator==(const OrdinalPattern&, const OrdinalPattern&) = default;

 private:
  std::vector<std::size_t> ranks_;
};

/// Stable ascending sort by (value, position). Throws on non-finite entries.
OrdinalPattern ordinal_pattern(std::span<const double> v);

/// Lehmer code of ordinal_pattern(v) without allocating. Assumes finite
/// values and v.size() <= kMaxDimension.
std::uint64_t ordinal_pattern_code(std::span<const double> v);

std::uint64_t factorial(std::size_t m);

/// Counts of ordinal patterns, keyed by Lehmer code.
class PatternDistribution {
 public:
  explicit PatternDistribution(std::size_t dimension);

  std::size_t dimension() const noexcept { return dimension_; }
  std::uint64_t total() const noexcept { return total_; }
  std::size_t distinct() const noexcept { return counts_.size(); }
  const std::map<std::uint64_t, std::uint64_t>& counts() const noexcept { return counts_; }

  void add(std::uint64_t code, std::uint64_t count = 1);
  void add(const OrdinalPattern& pattern, std::uint64_t count = 1);
  void merge(const PatternDistribution& other);

  std::uint64_t count(const OrdinalPattern& pattern) const;

  /// Relative frequencies in code order.
  std::vector<double> frequencies() const;

 private:
  std::size_t dimension_;
  std::uint64_t total_ = 0;
  std::map<std::uint64_t, std::uint64_t> counts_;
};

/// -(1/ln m!) Σ p ln p over observed patterns, clamped to [0, 1].
double normalized_shannon(const PatternDistribution& d);

/// Patterns of the classical delay embedding x_i^m(L), i = 1..n-(m-1)L.
PatternDistribution pattern_distribution(std::span<const double> x, const EntropyParams& params);

double permutation_entropy(std::span<const double> x, const EntropyParams& params);

/// Patterns of every valid vertex of the walk-neighborhood embedding.
PatternDistribution graph_pattern_distribution(const Graph& g, std::span<const double> x,
                                               const EntropyParams& params);

double pe_graph(const Graph& g, std::span<const double> x, const EntropyParams& params);

/// Per-channel classical patterns pooled into one distribution.
PatternDistribution mmspe_distribution(const MultivariateSignal& u, const EntropyParams& params);

double mmspe(const MultivariateSignal& u, const EntropyParams& params);

/// directed_path(n) □ interaction, the graph a multichannel signal lives on.
Graph signal_graph(std::size_t length, const Graph& interaction);

PatternDistribution mpe_graph_distribution(const MultivariateSignal& u, const Graph& interaction,
                                           const EntropyParams& params);

/// Permutation entropy of u viewed as a signal on directed_path(n) □ interaction.
double mpe_graph(const MultivariateSignal& u, const Graph& interaction,
                 const EntropyParams& params);

}  // namespace permgraph
